"""CLI contract: schemas, exit codes, round-trips, determinism."""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

SRC = str(Path(__file__).resolve().parent.parent / "src")


def run_cli(*args, cwd=None):
    env = dict(os.environ)
    env["PYTHONPATH"] = SRC + os.pathsep + env.get("PYTHONPATH", "")
    return subprocess.run(
        [sys.executable, "-m", "commrep", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
        env=env,
    )


def payload(result):
    return json.loads(result.stdout)


@pytest.fixture()
def workdir(tmp_path):
    return tmp_path


def _write(workdir, name, doc):
    path = workdir / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_witness_n1_lambda2(workdir):
    res = run_cli("witness", "--n", "1", "--lambda", "2", "--field", "Q")
    assert res.returncode == 0
    doc = payload(res)
    a1, b1 = doc["matrices"]
    assert a1["entries"] == [["1", "1"], ["1", "1"], ["0", "1"], ["1", "1"]]
    assert b1["entries"] == [["1", "1"], ["0", "1"], ["0", "1"], ["-1", "1"]]
    assert doc["ordering"] == "a_1..a_n,b_1..b_n"


def test_witness_rejects_zero_lambda():
    res = run_cli("witness", "--n", "2", "--lambda", "0", "--field", "Q")
    assert res.returncode == 2
    assert payload(res)["error"]["code"] == "invalid_argument"


def test_bad_field_name_is_usage_error():
    res = run_cli("witness", "--n", "1", "--lambda", "2", "--field", "Fp:4")
    assert res.returncode == 1


def test_unknown_subcommand_exits_one():
    res = run_cli("frobnicate")
    assert res.returncode == 1


def test_certify_round_trip(workdir):
    wit = run_cli("witness", "--n", "2", "--lambda", "2", "--field", "Q")
    pairs_file = workdir / "w2.json"
    pairs_file.write_text(wit.stdout)
    cert_res = run_cli("certify", "--input", str(pairs_file))
    assert cert_res.returncode == 0
    cert = payload(cert_res)
    assert cert["bound"] == 3 and cert["r"] == 3
    cert_file = workdir / "c2.json"
    cert_file.write_text(cert_res.stdout)
    ver = run_cli("verify-cert", "--cert", str(cert_file), "--input", str(pairs_file))
    assert ver.returncode == 0
    assert payload(ver) == {"reasons": [], "valid": True}


def test_certify_single_pair_bound_two(workdir):
    wit = run_cli("witness", "--n", "1", "--lambda", "2", "--field", "Q")
    pairs_file = workdir / "w1.json"
    pairs_file.write_text(wit.stdout)
    res = run_cli("certify", "--input", str(pairs_file))
    assert res.returncode == 0
    cert = payload(res)
    assert cert["bound"] == 2
    assert cert["v"] == [["0", "1"], ["1", "1"]]
    assert cert["alpha"] == [["1", "1"], ["1", "1"]]


def test_certify_pattern_violation_exits_two(workdir):
    eye = {"field": "Q", "rows": 2, "cols": 2, "entries": [["1", "1"], ["0", "1"], ["0", "1"], ["1", "1"]]}
    pairs_file = _write(workdir, "bad.json", {"matrices": [eye, eye]})
    res = run_cli("certify", "--input", pairs_file)
    assert res.returncode == 2
    assert payload(res)["error"]["code"] == "pattern_violation"


def test_certify_malformed_json_exits_one(workdir):
    path = workdir / "broken.json"
    path.write_text("{not json")
    res = run_cli("certify", "--input", str(path))
    assert res.returncode == 1
    assert "broken.json" in payload(res)["error"]["message"]


def test_verify_graph(workdir):
    wit = run_cli("witness", "--n", "2", "--lambda", "2", "--field", "Q")
    asg = _write(workdir, "w.json", payload(wit))
    graph = _write(workdir, "g.json", {"vertices": 4, "edges": [[1, 3], [2, 4]]})
    res = run_cli("verify-graph", "--input", asg, "--graph", graph)
    assert res.returncode == 0
    assert payload(res) == {"realizes": True, "violations": []}
    wrong = _write(workdir, "g2.json", {"vertices": 4, "edges": [[1, 2]]})
    res2 = run_cli("verify-graph", "--input", asg, "--graph", wrong)
    assert res2.returncode == 0
    doc = payload(res2)
    assert doc["realizes"] is False and doc["violations"]


def test_search_matching_one(workdir):
    graph = _write(workdir, "m1.json", {"vertices": 2, "edges": [[1, 2]]})
    res = run_cli(
        "search", "--graph", graph, "--field", "Fp:2", "--rmax", "3",
        "--mode", "all", "--budget", "10000000",
    )
    assert res.returncode == 0
    doc = payload(res)
    assert doc["status"] == "exact"
    assert doc["lower"] == doc["upper"] == 2
    assert doc["excluded"] == [[1, "exhaustive"]]
    # the emitted witness is accepted by verify-graph
    wfile = _write(workdir, "w.json", doc["witness"])
    ver = run_cli("verify-graph", "--input", wfile, "--graph", graph)
    assert payload(ver)["realizes"] is True


def test_search_budget_exhaustion_exit_code(workdir):
    graph = _write(workdir, "m1.json", {"vertices": 2, "edges": [[1, 2]]})
    res = run_cli(
        "search", "--graph", graph, "--field", "Fp:2", "--rmax", "2",
        "--budget", "3",
    )
    assert res.returncode == 3
    assert payload(res)["status"] == "exhausted_budget"


def test_search_invalid_hint_exits_two(workdir):
    graph = _write(workdir, "m1.json", {"vertices": 2, "edges": [[1, 2]]})
    zero = {"field": "Fp:2", "rows": 1, "cols": 1, "entries": ["0"]}
    hint = _write(workdir, "h.json", {"matrices": [zero, zero]})
    res = run_cli("search", "--graph", graph, "--field", "Fp:2", "--rmax", "2", "--hint", hint)
    assert res.returncode == 2
    assert payload(res)["error"]["code"] == "invalid_hint"


def test_split_s3_module(workdir):
    def perm(rows):
        return {
            "field": "Fp:2",
            "rows": 3,
            "cols": 3,
            "entries": [str(x) for row in rows for x in row],
        }

    module = _write(
        workdir,
        "m.json",
        {
            "field": "Fp:2",
            "dim": 3,
            "generators": [
                perm([[0, 0, 1], [1, 0, 0], [0, 1, 0]]),
                perm([[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
            ],
        },
    )
    res = run_cli("split", "--module", module)
    assert res.returncode == 0
    doc = payload(res)
    assert sorted(doc["factor_dims"]) == [1, 2]
    assert doc["base_field_only"] is True


def test_split_guard_exits_two(workdir):
    eye7 = {
        "field": "Fp:2",
        "rows": 7,
        "cols": 7,
        "entries": [str(int(i == j)) for i in range(7) for j in range(7)],
    }
    module = _write(workdir, "m.json", {"field": "Fp:2", "dim": 7, "generators": [eye7]})
    res = run_cli("split", "--module", module)
    assert res.returncode == 2
    assert payload(res)["error"]["code"] == "guard_violation"


def test_count_check(workdir):
    good = _write(workdir, "d.json", {"dims": [[1, 2], [2, 1]]})
    res = run_cli("count-check", "--dims", good)
    assert res.returncode == 0
    doc = payload(res)
    assert doc["verdict"] == "satisfied"
    assert doc["chain"] == {
        "floor": 4,
        "sum_doubled": 4,
        "sum_powers": 4,
        "sum_products": 4,
    }
    bad = _write(workdir, "d2.json", {"dims": [[1, 2]]})
    res2 = run_cli("count-check", "--dims", bad)
    assert payload(res2)["verdict"] == "precondition_failed"
    assert payload(res2)["failed_columns"] == [1]
    nonpos = _write(workdir, "d3.json", {"dims": [[0, 2]]})
    assert run_cli("count-check", "--dims", nonpos).returncode == 2


def test_selftest_passes():
    res = run_cli("selftest")
    assert res.returncode == 0
    doc = payload(res)
    assert doc["selftest"] == "pass"
    assert all(c["ok"] for c in doc["checks"])


def test_emitted_json_is_canonical(workdir):
    # reserializing any emitted document with sorted keys reproduces the bytes
    res = run_cli("witness", "--n", "3", "--lambda", "1/2", "--field", "Q")
    doc = json.loads(res.stdout)
    assert json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n" == res.stdout
