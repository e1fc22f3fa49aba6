"""``commrep``: one JSON document on stdout per invocation, stable exit codes.

Exit codes: 0 success, 1 internal/parse error, 2 domain refusal
(pattern violation, field too small, guard violation, invalid hint),
3 search budget exceeded.  Diagnostics go to stderr and are not part of
the machine contract.
"""

from __future__ import annotations

import argparse
import json
import sys
import traceback
from pathlib import Path

from .certificate import (
    build_certificate,
    certificate_from_json,
    certificate_to_json,
    pairs_from_assignment,
    verify_certificate,
)
from .commgraph import (
    assignment_from_json,
    assignment_to_json,
    graph_from_json,
    matching_graph,
    realizes,
)
from .errors import CommrepError, SchemaError
from .exactla import GF, QQ, FieldSpec, scalar_to_json
from .modsplit import (
    counting_chain_check,
    count_check_to_json,
    dims_from_json,
    module_from_json,
    composition_factor_dims,
    report_to_json as split_report_to_json,
)
from .search import STATUS_EXHAUSTED, min_realization_dim, report_to_json
from .witness import sharp_witness


class UsageError(CommrepError):
    code = "usage"
    exit_code = 1


class InvalidArgumentError(CommrepError):
    code = "invalid_argument"
    exit_code = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _field_arg(text: str) -> FieldSpec:
    try:
        return FieldSpec.from_name(text)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _load_json(pathname: str):
    try:
        text = Path(pathname).read_text()
    except OSError as e:
        raise SchemaError(str(e), pathname) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e}", pathname) from None


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")


# -- subcommand handlers -----------------------------------------------------


def cmd_witness(ns):
    try:
        lam = ns.field.scalar(ns.lam)
    except ValueError as e:
        raise InvalidArgumentError(str(e)) from None
    if not lam:
        raise InvalidArgumentError("lambda must be nonzero in the chosen field")
    if ns.n < 1:
        raise InvalidArgumentError("--n must be at least 1")
    assignment = sharp_witness(ns.n, lam, ns.field)
    payload = assignment_to_json(
        assignment,
        **{
            "n": ns.n,
            "ordering": "a_1..a_n,b_1..b_n",
            "lambda": scalar_to_json(lam, ns.field),
        },
    )
    return payload, 0


def cmd_verify_graph(ns):
    assignment = assignment_from_json(_load_json(ns.input), ns.input)
    graph = graph_from_json(_load_json(ns.graph), ns.graph)
    if len(assignment) != graph.vertex_count:
        raise InvalidArgumentError(
            f"assignment has {len(assignment)} matrices for {graph.vertex_count} vertices"
        )
    check = realizes(assignment, graph)
    payload = {
        "realizes": check.ok,
        "violations": [
            {"u": s.u, "v": s.v, "edge": s.edge, "commutes": s.commutes}
            for s in check.violations
        ],
    }
    return payload, 0


def cmd_certify(ns):
    assignment = assignment_from_json(_load_json(ns.input), ns.input)
    try:
        pairs = pairs_from_assignment(assignment)
    except ValueError as e:
        raise InvalidArgumentError(str(e)) from None
    cert = build_certificate(pairs)
    return certificate_to_json(cert), 0


def cmd_verify_cert(ns):
    cert = certificate_from_json(_load_json(ns.cert), ns.cert)
    assignment = assignment_from_json(_load_json(ns.input), ns.input)
    try:
        pairs = pairs_from_assignment(assignment)
    except ValueError as e:
        raise InvalidArgumentError(str(e)) from None
    result = verify_certificate(cert, pairs)
    return {"valid": result.ok, "reasons": list(result.reasons)}, 0


def cmd_search(ns):
    graph = graph_from_json(_load_json(ns.graph), ns.graph)
    hint = None
    if ns.hint:
        hint = assignment_from_json(_load_json(ns.hint), ns.hint)
    if ns.field.is_rationals:
        raise InvalidArgumentError("search needs a finite field, e.g. --field Fp:2")
    if ns.rmax < 1 or ns.budget < 0 or ns.jobs < 1:
        raise InvalidArgumentError("--rmax, --budget and --jobs must be positive")
    report = min_realization_dim(
        graph,
        ns.field,
        r_max=ns.rmax,
        mode=ns.mode,
        budget=ns.budget,
        hint=hint,
        jobs=ns.jobs,
    )
    code = 3 if report.status == STATUS_EXHAUSTED else 0
    return report_to_json(report), code


def cmd_split(ns):
    spec = module_from_json(_load_json(ns.module), ns.module)
    report = composition_factor_dims(spec)
    return split_report_to_json(report), 0


def cmd_count_check(ns):
    table = dims_from_json(_load_json(ns.dims), ns.dims)
    try:
        check = counting_chain_check(table)
    except ValueError as e:
        raise InvalidArgumentError(str(e)) from None
    return count_check_to_json(check), 0


def cmd_selftest(ns):
    checks = []

    def record(name, fn):
        try:
            fn()
            checks.append({"name": name, "ok": True})
        except Exception as e:  # noqa: BLE001 - selftest reports, never raises
            checks.append({"name": name, "ok": False, "detail": f"{type(e).__name__}: {e}"})

    def witness_round_trips():
        for n in range(1, 11):
            w = sharp_witness(n, 2, QQ)
            doc = assignment_to_json(w)
            back = assignment_from_json(json.loads(json.dumps(doc)))
            assert back == w
            assert realizes(back, matching_graph(n)).ok

    def certificate_trace():
        from fractions import Fraction

        pairs = pairs_from_assignment(sharp_witness(1, 2, QQ))
        cert = build_certificate(pairs)
        assert cert.v == (Fraction(0), Fraction(1))
        assert cert.alpha == (Fraction(1), Fraction(1))
        assert cert.image_rank == 2 and cert.concluded_bound == 2
        assert verify_certificate(cert, pairs).ok
        reloaded = certificate_from_json(json.loads(json.dumps(certificate_to_json(cert))))
        assert verify_certificate(reloaded, pairs).ok

    def matching_two_search():
        hint = sharp_witness(2, 1, GF(2))
        report = min_realization_dim(
            matching_graph(2), GF(2), r_max=3, hint=hint, budget=10**8
        )
        assert report.status == "exact"
        assert report.lower == report.upper == 3

    record("witness_round_trips_n_1_to_10", witness_round_trips)
    record("certificate_trace_n1", certificate_trace)
    record("matching_two_search_exact_3", matching_two_search)

    ok = all(c["ok"] for c in checks)
    return {"selftest": "pass" if ok else "fail", "checks": checks}, 0 if ok else 1


# -- parser ---------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="commrep", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="subcommand")

    w = sub.add_parser("witness", help="emit the sharp matching-pattern witness")
    w.add_argument("--n", type=int, required=True, help="number of pairs")
    w.add_argument("--lambda", dest="lam", required=True, help="unit scalar, e.g. 2 or 1/2")
    w.add_argument("--field", type=_field_arg, required=True, help="Q or Fp:<prime>")
    w.set_defaults(handler=cmd_witness)

    vg = sub.add_parser("verify-graph", help="check whether an assignment realizes a graph")
    vg.add_argument("--input", required=True, help="assignment JSON file")
    vg.add_argument("--graph", required=True, help="graph JSON file")
    vg.set_defaults(handler=cmd_verify_graph)

    ce = sub.add_parser("certify", help="build a dimension lower-bound certificate")
    ce.add_argument("--input", required=True, help="assignment JSON (a_1..a_n,b_1..b_n)")
    ce.set_defaults(handler=cmd_certify)

    vc = sub.add_parser("verify-cert", help="verify a certificate against its pairs")
    vc.add_argument("--cert", required=True, help="certificate JSON file")
    vc.add_argument("--input", required=True, help="assignment JSON file")
    vc.set_defaults(handler=cmd_verify_cert)

    se = sub.add_parser("search", help="bracket the minimal realization dimension")
    se.add_argument("--graph", required=True, help="graph JSON file")
    se.add_argument("--field", type=_field_arg, required=True, help="Fp:<prime>")
    se.add_argument("--rmax", type=int, required=True, help="largest dimension to try")
    se.add_argument("--mode", choices=["all", "invertible_only"], default="all")
    se.add_argument("--budget", type=int, default=10**8, help="constraint-check node limit")
    se.add_argument("--hint", default=None, help="assignment JSON giving an upper bound")
    se.add_argument("--jobs", type=int, default=1, help="parallel workers over partitions")
    se.set_defaults(handler=cmd_search)

    sp = sub.add_parser("split", help="composition factors of a matrix module")
    sp.add_argument("--module", required=True, help="module JSON file")
    sp.set_defaults(handler=cmd_split)

    cc = sub.add_parser("count-check", help="check the factor-dimension counting chain")
    cc.add_argument("--dims", required=True, help="JSON file with a 'dims' table")
    cc.set_defaults(handler=cmd_count_check)

    st = sub.add_parser("selftest", help="run the built-in deterministic checks")
    st.set_defaults(handler=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        if not getattr(ns, "handler", None):
            raise UsageError("missing subcommand (see --help)")
        payload, code = ns.handler(ns)
    except CommrepError as e:
        _emit({"error": {"code": e.code, "message": str(e)}})
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:  # noqa: BLE001 - keep the one-JSON-document contract
        _emit({"error": {"code": "internal", "message": f"{type(e).__name__}: {e}"}})
        traceback.print_exc()
        return 1
    _emit(payload)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
