#!/usr/bin/env python3
"""Survey the minimal realization dimension of every graph on up to 4 vertices.

For each edge set the search excludes small dimensions exhaustively over F_2
and takes an upper bound from an explicit witness:

  * perfect matchings get the sharp (n+1)-dimensional construction;
  * every other graph gets the generic (m+1)-dimensional assignment
    M_v = E_{1,v+1} + sum over earlier neighbours u of E_{u+1,v+1},
    for which [M_u, M_v] is nonzero exactly on edges.

The per-vertex-count maxima are then compared against the proved window
floor(m/2)+1 .. m+1 for the worst graph on m vertices.

Usage: python3 scripts/min_dim_survey.py [--max-vertices 4] [--budget 50000000]
"""

import argparse
import itertools
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from commrep import (  # noqa: E402
    GF,
    Assignment,
    CommGraph,
    elementary_matrix,
    matching_lower_bound,
    min_realization_dim,
    realizes,
    sharp_witness,
    zeros,
)


def generic_witness(graph: CommGraph, field) -> Assignment:
    """Realize any graph on m vertices in dimension m+1."""
    m = graph.vertex_count
    mats = []
    for v in range(1, m + 1):
        acc = elementary_matrix(m + 1, 1, v + 1, field)
        for u in range(1, v):
            if graph.has_edge(u, v):
                acc = acc + elementary_matrix(m + 1, u + 1, v + 1, field)
        mats.append(acc)
    assignment = Assignment(tuple(mats))
    check = realizes(assignment, graph)
    assert check.ok, f"generic witness failed on {sorted(graph.edges)}"
    return assignment


def best_hint(graph: CommGraph, field) -> Assignment:
    if not graph.edges:
        return Assignment(tuple(zeros(1, 1, field) for _ in range(graph.vertex_count)))
    bound = matching_lower_bound(graph)
    if bound is not None:
        # permute the canonical matching witness onto this graph's labeling
        n = graph.vertex_count // 2
        canonical = sharp_witness(n, 1, field)
        mats = [None] * graph.vertex_count
        for i, (u, v) in enumerate(sorted(graph.edges)):
            mats[u - 1] = canonical.matrices[i]
            mats[v - 1] = canonical.matrices[n + i]
        return Assignment(tuple(mats))
    return generic_witness(graph, field)


def survey(max_vertices: int, budget: int):
    field = GF(2)
    print(f"graph survey over F_2, budget {budget} nodes per graph")
    for m in range(1, max_vertices + 1):
        pairs = list(itertools.combinations(range(1, m + 1), 2))
        lows, ups = [], []
        t0 = time.time()
        for bits in range(2 ** len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if bits >> i & 1]
            graph = CommGraph.make(m, edges)
            report = min_realization_dim(
                graph, field, r_max=m + 1, budget=budget, hint=best_hint(graph, field)
            )
            lows.append(report.lower)
            ups.append(report.upper)
            tag = (
                f"exact {report.upper}"
                if report.status == "exact"
                else f"{report.status} [{report.lower}, {report.upper}]"
            )
            print(f"  m={m} edges={edges or '[]'}: {tag}")
        worst_low, worst_up = max(lows), max(ups)
        window = f"{m // 2 + 1} .. {m + 1}"
        print(
            f"m={m}: worst graph needs {worst_low}"
            + ("" if worst_low == worst_up else f" .. {worst_up}")
            + f"; proved window for the worst graph: {window}"
            + f"  ({time.time() - t0:.1f}s)"
        )


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-vertices", type=int, default=4)
    ap.add_argument("--budget", type=int, default=5 * 10**7)
    args = ap.parse_args()
    survey(args.max_vertices, args.budget)


if __name__ == "__main__":
    main()
