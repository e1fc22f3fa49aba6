"""Brute-force bracketing of the minimal realization dimension over F_p.

``exists_realization`` sweeps all assignments of r x r matrices over F_p to
the vertices of a graph, depth-first in vertex order, pruning a branch as
soon as one commutation constraint fails.  Candidates are enumerated by
their row-major entry tuple as a base-p counter (the zero matrix first), so
results are reproducible byte for byte.

The sweep is partitioned by the first vertex's candidate.  Partitions are
fully independent, each getting a fixed slice of the node budget and
exploring to its own completion, so the merged outcome (and every count) is
identical whether partitions run sequentially or on a thread pool.  The
merge takes the witness from the lowest-numbered partition that found one,
which is the first witness in global candidate order.

``min_realization_dim`` ascends r = 1, 2, ... with a worst-case feasibility
precheck per level; levels it cannot afford to sweep are never reported as
excluded.  For perfect matchings on 2n vertices the analytic bound n+1 is
applied as an independent exclusion method.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .commgraph import Assignment, CommGraph, graph_to_json, realizes
from .errors import InvalidHintError
from .exactla import FieldSpec, Matrix

FOUND = "found"
NONE = "none"
BUDGET_EXCEEDED = "budget_exceeded"

STATUS_EXACT = "exact"
STATUS_BRACKET = "bracket"
STATUS_EXHAUSTED = "exhausted_budget"

MODE_ALL = "all"
MODE_INVERTIBLE = "invertible_only"

WITNESS_RULE = "first_in_candidate_order"

_CANDIDATE_CAP = 2 * 10**6  # refuse to materialize larger candidate lists


@dataclass(frozen=True)
class ExistsOutcome:
    status: str  # found | none | budget_exceeded
    witness: Optional[Assignment]
    nodes: int


@dataclass(frozen=True)
class SearchReport:
    graph: CommGraph
    field: FieldSpec
    mode: str
    r_max: int
    budget: int
    status: str  # exact | bracket | exhausted_budget
    lower: int
    upper: Optional[int]
    witness: Optional[Assignment]
    excluded: tuple  # of (r, method) pairs, method in {"exhaustive", "analytic"}
    analytic_lower: Optional[int]
    nodes_explored: int


def matching_lower_bound(graph: CommGraph) -> Optional[int]:
    """n+1 when the graph is a perfect matching on 2n vertices, else None.

    A family realizing n disjoint non-commuting pairs needs dimension at
    least n+1; the bound applies to no other edge pattern here.
    """
    degrees = graph.degrees()
    if degrees and all(d == 1 for d in degrees):
        return graph.vertex_count // 2 + 1
    return None


def _tuple_invertible(entries, r, p):
    m = [list(entries[i * r : (i + 1) * r]) for i in range(r)]
    for col in range(r):
        piv = next((i for i in range(col, r) if m[i][col] % p), None)
        if piv is None:
            return False
        m[col], m[piv] = m[piv], m[col]
        inv = pow(m[col][col], -1, p)
        for i in range(col + 1, r):
            head = m[i][col] % p
            if head:
                m[i] = [(x - head * inv * y) % p for x, y in zip(m[i], m[col])]
    return True


def _candidates(r: int, p: int, mode: str):
    cands = list(itertools.product(range(p), repeat=r * r))
    if mode == MODE_INVERTIBLE:
        cands = [c for c in cands if _tuple_invertible(c, r, p)]
    return cands


def worst_case_nodes(vertex_count: int, r: int, p: int) -> int:
    """Upper bound on constraint checks for a full sweep at dimension r."""
    c = p ** (r * r)
    return sum((t - 1) * c**t for t in range(2, vertex_count + 1))


class _BudgetHit(Exception):
    pass


class _Partition:
    """Exhaustive DFS under one fixed first-vertex candidate."""

    def __init__(self, graph, candidates, r, p, budget):
        self.m = graph.vertex_count
        self.adj = [
            [graph.has_edge(u, v) for v in range(graph.vertex_count + 1)]
            for u in range(graph.vertex_count + 1)
        ]
        self.candidates = candidates
        self.r = r
        self.p = p
        self.budget = budget
        self.nodes = 0
        self.found = None

    def run(self, first_index):
        assigned = [self.candidates[first_index]]
        try:
            self._dfs(2, assigned)
            status = NONE if self.found is None else FOUND
        except _BudgetHit:
            status = BUDGET_EXCEEDED
        return status, self.found, self.nodes

    def _dfs(self, t, assigned):
        if t > self.m:
            self.found = tuple(assigned)
            return True
        adj_t = self.adj[t]
        for cand in self.candidates:
            ok = True
            for u in range(1, t):
                self.nodes += 1
                if self.nodes > self.budget:
                    raise _BudgetHit
                if self._commutes(assigned[u - 1], cand) == adj_t[u]:
                    ok = False
                    break
            if ok:
                assigned.append(cand)
                if self._dfs(t + 1, assigned):
                    return True
                assigned.pop()
        return False

    def _commutes(self, a, b):
        r, p = self.r, self.p
        for i in range(r):
            ai = i * r
            for j in range(r):
                s = 0
                for k in range(r):
                    s += a[ai + k] * b[k * r + j] - b[ai + k] * a[k * r + j]
                if s % p:
                    return False
        return True


def exists_realization(
    graph: CommGraph,
    field: FieldSpec,
    r: int,
    mode: str = MODE_ALL,
    budget: int = 10**8,
    jobs: int = 1,
) -> ExistsOutcome:
    """Sweep dimension r exhaustively; NONE is a proof of non-existence.

    A BUDGET_EXCEEDED outcome means some partition ran out of its budget
    share (or the level was too large to enumerate at all) and carries no
    non-existence information.
    """
    if field.is_rationals:
        raise ValueError("exhaustive search needs a finite field")
    if r < 1:
        raise ValueError("dimension must be positive")
    if mode not in (MODE_ALL, MODE_INVERTIBLE):
        raise ValueError(f"unknown mode {mode!r}")
    p = field.characteristic
    if p ** (r * r) > min(budget, _CANDIDATE_CAP):
        return ExistsOutcome(BUDGET_EXCEEDED, None, 0)

    candidates = _candidates(r, p, mode)
    m = graph.vertex_count
    if not candidates:
        return ExistsOutcome(NONE, None, 0)

    n_parts = len(candidates)
    share, extra = divmod(max(budget, 0), n_parts)

    def run_partition(k):
        part = _Partition(graph, candidates, r, p, share + (1 if k < extra else 0))
        return part.run(k)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_partition, range(n_parts)))
    else:
        results = [run_partition(k) for k in range(n_parts)]

    nodes = sum(res[2] for res in results)
    witness = None
    for status, found, _ in results:
        if status == FOUND:
            mats = tuple(_tuple_to_matrix(c, r, field) for c in found)
            witness = Assignment(mats)
            break
    if witness is not None:
        return ExistsOutcome(FOUND, witness, nodes)
    if any(res[0] == BUDGET_EXCEEDED for res in results):
        return ExistsOutcome(BUDGET_EXCEEDED, None, nodes)
    return ExistsOutcome(NONE, None, nodes)


def _tuple_to_matrix(entries, r, field) -> Matrix:
    return Matrix(field, r, r, tuple(int(x) for x in entries))


def min_realization_dim(
    graph: CommGraph,
    field: FieldSpec,
    r_max: int,
    mode: str = MODE_ALL,
    budget: int = 10**8,
    hint: Optional[Assignment] = None,
    jobs: int = 1,
) -> SearchReport:
    """Ascend r = 1..r_max, collecting exclusions and the first realization."""
    if field.is_rationals:
        raise ValueError("exhaustive search needs a finite field")
    if r_max < 1:
        raise ValueError("r_max must be positive")
    p = field.characteristic

    upper = None
    witness = None
    if hint is not None:
        if len(hint) != graph.vertex_count:
            raise InvalidHintError(
                f"hint assigns {len(hint)} matrices to {graph.vertex_count} vertices"
            )
        if hint.field != field:
            raise InvalidHintError(
                f"hint field {hint.field.name()} does not match search field {field.name()}"
            )
        check = realizes(hint, graph)
        if not check.ok:
            first = check.violations[0]
            raise InvalidHintError(
                f"hint does not realize the graph: pair ({first.u}, {first.v}) "
                f"{'commutes on an edge' if first.edge else 'fails to commute on a non-edge'}"
            )
        upper = hint.dimension
        witness = hint

    analytic = matching_lower_bound(graph)
    excluded = {}
    nodes_total = 0
    exceeded = False

    r = 1
    while r <= r_max:
        if upper is not None and r >= upper:
            break
        remaining = budget - nodes_total
        if worst_case_nodes(graph.vertex_count, r, p) > remaining:
            if analytic is not None and r < analytic:
                excluded[r] = "analytic"
                r += 1
                continue
            exceeded = True  # the budget, not r_max, stopped the ascent
            break  # r cannot be excluded: it becomes the reported lower bound
        outcome = exists_realization(graph, field, r, mode, remaining, jobs)
        nodes_total += outcome.nodes
        if outcome.status == FOUND:
            if analytic is not None and r < analytic:
                raise AssertionError(
                    "exhaustive sweep found a realization below the matching bound"
                )
            upper = r
            witness = outcome.witness
            break
        if outcome.status == NONE:
            excluded[r] = "exhaustive"
            r += 1
            continue
        exceeded = True
        if analytic is not None and r < analytic:
            excluded[r] = "analytic"
            r += 1
            continue
        break

    if analytic is not None:
        for rr in range(1, analytic):
            excluded.setdefault(rr, "analytic")

    lower = 1
    while lower in excluded:
        lower += 1
    if upper is not None and analytic is not None:
        assert upper >= analytic, "realization below the analytic bound"

    if upper is not None and lower == upper:
        status = STATUS_EXACT
    elif exceeded:
        status = STATUS_EXHAUSTED
    else:
        status = STATUS_BRACKET

    return SearchReport(
        graph=graph,
        field=field,
        mode=mode,
        r_max=r_max,
        budget=budget,
        status=status,
        lower=lower,
        upper=upper,
        witness=witness,
        excluded=tuple(sorted(excluded.items())),
        analytic_lower=analytic,
        nodes_explored=nodes_total,
    )


def pad_assignment(assignment: Assignment, extra: int) -> Assignment:
    """Pad every matrix with an extra zero block; preserves the realization."""
    if extra < 1:
        return assignment
    field = assignment.field
    r = assignment.dimension
    out = []
    for m in assignment.matrices:
        zero = field.zero()
        ent = []
        for i in range(r):
            ent.extend(m.entries[i * r : (i + 1) * r])
            ent.extend([zero] * extra)
        ent.extend([zero] * ((r + extra) * extra))
        out.append(Matrix(field, r + extra, r + extra, tuple(ent)))
    return Assignment(tuple(out))


# -- JSON -----------------------------------------------------------------------


def report_to_json(report: SearchReport) -> dict:
    from .commgraph import assignment_to_json

    return {
        "graph": graph_to_json(report.graph),
        "field": report.field.name(),
        "mode": report.mode,
        "r_max": report.r_max,
        "budget": report.budget,
        "status": report.status,
        "lower": report.lower,
        "upper": report.upper,
        "witness": None if report.witness is None else assignment_to_json(report.witness),
        "excluded": [[r, method] for r, method in report.excluded],
        "analytic_lower": report.analytic_lower,
        "nodes_explored": report.nodes_explored,
        "witness_rule": WITNESS_RULE,
    }
