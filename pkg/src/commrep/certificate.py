"""Machine-checkable lower-bound certificates for matching commutation patterns.

Given n pairs (a_i, b_i) of r x r matrices whose only non-vanishing pairwise
commutators are z_i = [a_i, b_i], the builder produces a certificate that
forces r >= n+1:

  * a vector v with z_i v != 0 for every i, found by a deterministic
    lexicographic grid search (entries in {0..n}) that is guaranteed to
    succeed because each kernel meets at most a 1/(n+1) fraction of the grid;
  * a linear form alpha with alpha(v) != 0 and alpha(z_i v) != 0, found the
    same way on the dual constraints;
  * the Gram matrix of the alternating form (x, y) -> alpha([x, y] v) on the
    basis (a_1..a_n, b_1..b_n), which is nonsingular by construction;
  * the dimension of span{v, a_1 v, .., b_n v}, which is at least n+1: the
    evaluation-at-v map on span{I, a_i, b_i} has isotropic translate
    kI + ker, so its kernel has dimension at most n out of 2n+1.

The verifier recomputes everything from the raw pairs and accepts only if
every invariant holds, so a accepted certificate yields r >= n+1 by direct
rank computation, independent of how it was built.

Over a prime field the grid argument needs p distinct digit values, hence
the p > 2n+1 precondition; scalar extension is deliberately not implemented
and small fields are refused instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .commgraph import Assignment, matching_graph, realizes
from .errors import FieldTooSmallError, PatternViolationError, SchemaError
from .exactla import (
    FieldSpec,
    Matrix,
    commutator,
    dot,
    matrix_from_rows,
    rank,
    scalar_from_json,
    scalar_to_json,
    span_rank,
)

# reason codes emitted by verify_certificate
REASON_N_MISMATCH = "n_mismatch"
REASON_R_MISMATCH = "r_mismatch"
REASON_FIELD_MISMATCH = "field_mismatch"
REASON_V_LENGTH = "v_length"
REASON_ALPHA_LENGTH = "alpha_length"
REASON_Z_ZERO = "z_zero"
REASON_Z_MISMATCH = "z_mismatch"
REASON_ZV_ZERO = "zv_zero"
REASON_ALPHA_V_ZERO = "alpha_v_zero"
REASON_ALPHA_ZV_ZERO = "alpha_zv_zero"
REASON_GRAM_MISMATCH = "gram_mismatch"
REASON_GRAM_NOT_ALTERNATING = "gram_not_alternating"
REASON_GRAM_RANK = "gram_rank_deficient"
REASON_IMAGE_RANK_MISMATCH = "image_rank_mismatch"
REASON_IMAGE_RANK_LOW = "image_rank_below_bound"
REASON_BOUND_MISMATCH = "bound_mismatch"
REASON_BOUND_EXCEEDS_DIM = "bound_exceeds_dimension"

ALL_REASONS = (
    REASON_N_MISMATCH,
    REASON_R_MISMATCH,
    REASON_FIELD_MISMATCH,
    REASON_V_LENGTH,
    REASON_ALPHA_LENGTH,
    REASON_Z_ZERO,
    REASON_Z_MISMATCH,
    REASON_ZV_ZERO,
    REASON_ALPHA_V_ZERO,
    REASON_ALPHA_ZV_ZERO,
    REASON_GRAM_MISMATCH,
    REASON_GRAM_NOT_ALTERNATING,
    REASON_GRAM_RANK,
    REASON_IMAGE_RANK_MISMATCH,
    REASON_IMAGE_RANK_LOW,
    REASON_BOUND_MISMATCH,
    REASON_BOUND_EXCEEDS_DIM,
)


@dataclass(frozen=True)
class LowerBoundCertificate:
    """Witness bundle concluding that the ambient dimension r is >= n+1.

    ``z`` may be None for certificates read back from JSON; the verifier
    then works from the recomputed commutators alone.
    """

    field: FieldSpec
    n: int
    r: int
    v: tuple
    alpha: tuple
    z: Optional[tuple]  # of Matrix
    gram: Matrix
    image_rank: int
    concluded_bound: int


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    reasons: tuple

    def __bool__(self):
        return self.ok


def find_avoiding_vector(constraints: Sequence[Matrix], dim: int, field: FieldSpec) -> tuple:
    """Lexicographically first grid vector v with M v != 0 for every constraint.

    The grid is {0, 1, .., c}^dim with c = len(constraints).  A proper kernel
    meets at most a 1/(c+1) fraction of any digit line, so the union of the c
    kernels cannot cover the grid and the greedy digit-by-digit descent never
    needs to backtrack: a prefix is extendable iff no constraint vanishes
    identically on its subgrid, and every extendable prefix has an extendable
    child.  Over F_p the digits must be distinct field elements, hence the
    p > c precondition.
    """
    if dim < 1:
        raise ValueError("dimension must be positive")
    c = len(constraints)
    if field.is_prime_field and field.characteristic <= c:
        raise FieldTooSmallError(
            f"need p > {c} grid digits, got p = {field.characteristic}"
        )
    for k, m in enumerate(constraints):
        if m.cols != dim:
            raise ValueError(f"constraint {k} has {m.cols} columns, expected {dim}")
        if m.is_zero():
            raise ValueError(f"constraint {k} is the zero matrix")

    digits = [field.scalar(d) for d in range(c + 1)]
    # last column (1-based) holding a nonzero entry, per constraint
    last_nonzero = []
    for m in constraints:
        last = 0
        for j in range(m.cols, 0, -1):
            if any(m.entry(i, j) for i in range(1, m.rows + 1)):
                last = j
                break
        last_nonzero.append(last)
    columns = [
        [tuple(m.entry(i, j) for i in range(1, m.rows + 1)) for j in range(1, dim + 1)]
        for m in constraints
    ]

    offsets = [tuple([field.zero()] * m.rows) for m in constraints]
    chosen = []
    for col in range(1, dim + 1):
        for d in digits:
            trial = []
            ok = True
            for k in range(c):
                colvec = columns[k][col - 1]
                if d:
                    off = tuple(field.add(o, field.mul(d, x)) for o, x in zip(offsets[k], colvec))
                else:
                    off = offsets[k]
                trial.append(off)
                if last_nonzero[k] <= col and not any(off):
                    ok = False
                    break
            if ok:
                offsets = trial
                chosen.append(d)
                break
        else:  # unreachable: the covering bound guarantees a digit
            raise AssertionError("grid descent found no extendable digit")
    return tuple(chosen)


def _row_matrix(vec: tuple, field: FieldSpec) -> Matrix:
    return matrix_from_rows(field, [list(vec)])


def _split_pairs(pairs) -> tuple:
    if not pairs:
        raise ValueError("need at least one pair")
    mats = []
    for k, pair in enumerate(pairs):
        if len(pair) != 2:
            raise ValueError(f"pair {k} is not a 2-tuple")
        mats.append((pair[0], pair[1]))
    a_list = [p[0] for p in mats]
    b_list = [p[1] for p in mats]
    return a_list, b_list


def _gram_entries(basis, v, alpha, field):
    """alpha([x_i, x_j] v) for all i, j via vector products only.

    alpha([x, y] v) = (alpha^T x) . (y v) - (alpha^T y) . (x v).
    """
    xv = [m.apply(v) for m in basis]
    ax = [m.apply_left(alpha) for m in basis]
    size = len(basis)
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            row.append(field.sub(dot(ax[i], xv[j], field), dot(ax[j], xv[i], field)))
        rows.append(row)
    return rows, xv


def build_certificate(pairs: Sequence) -> LowerBoundCertificate:
    """Construct the full certificate for pairs realizing the matching pattern."""
    a_list, b_list = _split_pairs(pairs)
    n = len(a_list)
    first = a_list[0]
    field, r = first.field, first.rows
    for m in a_list + b_list:
        if not m.is_square or m.rows != r:
            raise ValueError("all pair matrices must be square of one dimension")
        if m.field != field:
            raise ValueError("all pair matrices must share one field")
    if field.is_prime_field and field.characteristic <= 2 * n + 1:
        raise FieldTooSmallError(
            f"certificate construction needs p > {2 * n + 1}, got p = {field.characteristic}"
        )

    assignment = Assignment(tuple(a_list + b_list))
    check = realizes(assignment, matching_graph(n))
    if not check.ok:
        worst = check.violations[0]
        raise PatternViolationError(
            f"pairs do not realize the {n}-pair matching pattern; "
            f"first violating pair ({worst.u}, {worst.v})",
            check.violations,
        )

    z = tuple(commutator(a, b) for a, b in zip(a_list, b_list))
    v = find_avoiding_vector(list(z), r, field)
    dual = [_row_matrix(v, field)] + [_row_matrix(zi.apply(v), field) for zi in z]
    alpha = find_avoiding_vector(dual, r, field)

    basis = a_list + b_list
    gram_rows, xv = _gram_entries(basis, v, alpha, field)
    gram = matrix_from_rows(field, gram_rows)
    image_rank = span_rank([v] + xv, field)

    cert = LowerBoundCertificate(
        field=field,
        n=n,
        r=r,
        v=v,
        alpha=alpha,
        z=z,
        gram=gram,
        image_rank=image_rank,
        concluded_bound=n + 1,
    )
    # both hold for every matching-pattern input; a failure here is a bug
    assert rank(gram) == 2 * n, "gram matrix unexpectedly singular"
    assert image_rank >= n + 1, "image rank fell below the guaranteed bound"
    return cert


def verify_certificate(cert: LowerBoundCertificate, pairs: Sequence) -> VerificationResult:
    """Recompute every invariant from the raw pairs; independent of the builder."""
    reasons = []
    try:
        a_list, b_list = _split_pairs(pairs)
    except ValueError:
        return VerificationResult(False, (REASON_N_MISMATCH,))
    n = len(a_list)
    field, r = a_list[0].field, a_list[0].rows

    if cert.n != n or cert.n < 1:
        reasons.append(REASON_N_MISMATCH)
    if cert.field != field:
        reasons.append(REASON_FIELD_MISMATCH)
    if cert.r != r or any(
        (not m.is_square) or m.rows != r for m in a_list + b_list
    ):
        reasons.append(REASON_R_MISMATCH)
    if len(cert.v) != r:
        reasons.append(REASON_V_LENGTH)
    if len(cert.alpha) != r:
        reasons.append(REASON_ALPHA_LENGTH)
    if reasons:
        return VerificationResult(False, tuple(reasons))

    z = [commutator(a, b) for a, b in zip(a_list, b_list)]
    if any(zi.is_zero() for zi in z):
        reasons.append(REASON_Z_ZERO)
    if cert.z is not None and (len(cert.z) != n or any(s != zi for s, zi in zip(cert.z, z))):
        reasons.append(REASON_Z_MISMATCH)

    zv = [zi.apply(cert.v) for zi in z]
    if any(not any(w) for w in zv):
        reasons.append(REASON_ZV_ZERO)
    if not dot(cert.alpha, cert.v, field):
        reasons.append(REASON_ALPHA_V_ZERO)
    if any(not dot(cert.alpha, w, field) for w in zv):
        reasons.append(REASON_ALPHA_ZV_ZERO)

    basis = a_list + b_list
    gram_rows, xv = _gram_entries(basis, cert.v, cert.alpha, field)
    expected_gram = matrix_from_rows(field, gram_rows)
    if cert.gram.rows != 2 * n or cert.gram.cols != 2 * n or cert.gram.field != field:
        reasons.append(REASON_GRAM_MISMATCH)
    else:
        if cert.gram != expected_gram:
            reasons.append(REASON_GRAM_MISMATCH)
        alternating = all(
            cert.gram.entry(i, i) == field.zero() for i in range(1, 2 * n + 1)
        ) and all(
            cert.gram.entry(i, j) == field.neg(cert.gram.entry(j, i))
            for i in range(1, 2 * n + 1)
            for j in range(i + 1, 2 * n + 1)
        )
        if not alternating:
            reasons.append(REASON_GRAM_NOT_ALTERNATING)
        if rank(cert.gram) != 2 * n:
            reasons.append(REASON_GRAM_RANK)

    image_rank = span_rank([cert.v] + xv, field)
    if cert.image_rank != image_rank:
        reasons.append(REASON_IMAGE_RANK_MISMATCH)
    if image_rank < n + 1:
        reasons.append(REASON_IMAGE_RANK_LOW)
    if cert.concluded_bound != n + 1:
        reasons.append(REASON_BOUND_MISMATCH)
    if cert.concluded_bound > r:
        reasons.append(REASON_BOUND_EXCEEDS_DIM)

    return VerificationResult(not reasons, tuple(reasons))


# -- JSON ----------------------------------------------------------------------

# Certificate schema: {"field":, "n":, "r":, "v":, "alpha":, "gram":,
#                      "image_rank":, "bound":}; the commutators are not
# serialized, the verifier recomputes them from the pairs.


def certificate_to_json(cert: LowerBoundCertificate) -> dict:
    f = cert.field
    return {
        "field": f.name(),
        "n": cert.n,
        "r": cert.r,
        "v": [scalar_to_json(x, f) for x in cert.v],
        "alpha": [scalar_to_json(x, f) for x in cert.alpha],
        "gram": [
            [scalar_to_json(cert.gram.entry(i, j), f) for j in range(1, cert.gram.cols + 1)]
            for i in range(1, cert.gram.rows + 1)
        ],
        "image_rank": cert.image_rank,
        "bound": cert.concluded_bound,
    }


def certificate_from_json(doc, path: str = "certificate") -> LowerBoundCertificate:
    if not isinstance(doc, dict):
        raise SchemaError("certificate must be an object", path)
    for key in ("field", "n", "r", "v", "alpha", "gram", "image_rank", "bound"):
        if key not in doc:
            raise SchemaError(f"missing key {key!r}", path)
    try:
        field = FieldSpec.from_name(doc["field"])
    except ValueError as e:
        raise SchemaError(str(e), f"{path}.field") from None
    n, r = doc["n"], doc["r"]
    for name, val in (("n", n), ("r", r), ("image_rank", doc["image_rank"]), ("bound", doc["bound"])):
        if not isinstance(val, int) or val < 0:
            raise SchemaError(f"{name!r} must be a non-negative integer", path)
    if not isinstance(doc["v"], list) or not isinstance(doc["alpha"], list):
        raise SchemaError("'v' and 'alpha' must be lists", path)
    v = tuple(scalar_from_json(x, field, f"{path}.v[{k}]") for k, x in enumerate(doc["v"]))
    alpha = tuple(
        scalar_from_json(x, field, f"{path}.alpha[{k}]") for k, x in enumerate(doc["alpha"])
    )
    gram_rows = doc["gram"]
    if (
        not isinstance(gram_rows, list)
        or len(gram_rows) != 2 * n
        or any(not isinstance(row, list) or len(row) != 2 * n for row in gram_rows)
    ):
        raise SchemaError(f"'gram' must be a {2 * n} x {2 * n} array", f"{path}.gram")
    gram = matrix_from_rows(
        field,
        [
            [scalar_from_json(x, field, f"{path}.gram[{i}][{j}]") for j, x in enumerate(row)]
            for i, row in enumerate(gram_rows)
        ],
    )
    return LowerBoundCertificate(
        field=field,
        n=n,
        r=r,
        v=v,
        alpha=alpha,
        z=None,
        gram=gram,
        image_rank=doc["image_rank"],
        concluded_bound=doc["bound"],
    )


def pairs_from_assignment(assignment: Assignment) -> list:
    """Split a matching-ordered assignment (a_1..a_n, b_1..b_n) into pairs."""
    m = len(assignment)
    if m % 2:
        raise ValueError("assignment length must be even to form pairs")
    n = m // 2
    return [(assignment.matrices[i], assignment.matrices[n + i]) for i in range(n)]
