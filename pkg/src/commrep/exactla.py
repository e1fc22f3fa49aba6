"""Exact dense linear algebra over the rationals and over prime fields.

Scalars are plain Python values: ``fractions.Fraction`` over Q (always in
lowest terms with positive denominator) and canonical residues in ``[0, p)``
over F_p.  A :class:`FieldSpec` tags every matrix and performs coercion and
scalar arithmetic.  There is no floating point anywhere; every result is
exact.

Indices in the public API are 1-based, matching the usual E_{i,j} notation
for elementary matrices; storage is row-major 0-based internally.

Rank and kernels over Q run fraction-free (Bareiss) elimination on integer
rows after clearing denominators, which keeps intermediate growth bounded by
minor sizes.  Over F_p plain Gaussian elimination with modular inverses is
used.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

ScalarValue = Union[Fraction, int]

# shared immutable constants: structural zeros compare by identity, which keeps
# tuple equality on large mostly-zero matrices at pointer-comparison speed
_Q_ZERO = Fraction(0)
_Q_ONE = Fraction(1)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond 64-bit inputs we accept."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """An exact base field: the rationals, or integers modulo a prime."""

    kind: str  # "Q" | "Fp"
    characteristic: Optional[int] = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.characteristic is not None:
                raise ValueError("rationals carry no characteristic")
        elif self.kind == "Fp":
            p = self.characteristic
            if not isinstance(p, int) or p < 2 or not is_prime(p):
                raise ValueError(f"characteristic must be a prime >= 2, got {p!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @staticmethod
    def rationals() -> "FieldSpec":
        return FieldSpec("Q")

    @staticmethod
    def prime_field(p: int) -> "FieldSpec":
        return FieldSpec("Fp", p)

    @property
    def is_rationals(self) -> bool:
        return self.kind == "Q"

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "Fp"

    def name(self) -> str:
        return "Q" if self.is_rationals else f"Fp:{self.characteristic}"

    @staticmethod
    def from_name(name: str) -> "FieldSpec":
        if name == "Q":
            return FieldSpec.rationals()
        if name.startswith("Fp:"):
            body = name[3:]
            if not body.isdigit():
                raise ValueError(f"bad field name {name!r}")
            return FieldSpec.prime_field(int(body))
        raise ValueError(f"bad field name {name!r} (expected 'Q' or 'Fp:<prime>')")

    # -- scalar arithmetic ------------------------------------------------

    def zero(self) -> ScalarValue:
        return _Q_ZERO if self.is_rationals else 0

    def one(self) -> ScalarValue:
        return _Q_ONE if self.is_rationals else 1

    def scalar(self, x) -> ScalarValue:
        """Coerce ``x`` (int, Fraction, or "a/b" string) to a canonical scalar."""
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            raise ValueError(f"cannot coerce {x!r} to a {self.name()} scalar")
        if self.is_rationals:
            return Fraction(x)
        p = self.characteristic
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ValueError(f"denominator of {x} is not invertible mod {p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return x % p

    def add(self, a, b):
        return a + b if self.is_rationals else (a + b) % self.characteristic

    def sub(self, a, b):
        return a - b if self.is_rationals else (a - b) % self.characteristic

    def mul(self, a, b):
        return a * b if self.is_rationals else (a * b) % self.characteristic

    def neg(self, a):
        return -a if self.is_rationals else (-a) % self.characteristic

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.is_rationals:
            return 1 / Fraction(a)
        return pow(a, -1, self.characteristic)


QQ = FieldSpec.rationals()


def GF(p: int) -> FieldSpec:
    return FieldSpec.prime_field(p)


def dot(u: Sequence[ScalarValue], v: Sequence[ScalarValue], field: FieldSpec) -> ScalarValue:
    if len(u) != len(v):
        raise ValueError("dot: length mismatch")
    s = sum(a * b for a, b in zip(u, v))
    if field.is_prime_field:
        return s % field.characteristic
    return Fraction(s)


@dataclass(frozen=True)
class Matrix:
    """Dense matrix with value semantics; entries share the matrix's field.

    A sparse index (per-row lists of (column, value) for the nonzero
    entries) is cached on first use and propagated through arithmetic, so
    operations on structured matrices cost O(nonzeros) Python work rather
    than O(rows * cols).  The index never enters equality or hashing.
    """

    field: FieldSpec
    rows: int
    cols: int
    entries: tuple  # row-major canonical scalars
    _nnz: Optional[tuple] = dataclasses.field(
        default=None, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")

    @classmethod
    def _seeded(cls, field, rows, cols, entries, rows_nnz) -> "Matrix":
        m = cls(field, rows, cols, entries)
        object.__setattr__(m, "_nnz", rows_nnz)
        return m

    def rows_nnz(self) -> tuple:
        """Per-row tuples of (column, value) for the nonzero entries."""
        cached = self._nnz
        if cached is None:
            c = self.cols
            cached = tuple(
                tuple(
                    (j, x)
                    for j, x in enumerate(self.entries[i * c : (i + 1) * c])
                    if x
                )
                for i in range(self.rows)
            )
            object.__setattr__(self, "_nnz", cached)
        return cached

    # -- shape / access ---------------------------------------------------

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, i: int, j: int) -> ScalarValue:
        """1-based (i, j) entry."""
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexError(f"entry ({i},{j}) outside {self.rows}x{self.cols}")
        return self.entries[(i - 1) * self.cols + (j - 1)]

    def row_values(self, i: int) -> tuple:
        """1-based row as a tuple."""
        if not 1 <= i <= self.rows:
            raise IndexError(f"row {i} outside 1..{self.rows}")
        return self.entries[(i - 1) * self.cols : i * self.cols]

    def rows_list(self) -> list:
        c = self.cols
        return [list(self.entries[k * c : (k + 1) * c]) for k in range(self.rows)]

    def flatten(self) -> tuple:
        return self.entries

    def is_zero(self) -> bool:
        return all(not row for row in self.rows_nnz())

    # -- arithmetic -------------------------------------------------------

    def _check_same_shape(self, other: "Matrix"):
        if self.field != other.field:
            raise ValueError("field mismatch")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")

    def _combine(self, other: "Matrix", sub: bool) -> "Matrix":
        self._check_same_shape(other)
        f = self.field
        p = f.characteristic if f.is_prime_field else None
        c = self.cols
        ent = list(self.entries)
        nnz = []
        for i, (arow, brow) in enumerate(zip(self.rows_nnz(), other.rows_nnz())):
            if brow:
                base = i * c
                for j, b in brow:
                    val = ent[base + j] - b if sub else ent[base + j] + b
                    if p is not None:
                        val = val % p
                    ent[base + j] = val
                nnz.append(tuple((j, ent[i * c + j]) for j in sorted(
                    {j for j, _ in arow} | {j for j, _ in brow}
                ) if ent[i * c + j]))
            else:
                nnz.append(arow)
        return Matrix._seeded(f, self.rows, c, tuple(ent), tuple(nnz))

    def __add__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, sub=False)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, sub=True)

    def __neg__(self) -> "Matrix":
        f = self.field
        if f.is_prime_field:
            p = f.characteristic
            neg = lambda x: (-x) % p  # noqa: E731
        else:
            neg = lambda x: -x  # noqa: E731
        ent = list(self.entries)
        nnz = []
        for i, row in enumerate(self.rows_nnz()):
            base = i * self.cols
            out_row = []
            for j, x in row:
                val = neg(x)
                ent[base + j] = val
                out_row.append((j, val))
            nnz.append(tuple(out_row))
        return Matrix._seeded(f, self.rows, self.cols, tuple(ent), tuple(nnz))

    def scale(self, c) -> "Matrix":
        f = self.field
        c = f.scalar(c)
        if not c:
            return zeros(self.rows, self.cols, f)
        p = f.characteristic if f.is_prime_field else None
        ent = [f.zero()] * (self.rows * self.cols)
        nnz = []
        for i, row in enumerate(self.rows_nnz()):
            base = i * self.cols
            out_row = []
            for j, x in row:
                val = x * c % p if p is not None else x * c
                ent[base + j] = val
                out_row.append((j, val))  # c is a unit, so products stay nonzero
            nnz.append(tuple(out_row))
        return Matrix._seeded(f, self.rows, self.cols, tuple(ent), tuple(nnz))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        f = self.field
        p = f.characteristic if f.is_prime_field else None
        n, m = self.rows, other.cols
        zero = f.zero()
        brows = other.rows_nnz()
        ent = [zero] * (n * m)
        nnz = []
        for i, arow in enumerate(self.rows_nnz()):
            acc = {}
            for k, a in arow:
                for j, b in brows[k]:
                    prod = a * b
                    if j in acc:
                        acc[j] = acc[j] + prod
                    else:
                        acc[j] = prod
            base = i * m
            out_row = []
            for j in sorted(acc):
                val = acc[j] % p if p is not None else acc[j]
                if val:
                    ent[base + j] = val
                    out_row.append((j, val))
            nnz.append(tuple(out_row))
        return Matrix._seeded(f, n, m, tuple(ent), tuple(nnz))

    def transpose(self) -> "Matrix":
        r, c = self.rows, self.cols
        zero = self.field.zero()
        ent = [zero] * (c * r)
        buckets = [[] for _ in range(c)]
        for i, row in enumerate(self.rows_nnz()):
            for j, x in row:
                ent[j * r + i] = x
                buckets[j].append((i, x))
        return Matrix._seeded(self.field, c, r, tuple(ent), tuple(tuple(b) for b in buckets))

    def apply(self, vec: Sequence[ScalarValue]) -> tuple:
        """Matrix-vector product A v, with v a length-``cols`` tuple."""
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        f = self.field
        p = f.characteristic if f.is_prime_field else None
        zero = f.zero()
        out = []
        for row in self.rows_nnz():
            s = sum(x * vec[j] for j, x in row)
            if s:
                out.append(s % p if p is not None else Fraction(s))
            else:
                out.append(zero)
        return tuple(out)

    def apply_left(self, vec: Sequence[ScalarValue]) -> tuple:
        """Row-vector product v^T A, with v a length-``rows`` tuple."""
        if len(vec) != self.rows:
            raise ValueError("dimension mismatch")
        f = self.field
        p = f.characteristic if f.is_prime_field else None
        acc = [f.zero()] * self.cols
        for i, a in enumerate(vec):
            if not a:
                continue
            for j, b in self.rows_nnz()[i]:
                acc[j] = acc[j] + a * b
        if p is not None:
            return tuple(e % p for e in acc)
        return tuple(acc)


# -- constructors ----------------------------------------------------------


def matrix_from_rows(field: FieldSpec, rows: Sequence[Sequence]) -> Matrix:
    """Build a matrix from row sequences, coercing every entry."""
    if not rows:
        raise ValueError("need at least one row")
    width = len(rows[0])
    ent = []
    for row in rows:
        if len(row) != width:
            raise ValueError("ragged rows")
        ent.extend(field.scalar(x) for x in row)
    return Matrix(field, len(rows), width, tuple(ent))


def zeros(rows: int, cols: int, field: FieldSpec) -> Matrix:
    return Matrix._seeded(
        field,
        rows,
        cols,
        tuple([field.zero()] * (rows * cols)),
        tuple(() for _ in range(rows)),
    )


def identity(r: int, field: FieldSpec) -> Matrix:
    if r < 1:
        raise ValueError("dimension must be positive")
    zero, one = field.zero(), field.one()
    ent = [zero] * (r * r)
    for i in range(r):
        ent[i * r + i] = one
    return Matrix._seeded(
        field, r, r, tuple(ent), tuple(((i, one),) for i in range(r))
    )


def elementary_matrix(r: int, i: int, j: int, field: FieldSpec) -> Matrix:
    """E_{i,j}: single 1 at 1-based position (i, j), zeros elsewhere."""
    if r < 1:
        raise ValueError("dimension must be positive")
    if not (1 <= i <= r and 1 <= j <= r):
        raise IndexError(f"({i},{j}) outside 1..{r}")
    one = field.one()
    ent = [field.zero()] * (r * r)
    ent[(i - 1) * r + (j - 1)] = one
    nnz = tuple(((j - 1, one),) if k == i - 1 else () for k in range(r))
    return Matrix._seeded(field, r, r, tuple(ent), nnz)


def block_diagonal(blocks: Sequence[Matrix]) -> Matrix:
    if not blocks:
        raise ValueError("need at least one block")
    field = blocks[0].field
    for b in blocks:
        if b.field != field:
            raise ValueError("field mismatch")
        if not b.is_square:
            raise ValueError("blocks must be square")
    dim = sum(b.rows for b in blocks)
    zero = field.zero()
    ent = [zero] * (dim * dim)
    nnz = []
    off = 0
    for b in blocks:
        for i in range(b.rows):
            base = (off + i) * dim + off
            ent[base : base + b.cols] = b.entries[i * b.cols : (i + 1) * b.cols]
            nnz.append(tuple((off + j, x) for j, x in b.rows_nnz()[i]))
        off += b.rows
    return Matrix._seeded(field, dim, dim, tuple(ent), tuple(nnz))


def commutator(a: Matrix, b: Matrix) -> Matrix:
    """[a, b] = ab - ba for square matrices of equal size and field."""
    if a.field != b.field:
        raise ValueError("field mismatch")
    if not (a.is_square and b.is_square and a.rows == b.rows):
        raise ValueError("dimension mismatch")
    return (a @ b) - (b @ a)


# -- elimination -----------------------------------------------------------


def _integer_rows(a: Matrix) -> list:
    """Rows as integer lists; over Q each row is scaled by its denominator lcm.

    Row scaling by positive constants preserves rank and null space.
    """
    out = []
    if a.field.is_rationals:
        for i in range(a.rows):
            row = a.entries[i * a.cols : (i + 1) * a.cols]
            m = math.lcm(*(x.denominator for x in row)) if row else 1
            out.append([int(x * m) for x in row])
    else:
        for i in range(a.rows):
            out.append(list(a.entries[i * a.cols : (i + 1) * a.cols]))
    return out


def _bareiss_echelon(m: list) -> tuple:
    """Fraction-free echelon form of integer rows, in place.

    Returns (pivots, rows) with pivots a list of (row, col) positions.
    """
    if not m:
        return [], m
    nrows, ncols = len(m), len(m[0])
    pivots = []
    prev = 1
    pr = 0
    for pc in range(ncols):
        pivot_row = None
        for i in range(pr, nrows):
            if m[i][pc]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != pr:
            m[pr], m[pivot_row] = m[pivot_row], m[pr]
        piv = m[pr][pc]
        for i in range(pr + 1, nrows):
            mi = m[i]
            head = mi[pc]
            if head:
                mp = m[pr]
                for j in range(pc + 1, ncols):
                    mi[j] = (piv * mi[j] - head * mp[j]) // prev
                mi[pc] = 0
            elif prev != piv:
                mp = m[pr]
                for j in range(pc + 1, ncols):
                    mi[j] = piv * mi[j] // prev
        prev = piv
        pivots.append((pr, pc))
        pr += 1
        if pr == nrows:
            break
    return pivots, m


def _modp_echelon(m: list, p: int) -> tuple:
    """Row echelon form mod p, in place; returns (pivots, rows)."""
    if not m:
        return [], m
    nrows, ncols = len(m), len(m[0])
    pivots = []
    pr = 0
    for pc in range(ncols):
        pivot_row = None
        for i in range(pr, nrows):
            if m[i][pc] % p:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != pr:
            m[pr], m[pivot_row] = m[pivot_row], m[pr]
        inv = pow(m[pr][pc], -1, p)
        m[pr] = [x * inv % p for x in m[pr]]
        for i in range(pr + 1, nrows):
            head = m[i][pc] % p
            if head:
                mp = m[pr]
                m[i] = [(x - head * y) % p for x, y in zip(m[i], mp)]
        pivots.append((pr, pc))
        pr += 1
        if pr == nrows:
            break
    return pivots, m


def _echelon(a: Matrix) -> tuple:
    if a.field.is_rationals:
        return _bareiss_echelon(_integer_rows(a))
    return _modp_echelon(_integer_rows(a), a.field.characteristic)


def rank(a: Matrix) -> int:
    """Exact rank over the matrix's field."""
    pivots, _ = _echelon(a)
    return len(pivots)


def kernel_basis(a: Matrix) -> list:
    """Basis of the right null space {v : Av = 0}; empty iff rank = cols.

    One basis vector per free column, with a 1 in that coordinate.
    """
    field = a.field
    pivots, m = _echelon(a)
    pivot_cols = [pc for _, pc in pivots]
    free_cols = [j for j in range(a.cols) if j not in pivot_cols]
    basis = []
    for fc in free_cols:
        x = [field.zero()] * a.cols
        x[fc] = field.one()
        # back-substitute pivot variables bottom-up
        for pr, pc in reversed(pivots):
            row = m[pr]
            s = sum(row[j] * x[j] for j in range(pc + 1, a.cols))
            if field.is_rationals:
                x[pc] = Fraction(-s, row[pc])
            else:
                p = field.characteristic
                x[pc] = (-s) * pow(row[pc], -1, p) % p
        basis.append(tuple(x))
    return basis


def span_rank(vectors: Sequence[Sequence[ScalarValue]], field: FieldSpec) -> int:
    """Dimension of the span of equal-length vectors over ``field``."""
    if not vectors:
        raise ValueError("need at least one vector")
    return rank(matrix_from_rows(field, vectors))


def is_invertible(a: Matrix) -> bool:
    return a.is_square and rank(a) == a.rows


def inverse(a: Matrix) -> Matrix:
    """Inverse of a square matrix by Gauss-Jordan elimination."""
    if not a.is_square:
        raise ValueError("inverse of a non-square matrix")
    field = a.field
    n = a.rows
    if field.is_rationals:
        m = [[Fraction(x) for x in a.row_values(i + 1)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        div = lambda x, y: x / y  # noqa: E731
        norm = lambda x: x  # noqa: E731
    else:
        p = field.characteristic
        m = [list(a.row_values(i + 1)) + [int(i == j) for j in range(n)] for i in range(n)]
        div = lambda x, y: x * pow(y, -1, p) % p  # noqa: E731
        norm = lambda x: x % p  # noqa: E731
    for col in range(n):
        piv = next((i for i in range(col, n) if norm(m[i][col])), None)
        if piv is None:
            raise ValueError("matrix is not invertible")
        m[col], m[piv] = m[piv], m[col]
        inv_p = div(field.one(), m[col][col])
        m[col] = [norm(x * inv_p) for x in m[col]]
        for i in range(n):
            if i != col and norm(m[i][col]):
                head = m[i][col]
                m[i] = [norm(x - head * y) for x, y in zip(m[i], m[col])]
    ent = []
    for i in range(n):
        ent.extend(m[i][n:])
    return Matrix(field, n, n, tuple(ent))


# -- JSON interchange -------------------------------------------------------

# Matrix schema: {"field": "Q"|"Fp:<p>", "rows": r, "cols": c,
#                 "entries": [["num","den"],...] | ["residue",...]}
# with all numbers as decimal strings (arbitrary precision).


def scalar_to_json(x: ScalarValue, field: FieldSpec):
    if field.is_rationals:
        return [str(x.numerator), str(x.denominator)]
    return str(x)


def scalar_from_json(obj, field: FieldSpec, path: str = "scalar") -> ScalarValue:
    from .errors import SchemaError

    if field.is_rationals:
        if not (isinstance(obj, list) and len(obj) == 2 and all(isinstance(s, str) for s in obj)):
            raise SchemaError('rational scalar must be ["num","den"]', path)
        try:
            num, den = int(obj[0]), int(obj[1])
        except ValueError:
            raise SchemaError(f"non-integer rational parts {obj!r}", path) from None
        if den <= 0:
            raise SchemaError("denominator must be positive", path)
        return Fraction(num, den)
    if not isinstance(obj, str):
        raise SchemaError("prime-field scalar must be a decimal string", path)
    try:
        val = int(obj)
    except ValueError:
        raise SchemaError(f"non-integer residue {obj!r}", path) from None
    p = field.characteristic
    if not 0 <= val < p:
        raise SchemaError(f"residue {val} outside [0, {p})", path)
    return val


def matrix_to_json(a: Matrix) -> dict:
    return {
        "field": a.field.name(),
        "rows": a.rows,
        "cols": a.cols,
        "entries": [scalar_to_json(x, a.field) for x in a.entries],
    }


def matrix_from_json(doc, path: str = "matrix") -> Matrix:
    from .errors import SchemaError

    if not isinstance(doc, dict):
        raise SchemaError("matrix must be an object", path)
    for key in ("field", "rows", "cols", "entries"):
        if key not in doc:
            raise SchemaError(f"missing key {key!r}", path)
    try:
        field = FieldSpec.from_name(doc["field"])
    except ValueError as e:
        raise SchemaError(str(e), f"{path}.field") from None
    rows, cols = doc["rows"], doc["cols"]
    if not (isinstance(rows, int) and isinstance(cols, int) and rows >= 1 and cols >= 1):
        raise SchemaError("rows/cols must be positive integers", path)
    ent = doc["entries"]
    if not isinstance(ent, list) or len(ent) != rows * cols:
        raise SchemaError(f"expected {rows * cols} entries", f"{path}.entries")
    values = tuple(
        scalar_from_json(e, field, f"{path}.entries[{k}]") for k, e in enumerate(ent)
    )
    return Matrix(field, rows, cols, values)
