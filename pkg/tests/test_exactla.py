"""Exact linear algebra: frozen examples, oracle cross-checks, and properties."""

import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from commrep.exactla import (
    GF,
    QQ,
    FieldSpec,
    Matrix,
    block_diagonal,
    commutator,
    elementary_matrix,
    identity,
    inverse,
    is_invertible,
    is_prime,
    kernel_basis,
    matrix_from_json,
    matrix_from_rows,
    matrix_to_json,
    rank,
    span_rank,
    zeros,
)

from conftest import big_fractions, matrix_pair, square_matrix


def F(x):
    return Fraction(x)


# -- fields ------------------------------------------------------------------


def test_field_equality_and_names():
    assert QQ == FieldSpec.rationals()
    assert GF(5) == FieldSpec("Fp", 5)
    assert GF(5) != GF(7)
    assert QQ != GF(2)
    assert FieldSpec.from_name("Q") == QQ
    assert FieldSpec.from_name("Fp:13") == GF(13)
    assert GF(13).name() == "Fp:13"


@pytest.mark.parametrize("bad", [1, 4, 6, 9, 100, -3])
def test_nonprime_characteristic_rejected(bad):
    with pytest.raises(ValueError):
        FieldSpec.prime_field(bad)


def test_is_prime_matches_sympy_on_range():
    for n in range(-2, 500):
        assert is_prime(n) == sympy.isprime(n)


def test_scalar_coercion():
    assert QQ.scalar("3/6") == F("1/2")
    assert GF(7).scalar(-1) == 6
    assert GF(7).scalar(F("1/2")) == 4  # 2 * 4 = 8 = 1 mod 7
    with pytest.raises(ValueError):
        GF(3).scalar(F("1/3"))


@given(st.sampled_from([QQ, GF(2), GF(5), GF(97)]), st.data())
def test_field_axioms_on_sampled_triples(field, data):
    xs = st.integers(min_value=-30, max_value=30)
    a, b, c = (field.scalar(data.draw(xs)) for _ in range(3))
    assert field.add(field.add(a, b), c) == field.add(a, field.add(b, c))
    assert field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c))
    assert field.mul(a, field.add(b, c)) == field.add(field.mul(a, b), field.mul(a, c))
    if b:
        assert field.mul(b, field.inv(b)) == field.one()


# -- constructors and frozen examples -----------------------------------------


def test_identity_examples():
    assert identity(1, QQ).entries == (F(1),)
    i3 = identity(3, GF(2))
    assert [i3.entry(k, k) for k in (1, 2, 3)] == [1, 1, 1]
    assert sum(1 for e in i3.entries if e) == 3


@given(square_matrix())
def test_identity_law(a):
    e = identity(a.rows, a.field)
    assert e @ a == a
    assert a @ e == a


def test_elementary_matrix_examples():
    assert elementary_matrix(2, 1, 2, QQ) == matrix_from_rows(QQ, [[0, 1], [0, 0]])
    e22 = elementary_matrix(3, 2, 2, GF(3))
    assert e22.entry(2, 2) == 1
    assert sum(1 for e in e22.entries if e) == 1
    with pytest.raises(IndexError):
        elementary_matrix(2, 3, 1, QQ)


def test_elementary_product_rule_exhaustive():
    # oracle: E_{a,b} E_{c,d} = E_{a,d} if b == c else 0, checked for r <= 4
    for r in (2, 3, 4):
        for a, b, c, d in itertools.product(range(1, r + 1), repeat=4):
            prod = elementary_matrix(r, a, b, QQ) @ elementary_matrix(r, c, d, QQ)
            if b == c:
                assert prod == elementary_matrix(r, a, d, QQ)
            else:
                assert prod.is_zero()


def test_e12_e22_in_m3():
    e12, e22 = elementary_matrix(3, 1, 2, QQ), elementary_matrix(3, 2, 2, QQ)
    assert e12 @ e22 == e12


def test_commutator_examples():
    e12, e21 = elementary_matrix(2, 1, 2, QQ), elementary_matrix(2, 2, 1, QQ)
    expected = elementary_matrix(2, 1, 1, QQ) - elementary_matrix(2, 2, 2, QQ)
    assert commutator(e12, e21) == expected


@given(square_matrix())
def test_commutator_with_identity_and_self(a):
    assert commutator(a, identity(a.rows, a.field)).is_zero()
    assert commutator(a, a).is_zero()


@given(matrix_pair())
def test_commutator_antisymmetric(pair):
    a, b = pair
    assert commutator(a, b) == -commutator(b, a)


@given(matrix_pair(), st.integers(min_value=-9, max_value=9))
def test_commutator_bilinear(pair, c):
    a, b = pair
    cc = a.field.scalar(c)
    lhs = commutator(a.scale(cc), b)
    assert lhs == commutator(a, b).scale(cc)
    lhs2 = commutator(a + a.scale(cc), b)
    assert lhs2 == commutator(a, b) + commutator(a.scale(cc), b)


def test_commutator_mismatch_errors():
    with pytest.raises(ValueError):
        commutator(identity(2, QQ), identity(3, QQ))
    with pytest.raises(ValueError):
        commutator(identity(2, QQ), identity(2, GF(2)))


# -- rank / kernel against an independent oracle -------------------------------


def _sympy_of(a: Matrix):
    if a.field.is_rationals:
        return sympy.Matrix(a.rows_list())
    return sympy.Matrix(a.rows_list()), a.field.characteristic


def _sympy_rank(a: Matrix) -> int:
    if a.field.is_rationals:
        return sympy.Matrix(a.rows_list()).rank()
    p = a.field.characteristic
    return sympy.Matrix(a.rows_list()).rank(iszerofunc=lambda x: x % p == 0)


def test_rank_examples():
    assert rank(identity(4, QQ)) == 4
    assert rank(matrix_from_rows(QQ, [[1, 2], [2, 4]])) == 1
    assert rank(matrix_from_rows(GF(2), [[1, 1], [1, 1]])) == 1
    assert rank(zeros(3, 5, QQ)) == 0


@settings(max_examples=60)
@given(square_matrix(field=QQ, max_dim=5))
def test_rank_matches_sympy_over_q(a):
    assert rank(a) == _sympy_rank(a)


@settings(max_examples=60)
@given(square_matrix(max_dim=4))
def test_rank_transpose(a):
    assert rank(a) == rank(a.transpose())


@settings(max_examples=60)
@given(matrix_pair(max_dim=4))
def test_rank_product_bound(pair):
    a, b = pair
    assert rank(a @ b) <= min(rank(a), rank(b))


def test_kernel_examples():
    assert kernel_basis(identity(2, QQ)) == []
    assert len(kernel_basis(zeros(2, 2, QQ))) == 2
    assert kernel_basis(matrix_from_rows(QQ, [[0, -2], [0, 0]])) == [(F(1), F(0))]


@settings(max_examples=80)
@given(square_matrix(max_dim=4))
def test_kernel_vectors_annihilate_and_are_independent(a):
    basis = kernel_basis(a)
    for v in basis:
        assert not any(a.apply(v))
    if basis:
        assert span_rank(basis, a.field) == len(basis)
    assert len(basis) == a.cols - rank(a)


def test_span_rank_examples():
    assert span_rank([(F(1), F(0)), (F(0), F(1))], QQ) == 2
    assert span_rank([(F(1), F(1)), (F(2), F(2))], QQ) == 1


@settings(max_examples=40)
@given(square_matrix(field=QQ, max_dim=4, entries=big_fractions))
def test_exact_associativity_with_large_numerators(a):
    b = a.transpose()
    c = a + b
    assert (a @ b) @ c == a @ (b @ c)


# -- block diagonal ------------------------------------------------------------


def test_block_diagonal_examples():
    two, three = matrix_from_rows(QQ, [[2]]), matrix_from_rows(QQ, [[3]])
    assert block_diagonal([two, three]) == matrix_from_rows(QQ, [[2, 0], [0, 3]])
    blocks = [identity(2, GF(3))] * 4
    assert block_diagonal(blocks) == identity(8, GF(3))


@given(matrix_pair(max_dim=3))
def test_disjoint_blocks_commute(pair):
    a, b = pair
    e = identity(a.rows, a.field)
    left = block_diagonal([a, e])
    right = block_diagonal([e, b])
    assert commutator(left, right).is_zero()


def test_block_diagonal_field_mismatch():
    with pytest.raises(ValueError):
        block_diagonal([identity(2, QQ), identity(2, GF(2))])


# -- inverse --------------------------------------------------------------------


@settings(max_examples=50)
@given(square_matrix(max_dim=4))
def test_inverse_round_trip(a):
    if is_invertible(a):
        assert a @ inverse(a) == identity(a.rows, a.field)
        assert inverse(a) @ a == identity(a.rows, a.field)
    else:
        with pytest.raises(ValueError):
            inverse(a)


# -- JSON ------------------------------------------------------------------------


@settings(max_examples=50)
@given(square_matrix(max_dim=3))
def test_matrix_json_round_trip(a):
    doc = matrix_to_json(a)
    assert matrix_from_json(doc) == a


def test_matrix_json_frozen_shape():
    a = matrix_from_rows(QQ, [[F("1/2"), -3]])
    assert matrix_to_json(a) == {
        "field": "Q",
        "rows": 1,
        "cols": 2,
        "entries": [["1", "2"], ["-3", "1"]],
    }
    b = matrix_from_rows(GF(5), [[7]])
    assert matrix_to_json(b) == {"field": "Fp:5", "rows": 1, "cols": 1, "entries": ["2"]}


def test_matrix_json_bad_documents():
    from commrep.errors import SchemaError

    with pytest.raises(SchemaError):
        matrix_from_json({"field": "Q", "rows": 1, "cols": 2, "entries": [["1", "1"]]})
    with pytest.raises(SchemaError):
        matrix_from_json({"field": "Fp:4", "rows": 1, "cols": 1, "entries": ["0"]})
    with pytest.raises(SchemaError):
        matrix_from_json({"field": "Fp:5", "rows": 1, "cols": 1, "entries": ["7"]})
