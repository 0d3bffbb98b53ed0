from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ainfty.linear import (GF, QQ, FieldError, GradedSpace, field_from_spec,
                           nullspace, rank, rref, shift, solve, vadd, vclean,
                           vfmt, vscale)

FIELDS = [QQ, GF(2), GF(3), GF(5)]


def elems(F):
    if F is QQ:
        return st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.integers(0, F.p - 1)


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_field_axioms(F):
    @given(elems(F), elems(F), elems(F))
    @settings(max_examples=60, deadline=None)
    def inner(a, b, c):
        assert F.add(a, F.neg(a)) == F.zero
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        if not F.is_zero(a):
            assert F.mul(a, F.inv(a)) == F.one
        assert F.coerce(F.fmt(a)) == a
    inner()


def test_field_specs():
    assert field_from_spec("Q") is QQ
    assert field_from_spec("Fp:3") is GF(3)
    assert field_from_spec("F7") is GF(7)
    assert field_from_spec({"Fp": 2}) is GF(2)
    with pytest.raises(FieldError):
        field_from_spec("F4")
    with pytest.raises(FieldError):
        field_from_spec("R")
    with pytest.raises(FieldError):
        QQ.elements()


def test_coerce_fraction_mod_p():
    F = GF(5)
    assert F.coerce(Fraction(1, 2)) == 3
    assert F.coerce("1/2") == 3
    assert F.coerce(-1) == 4


def test_sparse_vectors_drop_zeros():
    F = GF(3)
    acc = {"a": 1}
    vadd(F, acc, {"a": 2, "b": 1})
    assert acc == {"b": 1}
    assert vscale(F, {"a": 1, "b": 2}, 0) == {}
    assert vclean(F, {"a": 0, "b": 0, "c": 1}) == {"c": 1}
    assert vfmt(QQ, {"g0": Fraction(1), "g1": Fraction(-1)}, ["g0", "g1"]) == "g0 - g1"


matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, 2), min_size=n, max_size=n), min_size=1, max_size=4)
    .map(lambda rows: (rows, n)))


@given(matrices)
@settings(max_examples=80, deadline=None)
def test_rank_nullity_over_f3(m):
    rows, n = m
    F = GF(3)
    r = rank(F, rows, n)
    ns = nullspace(F, rows, n)
    assert r + len(ns) == n
    for v in ns:
        for row in rows:
            assert sum(a * b for a, b in zip(row, v)) % 3 == 0


@given(matrices)
@settings(max_examples=60, deadline=None)
def test_rref_idempotent_and_solve(m):
    rows, n = m
    F = GF(3)
    R, piv = rref(F, rows, n)
    if R:
        assert rref(F, R, n) == (R, piv)
    x = [1] * n
    b = [sum(a * c for a, c in zip(row, x)) % 3 for row in rows]
    sol = solve(F, rows, n, b)
    assert sol is not None
    assert [sum(a * c for a, c in zip(row, sol)) % 3 for row in rows] == b


def test_solve_inconsistent():
    assert solve(GF(2), [[1, 0], [1, 0]], 2, [0, 1]) is None


def test_graded_space_and_shift():
    V = GradedSpace.make({-1: ["a"], 0: ["b", "c"]}, (-1, 1))
    assert V.dim() == 3 and V.dim(0) == 2 and V.deg("a") == -1
    W = shift(V, 1)
    assert W.deg("a") == -2 and W.dim(-1) == 2
