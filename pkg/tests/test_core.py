from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ainfty.core import (AInfFunctor, CategoryError, HoCategory, bar_differential,
                         check_functor, check_quasi_equivalence, check_relations,
                         check_units, identity_functor, make_category, opposite,
                         table_signature)
from ainfty.examples import a3, kappa, kappa_prime, library, retract_pair
from ainfty.family import build, shapes, slots
from ainfty.linear import GF, QQ, WindowError

LIB = library()


@pytest.mark.parametrize("name", sorted(LIB))
def test_library_relations_and_units(name):
    A = LIB[name]
    assert check_relations(A).ok
    assert check_units(A).ok


@pytest.mark.parametrize("name", sorted(LIB))
def test_bar_differential_squares_to_zero(name):
    A = LIB[name]
    for d in range(1, 4):
        for key in A.composable_tuples(d):
            w = {key: A.field.one}
            assert bar_differential(A, bar_differential(A, w)) == {}
            assert bar_differential(A, bar_differential(A, w, op=True), op=True) == {}


def test_corrupted_a3_fails():
    F = GF(3)
    A = a3(F)
    ops = {d: dict(t) for d, t in A.ops.items()}
    ops[3] = {("a2", "a1", "a0"): {"c": 2}}
    B = make_category(F, A.objects, {k: {d: ls for d, ls in V.basis} for k, V in A.homs.items()},
                      ops, A.units, auto_units=False)
    rep = check_relations(B)
    assert not rep.ok
    assert rep.witnesses[0][0] == ("a2", "a1", "a0")


def test_relation_arity_skip_is_reported():
    rep = check_relations(kappa(), 5)
    assert rep.info["checked_up_to"] == 3 and rep.info["skipped_above"] == 3


@pytest.mark.parametrize("name", sorted(LIB))
def test_opposite_involution(name):
    A = LIB[name]
    assert table_signature(opposite(opposite(A))) == table_signature(A)
    assert check_relations(opposite(A)).ok


def test_opposite_without_m1_negation_fails_on_a3():
    A = a3(QQ)
    assert check_relations(opposite(A)).ok
    assert not check_relations(opposite(A, negate_m1=False)).ok


family_tables = st.sampled_from([s for s in shapes(3)]).flatmap(
    lambda s: st.lists(st.integers(0, 1), min_size=len(slots(s)), max_size=len(slots(s)))
    .map(lambda bits: (s, bits)))


@given(family_tables)
@settings(max_examples=150, deadline=None)
def test_opposite_preserves_acceptance_on_family(t):
    s, bits = t
    A = build(GF(2), s, bits)
    assert table_signature(opposite(opposite(A))) == table_signature(A)
    assert check_relations(A, 3).ok == check_relations(opposite(A), 3).ok


def test_unit_must_be_degree_zero_endomorphism():
    with pytest.raises(CategoryError):
        make_category(GF(2), ["x"], {("x", "x"): {-1: ["g"]}}, {}, {"x": "g"})


def test_op_outside_window():
    with pytest.raises(WindowError):
        make_category(GF(2), ["x", "y"], {("x", "y"): {0: ["f"]}, ("y", "x"): {0: ["g"]}},
                      {2: {("g", "f"): {"f": 1}}}, None)


def test_functors():
    B, A, inc = retract_pair()
    assert check_functor(inc).ok
    assert check_functor(identity_functor(A)).ok
    assert check_quasi_equivalence(inc).ok
    bad = AInfFunctor(B, A, {"x": "x", "y": "y"},
                      {1: {("1x",): {"1x": 1}, ("1y",): {"1y": 1}, ("g",): {"b": 1}}})
    assert check_functor(bad).ok
    rep = check_quasi_equivalence(bad)
    assert not rep.ok and not rep.info["we1"]


def test_we2_witness_on_kappa_collapse():
    K, K1 = kappa(), kappa_prime()
    Fn = AInfFunctor(K, K1, {"x": "x"}, {1: {("1x",): {"1x": 1}}})
    assert check_functor(Fn).ok
    rep = check_quasi_equivalence(Fn)
    assert rep.info["we1"] and not rep.info["we2"]
    (kind, ((x, y), per)), = rep.witnesses
    assert kind == "we2" and per == {-1: (1, 0)}


def test_homotopy_category_min2():
    H = HoCategory(LIB["min2"])
    assert H.dim(0, 2) == 1 and H.dim(2, 0) == 0
    j01, j12 = H.vec(0, 1, (1,)), H.vec(1, 2, (1,))
    assert H.compose(0, 1, 2, (1,), (1,)) == (1,)
    assert H.find_iso(0, 1) is None
    assert H.find_iso(0, 0) == ((1,), (1,))
    assert j01 and j12
