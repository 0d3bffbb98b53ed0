from __future__ import annotations

import random

import pytest

from ainfty.core import CategoryError, check_functor, make_category
from ainfty.examples import a3, kappa, library
from ainfty.linear import GF
from ainfty.modules import (PreNat, RepContext, check_dg_axioms, check_rep_functor,
                            check_rep_quasi_equivalence, eps, prenat_boundary,
                            prenat_product, random_prenat, rep_module)
from ainfty.nerve import minimal_category

F2_NAMES = ["K", "min2", "retract-A", "D2", "A3-F2"]


def test_eps():
    assert eps([]) == 1
    assert eps([0, 0]) == 2
    assert eps([-1, 0, 1]) == 1 + 0 + 0 + 2


@pytest.mark.parametrize("name", F2_NAMES)
def test_dg_axioms_over_f2(name):
    rep = check_dg_axioms(RepContext(library()[name]), samples=100)
    assert rep.ok, rep.failures[:3]


@pytest.mark.parametrize("name", F2_NAMES)
def test_rep_is_a_module_and_functor(name):
    A = library()[name]
    ctx = RepContext(A)
    for x in A.objects:
        assert check_functor(rep_module(A, x, ctx), 3).ok
    assert check_rep_functor(ctx).ok


@pytest.mark.parametrize("name", F2_NAMES)
def test_rep_quasi_equivalence(name):
    rep = check_rep_quasi_equivalence(library()[name])
    assert rep.ok, rep.witnesses


def test_boundary_of_degree_zero_component():
    A = library()["D2"]
    ctx = RepContext(A, 2)
    rng = random.Random(1)
    T = random_prenat(ctx, "x", "y", 0, rng)
    T0 = PreNat(ctx, "x", "y", 0, {k: v for k, v in T.comps.items() if not k[1]})
    dT = prenat_boundary(T0, 0)
    assert all(not a for _, a in dT.clean().comps)


def test_identity_is_closed_and_neutral():
    A = library()["retract-A"]
    ctx = RepContext(A)
    rng = random.Random(3)
    T = random_prenat(ctx, "x", "y", -1, rng)
    assert prenat_boundary(ctx.identity("x")).is_zero()
    assert prenat_product(T, ctx.identity("x")) == T
    assert prenat_product(ctx.identity("y"), T) == T


def test_needs_units():
    A = make_category(GF(2), ["x"], {("x", "x"): {0: ["e"]}}, {2: {("e", "e"): {"e": 1}}})
    with pytest.raises(CategoryError):
        RepContext(A)


def test_broken_relations_are_detected():
    A = a3(GF(2))
    homs = {k: {d: ls for d, ls in V.basis} for k, V in A.homs.items()}
    ops = {d: dict(t) for d, t in A.ops.items() if d != 3}
    B = make_category(GF(2), A.objects, homs, ops, A.units, auto_units=False)
    ctx = RepContext(B)
    assert not check_dg_axioms(ctx, samples=100).ok
    assert not check_rep_functor(ctx).ok


@pytest.mark.parametrize("A", [minimal_category(2, GF(3)), kappa(GF(3)), a3(GF(3))],
                         ids=["min2", "K", "A3"])
def test_printed_boundary_signs_fail_in_odd_characteristic(A):
    # the boundary formula carries a sign on one m² term only; over F_3 it
    # does not square to zero
    rep = check_dg_axioms(RepContext(A), samples=60)
    assert any(kind == "d^2" for kind, _ in rep.failures)
