from __future__ import annotations

import itertools
import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ainfty.chain import ChainComplex, random_complex
from ainfty.dold_kan import (DoldKanError, brute_chain_maps, check_module,
                             cross_to_chain_map, derive_sigma, dk, mapping_space_identify,
                             normalized_chains, normalized_generator, roundtrip_check,
                             roundtrip_module, solve_cross, surjections, z_delta)
from ainfty.examples import dg_pair
from ainfty.linear import GF, QQ


def test_z_delta_is_simplicial():
    assert check_module(z_delta(2, 3, GF(2))) == []


def test_normalized_chains_of_small_simplices():
    N0 = normalized_chains(z_delta(0, 2))
    assert N0.fmt(0) == ["g0"] and N0.basis(1) == [] and N0.basis(2) == []
    N1 = normalized_chains(z_delta(1, 2))
    assert N1.fmt(1) == ["g00 - g01"]
    lab, = N1.basis(1)
    assert N1.complex.diff({lab: QQ.one}) == {"g0": 1, "g1": -1}


@pytest.mark.parametrize("n", range(5))
def test_normalized_ranks(n):
    N = normalized_chains(z_delta(n, n + 1))
    for j in range(n + 2):
        injective = sum(1 for _ in itertools.combinations(range(n + 1), j + 1))
        assert len(N.basis(j)) == injective == (comb(n + 1, j + 1) if j <= n else 0)


def test_normalized_generator_hits_one_face():
    v = normalized_generator(QQ, 2, (0, 2))
    assert v["g02"] == 1 and "g01" not in v and "g12" not in v


def test_surjections_count():
    # surjections [n] ->> [k] correspond to (n-k)-subsets of the n gaps
    for n in range(5):
        assert len(surjections(n)) == 2 ** n


@given(st.integers(0, 10_000), st.sampled_from([2, 3]))
@settings(max_examples=20, deadline=None)
def test_roundtrip_random_complexes(seed, p):
    C = random_complex(GF(p), random.Random(seed), length=3, dmax=2)
    rep = roundtrip_check(C)
    assert rep.ok, rep.detail


def test_roundtrip_module_on_z_delta():
    assert roundtrip_module(z_delta(2, 2, GF(3))).ok


def test_dk_rejects_positive_degrees():
    C = ChainComplex.make(GF(2), {1: ["a"]})
    with pytest.raises(DoldKanError):
        dk(C)


def test_dk_is_simplicial():
    C = ChainComplex.make(GF(3), {-1: ["a"], 0: ["b"]}, {"a": {"b": 1}})
    assert check_module(dk(C, 3)) == []


@pytest.mark.parametrize("n", [1, 2])
def test_cross_systems_are_the_chain_maps(n):
    F = GF(2)
    M = ChainComplex.make(F, {-1: ["a"], 0: ["b"]}, {"a": {"b": 1}})
    systems = solve_cross(n, M)
    brute = brute_chain_maps(F, n, M)
    assert len(systems) == len(brute)
    got = {tuple(sorted((str(k), str(v)) for k, v in cross_to_chain_map(F, n, M, g)[1].f.entries.items()))
           for g in systems}
    want = {tuple(sorted((str(k), str(v)) for k, v in f.f.entries.items())) for f in brute}
    assert got == want


def test_sigma_rule():
    sig, clashes = derive_sigma(4)
    assert clashes == []
    assert all(s == (len(I) + 1) % 2 for I, s in sig.items())


def test_mapping_space_identification_d2():
    A = dg_pair()
    rep = mapping_space_identify(A, "x", "y", 3, cap=10**6)
    assert rep.ok, rep.detail
    assert all(a == b for a, b in rep.sizes.values())
