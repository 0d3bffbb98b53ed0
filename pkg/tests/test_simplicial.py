from __future__ import annotations

from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ainfty.simplicial import (LevelOverflow, SimplicialError, SimplicialLevels,
                               codegeneracy, coface, compose_maps, free_category,
                               ho_iso_to_category, hom_right, homotopy_category_qcat,
                               horns, inner_horn_fill, is_quasicategory, monotone_maps,
                               nerve_cat, validate)


def simplex_set(n, L, allowed=None):
    """Δ^n (or the subcomplex whose simplices land in one of ``allowed``)."""
    def ok(a):
        return allowed is None or any(set(a) <= set(S) for S in allowed)
    levels = [[a for a in monotone_maps(m, n) if ok(a)] for m in range(L + 1)]
    return SimplicialLevels(levels, lambda alpha, s: compose_maps(s, alpha), name="Δ")


@pytest.mark.parametrize("m,n", [(0, 0), (1, 2), (2, 3), (3, 1)])
def test_monotone_map_count(m, n):
    assert len(monotone_maps(m, n)) == comb(m + n + 1, m + 1)


@given(st.integers(2, 6), st.data())
def test_cosimplicial_identities(n, data):
    i = data.draw(st.integers(0, n))
    j = data.draw(st.integers(0, n))
    if i < j:
        # d^j d^i = d^i d^{j-1}
        assert compose_maps(coface(n, j), coface(n - 1, i)) == \
            compose_maps(coface(n, i), coface(n - 1, j - 1))
    k = data.draw(st.integers(0, n - 1))
    # s^k d^k = s^k d^{k+1} = id
    assert compose_maps(codegeneracy(n - 1, k), coface(n, k)) == tuple(range(n))
    assert compose_maps(codegeneracy(n - 1, k), coface(n, k + 1)) == tuple(range(n))


def test_standard_simplex_is_quasicategory():
    X = simplex_set(2, 3)
    assert validate(X, sample=None).ok
    assert X.sizes() == [3, 6, 10, 15]
    assert is_quasicategory(X).ok


def test_horn_is_not_quasicategory():
    X = simplex_set(2, 3, allowed=[(0, 1), (1, 2)])
    assert validate(X).ok
    rep = is_quasicategory(X, 2)
    assert not rep.ok
    h = rep.counterexamples[0]
    assert (h.n, h.k) == (2, 1) and inner_horn_fill(X, h) == []


def test_horn_enumeration_counts():
    X = simplex_set(2, 3)
    hs = list(horns(X, 2, 1))
    # pairs of composable edges of Δ²
    assert len(hs) == sum(1 for a in X.levels[1] for b in X.levels[1] if a[1] == b[0])
    with pytest.raises(LevelOverflow):
        list(horns(X, 4, 1))
    with pytest.raises(SimplicialError):
        inner_horn_fill(X, next(iter(horns(X, 2, 0))))


def test_broken_face_detected():
    def act(alpha, s):
        out = compose_maps(s, alpha)
        return out[::-1] if len(out) == 2 and out == (0, 2) else out
    levels = [monotone_maps(m, 2) for m in range(3)]
    assert not validate(SimplicialLevels(levels, act)).ok


def test_nerve_of_category():
    C = free_category(["a", "b", "c"], {"f": ("a", "b"), "g": ("b", "c")})
    X = nerve_cat(C, 3)
    assert validate(X, sample=None).ok
    assert is_quasicategory(X).ok
    H = homotopy_category_qcat(X)
    assert ho_iso_to_category(H, C)
    R = hom_right(X, ("a", ()), ("c", ()))
    assert [len(l) for l in R.levels] == [1, 1, 1]
