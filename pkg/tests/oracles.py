"""Reference computations written without the library's A∞ machinery."""
from __future__ import annotations

import itertools

import numpy as np

from ainfty.chain import ChainComplex, ComplexError, cycles
from ainfty.family import shape_space, slots
from ainfty.linear import vadd


# ------------------------------------------------ dg algebras on a small space

def dg_structure(shape, values):
    """Dense d (n x n) and product tensor P[z, x2, x1] from slot values."""
    basis = shape_space(shape)
    labs = [l for d in (-1, 0, 1) for l in basis[d]]
    idx = {l: i for i, l in enumerate(labs)}
    deg = np.array([d for d in (-1, 0, 1) for _ in basis[d]], dtype=np.int64)
    n = len(labs)
    D = np.zeros((n, n), dtype=np.int64)
    P = np.zeros((n, n, n), dtype=np.int64)
    for (arity, ins, out), c in zip(slots(shape), values):
        if arity == 1:
            D[idx[out], idx[ins[0]]] = c
        else:
            P[idx[out], idx[ins[0]], idx[ins[1]]] = c
    return D, P, deg


def dg_accepts(shape, values):
    """d² = 0, Leibniz and associativity over F_2 (signs vanish)."""
    D, P, deg = dg_structure(shape, values)
    if ((D @ D) % 2).any():
        return False
    # d(x2 x1) = d(x2) x1 + x2 d(x1)
    left = np.einsum("wz,zab->wab", D, P)
    right = np.einsum("wzb,za->wab", P, D) + np.einsum("waz,zb->wab", P, D)
    if ((left - right) % 2).any():
        return False
    # (x3 x2) x1 = x3 (x2 x1)
    l3 = np.einsum("wzc,zab->wabc", P, P)
    r3 = np.einsum("waz,zbc->wabc", P, P)
    return not ((l3 - r3) % 2).any()


def dg_polynomials(shape):
    """The dg conditions as sets of square-free monomials over F_2."""
    D, P, deg = dg_structure(shape, list(range(1, len(slots(shape)) + 1)))
    n = len(deg)

    def var(k):
        return frozenset([frozenset([k - 1])]) if k else frozenset()

    def mul(a, b):
        out = set()
        for m1 in a:
            for m2 in b:
                out ^= {m1 | m2}
        return frozenset(out)

    def add(a, b):
        return a ^ b

    polys = set()
    for w, a in itertools.product(range(n), repeat=2):
        acc = frozenset()
        for z in range(n):
            acc = add(acc, mul(var(D[w, z]), var(D[z, a])))
        polys.add(acc)
    for w, a, b in itertools.product(range(n), repeat=3):
        acc = frozenset()
        for z in range(n):
            acc = add(acc, mul(var(D[w, z]), var(P[z, a, b])))
            acc = add(acc, mul(var(P[w, z, b]), var(D[z, a])))
            acc = add(acc, mul(var(P[w, a, z]), var(D[z, b])))
        polys.add(acc)
    for w, a, b, c in itertools.product(range(n), repeat=4):
        acc = frozenset()
        for z in range(n):
            acc = add(acc, mul(var(P[w, z, c]), var(P[z, a, b])))
            acc = add(acc, mul(var(P[w, a, z]), var(P[z, b, c])))
        polys.add(acc)
    polys.discard(frozenset())
    return polys


# ------------------------------------------------------------ random complexes

def small_complex(F, rng, name):
    """Dims <= 1 in degrees -1, 0, 1, not all zero."""
    while True:
        basis = {d: [f"{name}{d + 1}{i}" for i in range(rng.randint(0, 1))] for d in (-1, 0, 1)}
        if not any(basis.values()):
            continue
        dd = {}
        for d in (-1, 0):
            for a in basis[d]:
                v = {b: rng.randrange(F.size) for b in basis[d + 1]}
                v = {b: c for b, c in v.items() if c}
                if v:
                    dd[a] = v
        try:
            return ChainComplex.make(F, basis, dd, window=(-1, 1))
        except ComplexError:
            continue


def random_closed(F, H, rng):
    f = {}
    for z in cycles(H, 0):
        c = rng.randrange(F.size)
        if c:
            vadd(F, f, z, c)
    return f
