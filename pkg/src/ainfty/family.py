"""The F_2 family of one-object (m¹, m²) tables on small graded spaces.

A shape (a, b, c) is a space with a, b, c basis elements in degrees -1, 0,
1.  Every structure constant of m¹ and m² compatible with the degrees is a
free bit.  ``BooleanPolynomials`` lets the same checker run on symbolic
tables, one variable per bit.
"""
from __future__ import annotations

import hashlib
import itertools

from .core import AInfCategory, check_relations
from .linear import GradedSpace


def shape_space(shape):
    a, b, c = shape
    return {-1: [f"u{i}" for i in range(a)], 0: [f"v{i}" for i in range(b)],
            1: [f"w{i}" for i in range(c)]}


def shapes(total=4):
    out = []
    for a, b, c in itertools.product(range(total + 1), repeat=3):
        if 1 <= a + b + c <= total:
            out.append((a, b, c))
    return sorted(out, key=lambda s: (sum(s), s))


def slots(shape):
    """Free structure constants: (arity, inputs, output), deterministic order."""
    basis = shape_space(shape)
    deg = {l: d for d, ls in basis.items() for l in ls}
    labs = [l for d in (-1, 0, 1) for l in basis[d]]
    out = []
    for x in labs:
        for y in basis.get(deg[x] + 1, []):
            out.append((1, (x,), y))
    for x2 in labs:
        for x1 in labs:
            for y in basis.get(deg[x2] + deg[x1], []):
                out.append((2, (x2, x1), y))
    return out


def table_bits(shape):
    return len(slots(shape))


def build(F, shape, values):
    """Category from slot values (a sequence aligned with ``slots``)."""
    basis = shape_space(shape)
    V = GradedSpace.make(basis, (-1, 1))
    ops = {}
    for (d, key, y), c in zip(slots(shape), values):
        if not F.is_zero(c):
            ops.setdefault(d, {}).setdefault(key, {})[y] = c
    return AInfCategory(F, ["*"], {("*", "*"): V}, ops, None, 3, f"shape{shape}")


def tables(F, shape):
    """Every table of the shape over a finite field."""
    n = table_bits(shape)
    for values in itertools.product(F.elements(), repeat=n):
        yield values


def pass_set(F, shape, arity=3):
    """Bit strings of the tables accepted by check_relations."""
    out = []
    for values in tables(F, shape):
        if check_relations(build(F, shape, values), arity).ok:
            out.append("".join(F.fmt(v) for v in values))
    return out


def exhaustive_shapes(max_bits=14, total=4):
    return [s for s in shapes(total) if table_bits(s) <= max_bits]


def pass_set_hash(F, max_bits=14, total=4):
    """sha256 over "shape:bits" lines of every accepted table."""
    h = hashlib.sha256()
    counts = {}
    for s in exhaustive_shapes(max_bits, total):
        acc = pass_set(F, s)
        counts[s] = (len(acc), F.size ** table_bits(s))
        for bits in acc:
            h.update(f"{s}:{bits}\n".encode())
    return h.hexdigest(), counts


# ------------------------------------------------------ symbolic coefficients

class BooleanPolynomials:
    """F_2[x_1..x_n]/(x_i² - x_i) with field-like methods.

    An element is a frozenset of monomials; a monomial is a frozenset of
    variable indices.  Enough of the Field interface for check_relations.
    """
    char = 2
    size = None
    name = "B2"

    def __init__(self):
        self.zero = frozenset()
        self.one = frozenset([frozenset()])

    def var(self, i):
        return frozenset([frozenset([i])])

    def add(self, a, b):
        return a ^ b

    def neg(self, a):
        return a

    def sub(self, a, b):
        return a ^ b

    def mul(self, a, b):
        out = set()
        for m1 in a:
            for m2 in b:
                out ^= {m1 | m2}
        return frozenset(out)

    def sign(self, e):
        return self.one

    def is_zero(self, a):
        return not a

    def coerce(self, x):
        return x

    def fmt(self, a):
        if not a:
            return "0"
        terms = sorted(("*".join(f"x{i}" for i in sorted(m)) or "1") for m in a)
        return " + ".join(terms)

    def __repr__(self):
        return "B2"


def symbolic_category(shape):
    """One variable per slot: returns (category, ring, slots)."""
    R = BooleanPolynomials()
    sl = slots(shape)
    return build(R, shape, [R.var(i) for i in range(len(sl))]), R, sl


def relation_polynomials(shape, arity=3):
    """The set of polynomials whose common zeros are the accepted tables."""
    A, R, _ = symbolic_category(shape)
    rep = check_relations(A, arity)
    polys = set()
    for _, residual in rep.witnesses:
        for c in residual.values():
            polys.add(c)
    return polys
