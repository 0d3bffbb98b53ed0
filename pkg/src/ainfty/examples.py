"""Small example categories used by the tests and the CLI corpus."""
from __future__ import annotations

from .chain import ChainComplex
from .core import AInfFunctor, ch_category, make_category
from .linear import GF
from .nerve import minimal_category


def kappa(F=None):
    """One object with a closed degree -1 endomorphism g (m² of g with
    itself lands in degree -2 and vanishes)."""
    F = F or GF(2)
    return make_category(F, ["x"], {("x", "x"): {0: ["1x"], -1: ["g"]}},
                         {}, {"x": "1x"}, name="K")


def kappa_prime(F=None):
    """One object, only its unit."""
    F = F or GF(2)
    return make_category(F, ["x"], {("x", "x"): {0: ["1x"]}}, {}, {"x": "1x"}, name="K'")


def retract_pair(F=None):
    """B ⊂ A with A(x, y) = <g, a, b>, m¹a = b, and B(x, y) = <g>.

    The inclusion is a quasi-equivalence: the extra summand is acyclic.
    """
    F = F or GF(2)
    A = make_category(F, ["x", "y"],
                      {("x", "x"): {0: ["1x"]}, ("y", "y"): {0: ["1y"]},
                       ("x", "y"): {0: ["g", "b"], -1: ["a"]}},
                      {1: {("a",): {"b": 1}}}, {"x": "1x", "y": "1y"}, name="A")
    B = make_category(F, ["x", "y"],
                      {("x", "x"): {0: ["1x"]}, ("y", "y"): {0: ["1y"]},
                       ("x", "y"): {0: ["g"]}},
                      {}, {"x": "1x", "y": "1y"}, name="B")
    one = F.one
    inc = AInfFunctor(B, A, {"x": "x", "y": "y"},
                      {1: {("1x",): {"1x": one}, ("1y",): {"1y": one}, ("g",): {"g": one}}},
                      name="incl")
    return B, A, inc


def dg_pair(F=None):
    """Two objects over F_2, homs in degrees [-2, 1] with at most two
    basis elements per degree.

    Hom(x, y): a (-2), b1 b2 (-1), c1 c2 (0), e (1) with m¹b1 = c1.
    End(x): 1x and t (-1) with c2∘t = b2.
    """
    F = F or GF(2)
    homs = {("x", "x"): {0: ["1x"], -1: ["t"]},
            ("y", "y"): {0: ["1y"]},
            ("x", "y"): {-2: ["a"], -1: ["b1", "b2"], 0: ["c1", "c2"], 1: ["e"]}}
    ops = {1: {("b1",): {"c1": 1}},
           2: {("c2", "t"): {"b2": 1}}}
    return make_category(F, ["x", "y"], homs, ops, {"x": "1x", "y": "1y"}, name="D2")


def a3(F=None):
    """A genuinely A∞ category: objects 0..3 in a row, m³(a2, a1, a0) = c
    with m¹c = e and m²(a2, m²(a1, a0)) = -e."""
    F = F or GF(3)
    homs = {(i, i): {0: [f"1_{i}"]} for i in range(4)}
    homs[(0, 1)] = {0: ["a0"]}
    homs[(1, 2)] = {0: ["a1"]}
    homs[(2, 3)] = {0: ["a2"]}
    homs[(0, 2)] = {0: ["b"]}
    homs[(0, 3)] = {-1: ["c"], 0: ["e"]}
    ops = {1: {("c",): {"e": 1}},
           2: {("a1", "a0"): {"b": 1}, ("a2", "b"): {"e": -1}},
           3: {("a2", "a1", "a0"): {"c": 1}}}
    return make_category(F, [0, 1, 2, 3], homs, ops, {i: f"1_{i}" for i in range(4)},
                         name="A3")


def two_term(F, name, d):
    """K -> K in degrees 0, 1 with differential d."""
    return ChainComplex.make(F, {0: [f"{name}0"], 1: [f"{name}1"]},
                             {f"{name}0": {f"{name}1": d}} if d else {})


def ch_fragment(F=None):
    """Ch_K on a few small complexes."""
    F = F or GF(3)
    X = ChainComplex.make(F, {0: ["u"]})
    Y = ChainComplex.make(F, {-1: ["v0"], 0: ["v1"]}, {"v0": {"v1": 1}})
    Z = ChainComplex.make(F, {0: ["w0"], 1: ["w1"]})
    return ch_category({"X": X, "Y": Y, "Z": Z}, name="Ch")


def library(F=None):
    """The named corpus: name -> category."""
    F2 = GF(2)
    B, A, _ = retract_pair(F2)
    return {
        "K": kappa(F2),
        "K'": kappa_prime(F2),
        "min2": minimal_category(2, F2),
        "retract-A": A,
        "retract-B": B,
        "D2": dg_pair(F2),
        "A3-F3": a3(GF(3)),
        "A3-F2": a3(F2),
        "Ch-F3": ch_fragment(GF(3)),
    }


def matrix_category(F, ranks, name="Mat"):
    """Free modules of the given ranks, all morphisms in degree 0.

    Hom(a, b) has the matrix units E[r][c] (r < rank b, c < rank a), except
    that on End(a) the unit E[0][0] is replaced by the identity.
    """
    objs = list(ranks)
    homs, basis = {}, {}
    for a in objs:
        for b in objs:
            labs = []
            for r in range(ranks[b]):
                for c in range(ranks[a]):
                    if a == b and r == c == 0:
                        lab = f"1{a}"
                        basis[lab] = {(r2, r2): F.one for r2 in range(ranks[a])}
                    else:
                        lab = f"{b}{r}{a}{c}"
                        basis[lab] = {(r, c): F.one}
                    labs.append(lab)
            if labs:
                homs[(a, b)] = {0: labs}
    info = {l: (a, b) for (a, b), h in homs.items() for l in h[0]}

    def express(a, b, M):
        out = {}
        if a == b:
            c0 = M.get((0, 0), F.zero)
            if c0:
                out[f"1{a}"] = c0
                M = dict(M)
                for r in range(ranks[a]):
                    M[(r, r)] = F.sub(M.get((r, r), F.zero), c0)
        for (r, c), v in M.items():
            if v and not (a == b and r == c == 0):
                out[f"{b}{r}{a}{c}"] = v
        return out

    m2 = {}
    for g, (b, c) in info.items():
        for f, (a, b2) in info.items():
            if b2 != b:
                continue
            M = {}
            for (r, k), x in basis[g].items():
                for (k2, s), y in basis[f].items():
                    if k == k2:
                        M[(r, s)] = F.add(M.get((r, s), F.zero), F.mul(x, y))
            v = express(a, c, M)
            if v:
                m2[(g, f)] = v
    return make_category(F, objs, homs, {2: m2}, {a: f"1{a}" for a in objs},
                         auto_units=False, name=name)
