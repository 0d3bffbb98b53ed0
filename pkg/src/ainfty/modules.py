"""Representable right modules, pre-natural transformations and Rep.

Rep(x) sends y to the complex Hom_A(y, x).  Elements of Hom_Ch between
two such complexes are matrix-unit vectors ``{(target, source): c}`` over
basis labels of A.  A pre-natural transformation stores one such vector
per key ``(y0, a)`` where ``a = (a_d, ..., a_1)`` is a composable tuple of
A^op and ``y0`` the object where its first input starts.

Composites written m²_Ch(u, v) below always mean "u first, then v" with
the Ch sign (-1)^{|u|(|v|+1)}.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .chain import cohomology, hom_deg, m1_ch, m2_ch
from .core import (AInfFunctor, CategoryError, Report, ch_category, coderivation,
                   functor_residual, opposite)
from .linear import WindowError, rank, vadd


def eps(degs):
    """ε(f_n, ..., f_1) = Σ_{i<j} (deg f_i + 1)(deg f_j + 1) + 1."""
    s = 1
    for i in range(len(degs)):
        for j in range(i + 1, len(degs)):
            s += (degs[i] + 1) * (degs[j] + 1)
    return s


def deg_prime(A, labels):
    return sum(A.deg(l) for l in labels) + len(labels)


class RepContext:
    """Shared caches for the representable modules of one category."""

    def __init__(self, A, arity=3):
        if not A.units:
            raise CategoryError("Rep needs a unital category")
        self.A = A
        self.F = A.field
        self.Aop = opposite(A)
        self.arity = arity
        self._chains = {}
        self._tuples = {}

    def chain(self, y, x):
        """Rep(x)_0 y = Hom_A(y, x)."""
        if (y, x) not in self._chains:
            self._chains[(y, x)] = self.A.hom_chain(y, x)
        return self._chains[(y, x)]

    def op_tuples(self, d, normalized=False):
        """Composable tuples of A^op of length d (with the start object)."""
        key = (d, normalized)
        if key not in self._tuples:
            out = []
            if d == 0:
                out = [(y, ()) for y in self.A.objects]
            else:
                units = set(self.A.units.values())
                for a in self.Aop.composable_tuples(d):
                    if normalized and units.intersection(a):
                        continue
                    out.append((self.A.tgt(a[-1]), a))
            self._tuples[key] = out
        return self._tuples[key]

    def end_obj(self, y0, a):
        """y_d for the tuple a (in A, the source of a_d)."""
        return self.A.src(a[0]) if a else y0

    def rep_component(self, x, a):
        """Rep(x)^d(a_d..a_1): z ↦ (-1)^{ε(a)} m^{d+1}(z, a_1, ..., a_d)."""
        A, F = self.A, self.F
        y0 = A.tgt(a[-1])
        s = F.sign(eps([A.deg(l) for l in a]))
        out = {}
        for z in self.chain(y0, x).labels():
            key = (z,) + tuple(reversed(a))
            for lab, c in A.m_basis(key).items():
                vadd(F, out, {(lab, z): F.mul(s, c)})
        return out

    def identity(self, x):
        T = PreNat(self, x, x, 0)
        for y in self.A.objects:
            C = self.chain(y, x)
            T.comps[(y, ())] = {(l, l): self.F.one for l in C.labels()}
        return T


@dataclass
class PreNat:
    ctx: RepContext
    src: object          # object x0 of the source module Rep(x0)
    tgt: object          # object x1 of the target module Rep(x1)
    g: int
    comps: dict = field(default_factory=dict)

    def get(self, y0, a):
        return self.comps.get((y0, tuple(a)), {})

    def clean(self):
        self.comps = {k: v for k, v in self.comps.items() if v}
        return self

    def __eq__(self, other):
        return (self.src, self.tgt) == (other.src, other.tgt) and \
            self.clean().comps == other.clean().comps

    def is_zero(self):
        return not self.clean().comps

    def add(self, other, c=None):
        F = self.ctx.F
        for k, v in other.comps.items():
            acc = self.comps.setdefault(k, {})
            vadd(F, acc, v, c)
        return self.clean()

    def copy(self):
        return PreNat(self.ctx, self.src, self.tgt, self.g,
                      {k: dict(v) for k, v in self.comps.items()})

    def check_degrees(self):
        A = self.ctx.A
        for (y0, a), v in self.comps.items():
            want = sum(A.deg(l) for l in a) + self.g - len(a)
            if v and hom_deg(self.ctx.chain(y0, self.src),
                             self.ctx.chain(self.ctx.end_obj(y0, a), self.tgt), v) != want:
                raise WindowError(f"component {(y0, a)} has the wrong degree")


def _m2(ctx, X, Y, Z, inner, outer):
    if not inner or not outer:
        return {}
    return m2_ch(X, Y, Z, inner, outer)


def prenat_boundary(T, arity=None):
    """𝔡T on every composable A^op tuple of length <= arity.

    Terms: m¹_Ch T^d(a); F_1^{d-s}(a_d..a_{s+1}) after T^s(a_s..a_1) for
    s = 0..d-1; T^{d-s}(a_d..a_{s+1}) after F_0^s(a_s..a_1) for s = 1..d with
    sign (-1)^{(deg T - 1) deg'(a_s..a_1)}; and (-1)^{deg T} T(d̂^op a).
    """
    ctx = T.ctx
    A, F = ctx.A, ctx.F
    arity = ctx.arity if arity is None else arity
    out = PreNat(ctx, T.src, T.tgt, T.g + 1)
    x0, x1 = T.src, T.tgt
    for d in range(arity + 1):
        for y0, a in ctx.op_tuples(d):
            yd = ctx.end_obj(y0, a)
            acc = {}
            v = T.get(y0, a)
            if v:
                vadd(F, acc, m1_ch(ctx.chain(y0, x0), ctx.chain(yd, x1), v))
            for s in range(0, d):
                inner = T.get(y0, a[d - s:])
                if not inner:
                    continue
                ys = ctx.end_obj(y0, a[d - s:])
                outer = ctx.rep_component(x1, a[: d - s])
                vadd(F, acc, _m2(ctx, ctx.chain(y0, x0), ctx.chain(ys, x1),
                                 ctx.chain(yd, x1), inner, outer))
            for s in range(1, d + 1):
                ys = ctx.end_obj(y0, a[d - s:])
                outer = T.get(ys, a[: d - s])
                if not outer:
                    continue
                inner = ctx.rep_component(x0, a[d - s:])
                sg = F.sign((T.g - 1) * deg_prime(A, a[d - s:]))
                vadd(F, acc, _m2(ctx, ctx.chain(y0, x0), ctx.chain(ys, x0),
                                 ctx.chain(yd, x1), inner, outer), sg)
            if d >= 1:
                sg = F.sign(T.g)
                for k in range(1, d + 1):
                    for w, c in coderivation(ctx.Aop, k, a).items():
                        tv = T.get(y0, w)
                        if tv:
                            vadd(F, acc, tv, F.mul(sg, c))
            if acc:
                out.comps[(y0, a)] = acc
    return out


def prenat_product(T2, T1, arity=None):
    """(T2 ⋄ T1)^d(a) = Σ_{n=0}^{d} T1^n(a_n..a_1) followed by T2^{d-n}(a_d..a_{n+1})."""
    if T1.tgt != T2.src:
        raise CategoryError("module mismatch in product")
    ctx = T1.ctx
    F = ctx.F
    arity = ctx.arity if arity is None else arity
    out = PreNat(ctx, T1.src, T2.tgt, T1.g + T2.g)
    for d in range(arity + 1):
        for y0, a in ctx.op_tuples(d):
            yd = ctx.end_obj(y0, a)
            acc = {}
            for n in range(0, d + 1):
                inner = T1.get(y0, a[d - n:])
                if not inner:
                    continue
                yn = ctx.end_obj(y0, a[d - n:])
                outer = T2.get(yn, a[: d - n])
                if not outer:
                    continue
                vadd(F, acc, _m2(ctx, ctx.chain(y0, T1.src), ctx.chain(yn, T1.tgt),
                                 ctx.chain(yd, T2.tgt), inner, outer))
            if acc:
                out.comps[(y0, a)] = acc
    return out


# --------------------------------------------------------------- sampling

def prenat_basis(ctx, x0, x1, g, arity=None, normalized=True):
    """Coordinates ((y0, a), (target, source)) of degree-g pre-nats."""
    A = ctx.A
    arity = ctx.arity if arity is None else arity
    coords = []
    for d in range(arity + 1):
        for y0, a in ctx.op_tuples(d, normalized):
            yd = ctx.end_obj(y0, a)
            want = sum(A.deg(l) for l in a) + g - d
            S, Tc = ctx.chain(y0, x0), ctx.chain(yd, x1)
            for dz in S.degrees():
                for z in S.labels(dz):
                    for w in Tc.labels(dz + want):
                        coords.append(((y0, a), (w, z)))
    return coords


def random_prenat(ctx, x0, x1, g, rng, density=0.5, arity=None):
    F = ctx.F
    T = PreNat(ctx, x0, x1, g)
    elems = [e for e in F.elements() if e != F.zero] if F.size else [F.one, F.neg(F.one)]
    for key, mu in prenat_basis(ctx, x0, x1, g, arity):
        if rng.random() < density:
            vadd(F, T.comps.setdefault(key, {}), {mu: rng.choice(elems)})
    return T.clean()


@dataclass
class DGReport:
    ok: bool
    samples: int
    failures: list

    def __bool__(self):
        return self.ok


def check_dg_axioms(ctx, samples=100, seed=0, degrees=(-1, 0, 1), arity=None):
    """𝔡² = 0, Leibniz and ⋄-associativity on random triples, plus the
    identity laws.  Components live on tuples of length <= arity; every
    identity is exact on those tuples."""
    rng = random.Random(seed)
    A = ctx.A
    objs = list(A.objects)
    fails = []
    for i in range(samples):
        x0, x1, x2, x3 = (rng.choice(objs) for _ in range(4))
        g1, g2, g3 = (rng.choice(degrees) for _ in range(3))
        T1 = random_prenat(ctx, x0, x1, g1, rng, arity=arity)
        T2 = random_prenat(ctx, x1, x2, g2, rng, arity=arity)
        T3 = random_prenat(ctx, x2, x3, g3, rng, arity=arity)
        d = lambda T: prenat_boundary(T, arity)
        p = lambda u, v: prenat_product(u, v, arity)
        if not d(d(T1)).is_zero():
            fails.append(("d^2", i))
        lhs = d(p(T2, T1))
        rhs = p(d(T2), T1).add(p(T2, d(T1)), ctx.F.sign(T2.g))
        if not lhs == rhs:
            fails.append(("leibniz", i))
        if not p(T3, p(T2, T1)) == p(p(T3, T2), T1):
            fails.append(("assoc", i))
        I0, I1 = ctx.identity(x0), ctx.identity(x1)
        if not (p(T1, I0) == T1 and p(I1, T1) == T1):
            fails.append(("identity", i))
        if not d(I0).is_zero():
            fails.append(("d(id)", i))
    return DGReport(not fails, samples, fails)


# ------------------------------------------------------------- Rep functor

def rep_module(A, x, ctx=None):
    """Rep(x) as an A∞-functor A^op -> Ch (finite fragment of the complexes
    Hom_A(y, x))."""
    ctx = ctx or RepContext(A)
    complexes = {y: ctx.chain(y, x) for y in A.objects}
    Ch = ch_category(complexes, name=f"Ch[Rep({x})]")
    comps = {1: {}}
    for d in range(1, ctx.arity + 1):
        for y0, a in ctx.op_tuples(d):
            v = ctx.rep_component(x, a)
            yd = ctx.end_obj(y0, a)
            lab = Ch.to_labels(y0, yd, v)
            if lab:
                comps.setdefault(d, {})[a] = lab
    return AInfFunctor(ctx.Aop, Ch, {y: y for y in A.objects}, comps, name=f"Rep({x})")


def rep_functor_component(ctx, f, c):
    """Rep_n(f_n..f_1)_l(c_l..c_1): z ↦ (-1)^{†3} m_{n+l+1}(f_n..f_1, z, c_1..c_l)
    with †3 = ε(c) + deg'f (deg'c + deg'z)."""
    A, F = ctx.A, ctx.F
    x0 = A.src(f[-1])
    y0 = A.tgt(c[-1]) if c else None
    out = {}
    ys = [y0] if c else list(A.objects)
    for y in ys:
        for z in ctx.chain(y, x0).labels():
            sg = eps([A.deg(l) for l in c]) + deg_prime(A, f) * (
                deg_prime(A, c) + A.deg(z) + 1)
            key = tuple(f) + (z,) + tuple(reversed(c))
            for lab, v in A.m_basis(key).items():
                vadd(F, out, {(lab, z): F.mul(F.sign(sg), v)})
    return out


def rep_prenat(ctx, f, arity=None):
    """Rep_n(f) as a pre-natural transformation Rep(x0) -> Rep(xn)."""
    A = ctx.A
    arity = ctx.arity if arity is None else arity
    x0, xn = A.src(f[-1]), A.tgt(f[0])
    g = sum(A.deg(l) for l in f) + 1 - len(f)
    T = PreNat(ctx, x0, xn, g)
    for l in range(arity + 1):
        for y0, c in ctx.op_tuples(l):
            if l == 0:
                v = {k: val for k, val in rep_functor_component(ctx, f, ()).items()
                     if k[1] in ctx.chain(y0, x0).labels()}
            else:
                v = rep_functor_component(ctx, f, c)
            if v:
                T.comps[(y0, c)] = v
    return T


class _PreNatTarget:
    """Rep(A) as the target of the functor equation: m¹ = 𝔡, m² = ⋄."""

    def __init__(self, ctx, arity):
        self.ctx = ctx
        self.arity = arity

    def zero(self):
        return PreNat(self.ctx, None, None, None)

    def add(self, acc, v, c):
        if acc.src is None:
            acc.src, acc.tgt, acc.g = v.src, v.tgt, v.g
        return acc.add(v, c)

    def is_zero(self, v):
        return v is None or v.is_zero()

    def m(self, k, args):
        if k == 1:
            return prenat_boundary(args[0], self.arity)
        if k == 2:
            return prenat_product(args[0], args[1], self.arity)
        return None


def check_rep_functor(ctx, arity_max=2, arity=None):
    """Rep = {Rep_n} satisfies the functor equation into Rep(A) on every
    composable tuple of A up to ``arity_max``; components are compared on
    A^op tuples of length <= ``arity``."""
    arity = ctx.arity if arity is None else arity
    T = _PreNatTarget(ctx, arity)
    wit = []
    for N in range(1, arity_max + 1):
        for key in ctx.A.composable_tuples(N):
            lhs, rhs = functor_residual(ctx.A, lambda w: rep_prenat(ctx, w, arity), T, key)
            if lhs.is_zero() and rhs.is_zero():
                continue
            if lhs.is_zero() or rhs.is_zero() or not lhs == rhs:
                wit.append(key)
    return Report("rep-functor", not wit, wit)


# -------------------------------------------------------- Yoneda comparison

def prenat_complex_matrix(ctx, x0, x1, g):
    """Matrix of 𝔡 on normalized degree-g pre-nats, rows indexed by degree
    g+1 coordinates."""
    F = ctx.F
    src = prenat_basis(ctx, x0, x1, g)
    tgt = prenat_basis(ctx, x0, x1, g + 1)
    tix = {c: i for i, c in enumerate(tgt)}
    units = set(ctx.A.units.values())
    rows = [[F.zero] * len(src) for _ in tgt]
    for j, (key, mu) in enumerate(src):
        T = PreNat(ctx, x0, x1, g, {key: {mu: F.one}})
        for k2, v in prenat_boundary(T).comps.items():
            if units.intersection(k2[1]):
                continue  # normalized quotient
            for mu2, c in v.items():
                if (k2, mu2) not in tix:
                    raise WindowError("𝔡 leaves the truncated pre-nat complex")
                rows[tix[(k2, mu2)]][j] = c
    return src, tgt, rows


def _rep1_vector(ctx, f):
    """Rep_1(f) in normalized pre-nat coordinates."""
    T = rep_prenat(ctx, (f,))
    units = set(ctx.A.units.values())
    out = {}
    for k, v in T.comps.items():
        if units.intersection(k[1]):
            continue
        for mu, c in v.items():
            out[(k, mu)] = c
    return out


def _auto_arity(A, degrees=None):
    """Longest normalized tuple that can carry a component in the degrees
    examined.  A component on (a_d..a_1) of a degree-g pre-nat has degree
    g + Σ(deg a_i - 1), which must reach the Hom_Ch window."""
    objs = A.objects
    lo = min(A.hom(x, y).window[0] for x in objs for y in objs)
    hi = max(A.hom(x, y).window[1] for x in objs for y in objs)
    gmax = max(degrees) if degrees else hi + 1
    budget = (gmax + 1) - (lo - hi)  # Σ(1 - deg a_i) must stay <= budget
    units = set(A.units.values())
    labs = [l for l in A.all_labels() if l not in units]
    cap = (budget + 1) * max(1, len(labs)) + 1
    best = 0
    stack = [((l,), 1 - A.deg(l)) for l in labs]
    pos = all(A.deg(l) <= 1 for l in labs)
    while stack:
        a, w = stack.pop()
        if pos and w > budget:
            continue
        if w <= budget:
            best = max(best, len(a))
        if len(a) >= cap:
            raise WindowError("pre-nat truncation is not finite for this category")
        x = A.src(a[0])  # extend in A^op: next label ends where a_d starts
        for l in labs:
            if A.tgt(l) == x:
                stack.append(((l,) + a, w + 1 - A.deg(l)))
    return max(best, 1)


def check_rep_quasi_equivalence(A, arity=None, degrees=None):
    """(we2): Rep_1 induces isomorphisms H^g Hom_A(x0, x1) -> H^g PreNat for
    g in the window; (we1) follows (objects correspond one-to-one).

    Pre-nats are normalized and truncated at ``arity``; the truncation is
    exact for the degrees examined when non-unit morphisms have degree <= 0.
    """
    F = A.field
    if arity is None:
        arity = _auto_arity(A, degrees)
    ctx = RepContext(A, arity)
    wit = []
    per = {}
    for x0 in A.objects:
        for x1 in A.objects:
            H = A.hom_chain(x0, x1)
            lo, hi = H.window()
            for g in (degrees or range(lo - 1, hi + 2)):
                src, tgt, D = prenat_complex_matrix(ctx, x0, x1, g)
                srcm, _, Dm = prenat_complex_matrix(ctx, x0, x1, g - 1)
                rk_out = rank(F, D, len(src)) if D and src else 0
                # boundaries: columns of Dm, in coordinates src
                B = [[Dm[i][j] for i in range(len(src))] for j in range(len(srcm))]
                rb = rank(F, B, len(src)) if B and src else 0
                dimH = len(src) - rk_out - rb
                hA = cohomology(H, g)
                imgs = []
                for z in hA.reps:
                    v = {}
                    for l, c in z.items():
                        for k, c2 in _rep1_vector(ctx, l).items():
                            v[k] = F.add(v.get(k, F.zero), F.mul(c, c2))
                    imgs.append([v.get(k, F.zero) for k in src])
                r = rank(F, B + imgs, len(src)) - rb if (B + imgs) and src else 0
                ok = dimH == hA.dim == r
                per[(x0, x1, g)] = (hA.dim, dimH, r)
                if not ok:
                    wit.append(((x0, x1), g, hA.dim, dimH, r))
    return Report("rep-quasi-equivalence", not wit, wit, {"per": per, "arity": arity})
