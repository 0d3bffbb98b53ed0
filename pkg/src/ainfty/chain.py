"""Bounded cochain complexes over an exact field and the dg category Ch_K.

Convention: differentials raise degree by one and (V[k])^i = V^{i+k}.
Elements of Hom(X, Y) are sparse vectors over matrix units; the unit
``(y, x)`` is the map sending basis vector ``x`` to ``y``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .linear import (GradedMap, GradedSpace, compose, identity,
                     nullspace, rank, rref, vadd, vscale)


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class ChainComplex:
    field: object
    space: GradedSpace
    d: GradedMap

    def __post_init__(self):
        if self.d.degree != 1 or self.d.source != self.space or self.d.target != self.space:
            raise ComplexError("differential must be a degree +1 endomorphism")
        dd = compose(self.d, self.d)
        if not dd.is_zero():
            bad = sorted(dd.entries, key=str)[0]
            raise ComplexError(f"d∘d != 0 on {bad!r}")

    @classmethod
    def make(cls, F, basis, d=None, window=None):
        """``basis``: degree -> labels; ``d``: label -> {label: scalar}."""
        V = GradedSpace.make(basis, window)
        ent = {a: {b: F.coerce(c) for b, c in v.items()} for a, v in (d or {}).items()}
        return cls(F, V, GradedMap(F, V, V, 1, ent))

    def degrees(self):
        return self.space.degrees()

    def window(self):
        return self.space.window

    def dim(self, n):
        return self.space.dim(n)

    def labels(self, n=None):
        return self.space.labels(n)

    def diff(self, v):
        return self.d(v)


@dataclass(frozen=True)
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    f: GradedMap

    def __post_init__(self):
        if self.f.degree != 0:
            raise ComplexError("chain maps have degree 0")
        a = compose(self.target.d, self.f)
        b = compose(self.f, self.source.d)
        for lab in self.source.labels():
            if a.entries.get(lab, {}) != b.entries.get(lab, {}):
                raise ComplexError(f"f∘d != d∘f on {lab!r}")

    def __call__(self, v):
        return self.f(v)


def zero_complex(F):
    V = GradedSpace.make({}, (0, 0))
    return ChainComplex(F, V, GradedMap(F, V, V, 1, {}))


def shift_complex(C, k):
    """C[k]: (C[k])^i = C^{i+k}, differential (-1)^k d."""
    F = C.field
    V = GradedSpace.make({d - k: ls for d, ls in C.space.basis},
                         (C.space.window[0] - k, C.space.window[1] - k))
    s = F.sign(k)
    ent = {a: vscale(F, v, s) for a, v in C.d.entries.items()}
    return ChainComplex(F, V, GradedMap(F, V, V, 1, ent))


# ------------------------------------------------------------ hom complexes

def hom_space(X, Y):
    basis = {}
    for dx in X.degrees():
        for dy in Y.degrees():
            basis.setdefault(dy - dx, []).extend(
                (y, x) for x in X.labels(dx) for y in Y.labels(dy))
    lo = Y.window()[0] - X.window()[1]
    hi = Y.window()[1] - X.window()[0]
    return GradedSpace.make(basis, (lo, hi))


def apply_hom(F, f, v):
    """Evaluate a matrix-unit vector f on a vector v of its source."""
    out = {}
    for (y, x), c in f.items():
        if x in v:
            vadd(F, out, {y: F.mul(c, v[x])})
    return out


def hom_deg(X, Y, f):
    degs = {Y.space.deg(y) - X.space.deg(x) for (y, x) in f}
    if len(degs) > 1:
        raise ComplexError("inhomogeneous hom element")
    return degs.pop() if degs else 0


def _post(F, g, f):
    """Matrix product g∘f of matrix-unit vectors (no sign)."""
    out = {}
    by_src = {}
    for (z, y), c in g.items():
        by_src.setdefault(y, []).append((z, c))
    for (y, x), c in f.items():
        for z, c2 in by_src.get(y, ()):
            vadd(F, out, {(z, x): F.mul(c, c2)})
    return out


def m1_ch(X, Y, f):
    """m¹(f) = d f + (-1)^{deg f + 1} f d."""
    F = X.field
    if not f:
        return {}
    k = hom_deg(X, Y, f)
    dY = {(b, a): c for a, v in Y.d.entries.items() for b, c in v.items()}
    dX = {(b, a): c for a, v in X.d.entries.items() for b, c in v.items()}
    out = _post(F, dY, f)
    vadd(F, out, _post(F, f, dX), F.sign(k + 1))
    return out


def m2_ch(X, Y, Z, f, g):
    """m²(f, g) = (-1)^{deg f (deg g + 1)} g∘f for f: X -> Y, g: Y -> Z."""
    F = X.field
    if not f or not g:
        return {}
    df, dg = hom_deg(X, Y, f), hom_deg(Y, Z, g)
    return vscale(F, _post(F, g, f), F.sign(df * (dg + 1)))


def hom_complex(X, Y):
    """Hom_Ch(X, Y) with differential m¹."""
    F = X.field
    V = hom_space(X, Y)
    ent = {}
    for lab in V.labels():
        v = m1_ch(X, Y, {lab: F.one})
        if v:
            ent[lab] = v
    return ChainComplex(F, V, GradedMap(F, V, V, 1, ent))


# --------------------------------------------------------------- cohomology

def _block(C, n):
    """Matrix of d: C^n -> C^{n+1} with rows indexed by C^{n+1}."""
    return C.d.matrix(n)


def cycles(C, n):
    F = C.field
    src = C.labels(n)
    rows = _block(C, n)
    ker = nullspace(F, rows, len(src))
    return [{src[i]: x for i, x in enumerate(v) if not F.is_zero(x)} for v in ker]


def boundaries(C, n):
    F = C.field
    src = C.labels(n - 1)
    tgt = C.labels(n)
    if not src or not tgt:
        return []
    rows = _block(C, n - 1)
    cols = [[rows[i][j] for i in range(len(tgt))] for j in range(len(src))]
    R, piv = rref(F, cols, len(tgt))
    return [{tgt[i]: x for i, x in enumerate(r) if not F.is_zero(x)} for r in R]


def _vec_rows(vs, labels):
    return [[v.get(l, 0) for l in labels] for v in vs]


def _to_rows(F, vs, labels):
    return [[v.get(l, F.zero) for l in labels] for v in vs]


@dataclass
class Cohomology:
    degree: int
    dim: int
    reps: list
    cycles: list
    boundaries: list


def cohomology(C, n):
    """H^n(C): dimension and representative cycles."""
    F = C.field
    Z = cycles(C, n)
    B = boundaries(C, n)
    labels = C.labels(n)
    reps = []
    cur = _to_rows(F, B, labels)
    r0 = rank(F, cur, len(labels)) if cur else 0
    for z in Z:
        trial = cur + _to_rows(F, [z], labels)
        r = rank(F, trial, len(labels))
        if r > r0:
            reps.append(z)
            cur, r0 = trial, r
    return Cohomology(n, len(reps), reps, Z, B)


def coordinates(C, n, H, v):
    """Coordinates of the class of cycle ``v`` in the basis ``H.reps``."""
    F = C.field
    labels = C.labels(n)
    gens = H.reps + H.boundaries
    if not gens:
        if any(not F.is_zero(x) for x in v.values()):
            raise ComplexError("not a cycle modulo boundaries")
        return []
    from .linear import solve
    cols = _to_rows(F, gens, labels)
    A = [[cols[j][i] for j in range(len(gens))] for i in range(len(labels))]
    x = solve(F, A, len(gens), [v.get(l, F.zero) for l in labels])
    if x is None:
        raise ComplexError("vector is not a cycle of the expected degree")
    return x[: len(H.reps)]


def truncate_nonpos(C):
    """Good truncation: C^{<0}, then ker d^0 in degree 0, nothing above.

    Returns (T, inclusion) where ``inclusion`` maps new labels to vectors
    of C.  Degree-0 kernel vectors get labels ``("ker0", i)`` unless the
    vector is a single basis label, which is then reused.
    """
    F = C.field
    basis = {}
    incl = {}
    for d in C.degrees():
        if d < 0:
            basis[d] = C.labels(d)
            for l in C.labels(d):
                incl[l] = {l: F.one}
    Z0 = cycles(C, 0)
    labs0 = []
    for i, z in enumerate(Z0):
        if len(z) == 1 and F.one in z.values():
            lab = next(iter(z))
        else:
            lab = ("ker0", i)
        labs0.append(lab)
        incl[lab] = z
    if labs0:
        basis[0] = labs0
    lo = min(C.window()[0], 0)
    T_space = GradedSpace.make(basis, (lo, 0))
    ent = {}
    for d in C.degrees():
        if d < -1:
            for l in C.labels(d):
                if l in C.d.entries:
                    ent[l] = dict(C.d.entries[l])
        elif d == -1:
            for l in C.labels(d):
                img = C.d.entries.get(l, {})
                if img:
                    ent[l] = _express(F, img, Z0, labs0)
    T = ChainComplex(F, T_space, GradedMap(F, T_space, T_space, 1, ent))
    return T, incl


def _express(F, v, basis_vecs, labels):
    from .linear import solve
    keys = sorted({k for b in basis_vecs for k in b} | set(v), key=str)
    A = [[b.get(k, F.zero) for b in basis_vecs] for k in keys]
    x = solve(F, A, len(basis_vecs), [v.get(k, F.zero) for k in keys])
    if x is None:
        raise ComplexError("vector outside the given span")
    return {labels[i]: c for i, c in enumerate(x) if not F.is_zero(c)}


@dataclass
class QisReport:
    ok: bool
    per_degree: dict  # n -> (dim H^n source, dim H^n target, injective, surjective)

    def failures(self):
        return {n: r for n, r in self.per_degree.items() if not (r[2] and r[3])}


def is_quasi_iso(f):
    """H^n(f) bijective for every n in the union of the windows."""
    S, T = f.source, f.target
    F = S.field
    lo = min(S.window()[0], T.window()[0])
    hi = max(S.window()[1], T.window()[1])
    per = {}
    for n in range(lo, hi + 1):
        HS = cohomology(S, n)
        HT = cohomology(T, n)
        labels = T.labels(n)
        imgs = [f(z) for z in HS.reps]
        B = _to_rows(F, HT.boundaries, labels)
        rb = len(HT.boundaries)
        rows = B + _to_rows(F, imgs, labels)
        r = rank(F, rows, len(labels)) if rows and labels else 0
        inj = r - rb == HS.dim
        surj = r - rb == HT.dim
        per[n] = (HS.dim, HT.dim, inj, surj)
    return QisReport(all(v[2] and v[3] for v in per.values()), per)


def chain_map(S, T, entries):
    F = S.field
    ent = {a: {b: F.coerce(c) for b, c in v.items()} for a, v in entries.items()}
    return ChainMap(S, T, GradedMap(F, S.space, T.space, 0, ent))


def identity_map(C):
    return ChainMap(C, C, identity(C.field, C.space))


def random_complex(F, rng, length=4, dmax=3, name="c"):
    """Random complex in degrees -length+1..0 with dims <= dmax.

    Each differential is sampled until it composes to zero with the
    previous one (falling back to zero after a few tries)."""
    degs = list(range(-length + 1, 1))
    basis = {d: [f"{name}{-d}_{i}" for i in range(rng.randint(0, dmax))] for d in degs}
    q = F.size or 3
    diff = {}
    for d in degs[:-1]:
        src, tgt = basis[d], basis[d + 1]
        if not src or not tgt:
            continue
        for _ in range(20):
            trial = dict(diff)
            for a in src:
                v = {b: F.coerce(rng.randrange(q) - (q // 2 if F.char == 0 else 0)) for b in tgt}
                v = {b: c for b, c in v.items() if not F.is_zero(c)}
                if v:
                    trial[a] = v
            try:
                ChainComplex.make(F, basis, trial, window=(degs[0], 0))
            except ComplexError:
                continue
            diff = trial
            break
    return ChainComplex.make(F, basis, diff, window=(degs[0], 0))
