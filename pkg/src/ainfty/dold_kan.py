"""Simplicial modules, normalized chains and the Dold–Kan functor.

Homological and cohomological indexing meet only here: a nonnegatively
graded homological complex C_k is stored as the library complex with
C^{-k} = C_k, and N_n of a simplicial module becomes degree -n.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .chain import ChainComplex, ChainMap, is_quasi_iso, truncate_nonpos
from .linear import (GradedMap, GradedSpace, LinearSolver, QQ, nullspace, rank,
                     span_combinations, vadd, vfmt)
from .simplicial import (compose_maps, codegeneracy, coface, identity_map,
                         is_injective, monotone_maps)


class DoldKanError(ValueError):
    pass


# -------------------------------------------------------- simplicial modules

class SimplicialModule:
    """Levels 0..L with bases; ``act(alpha, n, label)`` is the image of a
    basis vector of level n under α: [m] -> [n], a vector of level m."""

    def __init__(self, F, bases, act, name=""):
        self.field = F
        self.bases = [list(b) for b in bases]
        self._act = act
        self.name = name
        self._cache = {}
        self._express = {}
        self.embedding = None

    @property
    def L(self):
        return len(self.bases) - 1

    def dim(self, n):
        return len(self.bases[n])

    def act_basis(self, alpha, n, lab):
        key = (tuple(alpha), n, lab)
        if key not in self._cache:
            self._cache[key] = self._act(tuple(alpha), n, lab)
        return self._cache[key]

    def apply(self, alpha, n, v):
        F = self.field
        out = {}
        for lab, c in v.items():
            vadd(F, out, self.act_basis(alpha, n, lab), c)
        return out

    def face(self, n, i, v):
        return self.apply(coface(n, i), n, v)

    def degen(self, n, i, v):
        return self.apply(codegeneracy(n, i), n, v)

    def matrix(self, alpha, n):
        m = len(alpha) - 1
        tgt = {l: i for i, l in enumerate(self.bases[m])}
        rows = [[self.field.zero] * self.dim(n) for _ in self.bases[m]]
        for j, lab in enumerate(self.bases[n]):
            for l, c in self.act_basis(alpha, n, lab).items():
                rows[tgt[l]][j] = c
        return rows

    def express(self, m, coords):
        """Write an embedded vector (coordinate dict) in the level-m basis."""
        F = self.field
        if m not in self._express:
            emb = self.embedding[m]
            keys = sorted({k for v in emb for k in v}, key=str)
            kix = {k: i for i, k in enumerate(keys)}
            rows = [[v.get(k, F.zero) for v in emb] for k in keys]
            self._express[m] = (kix, LinearSolver(F, rows, len(emb)))
        kix, S = self._express[m]
        b = [F.zero] * len(kix)
        for k, c in coords.items():
            if k not in kix:
                if F.is_zero(c):
                    continue
                raise DoldKanError(f"vector leaves level {m} at {k!r}")
            b[kix[k]] = c
        x = S.solve(b)
        if x is None:
            raise DoldKanError(f"vector not in level {m}")
        return {self.bases[m][i]: c for i, c in enumerate(x) if not F.is_zero(c)}

    def elements(self, n):
        """All vectors of level n (finite fields)."""
        return span_combinations(self.field, [{b: self.field.one} for b in self.bases[n]])

    def __repr__(self):
        return f"SimplicialModule({self.name or '?'}, dims={[len(b) for b in self.bases]})"


def check_module(M, top=None):
    """Functoriality on basis vectors: act(id) = id, act(a∘b) = act(b) act(a)."""
    top = M.L if top is None else top
    bad = []
    for n in range(top + 1):
        for lab in M.bases[n]:
            e = {lab: M.field.one}
            if M.apply(identity_map(n), n, e) != e:
                bad.append(("identity", n, lab))
            for m in range(top + 1):
                for a in monotone_maps(m, n):
                    t = M.apply(a, n, e)
                    for k in range(top + 1):
                        for b in monotone_maps(k, m):
                            if M.apply(b, m, t) != M.apply(compose_maps(a, b), n, e):
                                bad.append(("functoriality", n, lab, a, b))
    return bad


@dataclass
class ModuleMap:
    source: SimplicialModule
    target: SimplicialModule
    phi: object  # (n, label) -> vector

    def apply(self, n, v):
        F = self.target.field
        out = {}
        for lab, c in v.items():
            vadd(F, out, self.phi(n, lab), c)
        return out

    def check(self, top=None):
        top = min(self.source.L, self.target.L) if top is None else top
        bad = []
        for n in range(top + 1):
            for lab in self.source.bases[n]:
                e = {lab: self.source.field.one}
                for m in range(top + 1):
                    for a in monotone_maps(m, n):
                        l = self.apply(m, self.source.apply(a, n, e))
                        r = self.target.apply(a, n, self.apply(n, e))
                        if l != r:
                            bad.append((n, lab, a))
        return bad


# ---------------------------------------------------------------- ZΔⁿ

def g_label(beta):
    return "g" + "".join(map(str, beta))


def z_delta(n, L=3, F=QQ):
    """Free simplicial module on Δⁿ: level j has basis g_β, β: [j] -> [n]."""
    if n > 9:
        raise DoldKanError("labels use one digit per vertex")
    bases = [[g_label(b) for b in monotone_maps(j, n)] for j in range(L + 1)]

    def act(alpha, j, lab):
        beta = tuple(int(ch) for ch in lab[1:])
        return {g_label(compose_maps(beta, alpha)): F.one}

    return SimplicialModule(F, bases, act, name=f"ZΔ{n}")


# ---------------------------------------------------------- normalized chains

@dataclass
class Normalized:
    complex: ChainComplex      # cohomological: degree -n holds N_n
    incl: dict                 # label -> vector in M_n
    level: dict                # label -> n
    module: SimplicialModule

    def basis(self, n):
        return self.complex.labels(-n)

    def fmt(self, n):
        F = self.module.field
        return [vfmt(F, self.incl[l], self.module.bases[n]) for l in self.basis(n)]

    def express(self, n, v):
        """Coordinates of a vector of M_n lying in N_n."""
        F = self.module.field
        labs = self.basis(n)
        keys = self.module.bases[n]
        rows = [[self.incl[l].get(k, F.zero) for l in labs] for k in keys]
        x = LinearSolver(F, rows, len(labs)).solve([v.get(k, F.zero) for k in keys])
        if x is None:
            raise DoldKanError("vector not normalized")
        return {labs[i]: c for i, c in enumerate(x) if not F.is_zero(c)}


def _normalize_first(F, v):
    for c in v:
        if not F.is_zero(c):
            inv = F.inv(c)
            return [F.mul(inv, x) for x in v]
    return v


def normalized_chains(M, top=None):
    """N_n = ∩_{i>=1} ker d_i with differential d_0, as a cohomological
    complex with N_n in degree -n.  Basis vectors are nullspace vectors
    scaled to have first coefficient 1."""
    F = M.field
    top = M.L if top is None else top
    basis, incl, level = {}, {}, {}
    for n in range(top + 1):
        labs = M.bases[n]
        if n == 0:
            vecs = [{l: F.one} for l in labs]
        else:
            rows = []
            for i in range(1, n + 1):
                rows.extend(M.matrix(coface(n, i), n))
            ker = nullspace(F, rows, len(labs)) if rows else [
                [F.one if a == b else F.zero for a in range(len(labs))] for b in range(len(labs))]
            vecs = []
            for v in ker:
                v = _normalize_first(F, v)
                vecs.append({labs[i]: c for i, c in enumerate(v) if not F.is_zero(c)})
        names = []
        for k, v in enumerate(vecs):
            name = next(iter(v)) if (n == 0 and len(v) == 1) else ("N", n, k)
            names.append(name)
            incl[name] = v
            level[name] = n
        basis[-n] = names
    V = GradedSpace.make(basis, (-top, 0))
    N = Normalized(None, incl, level, M)
    ent = {}
    for n in range(1, top + 1):
        for lab in basis[-n]:
            img = M.face(n, 0, incl[lab])
            if img:
                ent[lab] = _solve_in(F, img, [incl[l] for l in basis[-(n - 1)]],
                                     basis[-(n - 1)], M.bases[n - 1])
    N.complex = ChainComplex(F, V, GradedMap(F, V, V, 1, ent))
    return N


def _solve_in(F, v, vecs, names, keys):
    rows = [[w.get(k, F.zero) for w in vecs] for k in keys]
    x = LinearSolver(F, rows, len(vecs)).solve([v.get(k, F.zero) for k in keys])
    if x is None:
        raise DoldKanError("d_0 leaves the normalized subcomplex")
    return {names[i]: c for i, c in enumerate(x) if not F.is_zero(c)}


def normalized_generator(F, n, I):
    """The element of N_{|I|-1}(ZΔⁿ) with coefficient 1 on the injective
    g_I and 0 on the other injective generators."""
    Z = z_delta(n, len(I) - 1, F)
    N = normalized_chains(Z, len(I) - 1)
    j = len(I) - 1
    labs = N.basis(j)
    inj = [g_label(b) for b in monotone_maps(j, n) if is_injective(b)]
    rows = [[N.incl[l].get(g, F.zero) for l in labs] for g in inj]
    target = [F.one if g == g_label(I) else F.zero for g in inj]
    x = LinearSolver(F, rows, len(labs)).solve(target)
    out = {}
    for c, l in zip(x, labs):
        if not F.is_zero(c):
            vadd(F, out, N.incl[l], c)
    return out


# --------------------------------------------------------------------- DK

def surjections(n):
    """Surjective monotone maps [n] -> [k], all k, as value tuples."""
    out = []
    for k in range(n + 1):
        for a in monotone_maps(n, k):
            if a[0] == 0 and a[-1] == k and all(b - a_ <= 1 for a_, b in zip(a, a[1:])):
                out.append(a)
    return out


def epi_mono(a):
    """a = δ ∘ a' with a' surjective onto [k'] and δ injective."""
    img = sorted(set(a))
    pos = {v: i for i, v in enumerate(img)}
    return tuple(pos[v] for v in a), tuple(img)


def _hdeg(C, k):
    return C.labels(-k)


def dk(C, L=3):
    """DK_n(C) = ⊕_{α: [n] ->> [k]} C_k with basis labels (α, c).

    For β: [m] -> [n] write α∘β = δ∘α'.  The (α, c) component goes to
    (α', c) if δ = id, to (α', d c) if δ is the coface missing 0, and
    vanishes otherwise.
    """
    F = C.field
    if any(d > 0 and C.labels(d) for d in C.degrees()):
        raise DoldKanError("DK needs a nonnegatively graded homological complex")
    bases = []
    for n in range(L + 1):
        bases.append([(a, c) for a in surjections(n) for c in _hdeg(C, a[-1])])

    def act(beta, n, lab):
        a, c = lab
        ab = compose_maps(a, beta)
        a2, delta = epi_mono(ab)
        k = a[-1]
        if delta == identity_map(k):
            return {(a2, c): F.one}
        if delta == tuple(range(1, k + 1)):
            return {(a2, x): v for x, v in C.diff({c: F.one}).items()}
        return {}

    return SimplicialModule(F, bases, act, name="DK")


def dk_map(f, D, D2):
    """DK(f) for a chain map f: C -> C' between the complexes of D, D2."""
    def phi(n, lab):
        a, c = lab
        return {(a, x): v for x, v in f({c: f.source.field.one}).items()}
    return ModuleMap(D, D2, phi)


# ------------------------------------------------------ unit and counit

def eta(C, L=None):
    """η_C: C -> N DK C, c ↦ (id, c)."""
    L = _length(C) + 1 if L is None else L
    D = dk(C, L)
    N = normalized_chains(D, L)
    ent = {}
    for k in range(L + 1):
        for c in _hdeg(C, k):
            v = N.express(k, {(identity_map(k), c): C.field.one})
            if v:
                ent[c] = v
    return D, N, ChainMap(C, N.complex, GradedMap(C.field, C.space, N.complex.space, 0, ent))


def _length(C):
    return max((-d for d in C.degrees() if C.labels(d)), default=0)


def epsilon_map(X, N=None, L=None):
    """ε_X: DK N X -> X, (α, v) ↦ X(α)(v)."""
    L = X.L if L is None else L
    N = N or normalized_chains(X, L)
    D = dk(N.complex, L)

    def phi(n, lab):
        a, v = lab
        k = a[-1]
        return X.apply(a, k, N.incl[v])

    return N, D, ModuleMap(D, X, phi)


def _is_iso_matrix(F, rows, n_src, n_tgt):
    if n_src != n_tgt:
        return False
    if n_src == 0:
        return True
    return rank(F, rows, n_src) == n_src


@dataclass
class RoundTrip:
    ok: bool
    iso_degrees: dict = field(default_factory=dict)
    triangle1: bool = True
    triangle2: bool = True
    detail: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def roundtrip_check(C, L=None):
    """N DK C ≅ C via η, plus both triangle identities at C and at DK C."""
    F = C.field
    L = _length(C) + 1 if L is None else L
    D, N, et = eta(C, L)
    iso = {}
    detail = []
    for k in range(L + 1):
        src = _hdeg(C, k)
        tgt = N.basis(k)
        rows = [[et({c: F.one}).get(t, F.zero) for c in src] for t in tgt]
        iso[k] = _is_iso_matrix(F, rows, len(src), len(tgt))
        if not iso[k]:
            detail.append(("eta not iso", k, len(src), len(tgt)))
    # ε_{DK C} ∘ DK(η_C) = id_{DK C}
    N2, DKN, ep = epsilon_map(D, N, L)
    t1 = True
    for n in range(L + 1):
        for lab in D.bases[n]:
            a, c = lab
            img = {(a, x): v for x, v in et({c: F.one}).items()}
            back = {}
            for l2, v in img.items():
                vadd(F, back, ep.phi(n, l2), v)
            if back != {lab: F.one}:
                t1 = False
                detail.append(("triangle ε∘DKη", n, lab))
    # N(ε_X) ∘ η_{N X} = id_{N X} with X = DK C
    t2 = True
    D3, N3, et3 = eta(N.complex, L)
    for k in range(L + 1):
        for v in N.basis(k):
            w = et3({v: F.one})          # in N(DK N X)
            out = {}
            for l3, c3 in w.items():
                vec = N3.incl[l3]        # vector of DK N X at level k
                for l4, c4 in vec.items():
                    vadd(F, out, ep.phi(k, l4), F.mul(c3, c4))
            if out != N.incl[v]:
                t2 = False
                detail.append(("triangle Nε∘η", k, v))
    ok = all(iso.values()) and t1 and t2
    return RoundTrip(ok, iso, t1, t2, detail)


def roundtrip_module(X, L=None):
    """ε_X: DK N X -> X is a levelwise isomorphism commuting with Δ."""
    F = X.field
    L = X.L if L is None else L
    N, D, ep = epsilon_map(X, None, L)
    iso = {}
    for n in range(L + 1):
        rows = [[ep.phi(n, lab).get(t, F.zero) for lab in D.bases[n]] for t in X.bases[n]]
        iso[n] = _is_iso_matrix(F, rows, D.dim(n), X.dim(n))
    bad = ep.check(L)
    return RoundTrip(all(iso.values()) and not bad, iso, True, True, bad)


# ---------------------------------------------------- chain maps from ZΔⁿ

def cross_subsets(n):
    """Nonempty I ⊆ [n]; the cross condition is dg_I = Σ_k (-1)^k g_{I-k}."""
    out = []
    for k in range(1, n + 2):
        out.extend(itertools.combinations(range(n + 1), k))
    return out


def cross_residual(M, g, I):
    """d g_I - Σ_k (-1)^k g_{I - i_k} in the cohomological complex M."""
    F = M.field
    out = dict(M.diff(g.get(I, {}))) if g.get(I) else {}
    if len(I) >= 2:
        for k in range(len(I)):
            v = g.get(I[:k] + I[k + 1:])
            if v:
                vadd(F, out, v, F.neg(F.sign(k)))
    return out


def cross_system_space(n, M):
    """Basis of the cross-condition solution space: g_I ∈ M^{1-|I|} for ∅ ≠ I ⊆ [n]."""
    F = M.field
    coords = [(I, lab) for I in cross_subsets(n) for lab in M.labels(1 - len(I))]

    def res(vec):
        g = {}
        for (I, lab), c in vec.items():
            vadd(F, g.setdefault(I, {}), {lab: c})
        out = {}
        for I in cross_subsets(n):
            for lab, c in cross_residual(M, g, I).items():
                out[(I, lab)] = c
        return out

    cols = [res({c: F.one}) for c in coords]
    keys = sorted({k for col in cols for k in col}, key=str)
    rows = [[col.get(k, F.zero) for col in cols] for k in keys]
    ker = nullspace(F, rows, len(coords)) if rows else [
        [F.one if a == b else F.zero for a in range(len(coords))] for b in range(len(coords))]
    basis = []
    for v in ker:
        g = {}
        for (I, lab), c in zip(coords, v):
            if not F.is_zero(c):
                vadd(F, g.setdefault(I, {}), {lab: c})
        basis.append(g)
    return coords, basis


def solve_cross(n, M):
    """All cross systems for n and M (finite fields)."""
    F = M.field
    if not F.size:
        from .linear import FieldError
        raise FieldError("enumeration needs a finite field")
    _, basis = cross_system_space(n, M)
    out = []
    for cs in itertools.product(list(F.elements()), repeat=len(basis)):
        g = {}
        for c, b in zip(cs, basis):
            if not F.is_zero(c):
                for I, v in b.items():
                    vadd(F, g.setdefault(I, {}), v, c)
        out.append({I: v for I, v in g.items() if v})
    return out


def cross_to_chain_map(F, n, M, g, top=None):
    """The chain map N_*(ZΔⁿ) -> M with ĝ_I ↦ g_I, on the N basis."""
    top = n if top is None else top
    Z = z_delta(n, top, F)
    N = normalized_chains(Z, top)
    ent = {}
    for j in range(top + 1):
        for lab in N.basis(j):
            v = N.incl[lab]
            out = {}
            for b in monotone_maps(j, n):
                if is_injective(b):
                    c = v.get(g_label(b))
                    if c is not None and g.get(b):
                        vadd(F, out, g[b], c)
            if out:
                ent[lab] = out
    return N, ChainMap(N.complex, M, GradedMap(F, N.complex.space, M.space, 0, ent))


def brute_chain_maps(F, n, M):
    """Every chain map N_*(ZΔⁿ) -> M by direct enumeration of matrices."""
    Z = z_delta(n, n, F)
    N = normalized_chains(Z, n)
    src = N.complex
    slots = [(l, t) for d in src.degrees() for l in src.labels(d) for t in M.labels(d)]
    out = []
    for cs in itertools.product(list(F.elements()), repeat=len(slots)):
        ent = {}
        for (l, t), c in zip(slots, cs):
            if not F.is_zero(c):
                ent.setdefault(l, {})[t] = c
        try:
            out.append(ChainMap(src, M, GradedMap(F, src.space, M.space, 0, ent)))
        except ValueError:
            continue
    return out


# --------------------------------------------- mapping-space identification

def derive_sigma(nmax=4):
    """Signs turning the nerve equations on right mapping spaces into the cross condition.

    A formal dg category over Q with one symbol per subset I' of [n] (placed
    in Hom(x, y) at the degree of f_{I' ∪ {n+1}}) reads off the coefficient of
    every f_{J ∪ {n+1}} in the equation for f_{I' ∪ {n+1}}.  σ is then fixed
    by σ({i}) = 0 and propagated upward; a clash is reported.
    """
    from .core import make_category
    from .nerve import equation_terms, subsets
    sigma = {}
    clashes = []
    for n in range(nmax + 1):
        tops = [I for I in subsets(n + 1) if I[-1] == n + 1]
        homs = {("x", "y"): {}, ("x", "x"): {0: ["1x"]}, ("y", "y"): {0: ["1y"]}}
        for I in tops:
            homs[("x", "y")].setdefault(2 - len(I), []).append(("s",) + I)
        A = make_category(QQ, ["x", "y"], homs, {}, {"x": "1x", "y": "1y"})
        f = {I: {"1x": QQ.one} for I in subsets(n) if len(I) == 2}
        for I in tops:
            f[I] = {("s",) + I: QQ.one}
        for I in tops:
            Ip = I[:-1]
            if len(Ip) == 1:
                sigma.setdefault(Ip, 0)
                continue
            rhs = {}
            for g in equation_terms(A, f, I):
                vadd(QQ, rhs, g)
            # want: sign(I') * coeff * sign(J') == (-1)^k for J' = I' - i_k
            for k in range(len(Ip)):
                Jp = Ip[:k] + Ip[k + 1:]
                c = rhs.get(("s",) + Jp + (n + 1,), QQ.zero)
                if c == 0:
                    clashes.append((Ip, Jp, "missing term"))
                    continue
                s = (k + (0 if c > 0 else 1) + sigma[Jp]) % 2
                if sigma.setdefault(Ip, s) != s:
                    clashes.append((Ip, Jp, "inconsistent"))
            extra = {key for key in rhs
                     if key[-1] != n + 1 or len(key) - 1 != len(Ip)}
            if extra:
                clashes.append((Ip, None, "unexpected terms"))
    return sigma, clashes


def _sigma(Ip):
    return (len(Ip) + 1) % 2


@dataclass
class IdentifyReport:
    ok: bool
    level_max: int
    sizes: dict           # n -> (|Hom^R_n|, |DK_n|)
    bijective: dict
    commutes: dict
    sigma_ok: bool
    detail: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


class _Identifier:
    """Hom^R_n(x, y) -> DK_n(τ Map(x, y)) via cross systems and Yoneda."""

    def __init__(self, A, x, y, L):
        F = A.field
        self.A, self.F, self.x, self.y = A, F, x, y
        Map = A.hom_chain(x, y)
        self.T, self.incl = truncate_nonpos(Map)
        self.D = dk(self.T, L)
        self._yoneda = {}
        self.L = L
        self._deg0 = [l for l in self.T.labels(0)]

    def cross(self, s):
        """Cross system of a right-mapping-space simplex."""
        F = self.F
        n = s.n - 1
        g = {}
        for I, v in s.as_dict().items():
            if I[-1] != n + 1:
                continue
            Ip = I[:-1]
            v = dict(v) if _sigma(Ip) == 0 else {k: F.neg(c) for k, c in v.items()}
            if len(Ip) == 1:
                v = self._to_trunc0(v)
            g[Ip] = v
        return g

    def _to_trunc0(self, v):
        from .chain import _express
        if not v:
            return {}
        return _express(self.F, v, [self.incl[l] for l in self._deg0], self._deg0)

    def yoneda(self, n):
        """ε^{-1}(g_id) in DK N ZΔⁿ, as a list of (α, normalized vector, c)."""
        if n not in self._yoneda:
            F = self.F
            Z = z_delta(n, n, F)
            N, D, ep = epsilon_map(Z, None, n)
            labs = D.bases[n]
            rows = [[ep.phi(n, lab).get(t, F.zero) for lab in labs] for t in Z.bases[n]]
            target = [F.one if t == g_label(identity_map(n)) else F.zero for t in Z.bases[n]]
            x = LinearSolver(F, rows, len(labs)).solve(target)
            pre = [(lab[0], N.incl[lab[1]], c) for lab, c in zip(labs, x) if not F.is_zero(c)]
            self._yoneda[n] = pre
        return self._yoneda[n]

    def __call__(self, s):
        F = self.F
        n = s.n - 1
        g = self.cross(s)
        out = {}
        for a, v, c in self.yoneda(n):
            # v ∈ N_k(ZΔⁿ) ↦ Σ_I v[g_I] g_I
            k = a[-1]
            img = {}
            for b in monotone_maps(k, n):
                if is_injective(b):
                    cv = v.get(g_label(b))
                    if cv is not None and g.get(b):
                        vadd(F, img, g[b], cv)
            for lab, cc in img.items():
                vadd(F, out, {(a, lab): F.mul(c, cc)})
        return out


def hom_right_levels(A, x, y, level_max, cap=200_000, signs="printed"):
    """Right mapping space of the nerve, enumerated level by level."""
    from .nerve import enumerate_with_prefix, subsets
    levels = []
    for n in range(level_max + 1):
        fixed = {I: A.unit_vec(x) for I in subsets(n) if len(I) == 2}
        pre = set(subsets(n))
        levels.append(enumerate_with_prefix(A, (x,) * (n + 1) + (y,), fixed, pre, cap, signs))
    return levels


def mapping_space_identify(A, x, y, level_max=3, cap=200_000, signs="printed"):
    """Exhibit Hom^R(x, y) ≅ DK(τ≥0 Map(x, y)) levelwise, commuting with all
    faces and degeneracies up to ``level_max``."""
    from .nerve import structure_map
    F = A.field
    sig, clashes = derive_sigma(level_max)
    sigma_ok = not clashes and all(sig[I] == _sigma(I) for I in sig)
    HR = hom_right_levels(A, x, y, level_max, cap, signs)
    Phi = _Identifier(A, x, y, level_max)
    D = Phi.D
    sizes, bij, com = {}, {}, {}
    detail = []
    images = []
    for n, lv in enumerate(HR):
        imgs = {}
        for s in lv:
            e = Phi(s)
            imgs[s] = e
        keyset = {tuple(sorted(e.items(), key=str)) for e in imgs.values()}
        card = F.size ** D.dim(n)
        sizes[n] = (len(lv), card)
        bij[n] = len(keyset) == len(lv) == card
        images.append(imgs)
    for n, lv in enumerate(HR):
        ok = True
        for s in lv:
            e = images[n][s]
            gens = [coface(n, i) for i in range(n + 1)] if n >= 1 else []
            if n + 1 <= level_max:
                gens += [codegeneracy(n, i) for i in range(n + 1)]
            for a in gens:
                m = len(a) - 1
                t = structure_map(A, tuple(a) + (n + 1,), s)
                if t not in images[m]:
                    ok = False
                    detail.append(("not in level", n, a))
                    continue
                if images[m][t] != D.apply(a, n, e):
                    ok = False
                    detail.append(("structure map", n, a, s))
                    if len(detail) > 5:
                        break
        com[n] = ok
    ok = sigma_ok and all(bij.values()) and all(com.values())
    return IdentifyReport(ok, level_max, sizes, bij, com, sigma_ok, detail)


# ---------------------------------------------- homology of module maps

def module_map_homology(M, N, phi, top):
    """Compare H_j of N_*(M) and N_*(N) under φ for 0 <= j <= top.

    Returns j -> (dim H_j M, dim H_j N, injective, surjective).
    """
    F = M.field
    L = top + 1
    NM = normalized_chains(M, min(L, M.L))
    NN = normalized_chains(N, min(L, N.L))
    ent = {}
    for lab in NM.complex.labels():
        n = NM.level[lab]
        v = NM.incl[lab]
        img = {}
        for l, c in v.items():
            vadd(F, img, phi(n, l), c)
        if img:
            ent[lab] = NN.express(n, img)
    f = ChainMap(NM.complex, NN.complex,
                 GradedMap(F, NM.complex.space, NN.complex.space, 0, ent))
    rep = is_quasi_iso(f)
    return {j: rep.per_degree[-j] for j in range(top + 1) if -j in rep.per_degree}
