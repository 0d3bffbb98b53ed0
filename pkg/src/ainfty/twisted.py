"""Shift categories, twisted complexes, cones and Ho-level checks.

Σ(A) has objects (x, n) and Hom((x, n), (y, m)) = Hom(x, y)[m - n], basis
labels (a, n, m).  The label (a, n, m) stands for (-1)^n a under the shift
identification, which turns the operations into

    m_Σ(b_d, ..., b_1) = (-1)^{n_0 + ... + n_{d-1}} m(a_d, ..., a_1)

(n_i the shift of the i-th object along the word) and keeps every unit a
basis label.  Twisted complexes live over Σ(A); all their operations come
from inserting the connecting morphisms α into the words of Σ(A).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .chain import ChainComplex, is_quasi_iso, chain_map, shift_complex
from .core import (AInfCategory, AInfFunctor, CategoryError, HoCategory, Report,
                   functor_chain_map)
from .linear import GradedSpace, WindowError, solve, vadd, vscale


def _shifted(A, x, y, n, m):
    V = A.hom(x, y)
    return {d - (m - n): [(a, n, m) for a in V.labels(d)] for d in V.degrees()}


def shift_category(A, S=2, shifts=None):
    """Σ(A) truncated to shifts in ``shifts`` (default -S..S)."""
    F = A.field
    shifts = list(range(-S, S + 1)) if shifts is None else list(shifts)
    objs = [(x, n) for x in A.objects for n in shifts]
    homs = {}
    for (x, n), (y, m) in itertools.product(objs, repeat=2):
        b = _shifted(A, x, y, n, m)
        if any(b.values()):
            V = A.hom(x, y)
            lo, hi = V.window
            homs[((x, n), (y, m))] = GradedSpace.make(b, (lo - (m - n), hi - (m - n)))
    ops = {}
    for d, table in A.ops.items():
        new = {}
        for key, v in table.items():
            # key = (a_d..a_1); choose a shift for every object along the word
            nobj = d + 1
            for ns in itertools.product(shifts, repeat=nobj):
                # ns[0] is the source of a_1, ns[i] the target of a_i
                k2 = tuple((key[d - i], ns[i - 1], ns[i]) for i in range(d, 0, -1))
                s = F.sign(sum(ns[:d]))
                new[k2] = {(lab, ns[0], ns[d]): F.mul(s, c) for lab, c in v.items()}
        ops[d] = new
    units = {(x, n): (A.units[x], n, n) for x, n in objs} if A.units else None
    C = AInfCategory(F, objs, homs, ops, units, A.arity_bound, f"Σ({A.name})")
    C.shifts = shifts
    C.base = A
    return C


def shift_functor(A, S=2):
    """x[n] ↦ x[n+1] from Σ(A) on -S..S-1 to Σ(A) on -S+1..S; component
    (-1)^{deg} on each basis label."""
    src = shift_category(A, shifts=range(-S, S))
    tgt = shift_category(A, shifts=range(-S + 1, S + 1))
    F = A.field
    comp = {}
    for lab in src.all_labels():
        a, n, m = lab
        comp[(lab,)] = {(a, n + 1, m + 1): F.sign(src.deg(lab))}
    return AInfFunctor(src, tgt, {(x, n): (x, n + 1) for x, n in src.objects},
                       {1: comp}, name="shift")


def inclusion_functor(A, SA):
    F = A.field
    comp = {(a,): {(a, 0, 0): F.one} for a in A.all_labels()}
    return AInfFunctor(A, SA, {x: (x, 0) for x in A.objects}, {1: comp}, name="incl")


# ----------------------------------------------------------- twisted complexes

@dataclass
class TwistedComplex:
    """Entries (E_i, n_i) and α_ij ∈ Hom_A(E_i, E_j)^{n_j - n_i + 1}, i < j.

    ``alpha`` maps (i, j) to a vector in A-labels.
    """
    entries: tuple
    alpha: dict = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        self.entries = tuple((x, int(n)) for x, n in self.entries)
        for (i, j) in self.alpha:
            if not 0 <= i < j < len(self.entries):
                raise CategoryError(f"α_{i}{j} is not strictly upper triangular")

    def alpha_sigma(self, i, j):
        """α_ij as a vector of Σ(A) labels."""
        n_i, n_j = self.entries[i][1], self.entries[j][1]
        return {(a, n_i, n_j): c for a, c in self.alpha.get((i, j), {}).items()}

    def shifts(self):
        return {n for _, n in self.entries}


def _check_alpha(A, E):
    for (i, j), v in E.alpha.items():
        (x, n), (y, m) = E.entries[i], E.entries[j]
        for a, c in v.items():
            if A.info.get(a, (None, None, None))[:2] != (x, y):
                raise CategoryError(f"α_{i}{j} component {a!r} is not in Hom({x}, {y})")
            if A.deg(a) != m - n + 1:
                raise CategoryError(f"α_{i}{j} component {a!r} has degree {A.deg(a)}, "
                                    f"expected {m - n + 1}")


def _paths(E, i, j):
    """Increasing index paths i = p_0 < ... < p_k = j as lists of α vectors
    (applied order); k = 0 gives the empty path."""
    if i == j:
        yield []
        return
    for mid in range(i + 1, j + 1):
        v = E.alpha_sigma(i, mid)
        if not v:
            continue
        for rest in _paths(E, mid, j):
            yield [v] + rest


def _shift_cat_for(A, complexes):
    shifts = set()
    for E in complexes:
        shifts |= E.shifts()
    lo, hi = min(shifts), max(shifts)
    return shift_category(A, shifts=range(lo, hi + 1))


def mc_check(A, E, SA=None):
    """Residual of Σ_k m_k(α, ..., α) on every pair i < j."""
    _check_alpha(A, E)
    SA = SA or _shift_cat_for(A, [E])
    F = A.field
    wit = []
    strict = SA.max_arity() <= 2
    for i in range(len(E.entries)):
        for j in range(i + 1, len(E.entries)):
            acc = {}
            for path in _paths(E, i, j):
                k = len(path)
                if k > SA.arity_bound and not strict:
                    raise WindowError(f"MC needs m_{k} beyond the arity bound")
                vadd(F, acc, SA.m(k, list(reversed(path))))
            if acc:
                wit.append(((i, j), acc))
    return Report("maurer-cartan", not wit, wit)


def cone(A, f, x, y, name=None):
    """Cone of a closed degree-0 f: x -> y as the twisted complex x[1] ⊕ y."""
    for a in f:
        if A.info[a][:2] != (x, y) or A.deg(a) != 0:
            raise CategoryError("cone needs a degree-0 morphism x -> y")
    if A.m(1, [f]):
        raise CategoryError("cone needs a closed morphism")
    E = TwistedComplex(((x, 1), (y, 0)), {(0, 1): dict(f)} if f else {},
                       name or f"cone({x}->{y})")
    rep = mc_check(A, E)
    assert rep.ok, rep.witnesses
    return E


def single(x, n=0, name=None):
    return TwistedComplex(((x, n),), {}, name or (f"{x}[{n}]" if n else str(x)))


def shift_twisted(A, E, k=1, name=None):
    """E[k]: shifts raised by k; α multiplied by (-1)^k."""
    F = A.field
    return TwistedComplex(tuple((x, n + k) for x, n in E.entries),
                          {ij: vscale(F, v, F.sign(k)) for ij, v in E.alpha.items()},
                          name or f"{E.name}[{k}]")


def cone_of_morphism(A, E, E2, g, name=None):
    """Cone of a closed degree-0 morphism g: E -> E2 of twisted complexes.

    ``g`` maps (i, j) to an A-vector (component E_i -> E2_j)."""
    E1 = shift_twisted(A, E, 1)
    k = len(E.entries)
    alpha = dict(E1.alpha)
    for (i, j), v in E2.alpha.items():
        alpha[(i + k, j + k)] = dict(v)
    for (i, j), v in g.items():
        if v:
            alpha[(i, j + k)] = dict(v)
    C = TwistedComplex(E1.entries + E2.entries, alpha, name or f"cone({E.name}->{E2.name})")
    rep = mc_check(A, C)
    if not rep.ok:
        raise CategoryError("morphism is not closed: cone fails Maurer-Cartan")
    return C


class TwCategory(AInfCategory):
    """Twisted complexes over Σ(A) as an A∞ category.

    Basis of Hom(E, E'): (E, E', i, j, b) with b a Σ(A) label E_i -> E'_j.
    The identity of E is the sum of the entry units, so ``units`` is unset
    and ``unit_vec`` returns that sum.
    """

    def __init__(self, A, complexes, max_arity=None):
        F = A.field
        self.base = A
        self.complexes = dict(complexes)
        for E in self.complexes.values():
            _check_alpha(A, E)
        SA = _shift_cat_for(A, self.complexes.values())
        self.SA = SA
        names = list(self.complexes)
        homs = {}
        for P in names:
            for Q in names:
                basis = {}
                EP, EQ = self.complexes[P], self.complexes[Q]
                for i, bi in enumerate(EP.entries):
                    for j, bj in enumerate(EQ.entries):
                        V = SA.hom(bi, bj)
                        for d in V.degrees():
                            basis.setdefault(d, []).extend((P, Q, i, j, b) for b in V.labels(d))
                if any(basis.values()):
                    homs[(P, Q)] = GradedSpace.make(basis)
        AInfCategory.__init__(self, F, names, homs, {}, None, A.arity_bound, "Tw")
        top = max_arity or max(2, SA.max_arity())
        ops = {}
        for d in range(1, top + 1):
            table = {}
            for key in self.composable_tuples(d):
                v = self._m_tw(key)
                if v:
                    table[key] = v
            if table:
                ops[d] = table
        self.ops = ops

    def _m_tw(self, key):
        """Σ over α insertions of m_Σ(α.., φ_d, α.., ..., φ_1, α..)."""
        F = self.field
        SA = self.SA
        phis = list(reversed(key))  # applied order φ_1..φ_d
        cxs = [self.complexes[phis[0][0]]] + [self.complexes[p[1]] for p in phis]
        out = {}
        first = cxs[0]
        last = cxs[-1]
        for start in range(phis[0][2] + 1):
            for pre in _paths(first, start, phis[0][2]):
                for mids in self._mid_paths(phis, cxs):
                    for end in range(phis[-1][3], len(last.entries)):
                        for post in _paths(last, phis[-1][3], end):
                            word = list(pre)
                            for t, p in enumerate(phis):
                                word.append({p[4]: F.one})
                                if t < len(phis) - 1:
                                    word.extend(mids[t])
                            word.extend(post)
                            if len(word) > SA.max_arity():
                                continue
                            res = SA.m(len(word), list(reversed(word)))
                            for b, c in res.items():
                                vadd(F, out, {(key[-1][0], key[0][1], start, end, b): c})
        return out

    def _mid_paths(self, phis, cxs):
        lists = []
        for t in range(len(phis) - 1):
            E = cxs[t + 1]
            lists.append(list(_paths(E, phis[t][3], phis[t + 1][2])))
        return itertools.product(*lists)

    def unit_vec(self, P):
        E = self.complexes[P]
        SA = self.SA
        return {(P, P, i, i, SA.units[b]): self.field.one for i, b in enumerate(E.entries)}


def twisted_category(A, complexes, max_arity=None):
    return TwCategory(A, complexes, max_arity)


def check_tw_units(T):
    """m²(f, 1) = f and m²(1, g) = (-1)^{deg g} g with the summed identities."""
    F = T.field
    wit = []
    for lab in T.all_labels():
        P, Q = T.src(lab), T.tgt(lab)
        v = {lab: F.one}
        if T.m(2, [v, T.unit_vec(P)]) != v:
            wit.append(("right", lab))
        if T.m(2, [T.unit_vec(Q), v]) != {lab: F.sign(T.deg(lab))}:
            wit.append(("left", lab))
    return Report("tw-units", not wit, wit)


# ----------------------------------------------------------- Ho-level checks

def closed_under_shift_check(A, S=1, core=None, bound=1):
    """(we2) for A -> Σ(A) and, for each x in ``core`` and |n| <= S, an
    object x' of A with x[n] ≅ x' in Ho(Σ(A))."""
    SA = shift_category(A, S)
    inc = inclusion_functor(A, SA)
    we2 = []
    for x in A.objects:
        for y in A.objects:
            rep = is_quasi_iso(functor_chain_map(inc, x, y))
            if not rep.ok:
                we2.append((x, y))
    H = HoCategory(SA)
    core = list(A.objects) if core is None else list(core)
    found, missing = {}, []
    for x in core:
        for n in range(-S, S + 1):
            hit = None
            for y in A.objects:
                iso = H.find_iso((x, n), (y, 0), bound)
                if iso is not None:
                    hit = y
                    break
            if hit is None:
                missing.append((x, n))
            else:
                found[(x, n)] = hit
    wit = [("we2", w) for w in we2] + [("no-iso", w) for w in missing]
    return Report("closed-under-shift", not wit, wit, {"isos": found})


@dataclass
class IdempotentReport:
    ok: bool
    checked: int
    split: dict
    unsplit: list

    def __bool__(self):
        return self.ok


def ho_idempotent_check(A, bound=1, cap=100_000):
    """Every idempotent of every H⁰ End(k) splits through an object of A.

    E = 0 and E = id count as split (through the zero object and k).
    """
    H = HoCategory(A)
    F = A.field
    split, unsplit = {}, []
    checked = 0
    for k in A.objects:
        n = H.dim(k, k)
        if F.size and F.size ** n > cap:
            raise WindowError(f"{F.size ** n} endomorphisms of {k} exceed the cap")
        idk = H.identity(k)
        for E in H.elements(k, k, bound):
            if H.compose(k, k, k, E, E) != E:
                continue
            checked += 1
            if all(F.is_zero(c) for c in E) or E == idk:
                split[(k, E)] = k
                continue
            hit = None
            for m in A.objects:
                for p in H.elements(k, m, bound):
                    s = _split_section(H, k, m, p, E)
                    if s is not None:
                        hit = (m, p, s)
                        break
                if hit:
                    break
            if hit:
                split[(k, E)] = hit
            else:
                unsplit.append((k, E))
    return IdempotentReport(not unsplit, checked, split, unsplit)


def _split_section(H, k, m, p, E):
    """s: m -> k with s∘p = E and p∘s = 1_m, or None."""
    F = H.F
    n = H.dim(m, k)
    if n == 0:
        return None
    basis = [tuple(F.one if i == j else F.zero for i in range(n)) for j in range(n)]
    sp = [H.compose(k, m, k, b, p) for b in basis]
    ps = [H.compose(m, k, m, p, b) for b in basis]
    idm = H.identity(m)
    rows, rhs = [], []
    for i in range(len(E)):
        rows.append([sp[j][i] for j in range(n)])
        rhs.append(E[i])
    for i in range(len(idm)):
        rows.append([ps[j][i] for j in range(n)])
        rhs.append(idm[i])
    sol = solve(F, rows, n, rhs)
    return tuple(sol) if sol is not None else None


# ---------------------------------------------------- classical cone oracle

def classical_cone(X, Y, f):
    """Mapping cone C(f)^i = X^{i+1} ⊕ Y^i with d = [[-d_X, 0], [f, d_Y]].

    ``f`` is a matrix-unit vector {(y, x): c}."""
    F = X.field
    basis = {}
    for d in X.degrees():
        basis.setdefault(d - 1, []).extend(("x", l) for l in X.labels(d))
    for d in Y.degrees():
        basis.setdefault(d, []).extend(("y", l) for l in Y.labels(d))
    d = {}
    for a, v in X.d.entries.items():
        for b, c in v.items():
            vadd(F, d.setdefault(("x", a), {}), {("x", b): F.neg(c)})
    for (yl, xl), c in f.items():
        vadd(F, d.setdefault(("x", xl), {}), {("y", yl): c})
    for a, v in Y.d.entries.items():
        for b, c in v.items():
            vadd(F, d.setdefault(("y", a), {}), {("y", b): c})
    return ChainComplex.make(F, basis, {k: v for k, v in d.items() if v})


def classical_rotation(X, Y, f):
    """C(ι) for ι: Y -> C(f), and the projection C(ι) -> X[1] (a quasi-iso)."""
    F = X.field
    Cf = classical_cone(X, Y, f)
    iota = {(("y", l), l): F.one for l in Y.labels()}
    Ci = classical_cone(Y, Cf, iota)
    X1 = shift_complex(X, 1)
    proj = chain_map(Ci, X1, {("y", ("x", l)): {l: F.one} for l in X.labels()})
    return Cf, Ci, X1, proj


def hom_cohomology_dims(C, lo=None, hi=None):
    from .chain import cohomology
    lo = C.window()[0] if lo is None else lo
    hi = C.window()[1] if hi is None else hi
    return {n: cohomology(C, n).dim for n in range(lo, hi + 1)}
