"""Finitely presented A∞-categories and functors.

Operations are stored as sparse structure-constant tables.  A key of
``ops[d]`` is a composable tuple of basis labels written ``(a_d, ..., a_1)``:
``a_1`` is applied first and lies in Hom(x_0, x_1).  Values are sparse
vectors in Hom(x_0, x_d) of degree ``sum(deg a_i) + 2 - d``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .chain import ChainComplex, ChainMap, cohomology, coordinates, is_quasi_iso
from .linear import (GradedMap, GradedSpace, WindowError, solve, vadd, vclean,
                     vscale)


class CategoryError(ValueError):
    pass


class AInfCategory:
    def __init__(self, F, objects, homs, ops, units=None, arity_bound=4, name=""):
        self.field = F
        self.objects = tuple(objects)
        self.homs = {k: v for k, v in homs.items() if v.labels()}
        self.units = dict(units) if units else None
        self.arity_bound = arity_bound
        self.name = name
        self.info = {}
        for (x, y), V in self.homs.items():
            if x not in self.objects or y not in self.objects:
                raise CategoryError(f"hom ({x},{y}) has unknown objects")
            for lab in V.labels():
                if lab in self.info:
                    raise CategoryError(f"label {lab!r} used twice")
                self.info[lab] = (x, y, V.deg(lab))
        self._by_src = {}
        for lab, (x, y, _) in self.info.items():
            self._by_src.setdefault(x, []).append(lab)
        self.order = {lab: i for i, lab in enumerate(self.all_labels())}
        self.ops = {}
        for d, table in ops.items():
            clean = {}
            for key, v in table.items():
                key = tuple(key)
                v = vclean(F, v)
                if not v:
                    continue
                self._check_entry(d, key, v)
                clean[key] = v
            if clean:
                self.ops[d] = clean
        if self.units:
            for x, u in self.units.items():
                if self.info.get(u, (None, None, None)) != (x, x, 0):
                    raise CategoryError(f"unit {u!r} of {x} must be a degree-0 endomorphism")

    # -- bookkeeping
    def _check_entry(self, d, key, v):
        if len(key) != d:
            raise CategoryError(f"m^{d} entry with {len(key)} inputs")
        for lab in key:
            if lab not in self.info:
                raise CategoryError(f"unknown label {lab!r}")
        for a, b in zip(key[1:], key[:-1]):
            if self.info[a][1] != self.info[b][0]:
                raise CategoryError(f"non-composable tuple {key!r}")
        x0, xd = self.info[key[-1]][0], self.info[key[0]][1]
        want = sum(self.info[l][2] for l in key) + 2 - d
        V = self.homs.get((x0, xd))
        for lab in v:
            if V is None or lab not in V:
                raise WindowError(f"m^{d}{key!r} -> {lab!r} outside Hom({x0},{xd})")
            if V.deg(lab) != want:
                raise CategoryError(f"m^{d}{key!r} -> {lab!r} has degree {V.deg(lab)}, expected {want}")

    def deg(self, lab):
        return self.info[lab][2]

    def src(self, lab):
        return self.info[lab][0]

    def tgt(self, lab):
        return self.info[lab][1]

    def hom(self, x, y):
        return self.homs.get((x, y), GradedSpace.make({}, (0, 0)))

    def all_labels(self):
        out = []
        for x in self.objects:
            for y in self.objects:
                out.extend(self.hom(x, y).labels())
        return out

    def max_arity(self):
        return max(self.ops, default=0)

    def is_strict(self):
        return self.max_arity() <= 2

    def unit_vec(self, x):
        return {self.units[x]: self.field.one}

    def vdeg(self, v):
        ds = {self.deg(l) for l in v}
        if len(ds) > 1:
            raise CategoryError("inhomogeneous vector")
        return ds.pop() if ds else None

    # -- evaluation
    def composable_tuples(self, d):
        """All composable basis tuples (a_d, ..., a_1), deterministic order."""
        def rec(x, k):
            if k == 0:
                yield ()
                return
            for lab in self._by_src.get(x, ()):
                for rest in rec(self.tgt(lab), k - 1):
                    yield rest + (lab,)
        for x in self.objects:
            yield from rec(x, d)

    def m_basis(self, key):
        return self.ops.get(len(key), {}).get(tuple(key), {})

    def m(self, d, args):
        """m^d on vectors given in written order."""
        F = self.field
        table = self.ops.get(d)
        out = {}
        if not table:
            return out
        for combo in itertools.product(*[list(a.items()) for a in args]):
            key = tuple(l for l, _ in combo)
            val = table.get(key)
            if not val:
                continue
            c = F.one
            for _, x in combo:
                c = F.mul(c, x)
            vadd(F, out, val, c)
        return out

    def hom_chain(self, x, y):
        """Hom(x, y) as a cochain complex with differential m¹."""
        F = self.field
        V = self.hom(x, y)
        ent = {}
        for lab in V.labels():
            v = self.m_basis((lab,))
            if v:
                ent[lab] = dict(v)
        return ChainComplex(F, V, GradedMap(F, V, V, 1, ent))

    def __repr__(self):
        return f"AInfCategory({self.name or '?'}, objects={list(self.objects)})"


def table_signature(A):
    """Canonical tuple for table-exact comparison of two categories."""
    F = A.field
    ops = tuple(sorted(
        (d, tuple(map(str, k)), tuple(sorted((str(l), F.fmt(c)) for l, c in v.items())))
        for d, t in A.ops.items() for k, v in t.items()))
    homs = tuple(sorted((str(x), str(y), tuple((d, tuple(map(str, ls))) for d, ls in V.basis))
                        for (x, y), V in A.homs.items()))
    units = tuple(sorted((str(k), str(v)) for k, v in (A.units or {}).items()))
    return (str(F), tuple(map(str, A.objects)), homs, ops, units)


# ------------------------------------------------------------------ reports

@dataclass
class Report:
    name: str
    ok: bool
    witnesses: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def _fmt_vec(F, v):
    return {str(k): F.fmt(c) for k, c in sorted(v.items(), key=lambda kv: str(kv[0]))}


# ---------------------------------------------------------------- relations

def relation_residual(A, key):
    """Left side of the A∞ relation on a composable basis tuple."""
    F = A.field
    d = len(key)
    out = {}
    degs = [A.deg(l) for l in key]
    for m in range(1, d + 1):
        inner_t = A.ops.get(m)
        outer_t = A.ops.get(d - m + 1)
        if not inner_t or not outer_t:
            continue
        for n in range(0, d - m + 1):
            inner = inner_t.get(key[d - n - m: d - n])
            if not inner:
                continue
            dagger = sum(degs[d - n:]) - n
            s = F.sign(dagger)
            pre, post = key[: d - n - m], key[d - n:]
            for lab, c in inner.items():
                val = outer_t.get(pre + (lab,) + post)
                if val:
                    vadd(F, out, val, F.mul(s, c))
    return out


def check_relations(A, arity_max=None):
    """Evaluate the A∞ relation on every composable tuple up to ``arity_max``.

    Relations of arity above 2*D0 - 1 (D0 the top nonzero m^d) vanish
    identically and are skipped.
    """
    D0 = A.max_arity()
    if arity_max is None:
        arity_max = max(1, 2 * D0 - 1)
    if arity_max < 1:
        raise ValueError("arity_max must be >= 1")
    top = min(arity_max, max(1, 2 * D0 - 1))
    wit = []
    for d in range(1, top + 1):
        for key in A.composable_tuples(d):
            r = relation_residual(A, key)
            if r:
                wit.append((key, r))
    return Report("relations", not wit, wit,
                  {"arity_max": arity_max, "checked_up_to": top,
                   "skipped_above": top if top < arity_max else None})


def check_units(A):
    F = A.field
    if not A.units:
        raise CategoryError("no units declared")
    wit = []
    for x, u in sorted(A.units.items(), key=lambda kv: str(kv[0])):
        for f in A.all_labels():
            if A.src(f) == x:
                got = A.m(2, [{f: F.one}, {u: F.one}])
                if got != {f: F.one}:
                    wit.append(("u1-right", (f, u), got))
            if A.tgt(f) == x:
                got = A.m(2, [{u: F.one}, {f: F.one}])
                want = {f: F.sign(A.deg(f))}
                if got != want:
                    wit.append(("u1-left", (u, f), got))
    unit_labels = set(A.units.values())
    for d, table in sorted(A.ops.items()):
        if d <= 2:
            continue
        for key, v in table.items():
            if unit_labels.intersection(key):
                wit.append(("u2", key, v))
    return Report("units", not wit, wit)


# ----------------------------------------------------------------- opposite

def _eps(degs):
    s = 1
    for i in range(len(degs)):
        for j in range(i + 1, len(degs)):
            s += (degs[i] + 1) * (degs[j] + 1)
    return s


def opposite(A, negate_m1=True):
    """A^op: homs transposed, m^n (n > 1) re-signed by (-1)^ε on the reversed tuple.

    m¹ is negated too (ε of a single input is the empty sum plus one);
    keeping m¹ unchanged breaks the relations once m³ is nonzero.
    ``negate_m1=False`` gives that variant for comparison.
    """
    F = A.field
    homs = {(y, x): V for (x, y), V in A.homs.items()}
    ops = {}
    for d, table in A.ops.items():
        new = {}
        for key, v in table.items():
            if d == 1:
                new[key] = vscale(F, v, F.sign(1)) if negate_m1 else dict(v)
                continue
            rk = tuple(reversed(key))
            s = F.sign(_eps([A.deg(l) for l in rk]))
            new[rk] = vscale(F, v, s)
        ops[d] = new
    name = A.name[:-3] if A.name.endswith("^op") else (A.name + "^op" if A.name else "")
    return AInfCategory(F, A.objects, homs, ops, A.units, A.arity_bound, name)


# ------------------------------------------------------------ coderivations

def coderivation(A, k, key, op=False):
    """d̂_k on the word (f_n, ..., f_1): word -> coefficient.

    With ``op=True`` the word lives in A^op and m_k is taken there.
    """
    B = opposite(A) if op else A
    F = B.field
    n = len(key)
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    out = {}
    table = B.ops.get(k, {})
    degs = [B.deg(l) for l in key]  # degs[n - i] = deg f_i
    for l in range(1, n - k + 2):
        lo, hi = n - l - k + 1, n - l + 1
        val = table.get(tuple(key[lo:hi]))
        if not val:
            continue
        dag = sum(degs[n - i] + 1 for i in range(1, l))
        s = F.sign(dag)
        for lab, c in val.items():
            w = tuple(key[:lo]) + (lab,) + tuple(key[hi:])
            vadd(F, out, {w: F.mul(s, c)})
    return out


def bar_differential(A, word_vec, op=False):
    """d̂ = sum_k d̂_k extended linearly to a combination of words."""
    F = A.field
    out = {}
    for w, c in word_vec.items():
        for k in range(1, len(w) + 1):
            vadd(F, out, coderivation(A, k, w, op), c)
    return out


# ------------------------------------------------------------------ functors

class AInfFunctor:
    """Components F_n as tables: key (a_n..a_1) -> vector in the target."""

    def __init__(self, source, target, obj_map, components, name=""):
        self.source = source
        self.target = target
        self.obj_map = dict(obj_map)
        self.components = {n: {tuple(k): vclean(target.field, v) for k, v in t.items()}
                           for n, t in components.items()}
        self.name = name
        for n, t in self.components.items():
            for key, v in t.items():
                x0, xn = source.src(key[-1]), source.tgt(key[0])
                want = sum(source.deg(l) for l in key) + 1 - n
                for lab in v:
                    if target.info.get(lab) is None:
                        raise CategoryError(f"unknown target label {lab!r}")
                    tx, ty, td = target.info[lab]
                    if (tx, ty) != (self.obj_map[x0], self.obj_map[xn]) or td != want:
                        raise CategoryError(f"F_{n}{key!r} -> {lab!r} mistyped")

    def apply(self, key):
        return self.components.get(len(key), {}).get(tuple(key), {})

    def max_arity(self):
        return max((n for n, t in self.components.items() if t), default=0)


def identity_functor(A):
    F = A.field
    return AInfFunctor(A, A, {x: x for x in A.objects},
                       {1: {(l,): {l: F.one} for l in A.all_labels()}}, name="id")


class _TableTarget:
    """Adapter so check_functor can drive both tables and other targets."""

    def __init__(self, C):
        self.C = C
        self.F = C.field

    def zero(self):
        return {}

    def add(self, acc, v, c):
        return vadd(self.F, acc, v, c)

    def m(self, k, args):
        return self.C.m(k, args)

    def is_zero(self, v):
        return not v

    def sub(self, a, b):
        out = dict(a)
        return vadd(self.F, out, b, self.F.neg(self.F.one))


def _compositions(n):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def functor_residual(src, apply_F, target, key):
    """Both sides of the functor equation on one composable tuple.

    ``apply_F(key)`` returns the target element F_{len(key)}(key); ``target``
    provides zero/add/m.
    """
    F = src.field
    N = len(key)
    degs = [src.deg(l) for l in key]
    lhs = target.zero()
    for k in range(1, N + 1):
        table = src.ops.get(k)
        if not table:
            continue
        for j in range(0, N - k + 1):
            l = N - j - k
            val = table.get(tuple(key[j:j + k]))
            if not val:
                continue
            s = j * k + l + (2 - k) * sum(degs[:j])
            for lab, c in val.items():
                w = tuple(key[:j]) + (lab,) + tuple(key[j + k:])
                img = apply_F(w)
                if not target.is_zero(img):
                    target.add(lhs, img, F.mul(F.sign(s), c))
    rhs = target.zero()
    for comp in _compositions(N):
        r = len(comp)
        s = sum((1 - comp[u]) * sum(comp[: u + 1]) for u in range(1, r))
        pos = 0
        args = []
        kos = 0
        for iu in comp:
            kos += (1 - iu) * sum(degs[:pos])
            args.append(apply_F(tuple(key[pos:pos + iu])))
            pos += iu
        if any(target.is_zero(a) for a in args):
            continue
        val = target.m(r, args)
        if not target.is_zero(val):
            target.add(rhs, val, F.sign(s + kos))
    return lhs, rhs


def check_functor(Fn, arity_max=3):
    """The functor equation on every composable tuple, plus unital clauses."""
    A, B = Fn.source, Fn.target
    T = _TableTarget(B)
    F = B.field
    wit = []
    for N in range(1, arity_max + 1):
        for key in A.composable_tuples(N):
            lhs, rhs = functor_residual(A, Fn.apply, T, key)
            if lhs != rhs:
                wit.append(("equation", key, T.sub(lhs, rhs)))
    if A.units and B.units:
        for x, u in A.units.items():
            bu = B.units.get(Fn.obj_map[x])
            if Fn.apply((u,)) != ({bu: F.one} if bu is not None else {}):
                wit.append(("unit", (u,), Fn.apply((u,))))
        ul = set(A.units.values())
        for n, t in Fn.components.items():
            if n >= 2:
                for key, v in t.items():
                    if ul.intersection(key) and v:
                        wit.append(("unit-slot", key, v))
    return Report("functor", not wit, wit, {"arity_max": arity_max})


def functor_chain_map(Fn, x, y):
    """F_1 as a chain map Hom_A(x, y) -> Hom_B(Fx, Fy)."""
    A, B = Fn.source, Fn.target
    S = A.hom_chain(x, y)
    T = B.hom_chain(Fn.obj_map[x], Fn.obj_map[y])
    ent = {l: dict(Fn.apply((l,))) for l in S.labels() if Fn.apply((l,))}
    return ChainMap(S, T, GradedMap(A.field, S.space, T.space, 0, ent))


# ------------------------------------------------------- homotopy category

class HoCategory:
    """H⁰ of every hom complex, composition induced by m² (degree 0)."""

    def __init__(self, A):
        self.A = A
        self.F = A.field
        self.objects = A.objects
        self.H = {}
        self.C = {}
        for x in A.objects:
            for y in A.objects:
                C = A.hom_chain(x, y)
                self.C[(x, y)] = C
                self.H[(x, y)] = cohomology(C, 0)

    def dim(self, x, y):
        return self.H[(x, y)].dim

    def vec(self, x, y, coords):
        F = self.F
        out = {}
        for c, r in zip(coords, self.H[(x, y)].reps):
            if not F.is_zero(c):
                vadd(F, out, r, c)
        return out

    def coords(self, x, y, v):
        return tuple(coordinates(self.C[(x, y)], 0, self.H[(x, y)], v))

    def compose(self, x, y, z, g, f):
        """Class of m²(g, f) for classes f: x -> y, g: y -> z (coordinates)."""
        v = self.A.m(2, [self.vec(y, z, g), self.vec(x, y, f)])
        return self.coords(x, z, v)

    def identity(self, x):
        return self.coords(x, x, self.A.unit_vec(x))

    def elements(self, x, y, bound=1):
        F = self.F
        n = self.dim(x, y)
        vals = list(F.elements()) if F.size else [F.coerce(i) for i in range(-bound, bound + 1)]
        return itertools.product(vals, repeat=n)

    def inverse(self, x, y, f):
        """g: y -> x with g∘f = 1_x and f∘g = 1_y, solved linearly, or None."""
        F = self.F
        n = self.dim(y, x)
        rows, rhs = [], []
        basis = [tuple(F.one if i == j else F.zero for i in range(n)) for j in range(n)]
        left = [self.compose(x, y, x, b, f) for b in basis]
        right = [self.compose(y, x, y, f, b) for b in basis]
        idx, idy = self.identity(x), self.identity(y)
        for i in range(len(idx)):
            rows.append([left[j][i] for j in range(n)])
            rhs.append(idx[i])
        for i in range(len(idy)):
            rows.append([right[j][i] for j in range(n)])
            rhs.append(idy[i])
        if n == 0:
            return () if all(F.is_zero(c) for c in rhs) else None
        sol = solve(F, rows, n, rhs)
        return tuple(sol) if sol is not None else None

    def find_iso(self, x, y, bound=1):
        """First iso x -> y (exhaustive over finite fields)."""
        for f in self.elements(x, y, bound):
            g = self.inverse(x, y, f)
            if g is not None:
                return f, g
        return None


def homotopy_category(A):
    return HoCategory(A)


def check_quasi_equivalence(Fn, bound=1):
    """(we2) F_1 quasi-iso on every hom complex; (we1) Ho(F) an equivalence."""
    A, B = Fn.source, Fn.target
    we2 = []
    for x in A.objects:
        for y in A.objects:
            rep = is_quasi_iso(functor_chain_map(Fn, x, y))
            if not rep.ok:
                we2.append(((x, y), {n: (r[0], r[1]) for n, r in rep.failures().items()}))
    HA, HB = HoCategory(A), HoCategory(B)
    ff = []
    for x in A.objects:
        for y in A.objects:
            fx, fy = Fn.obj_map[x], Fn.obj_map[y]
            imgs = [HB.coords(fx, fy, Fn_apply_vec(Fn, HA.vec(x, y, e)))
                    for e in _unit_coords(HA.F, HA.dim(x, y))]
            from .linear import rank
            r = rank(HA.F, [list(v) for v in imgs], HB.dim(fx, fy)) if imgs and HB.dim(fx, fy) else 0
            if not (r == HA.dim(x, y) == HB.dim(fx, fy)):
                ff.append(((x, y), HA.dim(x, y), HB.dim(fx, fy), r))
    ess = []
    for y in B.objects:
        hit = None
        for x in A.objects:
            iso = HB.find_iso(Fn.obj_map[x], y, bound)
            if iso is not None:
                hit = (x, iso)
                break
        if hit is None:
            ess.append(y)
    ok = not we2 and not ff and not ess
    return Report("quasi-equivalence", ok,
                  [("we2", w) for w in we2] + [("fully-faithful", w) for w in ff]
                  + [("essentially-surjective", w) for w in ess],
                  {"we1": not ff and not ess, "we2": not we2})


def _unit_coords(F, n):
    return [tuple(F.one if i == j else F.zero for i in range(n)) for j in range(n)]


def Fn_apply_vec(Fn, v):
    F = Fn.target.field
    out = {}
    for l, c in v.items():
        vadd(F, out, Fn.apply((l,)), c)
    return out


# ------------------------------------------------------------------ builders

def make_category(F, objects, homs, ops=None, units=None, auto_units=True,
                  arity_bound=4, name="", windows=None):
    """Build from plain data.

    ``homs``: {(x, y): {degree: [labels]}}; ``ops``: {d: {(a_d..a_1): {label: c}}}.
    With ``auto_units`` the unit compositions m²(f, 1) = f and
    m²(1, g) = (-1)^{deg g} g are filled in.
    """
    spaces = {}
    for (x, y), b in homs.items():
        win = (windows or {}).get((x, y))
        spaces[(x, y)] = GradedSpace.make(b, win)
    table = {}
    for d, t in (ops or {}).items():
        table[d] = {tuple(k): {l: F.coerce(c) for l, c in v.items()} for k, v in t.items()}
    if units and auto_units:
        info = {}
        for (x, y), V in spaces.items():
            for l in V.labels():
                info[l] = (x, y, V.deg(l))
        m2 = table.setdefault(2, {})
        for x, u in units.items():
            for l, (a, b, dg) in info.items():
                if a == x:
                    m2.setdefault((l, u), {l: F.one})
                if b == x:
                    m2.setdefault((u, l), {l: F.sign(dg)})
    return AInfCategory(F, objects, spaces, table, units, arity_bound, name)


def ch_category(complexes, name="Ch"):
    """The dg category Ch_K restricted to finitely many named complexes.

    Basis of Hom(X, Y): matrix units, labelled ``(X, Y, y, x)``.  On
    End(X) the first degree-0 diagonal unit is replaced by the identity
    ``("1", X)`` so that units are basis elements.
    """
    from .chain import hom_space, m1_ch, m2_ch
    names = list(complexes)
    F = complexes[names[0]].field
    spaces, to_mu, from_mu = {}, {}, {}
    for X in names:
        for Y in names:
            HS = hom_space(complexes[X], complexes[Y])
            basis = {}
            conv = {}
            swap = None
            if X == Y:
                diag0 = [(x, x) for x in complexes[X].labels() if (x, x) in HS]
                if diag0:
                    swap = diag0[0]
            for d in HS.degrees():
                labs = []
                for mu in HS.labels(d):
                    if mu == swap:
                        lab = ("1", X)
                        conv[lab] = {(x, x): F.one for x in complexes[X].labels()}
                    else:
                        lab = (X, Y) + mu
                        conv[lab] = {mu: F.one}
                    labs.append(lab)
                basis[d] = labs
            spaces[(X, Y)] = GradedSpace.make(basis, HS.window)
            to_mu[(X, Y)] = conv
            from_mu[(X, Y)] = (swap, X, Y)

    def back(X, Y, v):
        swap, _, _ = from_mu[(X, Y)]
        out = {}
        if swap is not None and swap in v:
            c = v[swap]
            out[("1", X)] = c
            for x in complexes[X].labels():
                if (x, x) != swap:
                    vadd(F, out, {(X, Y, x, x): F.neg(c)})
        for mu, c in v.items():
            if mu != swap:
                vadd(F, out, {(X, Y) + mu: c})
        return out

    def mu(X, Y, lab):
        return to_mu[(X, Y)][lab]

    ops = {1: {}, 2: {}}
    for X in names:
        for Y in names:
            for lab in spaces[(X, Y)].labels():
                v = m1_ch(complexes[X], complexes[Y], mu(X, Y, lab))
                if v:
                    ops[1][(lab,)] = back(X, Y, v)
    for X in names:
        for Y in names:
            for f in spaces[(X, Y)].labels():
                for Z in names:
                    for g in spaces[(Y, Z)].labels():
                        v = m2_ch(complexes[X], complexes[Y], complexes[Z], mu(X, Y, f), mu(Y, Z, g))
                        if v:
                            ops[2][(g, f)] = back(X, Z, v)
    units = {X: ("1", X) for X in names if ("1", X) in spaces[(X, X)]}
    C = AInfCategory(F, names, spaces, ops, units or None, 2, name)
    C.complexes = dict(complexes)
    C.to_labels = back
    C.to_mu = mu
    return C
