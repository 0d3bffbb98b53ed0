"""The A∞-nerve.

An n-simplex is a unital A∞-functor from the minimal category [n]_K, i.e.
objects X_0..X_n with coefficients f_I ∈ Hom(X_min I, X_max I) of degree
2 - |I| for every I ⊆ {0..n} with |I| >= 2, subject to

    m¹(f_I) = Σ_j (-1)^{j-1} f_{I - i_j}
            + Σ_j (-1)^{1+(m+1)(j-1)} m²(f_{i_j..i_{m+1}}, f_{i_0..i_j})
            + Σ_{r>2} Σ_s (-1)^{1+ε_r(s)} m^r(f_{block r}, ..., f_{block 1})

for I = {i_0 < ... < i_{m+1}}, where s runs over compositions of m+1 into r
parts, block k spans s_k consecutive steps, and
ε_r(s) = Σ_{k>=2} (1 - s_k + s_{k-1}) s_{k-1}.

Levels are enumerated exhaustively over finite fields by solving the
equation for f_I in increasing |I|: the right side only involves strictly
smaller subsets, so each f_I ranges over a coset of ker m¹.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import CategoryError, Report, make_category
from .linear import FieldError, LinearSolver, span_combinations, vadd
from .simplicial import SimplicialLevels, SimplicialMap


class CapExceeded(RuntimeError):
    def __init__(self, estimate, cap):
        super().__init__(f"estimated {estimate} simplices exceeds cap {cap}")
        self.estimate = estimate
        self.cap = cap


# ------------------------------------------------------- minimal categories

def minimal_category(n, F):
    """[n]_K: objects 0..n, one generator j_ik in degree 0 for i < k."""
    objs = list(range(n + 1))
    homs = {}
    for i in objs:
        for k in objs:
            if i < k:
                homs[(i, k)] = {0: [f"j{i}{k}"]}
            elif i == k:
                homs[(i, i)] = {0: [f"1_{i}"]}
    ops = {2: {}}
    for a, b, c in itertools.combinations(objs, 3):
        ops[2][(f"j{b}{c}", f"j{a}{b}")] = {f"j{a}{c}": 1}
    units = {i: f"1_{i}" for i in objs}
    return make_category(F, objs, homs, ops, units, name=f"[{n}]")


# ----------------------------------------------------------------- simplices

def subsets(n):
    """Subsets of {0..n} with at least two elements, by size then lex."""
    out = []
    for k in range(2, n + 2):
        out.extend(itertools.combinations(range(n + 1), k))
    return out


def _freeze(A, v):
    return tuple(sorted(v.items(), key=lambda kv: A.order[kv[0]]))


@dataclass(frozen=True)
class NerveSimplex:
    objects: tuple
    coeffs: tuple  # ((I, ((label, c), ...)), ...), zero coefficients omitted

    @property
    def n(self):
        return len(self.objects) - 1

    def f(self, I):
        for J, v in self.coeffs:
            if J == tuple(I):
                return dict(v)
        return {}

    def as_dict(self):
        return {I: dict(v) for I, v in self.coeffs}

    @classmethod
    def build(cls, A, objects, f):
        items = [(I, _freeze(A, v)) for I, v in f.items() if v]
        items.sort(key=lambda t: (len(t[0]), t[0]))
        return cls(tuple(objects), tuple(items))

    def __repr__(self):
        body = ", ".join(f"f{''.join(map(str, I))}={dict(v)}" for I, v in self.coeffs)
        return f"Simplex({list(self.objects)}; {body})"


def epsilon(s):
    return sum((1 - s[k] + s[k - 1]) * s[k - 1] for k in range(1, len(s)))


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


SIGNS = ("printed", "functor")


def equation_terms(A, f, I, signs="printed"):
    """The right-hand side of the coefficient equation for I.

    Returns (group1, group2, group3) as vectors; ``f`` maps subsets to
    vectors (missing means zero).  ``signs="functor"`` replaces the signs of
    groups 2 and 3 by -1, which is what the functor equation
    Σ m^r(F, ..., F) = Σ (-1)^{ε} F(.., m, ..) gives for [n]_K.  The two
    agree in characteristic 2.
    """
    if signs not in SIGNS:
        raise ValueError(f"signs must be one of {SIGNS}")
    F = A.field
    m = len(I) - 2
    g1, g2, g3 = {}, {}, {}
    for j in range(1, m + 1):
        sub = I[:j] + I[j + 1:]
        v = f.get(sub)
        if v:
            vadd(F, g1, v, F.sign(j - 1))
    if 2 in A.ops:
        for j in range(1, m + 1):
            a, b = f.get(I[j:]), f.get(I[: j + 1])
            if a and b:
                e = 1 if signs == "functor" else 1 + (m + 1) * (j - 1)
                vadd(F, g2, A.m(2, [a, b]), F.sign(e))
    for r in range(3, m + 2):
        if r not in A.ops:
            continue
        for s in _compositions(m + 1, r):
            blocks = []
            pos = 0
            for sk in s:
                blocks.append(I[pos: pos + sk + 1])
                pos += sk
            args = [f.get(B) for B in reversed(blocks)]
            if all(args):
                e = 1 if signs == "functor" else 1 + epsilon(s)
                vadd(F, g3, A.m(r, args), F.sign(e))
    return g1, g2, g3


def equation_residual(A, f, I, signs="printed"):
    """m¹(f_I) minus the right-hand side."""
    F = A.field
    out = A.m(1, [f[I]]) if f.get(I) else {}
    out = dict(out)
    for g in equation_terms(A, f, I, signs):
        vadd(F, out, g, F.neg(F.one))
    return out


def simplex_check(A, s, arity_max=None, signs="printed"):
    """Evaluate every coefficient equation of ``s``; residuals as witnesses."""
    n = s.n
    if arity_max is not None and n + 1 > arity_max:
        raise CategoryError(f"simplex needs m^{n + 1}, above arity bound {arity_max}")
    f = s.as_dict()
    wit = []
    for I in f:
        if len(I) < 2 or any(i < 0 or i > n for i in I) or list(I) != sorted(set(I)):
            wit.append(("index", I, f[I]))
            continue
        x, y = s.objects[I[0]], s.objects[I[-1]]
        for lab in f[I]:
            if A.info.get(lab) != (x, y, 2 - len(I)):
                wit.append(("degree", I, lab))
    for I in subsets(n):
        r = equation_residual(A, f, I, signs)
        if r:
            wit.append(("equation", I, r))
    return Report("simplex", not wit, wit)


# -------------------------------------------------------------- enumeration

class _Solvers:
    """m¹: Hom(x, y)^k -> Hom(x, y)^{k+1} prepared for repeated solving."""

    def __init__(self, A):
        self.A = A
        self.cache = {}

    def get(self, x, y, k):
        key = (x, y, k)
        if key not in self.cache:
            A, F = self.A, self.A.field
            V = A.hom(x, y)
            src, tgt = V.labels(k), V.labels(k + 1)
            tix = {l: i for i, l in enumerate(tgt)}
            rows = [[F.zero] * len(src) for _ in tgt]
            for j, l in enumerate(src):
                for t, c in A.m_basis((l,)).items():
                    rows[tix[t]][j] = c
            S = LinearSolver(F, rows, len(src))
            kernel = [{src[i]: c for i, c in enumerate(v) if not F.is_zero(c)} for v in S.kernel]
            self.cache[key] = (src, tgt, S, kernel)
        return self.cache[key]


def estimate_level(A, n, objects=None):
    """Upper bound on the number of n-simplices (exact when every coset is
    nonempty)."""
    F = A.field
    if not F.size:
        raise FieldError("nerve enumeration needs a finite field")
    sol = _Solvers(A)
    total = 0
    for objs in _object_tuples(A, n, objects):
        e = 1
        for I in subsets(n):
            _, _, _, ker = sol.get(objs[I[0]], objs[I[-1]], 2 - len(I))
            e *= F.size ** len(ker)
        total += e
    return total


def _object_tuples(A, n, objects=None):
    if objects is not None:
        return [tuple(objects)]
    return list(itertools.product(A.objects, repeat=n + 1))


def enumerate_with_prefix(A, objs, fixed, skip, cap=None, signs="printed"):
    """Simplices on ``objs`` whose coefficients on ``skip`` are ``fixed``;
    the remaining f_I are solved for in increasing |I|."""
    F = A.field
    if not F.size:
        raise FieldError("nerve enumeration needs a finite field")
    n = len(objs) - 1
    sol = _Solvers(A)
    Is = [I for I in subsets(n) if I not in skip]
    if cap is not None:
        est = 1
        for I in Is:
            est *= F.size ** len(sol.get(objs[I[0]], objs[I[-1]], 2 - len(I))[3])
        if est > cap:
            raise CapExceeded(est, cap)
    out = []
    f = {I: dict(v) for I, v in fixed.items() if v}
    # the prefix must itself be a valid coefficient system
    for I in sorted(skip, key=lambda J: (len(J), J)):
        if equation_residual(A, f, I, signs):
            return out

    def rec(pos):
        if pos == len(Is):
            out.append(NerveSimplex.build(A, objs, f))
            return
        I = Is[pos]
        src, tgt, S, ker = sol.get(objs[I[0]], objs[I[-1]], 2 - len(I))
        rhs = {}
        for g in equation_terms(A, f, I, signs):
            vadd(F, rhs, g)
        b = [rhs.pop(l, F.zero) for l in tgt]
        if rhs:
            return
        x = S.solve(b)
        if x is None:
            return
        base = {src[i]: c for i, c in enumerate(x) if not F.is_zero(c)}
        for v in span_combinations(F, ker):
            w = dict(base)
            vadd(F, w, v)
            if w:
                f[I] = w
            else:
                f.pop(I, None)
            rec(pos + 1)
        f.pop(I, None)

    rec(0)
    return out


def nerve_level(A, n, cap=200_000, objects=None, signs="printed"):
    """All n-simplices, object tuples lexicographic, coefficients by subset
    then kernel coordinates in field order."""
    F = A.field
    if not F.size:
        raise FieldError("nerve enumeration needs a finite field")
    est = estimate_level(A, n, objects)
    if est > cap:
        raise CapExceeded(est, cap)
    out = []
    for objs in _object_tuples(A, n, objects):
        out.extend(enumerate_with_prefix(A, objs, {}, set(), signs=signs))
    return out


def structure_map(A, alpha, s):
    """Action of α: [m] -> [n]: g_J = f_{α(J)} if α|J is injective, the unit
    when J = {j, j'} collapses, zero otherwise."""
    alpha = tuple(alpha)
    m = len(alpha) - 1
    objs = tuple(s.objects[a] for a in alpha)
    f = s.as_dict()
    g = {}
    for J in subsets(m):
        img = tuple(alpha[j] for j in J)
        if all(a < b for a, b in zip(img, img[1:])):
            v = f.get(img)
            if v:
                g[J] = v
        elif len(J) == 2:
            if not A.units:
                raise CategoryError("degeneracies need units")
            g[J] = A.unit_vec(objs[J[0]])
    return NerveSimplex.build(A, objs, g)


def nerve(A, L=3, cap=200_000, signs="printed"):
    """N_{A∞}(A) up to level L as a SimplicialLevels."""
    levels = [nerve_level(A, n, cap, signs=signs) for n in range(L + 1)]
    return SimplicialLevels(levels, lambda a, s: structure_map(A, a, s),
                            name=f"N({A.name})")


# ------------------------------------------------------------ functoriality

def _apply_multi(Fn, args):
    """F_r on vectors (written order), extended multilinearly."""
    F = Fn.target.field
    out = {}
    table = Fn.components.get(len(args))
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


def compose_simplex(Fn, s):
    """The composite [n]_K -> C -> D as a simplex of the target nerve."""
    B = Fn.target
    F = B.field
    f = s.as_dict()
    g = {}
    for I in subsets(s.n):
        steps = len(I) - 1
        acc = {}
        for r in range(1, steps + 1):
            if r not in Fn.components:
                continue
            for comp in _compositions(steps, r):
                # comp lists block sizes leftmost (last applied) first
                sgn = sum((1 - comp[u]) * sum(comp[: u + 1]) for u in range(1, r))
                blocks = []
                hi = len(I) - 1
                for size in comp:
                    blocks.append(I[hi - size: hi + 1])
                    hi -= size
                args = [f.get(Bk) for Bk in blocks]
                if all(args):
                    vadd(F, acc, _apply_multi(Fn, args), F.sign(sgn))
        if acc:
            g[I] = acc
    objs = tuple(Fn.obj_map[x] for x in s.objects)
    return NerveSimplex.build(B, objs, g)


def nerve_map(Fn, NX=None, NY=None, L=3, cap=200_000, signs="printed"):
    """N(F): post-composition with F, with its action on mapping spaces."""
    NX = NX or nerve(Fn.source, L, cap, signs)
    NY = NY or nerve(Fn.target, L, cap, signs)

    def modules(x, y, top):
        return mapping_module_map(Fn, x.objects[0], y.objects[0], top, signs)

    return SimplicialMap(NX, NY, lambda s: compose_simplex(Fn, s), modules,
                         name=f"N({Fn.name})")


# ----------------------------------------------------- right mapping spaces

def hom_right_module(A, x, y, top, signs="printed"):
    """Hom^R(x, y) of the nerve as a simplicial module, levels 0..top.

    Level n consists of the (n+1)-simplices with last vertex y whose
    restriction to {0..n} is degenerate on x.  Its free coefficients are
    f_I with n+1 ∈ I; the equations are linear in them, so the level is the
    nullspace of an explicit matrix.
    """
    from .dold_kan import SimplicialModule
    F = A.field
    if not A.units:
        raise CategoryError("mapping spaces need units")
    u = A.unit_vec(x)
    levels = []
    for n in range(top + 1):
        coords = []
        for I in subsets(n + 1):
            if I[-1] != n + 1:
                continue
            for lab in A.hom(x, y).labels(2 - len(I)):
                coords.append((I, lab))
        fixed = {I: dict(u) for I in subsets(n) if len(I) == 2}
        eqs = [I for I in subsets(n + 1) if I[-1] == n + 1]

        def residual(vec):
            f = dict(fixed)
            for (I, lab), c in vec.items():
                f.setdefault(I, {})
                vadd(F, f[I], {lab: c})
            out = {}
            for I in eqs:
                for lab, c in equation_residual(A, f, I, signs).items():
                    out[(I, lab)] = c
            return out

        if residual({}):
            raise CategoryError("degenerate part does not satisfy the equations")
        cols = [residual({c: F.one}) for c in coords]
        rkeys = sorted({k for col in cols for k in col}, key=str)
        rows = [[col.get(k, F.zero) for col in cols] for k in rkeys]
        S = LinearSolver(F, rows, len(coords))
        basis = [{coords[i]: c for i, c in enumerate(v) if not F.is_zero(c)} for v in S.kernel]
        levels.append((coords, basis, fixed))

    def simplex_of(n, vec):
        coords, basis, fixed = levels[n]
        f = {I: dict(v) for I, v in fixed.items()}
        for (I, lab), c in vec.items():
            vadd(F, f.setdefault(I, {}), {lab: c})
        objs = (x,) * (n + 1) + (y,)
        return NerveSimplex.build(A, objs, f)

    def coords_of(n, s):
        want = {}
        for I, v in s.as_dict().items():
            if I[-1] == n + 1:
                for lab, c in v.items():
                    want[(I, lab)] = c
        return want

    M = SimplicialModule(F, [[("h", n, k) for k in range(len(lv[1]))] for n, lv in enumerate(levels)],
                         None, name=f"HomR({x},{y})")
    M.embedding = {n: lv[1] for n, lv in enumerate(levels)}

    def act(alpha, n, lab):
        m = len(alpha) - 1
        vec = levels[n][1][lab[2]]
        s = simplex_of(n, vec)
        t = structure_map(A, tuple(alpha) + (n + 1,), s)
        return M.express(m, coords_of(m, t))

    M._act = act
    M.simplex_of = lambda n, lab: simplex_of(n, levels[n][1][lab[2]])
    M.vector_simplex = simplex_of
    M.coords_of = coords_of
    return M


def mapping_module_map(Fn, x, y, top, signs="printed"):
    """The map Hom^R(x, y) -> Hom^R(Fx, Fy) induced by post-composition."""
    M = hom_right_module(Fn.source, x, y, top, signs)
    N = hom_right_module(Fn.target, Fn.obj_map[x], Fn.obj_map[y], top, signs)

    def phi(n, lab):
        t = compose_simplex(Fn, M.simplex_of(n, lab))
        return N.express(n, N.coords_of(n, t))

    return M, N, phi


# ----------------------------------------------------- homotopy categories

def compare_ho(A, X):
    """Exhibit Ho(N(A)) ≅ Ho(A).

    Objects match; the class of an edge (x, y, f) goes to the H⁰ class of f.
    Returns (ok, detail).
    """
    from .core import HoCategory
    from .simplicial import homotopy_category_qcat
    HQ = homotopy_category_qcat(X)
    HA = HoCategory(A)
    cls = {}
    for (xs, ys), reps in HQ.classes.items():
        x, y = xs.objects[0], ys.objects[0]
        imgs = [HA.coords(x, y, e.f((0, 1))) for e in reps]
        if len(set(imgs)) != len(imgs):
            return False, f"two classes on ({x},{y}) have the same H⁰ image"
        if len(imgs) != A.field.size ** HA.dim(x, y):
            return False, f"({x},{y}): {len(imgs)} classes vs |H⁰| = {A.field.size ** HA.dim(x, y)}"
        for i, c in enumerate(imgs):
            cls[(xs, ys, i)] = c
    for (f, g), h in HQ.comp.items():
        x, y, z = f[0].objects[0], f[1].objects[0], g[1].objects[0]
        if HA.compose(x, y, z, cls[g], cls[f]) != cls[h]:
            return False, f"composition differs at {(f, g)}"
    for xs, idc in HQ.ident.items():
        if cls[idc] != HA.identity(xs.objects[0]):
            return False, "identities differ"
    return True, "isomorphic"
