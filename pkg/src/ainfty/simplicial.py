"""Finite-level simplicial sets, horns, quasi-categories and mapping spaces.

A monotone map ``[m] -> [n]`` is the tuple of its values ``(a(0), ..., a(m))``.
Simplicial sets are truncated at a level ``L``; every statement made about
them is "up to level L".
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field


class SimplicialError(ValueError):
    pass


class LevelOverflow(SimplicialError):
    pass


class Unsupported(SimplicialError):
    pass


# ------------------------------------------------------------ monotone maps

def monotone_maps(m, n):
    """All monotone maps [m] -> [n], lexicographic."""
    return list(itertools.combinations_with_replacement(range(n + 1), m + 1))


def compose_maps(b, a):
    """b∘a for a: [k] -> [m], b: [m] -> [n]."""
    return tuple(b[i] for i in a)


def coface(n, i):
    """d^i: [n-1] -> [n], skipping i."""
    return tuple(j if j < i else j + 1 for j in range(n))


def codegeneracy(n, i):
    """s^i: [n+1] -> [n], hitting i twice."""
    return tuple(j if j <= i else j - 1 for j in range(n + 2))


def identity_map(n):
    return tuple(range(n + 1))


def is_injective(a):
    return all(x < y for x, y in zip(a, a[1:]))


def is_surjective(a, n):
    return set(a) == set(range(n + 1))


# ------------------------------------------------------------ simplicial sets

class SimplicialLevels:
    """Levels ``0..L`` of a simplicial set with the action of Δ.

    ``act(alpha, s)`` applies the structure map of ``alpha: [m] -> [n]`` to an
    n-simplex ``s``.  Simplices must be hashable.
    """

    def __init__(self, levels, act, name=""):
        self.levels = [list(lv) for lv in levels]
        self._act = act
        self.name = name
        self._index = [{s: i for i, s in enumerate(lv)} for lv in self.levels]
        self._horn_index = {}
        self._cache = {}

    @property
    def L(self):
        return len(self.levels) - 1

    def __contains__(self, item):
        n, s = item
        return 0 <= n <= self.L and s in self._index[n]

    def dim_of(self, s):
        for n, idx in enumerate(self._index):
            if s in idx:
                return n
        raise SimplicialError(f"{s!r} is not a simplex")

    def act(self, alpha, s):
        key = (tuple(alpha), s)
        out = self._cache.get(key)
        if out is None:
            out = self._cache[key] = self._act(key[0], s)
        return out

    def face(self, n, i, s):
        return self._act(coface(n, i), s)

    def degen(self, n, i, s):
        return self._act(codegeneracy(n, i), s)

    def vertex(self, n, i, s):
        return self._act((i,), s)

    def vertices(self, n, s):
        return tuple(self._act((i,), s) for i in range(n + 1))

    def degenerate_on(self, x, n):
        return self._act((0,) * (n + 1), x)

    def sizes(self):
        return [len(lv) for lv in self.levels]

    def horn_index(self, n, k):
        """Simplices of X_n grouped by their faces away from k."""
        key = (n, k)
        if key not in self._horn_index:
            idx = {}
            for s in self.levels[n]:
                sig = tuple(self.face(n, j, s) for j in range(n + 1) if j != k)
                idx.setdefault(sig, []).append(s)
            self._horn_index[key] = idx
        return self._horn_index[key]

    def __repr__(self):
        return f"SimplicialLevels({self.name or '?'}, sizes={self.sizes()})"


@dataclass
class Violation:
    rule: str
    level: int
    simplex: object
    detail: str = ""


@dataclass
class ValidationReport:
    ok: bool
    level: int
    violations: list = field(default_factory=list)
    checked: int = 0

    def __bool__(self):
        return self.ok


def validate(X, sample=None):
    """Check closure and the simplicial identities up to level L.

    Generator identities are checked on every simplex.  Full functoriality
    over all pairs of monotone maps is checked on the first ``sample``
    simplices of each level (all of them when ``sample`` is None).
    """
    bad = []
    L = X.L
    checked = 0

    def member(n, s, rule, s0):
        if s not in X._index[n]:
            bad.append(Violation(rule, n, s0, f"image {s!r} not in level {n}"))
            return False
        return True

    for n in range(L + 1):
        for s in X.levels[n]:
            checked += 1
            if X.act(identity_map(n), s) != s:
                bad.append(Violation("identity", n, s))
            d = {}
            if n >= 1:
                for i in range(n + 1):
                    d[i] = X.face(n, i, s)
                    member(n - 1, d[i], f"d{i}", s)
                for i in range(n + 1):
                    for j in range(i + 1, n + 1):
                        if n >= 2 and X.face(n - 1, i, d[j]) != X.face(n - 1, j - 1, d[i]):
                            bad.append(Violation(f"d{i}d{j}=d{j-1}d{i}", n, s))
            if n + 1 <= L:
                sg = {i: X.degen(n, i, s) for i in range(n + 1)}
                for i, t in sg.items():
                    if not member(n + 1, t, f"s{i}", s):
                        continue
                    if X.face(n + 1, i, t) != s or X.face(n + 1, i + 1, t) != s:
                        bad.append(Violation(f"d{i}s{i}=d{i+1}s{i}=id", n, s))
                    for k in range(n + 2):
                        if k < i:
                            want = X.degen(n - 1, i - 1, d[k]) if n >= 1 else None
                        elif k > i + 1:
                            want = X.degen(n - 1, i, d[k - 1]) if n >= 1 else None
                        else:
                            continue
                        if want is not None and X.face(n + 1, k, t) != want:
                            bad.append(Violation(f"d{k}s{i}", n, s))
                if n + 2 <= L:
                    for i in range(n + 1):
                        for j in range(i, n + 1):
                            a = X.degen(n + 1, i, sg[j])
                            b = X.degen(n + 1, j + 1, sg[i])
                            if a != b:
                                bad.append(Violation(f"s{i}s{j}=s{j+1}s{i}", n, s))
    # functoriality on a sample
    for n in range(L + 1):
        simp = X.levels[n] if sample is None else X.levels[n][:sample]
        for s in simp:
            for m in range(L + 1):
                for a in monotone_maps(m, n):
                    t = X.act(a, s)
                    if not member(m, t, f"act{a}", s):
                        continue
                    for k in range(min(L, 3) + 1):
                        for b in monotone_maps(k, m):
                            if X.act(b, t) != X.act(compose_maps(a, b), s):
                                bad.append(Violation("functoriality", n, s, f"{a} then {b}"))
    return ValidationReport(not bad, L, bad, checked)


# ------------------------------------------------------------------- horns

@dataclass(frozen=True)
class HornInstance:
    n: int
    k: int
    faces: tuple  # ((j, simplex), ...) for j != k, increasing j

    def face(self, j):
        return dict(self.faces)[j]


def horn_compatible(X, h):
    fs = dict(h.faces)
    n = h.n
    for i in fs:
        for j in fs:
            if i < j and n >= 2:
                if X.face(n - 1, i, fs[j]) != X.face(n - 1, j - 1, fs[i]):
                    return False
    return True


def horns(X, n, k):
    """All horns Λ^n_k in X, by indexed backtracking over compatible faces."""
    if n > X.L or n < 1:
        raise LevelOverflow(f"horn level {n} outside 1..{X.L}")
    js = [j for j in range(n + 1) if j != k]
    lower = X.levels[n - 1]
    # for face j, constraints against earlier chosen faces i<j:
    # d_i x_j = d_{j-1} x_i
    indexes = {}
    for pos, j in enumerate(js):
        prev = [i for i in js[:pos]]
        idx = {}
        for s in lower:
            sig = tuple(X.face(n - 1, i, s) for i in prev) if n >= 2 else ()
            idx.setdefault(sig, []).append(s)
        indexes[j] = (prev, idx)

    chosen = {}

    def rec(pos):
        if pos == len(js):
            yield HornInstance(n, k, tuple((j, chosen[j]) for j in js))
            return
        j = js[pos]
        prev, idx = indexes[j]
        sig = tuple(X.face(n - 1, j - 1, chosen[i]) for i in prev) if n >= 2 else ()
        for s in idx.get(sig, ()):
            chosen[j] = s
            yield from rec(pos + 1)
        chosen.pop(j, None)

    yield from rec(0)


def inner_horn_fill(X, h):
    """All fillers of the horn ``h`` in X_n."""
    if h.n > X.L:
        raise LevelOverflow(f"horn level {h.n} exceeds L={X.L}")
    if not 0 < h.k < h.n:
        raise SimplicialError("not an inner horn")
    sig = tuple(s for _, s in h.faces)
    return list(X.horn_index(h.n, h.k).get(sig, ()))


@dataclass
class QCatReport:
    ok: bool
    level_max: int
    horns_checked: dict
    counterexamples: list

    def __bool__(self):
        return self.ok


def is_quasicategory(X, level_max=None, stop_after=5):
    """Every inner horn up to ``level_max`` has a filler."""
    level_max = X.L if level_max is None else level_max
    if level_max > X.L:
        raise LevelOverflow(f"level {level_max} exceeds L={X.L}")
    counted = {}
    bad = []
    for n in range(2, level_max + 1):
        for k in range(1, n):
            c = 0
            idx = X.horn_index(n, k)
            for h in horns(X, n, k):
                c += 1
                if tuple(s for _, s in h.faces) not in idx:
                    bad.append(h)
                    if len(bad) >= stop_after:
                        counted[(n, k)] = c
                        return QCatReport(False, level_max, counted, bad)
            counted[(n, k)] = c
    return QCatReport(not bad, level_max, counted, bad)


# ------------------------------------------------------- homotopy category

class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


@dataclass
class QCatHo:
    """Ho(X) presented by representative edges."""
    objects: list
    classes: dict     # (x, y) -> list of representative edges
    class_of: dict    # edge -> (x, y, index)
    comp: dict        # ((x, y, i), (y, z, j)) -> (x, z, k)
    ident: dict       # x -> (x, x, index)

    def compose(self, g, f):
        return self.comp[(f, g)]

    def hom(self, x, y):
        return [(x, y, i) for i in range(len(self.classes.get((x, y), ())))]

    def is_iso(self, f):
        x, y, _ = f
        return any(self.compose(g, f) == self.ident[x] and self.compose(f, g) == self.ident[y]
                   for g in self.hom(y, x))


def homotopy_category_qcat(X):
    """Objects X_0, edges modulo homotopy, composition by Λ²₁ fillers."""
    if X.L < 2:
        raise LevelOverflow("need levels 0..2")
    q = is_quasicategory(X, 2)
    if not q.ok:
        raise SimplicialError("not a quasi-category at level 2")
    edges = X.levels[1]
    ends = {e: (X.face(1, 1, e), X.face(1, 0, e)) for e in edges}
    uf = _UnionFind(edges)
    for s in X.levels[2]:
        f, g, h = X.face(2, 2, s), X.face(2, 1, s), X.face(2, 0, s)
        y = ends[f][1]
        if h == X.degen(0, 0, y):
            uf.union(f, g)
    classes = {}
    root_idx = {}
    class_of = {}
    for e in edges:
        r = uf.find(e)
        xy = ends[e]
        if r not in root_idx:
            lst = classes.setdefault(xy, [])
            root_idx[r] = (xy[0], xy[1], len(lst))
            lst.append(r)
        class_of[e] = root_idx[r]
    # homotopy via the other witness shape must agree
    for s in X.levels[2]:
        f, g, h = X.face(2, 2, s), X.face(2, 1, s), X.face(2, 0, s)
        if f == X.degen(0, 0, ends[h][0]) and class_of[h] != class_of[g]:
            raise SimplicialError("left and right homotopy disagree")
    comp = {}
    idx = X.horn_index(2, 1)
    for s in X.levels[2]:
        g, f = X.face(2, 0, s), X.face(2, 2, s)
        key = (class_of[f], class_of[g])
        val = class_of[X.face(2, 1, s)]
        if comp.setdefault(key, val) != val:
            raise SimplicialError(f"composition not well defined at {key}")
    for f in edges:
        for g in edges:
            if ends[f][1] == ends[g][0]:
                if (class_of[f], class_of[g]) not in comp or (g, f) not in idx:
                    raise SimplicialError("missing composite")
    ident = {x: class_of[X.degen(0, 0, x)] for x in X.levels[0]}
    return QCatHo(list(X.levels[0]), classes, class_of, comp, ident)


# --------------------------------------------------------- mapping spaces

def hom_right(X, x, y):
    """Hom^R_X(x, y): n-simplices are (n+1)-simplices of X ending at y whose
    restriction to {0..n} is the degenerate n-simplex on x."""
    lv = []
    for n in range(X.L):
        deg = X.degenerate_on(x, n)
        keep = []
        for s in X.levels[n + 1]:
            if X.vertex(n + 1, n + 1, s) != y:
                continue
            if X.act(identity_map(n), s) != deg:
                continue
            keep.append(s)
        lv.append(keep)

    dims = {s: n + 1 for n, l in enumerate(lv) for s in l}

    def act2(a, s):
        return X.act(tuple(a) + (dims[s],), s)

    return SimplicialLevels(lv, act2, name=f"HomR({x},{y})")


def nerve_cat(C, L=3):
    """Nerve of a finite ordinary category up to level L.

    An n-simplex is ``(x0, (f1, ..., fn))`` with f1 applied first.
    """
    lv = [[(x, ()) for x in C.objects]]
    for n in range(1, L + 1):
        nxt = []
        for x0, fs in lv[-1]:
            end = C.tgt(fs[-1]) if fs else x0
            for f in C.out(end):
                nxt.append((x0, fs + (f,)))
        lv.append(nxt)

    def act(a, s):
        x0, fs = s
        objs = [x0] + [C.tgt(f) for f in fs]
        gs = []
        for lo, hi in zip(a, a[1:]):
            g = C.ident[objs[lo]]
            for f in fs[lo:hi]:
                g = C.compose(f, g)
            gs.append(g)
        return (objs[a[0]], tuple(gs))

    return SimplicialLevels(lv, act, name=f"N({C.name})")


@dataclass
class FiniteCategory:
    """A finite ordinary category given by a composition table."""
    objects: list
    arrows: dict       # name -> (source, target)
    ident: dict        # object -> arrow name
    table: dict        # (g, f) -> g∘f, f applied first
    name: str = "C"

    def __post_init__(self):
        for (g, f), h in self.table.items():
            if self.arrows[f][1] != self.arrows[g][0]:
                raise SimplicialError(f"{g}∘{f} not composable")
            if self.arrows[h] != (self.arrows[f][0], self.arrows[g][1]):
                raise SimplicialError(f"{g}∘{f} = {h} has wrong ends")
        for f, (x, y) in self.arrows.items():
            for g, (y2, z) in self.arrows.items():
                if y == y2 and (g, f) not in self.table:
                    if g == self.ident[y]:
                        self.table[(g, f)] = f
                    elif f == self.ident[x]:
                        self.table[(g, f)] = g
                    else:
                        raise SimplicialError(f"missing composite {g}∘{f}")

    def src(self, f):
        return self.arrows[f][0]

    def tgt(self, f):
        return self.arrows[f][1]

    def out(self, x):
        return [f for f, (a, _) in self.arrows.items() if a == x]

    def compose(self, g, f):
        return self.table[(g, f)]

    def hom(self, x, y):
        return [f for f, e in self.arrows.items() if e == (x, y)]


def free_category(objects, gens, name="C"):
    """Free category on a finite acyclic graph: arrows are paths."""
    arrows = {}
    ident = {}
    for x in objects:
        ident[x] = f"1{x}"
        arrows[f"1{x}"] = (x, x)
    paths = [((g,), s, t) for g, (s, t) in gens.items()]
    frontier = list(paths)
    while frontier:
        new = []
        for p, s, t in frontier:
            for g, (s2, t2) in gens.items():
                if s2 == t:
                    new.append((p + (g,), s, t2))
        if len(new) > 10_000:
            raise SimplicialError("graph has cycles")
        paths.extend(new)
        frontier = new
    name_of = {p: ".".join(reversed(p)) for p, _, _ in paths}
    for p, s, t in paths:
        arrows[name_of[p]] = (s, t)
    table = {}
    for p, s, t in paths:
        for q, s2, t2 in paths:
            if s2 == t:
                table[(name_of[q], name_of[p])] = name_of[p + q]
    return FiniteCategory(list(objects), arrows, ident, table, name)


def ho_iso_to_category(H, C):
    """Exhibit Ho(N(C)) ≅ C: each class holds exactly one arrow and
    composition agrees."""
    for x in C.objects:
        for y in C.objects:
            reps = H.classes.get(((x, ()), (y, ())), [])
            if sorted(r[1][0] for r in reps) != sorted(C.hom(x, y)):
                return False
    for (f, g), h in H.comp.items():
        ff = H.classes[f[:2]][f[2]][1][0]
        gg = H.classes[g[:2]][g[2]][1][0]
        hh = H.classes[h[:2]][h[2]][1][0]
        if C.compose(gg, ff) != hh:
            return False
    return True


# ------------------------------------------------------------ simplicial maps

@dataclass
class SimplicialMap:
    """Levelwise map of simplicial sets.

    ``modules``, when present, is a callable ``(x, y, L) -> (M, N, phi)``
    giving the induced map of right mapping spaces as simplicial modules
    (see :mod:`ainfty.dold_kan`).
    """
    source: SimplicialLevels
    target: SimplicialLevels
    fmap: object
    modules: object = None
    name: str = ""

    def __call__(self, s):
        return self.fmap(s)

    def check(self, sample=None):
        """Levels land in the target and the map commutes with Δ."""
        bad = []
        X, Y = self.source, self.target
        L = min(X.L, Y.L)
        for n in range(L + 1):
            simp = X.levels[n] if sample is None else X.levels[n][:sample]
            for s in simp:
                t = self(s)
                if (n, t) not in Y:
                    bad.append(("level", n, s))
                    continue
                for m in range(L + 1):
                    for a in monotone_maps(m, n):
                        if self(X.act(a, s)) != Y.act(a, t):
                            bad.append(("naturality", n, s, a))
        return bad


@dataclass
class WeakEquivalenceReport:
    ok: bool
    level_max: int
    ho_ok: bool
    ho_detail: str
    mapping: dict  # (x, y) -> per-degree homology comparison

    def __bool__(self):
        return self.ok


def ho_equivalence(Fm):
    """Does the map induce an equivalence of homotopy categories?"""
    HX = homotopy_category_qcat(Fm.source)
    HY = homotopy_category_qcat(Fm.target)
    induced = {}
    for e, c in HX.class_of.items():
        d = HY.class_of[Fm(e)]
        if induced.setdefault(c, d) != d:
            return False, "induced map on classes not well defined"
    for x in HX.objects:
        for y in HX.objects:
            src = HX.hom(x, y)
            tgt = HY.hom(Fm(x), Fm(y))
            img = [induced[c] for c in src]
            if len(set(img)) != len(src):
                return False, f"not faithful on ({x},{y})"
            if set(img) != set(tgt):
                return False, f"not full on ({x},{y})"
    images = {Fm(x) for x in HX.objects}
    for y in HY.objects:
        if y in images:
            continue
        if not any(HY.is_iso(f) for fx in images for f in HY.hom(fx, y)):
            return False, f"{y!r} not in the essential image"
    return True, "equivalence"


def weak_equivalence_check(Fm, level_max=2):
    """(a) Ho equivalence; (b) homology of normalized chains of every induced
    map of right mapping spaces, degrees 0..level_max-1."""
    if Fm.modules is None:
        raise Unsupported("mapping spaces carry no module structure; "
                          "weak equivalence of plain simplicial sets is not decided")
    from .dold_kan import module_map_homology
    ho_ok, detail = ho_equivalence(Fm)
    mapping = {}
    ok = ho_ok
    for x in Fm.source.levels[0]:
        for y in Fm.source.levels[0]:
            M, N, phi = Fm.modules(x, y, level_max)
            rep = module_map_homology(M, N, phi, level_max - 1)
            mapping[(x, y)] = rep
            ok = ok and all(r[2] and r[3] for r in rep.values())
    return WeakEquivalenceReport(ok, level_max, ho_ok, detail, mapping)
