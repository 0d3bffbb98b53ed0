"""Exact scalars, sparse vectors and graded linear algebra.

Scalars are kept as raw Python values: ``Fraction`` for Q and reduced
``int`` residues for F_p.  A :class:`Field` object does the arithmetic, so
every other module is written once against that small protocol.  Row
reduction is delegated to sympy's ``DomainMatrix``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from sympy import GF as _sympy_GF
from sympy import QQ as _sympy_QQ
from sympy.polys.matrices import DomainMatrix


class FieldError(ValueError):
    pass


class WindowError(ValueError):
    """A nonzero component landed outside a declared degree window."""


class Field:
    name = "?"
    char = 0
    size = None  # number of elements for finite fields

    zero = None
    one = None

    def signed(self, a, e):
        return a if e % 2 == 0 else self.neg(a)

    def sign(self, e):
        return self.one if e % 2 == 0 else self.neg(self.one)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == self.zero

    def __repr__(self):
        return self.name


class Rationals(Field):
    name = "Q"
    char = 0
    size = None

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.dom = _sympy_QQ

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def coerce(self, x):
        if isinstance(x, str):
            return self.parse(x)
        return Fraction(x)

    def parse(self, s):
        return Fraction(str(s).strip())

    def fmt(self, a):
        return str(Fraction(a))

    def spec(self):
        return "Q"

    def elements(self):
        raise FieldError("Q is infinite; enumeration refused")

    def to_dom(self, a):
        return self.dom(a.numerator, a.denominator)

    def from_dom(self, e):
        return Fraction(int(e.numerator), int(e.denominator))


class PrimeField(Field):
    def __init__(self, p):
        if p < 2 or any(p % k == 0 for k in range(2, int(p**0.5) + 1)):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.size = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1
        self.dom = _sympy_GF(p, symmetric=False)

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def coerce(self, x):
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            return self.div(x.numerator % self.p, x.denominator % self.p)
        return int(x) % self.p

    def parse(self, s):
        s = str(s).strip()
        if "/" in s:
            return self.coerce(Fraction(s))
        return int(s) % self.p

    def fmt(self, a):
        return str(a % self.p)

    def spec(self):
        return {"Fp": self.p}

    def elements(self):
        return range(self.p)

    def to_dom(self, a):
        return self.dom(a)

    def from_dom(self, e):
        return int(e) % self.p


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p):
    return PrimeField(p)


def field_from_spec(spec):
    """Accept "Q", "Fp:3", "F3", {"Fp": 3}."""
    if isinstance(spec, Field):
        return spec
    if isinstance(spec, dict):
        if set(spec) != {"Fp"}:
            raise FieldError(f"bad field spec {spec!r}")
        return GF(int(spec["Fp"]))
    s = str(spec).strip()
    if s in ("Q", "QQ"):
        return QQ
    if s.startswith("Fp:"):
        return GF(int(s[3:]))
    if s.startswith("F") and s[1:].isdigit():
        return GF(int(s[1:]))
    raise FieldError(f"bad field spec {spec!r}")


# ---------------------------------------------------------------- vectors
# A vector is a dict label -> nonzero scalar.

def vadd(F, acc, v, c=None):
    """acc += c * v, in place; returns acc."""
    for k, x in v.items():
        if c is not None:
            x = F.mul(c, x)
        y = F.add(acc.get(k, F.zero), x)
        if F.is_zero(y):
            acc.pop(k, None)
        else:
            acc[k] = y
    return acc


def vscale(F, v, c):
    if F.is_zero(c):
        return {}
    return {k: F.mul(c, x) for k, x in v.items()}


def vsum(F, vs):
    acc = {}
    for v in vs:
        vadd(F, acc, v)
    return acc


def vclean(F, v):
    return {k: x for k, x in v.items() if not F.is_zero(x)}


def vfmt(F, v, order=None):
    """Human format, e.g. ``g00 - g01``.  ``order`` fixes the term order."""
    keys = list(order) if order is not None else sorted(v, key=str)
    terms = []
    for k in keys:
        if k not in v:
            continue
        c = v[k]
        if F.char == 0:
            neg = c < 0
            mag = -c if neg else c
        else:
            neg = False
            mag = c
        coef = "" if mag == F.one else f"{F.fmt(mag)}*"
        terms.append((neg, f"{coef}{k}"))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] else "") + terms[0][1]
    for neg, t in terms[1:]:
        out += (" - " if neg else " + ") + t
    return out


# ----------------------------------------------------------- linear algebra

def _dm(F, rows, ncols):
    return DomainMatrix([[F.to_dom(x) for x in r] for r in rows],
                        (len(rows), ncols), F.dom)


def rref(F, rows, ncols):
    """Reduced row echelon form: (nonzero rows, pivot columns)."""
    if not rows:
        return [], ()
    R, piv = _dm(F, rows, ncols).rref()
    dense = R.to_list()
    out = [[F.from_dom(x) for x in r] for r in dense[: len(piv)]]
    return out, tuple(piv)


def rank(F, rows, ncols):
    if not rows or ncols == 0:
        return 0
    return len(rref(F, rows, ncols)[1])


def nullspace(F, rows, ncols):
    """Basis of {x : A x = 0}; each vector has a 1 on its free column."""
    if ncols == 0:
        return []
    if not rows:
        return [[F.one if i == j else F.zero for i in range(ncols)] for j in range(ncols)]
    R, piv = rref(F, rows, ncols)
    free = [j for j in range(ncols) if j not in piv]
    basis = []
    for f in free:
        x = [F.zero] * ncols
        x[f] = F.one
        for r, p in zip(R, piv):
            x[p] = F.neg(r[f])
        basis.append(x)
    return basis


def solve(F, rows, ncols, b):
    """One solution of A x = b, or None."""
    if not rows:
        return [F.zero] * ncols if all(F.is_zero(x) for x in b) else None
    aug = [list(r) + [bi] for r, bi in zip(rows, b)]
    R, piv = rref(F, aug, ncols + 1)
    if ncols in piv:
        return None
    x = [F.zero] * ncols
    for r, p in zip(R, piv):
        x[p] = r[ncols]
    return x


def span_combinations(F, basis):
    """All F-linear combinations of ``basis`` (finite fields only)."""
    if not basis:
        yield {}
        return
    for coeffs in itertools.product(F.elements(), repeat=len(basis)):
        acc = {}
        for c, v in zip(coeffs, basis):
            if c:
                vadd(F, acc, v, c)
        yield acc


# ----------------------------------------------------------- graded spaces

@dataclass(frozen=True)
class GradedSpace:
    """Finite graded space with a named basis in each degree.

    ``basis`` maps degree -> tuple of labels; ``window`` is the closed
    interval of admissible degrees.  ``shifted`` records the accumulated
    shift applied to the labels.
    """
    basis: tuple  # ((deg, (labels...)), ...) sorted by degree
    window: tuple
    shifted: int = 0
    _deg: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        lo, hi = self.window
        seen = {}
        for d, labs in self.basis:
            if labs and not lo <= d <= hi:
                raise WindowError(f"degree {d} outside window {self.window}")
            for lab in labs:
                if lab in seen:
                    raise ValueError(f"duplicate basis label {lab!r}")
                seen[lab] = d
        object.__setattr__(self, "_deg", seen)

    @classmethod
    def make(cls, basis, window=None, shifted=0):
        items = tuple(sorted((int(d), tuple(l)) for d, l in dict(basis).items() if l))
        if window is None:
            ds = [d for d, _ in items] or [0]
            window = (min(ds), max(ds))
        return cls(items, tuple(window), shifted)

    def degrees(self):
        return [d for d, _ in self.basis]

    def labels(self, d=None):
        if d is None:
            return [l for _, ls in self.basis for l in ls]
        for dd, ls in self.basis:
            if dd == d:
                return list(ls)
        return []

    def dim(self, d=None):
        return len(self.labels(d))

    def deg(self, label):
        return self._deg[label]

    def __contains__(self, label):
        return label in self._deg

    def index(self):
        return {l: i for i, l in enumerate(self.labels())}


def shift(V, k):
    """V[k] with (V[k])^i = V^{i+k}; labels are kept."""
    return GradedSpace.make({d - k: ls for d, ls in V.basis},
                            (V.window[0] - k, V.window[1] - k), V.shifted + k)


@dataclass(frozen=True)
class GradedMap:
    """Homogeneous linear map; ``entries`` maps source label -> vector."""
    field: Field
    source: GradedSpace
    target: GradedSpace
    degree: int
    entries: dict

    def __post_init__(self):
        F = self.field
        clean = {}
        for a, v in self.entries.items():
            if a not in self.source:
                raise ValueError(f"unknown source label {a!r}")
            v = vclean(F, v)
            for b in v:
                if b not in self.target:
                    raise WindowError(f"{a!r} maps to {b!r} outside the target")
                if self.target.deg(b) != self.source.deg(a) + self.degree:
                    raise WindowError(f"{a!r} -> {b!r} breaks degree {self.degree}")
            if v:
                clean[a] = v
        object.__setattr__(self, "entries", clean)

    def __call__(self, v):
        acc = {}
        for a, c in v.items():
            if a in self.entries:
                vadd(self.field, acc, self.entries[a], c)
        return acc

    def matrix(self, d):
        """Dense block from degree d to degree d + degree (rows = target)."""
        src = self.source.labels(d)
        tgt = self.target.labels(d + self.degree)
        F = self.field
        return [[self.entries.get(a, {}).get(b, F.zero) for a in src] for b in tgt]

    def is_zero(self):
        return not self.entries


def identity(F, V):
    return GradedMap(F, V, V, 0, {l: {l: F.one} for l in V.labels()})


def zero_map(F, V, W, degree=0):
    return GradedMap(F, V, W, degree, {})


def compose(g, f):
    """g after f."""
    if f.target != g.source:
        raise ValueError("compose: target(f) != source(g)")
    if f.field is not g.field:
        raise FieldError("compose: field mismatch")
    ent = {a: g(v) for a, v in f.entries.items()}
    return GradedMap(f.field, f.source, g.target, f.degree + g.degree, ent)


def tensor_space(V, W):
    basis = {}
    for (dv, lv), (dw, lw) in itertools.product(V.basis, W.basis):
        basis.setdefault(dv + dw, []).extend((a, b) for a in lv for b in lw)
    win = (V.window[0] + W.window[0], V.window[1] + W.window[1])
    return GradedSpace.make(basis, win)


def tensor(a, b):
    """Koszul tensor: (a⊗b)(x⊗y) = (-1)^{|b||x|} a(x)⊗b(y)."""
    if a.field is not b.field:
        raise FieldError("tensor: field mismatch")
    F = a.field
    S = tensor_space(a.source, b.source)
    T = tensor_space(a.target, b.target)
    ent = {}
    for x, ax in a.entries.items():
        sx = F.sign(b.degree * a.source.deg(x))
        for y, by in b.entries.items():
            v = {}
            for u, cu in ax.items():
                for w, cw in by.items():
                    v[(u, w)] = F.mul(sx, F.mul(cu, cw))
            ent[(x, y)] = v
    return GradedMap(F, S, T, a.degree + b.degree, ent)


class LinearSolver:
    """Precomputed elimination for repeated solves of A x = b.

    ``rows`` is the dense matrix A (m x n).  One row reduction of [A | I]
    gives P with P A in reduced echelon form; each later solve is a
    matrix-vector product.
    """

    def __init__(self, F, rows, ncols):
        self.F = F
        self.m = len(rows)
        self.n = ncols
        if self.m == 0 or ncols == 0:
            self.piv = ()
            self.PA = []
            self.P = [[F.one if i == j else F.zero for j in range(self.m)] for i in range(self.m)]
        else:
            aug = [list(r) + [F.one if i == j else F.zero for j in range(self.m)]
                   for i, r in enumerate(rows)]
            R, piv = rref(F, aug, ncols + self.m)
            # rref drops zero rows; rebuild P from a full reduction
            full = _dm(F, aug, ncols + self.m).rref()[0].to_list()
            full = [[F.from_dom(x) for x in r] for r in full]
            self.piv = tuple(p for p in piv if p < ncols)
            self.PA = [r[:ncols] for r in full]
            self.P = [r[ncols:] for r in full]
        self.rank = len(self.piv)
        self.kernel = nullspace(F, rows, ncols) if ncols else []

    def solve(self, b):
        """A particular solution (free variables 0), or None."""
        F = self.F
        if self.n == 0:
            return [] if all(F.is_zero(x) for x in b) else None
        if self.m == 0:
            return [F.zero] * self.n
        pb = []
        for row in self.P:
            acc = F.zero
            for c, x in zip(row, b):
                if not F.is_zero(c) and not F.is_zero(x):
                    acc = F.add(acc, F.mul(c, x))
            pb.append(acc)
        for i in range(self.rank, self.m):
            if not F.is_zero(pb[i]):
                return None
        x = [F.zero] * self.n
        for i, p in enumerate(self.piv):
            x[p] = pb[i]
        return x
