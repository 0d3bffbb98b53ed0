"""JSON category files (schema "ainfty/1") and canonical report output."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .core import AInfFunctor, CategoryError, make_category
from .linear import FieldError, WindowError, field_from_spec

SCHEMA = "ainfty/1"


class InputError(ValueError):
    """Malformed or inconsistent input file; the message names the locus."""


def _name(x):
    if isinstance(x, tuple):
        return "/".join(_name(y) for y in x)
    return str(x)


def _scalar(F, c):
    return F.fmt(c)


def category_to_json(A, functors=()):
    """Plain-data form of A (labels and objects stringified)."""
    F = A.field
    homs = []
    for x in A.objects:
        for y in A.objects:
            V = A.hom(x, y)
            if V.labels():
                homs.append({"source": _name(x), "target": _name(y),
                             "basis": {str(d): [_name(l) for l in V.labels(d)]
                                       for d in V.degrees()}})
    ops = []
    for d in sorted(A.ops):
        for key in sorted(A.ops[d], key=lambda k: [A.order[l] for l in k]):
            v = A.ops[d][key]
            ops.append({"arity": d, "inputs": [_name(l) for l in key],
                        "output": {_name(l): _scalar(F, c)
                                   for l, c in sorted(v.items(), key=lambda t: A.order[t[0]])}})
    doc = {"schema": SCHEMA, "name": A.name, "field": F.spec(),
           "objects": [_name(x) for x in A.objects], "homs": homs, "ops": ops,
           "units": {_name(x): _name(u) for x, u in (A.units or {}).items()},
           "auto_units": False}
    if functors:
        doc["functors"] = [functor_to_json(Fn, t) for Fn, t in functors]
    return doc


def functor_to_json(Fn, target_ref):
    F = Fn.target.field
    comps = []
    for n in sorted(Fn.components):
        for key in sorted(Fn.components[n], key=lambda k: [Fn.source.order[l] for l in k]):
            v = Fn.components[n][key]
            comps.append({"arity": n, "inputs": [_name(l) for l in key],
                          "output": {_name(l): F.fmt(c) for l, c in
                                     sorted(v.items(), key=lambda t: Fn.target.order[t[0]])}})
    return {"name": Fn.name, "target": target_ref,
            "objects": {_name(x): _name(y) for x, y in Fn.obj_map.items()},
            "components": comps}


def _need(doc, key, where, kind=None):
    if key not in doc:
        raise InputError(f"{where}: missing field {key!r}")
    v = doc[key]
    if kind is not None and not isinstance(v, kind):
        raise InputError(f"{where}.{key}: expected {kind.__name__}")
    return v


def _parse_field(spec, where):
    try:
        return field_from_spec(spec)
    except (FieldError, ValueError) as e:
        raise InputError(f"{where}.field: {e}") from None


def _coef(F, c, where):
    if isinstance(c, bool) or not isinstance(c, (int, str)):
        raise InputError(f"{where}: scalar must be an integer or a string like '1/2'")
    try:
        return F.coerce(c)
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"{where}: bad scalar {c!r} ({e})") from None


def category_from_json(doc, field=None):
    """Build an AInfCategory; every error names the offending field."""
    if not isinstance(doc, dict):
        raise InputError("top level: expected an object")
    if doc.get("schema", SCHEMA) != SCHEMA:
        raise InputError(f"schema: expected {SCHEMA!r}, got {doc.get('schema')!r}")
    F = field or _parse_field(_need(doc, "field", "top level"), "top level")
    objects = _need(doc, "objects", "top level", list)
    objects = [str(o) for o in objects]
    if len(set(objects)) != len(objects):
        raise InputError("objects: duplicate object name")
    homs = {}
    labels = {}
    for i, h in enumerate(_need(doc, "homs", "top level", list)):
        where = f"homs[{i}]"
        x = str(_need(h, "source", where))
        y = str(_need(h, "target", where))
        for o, k in ((x, "source"), (y, "target")):
            if o not in objects:
                raise InputError(f"{where}.{k}: unknown object {o!r}")
        basis = {}
        for d, labs in _need(h, "basis", where, dict).items():
            try:
                dd = int(d)
            except ValueError:
                raise InputError(f"{where}.basis: degree {d!r} is not an integer") from None
            for lab in labs:
                lab = str(lab)
                if lab in labels:
                    raise InputError(f"{where}.basis[{d}]: label {lab!r} already used in {labels[lab]}")
                labels[lab] = where
            basis[dd] = [str(l) for l in labs]
        if (x, y) in homs:
            raise InputError(f"{where}: second entry for ({x}, {y})")
        homs[(x, y)] = basis
    ops = {}
    for i, op in enumerate(doc.get("ops", [])):
        where = f"ops[{i}]"
        d = _need(op, "arity", where, int)
        ins = [str(l) for l in _need(op, "inputs", where, list)]
        if len(ins) != d:
            raise InputError(f"{where}: arity {d} with {len(ins)} inputs")
        for j, l in enumerate(ins):
            if l not in labels:
                raise InputError(f"{where}.inputs[{j}]: unknown label {l!r}")
        out = {}
        for l, c in _need(op, "output", where, dict).items():
            if l not in labels:
                raise InputError(f"{where}.output: unknown label {l!r}")
            out[l] = _coef(F, c, f"{where}.output[{l!r}]")
        key = tuple(ins)
        if key in ops.get(d, {}):
            raise InputError(f"{where}: duplicate entry for {key!r}")
        ops.setdefault(d, {})[key] = out
    units = {str(x): str(u) for x, u in doc.get("units", {}).items()} or None
    for x, u in (units or {}).items():
        if x not in objects:
            raise InputError(f"units: unknown object {x!r}")
        if u not in labels:
            raise InputError(f"units[{x!r}]: unknown label {u!r}")
    try:
        return make_category(F, objects, homs, ops, units,
                             auto_units=bool(doc.get("auto_units", True)),
                             arity_bound=int(doc.get("arity_bound", 4)),
                             name=str(doc.get("name", "")))
    except (CategoryError, WindowError) as e:
        raise InputError(f"ops: {e}") from None


def functor_from_json(doc, source, target, where="functors[0]"):
    F = target.field
    obj = {str(k): str(v) for k, v in _need(doc, "objects", where, dict).items()}
    for x in source.objects:
        if x not in obj:
            raise InputError(f"{where}.objects: no image for {x!r}")
    comps = {}
    for i, c in enumerate(_need(doc, "components", where, list)):
        w = f"{where}.components[{i}]"
        n = _need(c, "arity", w, int)
        ins = tuple(str(l) for l in _need(c, "inputs", w, list))
        for l in ins:
            if l not in source.info:
                raise InputError(f"{w}.inputs: unknown source label {l!r}")
        out = {}
        for l, v in _need(c, "output", w, dict).items():
            if l not in target.info:
                raise InputError(f"{w}.output: unknown target label {l!r}")
            out[l] = _coef(F, v, f"{w}.output[{l!r}]")
        comps.setdefault(n, {})[ins] = out
    try:
        return AInfFunctor(source, target, obj, comps, name=str(doc.get("name", "")))
    except CategoryError as e:
        raise InputError(f"{where}: {e}") from None


def load_json(path):
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from None


def load_category(path, field=None):
    try:
        return category_from_json(load_json(path), field)
    except InputError as e:
        msg = str(e)
        raise InputError(msg if msg.startswith(str(path)) else f"{path}: {msg}") from None


def load_functors(path, source, field=None):
    """Declared functors of the file at ``path`` with their targets resolved
    ("self" or a path relative to the file)."""
    doc = load_json(path)
    out = []
    for i, fd in enumerate(doc.get("functors", [])):
        ref = fd.get("target", "self")
        if ref == "self":
            target = source
        else:
            target = load_category(Path(path).parent / ref, field)
        out.append(functor_from_json(fd, source, target, f"{path}: functors[{i}]"))
    return out


# ------------------------------------------------------------ canonical JSON

def jsonable(x):
    """Deterministic plain-data form of nested results."""
    if isinstance(x, dict):
        items = [(_key(k), jsonable(v)) for k, v in x.items()]
        items.sort(key=lambda t: t[0])
        return dict(items)
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted((jsonable(v) for v in x), key=lambda v: json.dumps(v, sort_keys=True))
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return format(x, ".6g")
    return str(x)


def _key(k):
    if isinstance(k, str):
        return k
    if isinstance(k, tuple):
        return "(" + ",".join(_key(v) for v in k) + ")"
    return str(k)


def canonical(doc):
    return json.dumps(jsonable(doc), sort_keys=True, indent=1, ensure_ascii=False) + "\n"
