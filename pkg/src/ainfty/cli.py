"""Command-line front end: ``ainfty check|nerve|dk|compare``.

Exit codes: 0 all checks pass, 1 a check failed, 2 input error, 3 cap or
resource refusal.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from .core import check_functor, check_quasi_equivalence, check_relations, check_units
from .io import SCHEMA, InputError, canonical, jsonable, load_category, load_functors
from .linear import FieldError, WindowError, field_from_spec, vfmt

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3
DEFAULT_CAP = 1_000_000


class CapRefusal(RuntimeError):
    pass


def _check_entry(name, ok, witnesses=(), **info):
    d = {"name": name, "ok": bool(ok), "witnesses": list(witnesses)}
    d.update(info)
    return d


def _vec(F, v):
    return vfmt(F, v, sorted(v, key=str))


def _wit_relations(A, rep, limit):
    return [{"tuple": [str(l) for l in key], "residual": _vec(A.field, r)}
            for key, r in rep.witnesses[:limit]]


def _wit_generic(F, rep, limit):
    out = []
    for w in rep.witnesses[:limit]:
        if isinstance(w, tuple):
            out.append([_vec(F, x) if isinstance(x, dict) else jsonable(x) for x in w])
        else:
            out.append(jsonable(w))
    return out


# -------------------------------------------------------------------- check

def cmd_check(args):
    field = field_from_spec(args.field) if args.field else None
    checks = []
    data = {}
    if args.family:
        from .family import pass_set_hash
        F = field or field_from_spec("F2")
        digest, counts = pass_set_hash(F, args.max_bits)
        data["family"] = {"field": F.spec(), "max_bits": args.max_bits, "sha256": digest,
                          "accepted": {str(s): list(c) for s, c in counts.items()}}
        checks.append(_check_entry("family", True))
        config = {"family": True, "max_bits": args.max_bits}
        return _report("check", config, checks, data)
    if not args.path:
        raise InputError("check: a category file or --family is required")
    A = load_category(args.path, field)
    config = {"arity": args.arity, "file": Path(args.path).name, "field": A.field.spec()}
    rel = check_relations(A, args.arity)
    checks.append(_check_entry("relations", rel.ok, _wit_relations(A, rel, args.witnesses),
                               checked_up_to=rel.info["checked_up_to"]))
    if args.units and A.units:
        u = check_units(A)
        checks.append(_check_entry("units", u.ok, _wit_generic(A.field, u, args.witnesses)))
    for Fn in load_functors(args.path, A, field):
        r = check_functor(Fn, args.arity)
        checks.append(_check_entry(f"functor:{Fn.name}", r.ok,
                                   _wit_generic(Fn.target.field, r, args.witnesses)))
    return _report("check", config, checks, data)


# -------------------------------------------------------------------- nerve

def _simplex_line(A, s):
    F = A.field
    parts = [f"f{''.join(map(str, I))}={vfmt(F, dict(v), [l for l, _ in v])}"
             for I, v in s.coeffs]
    return f"({','.join(map(str, s.objects))}) " + " ".join(parts)


def cmd_nerve(args):
    from .nerve import CapExceeded, compare_ho, nerve
    from .simplicial import is_quasicategory, validate
    field = field_from_spec(args.field) if args.field else None
    A = load_category(args.path, field)
    if not A.field.size:
        raise InputError(f"{args.path}: nerve enumeration needs a finite field")
    config = {"file": Path(args.path).name, "level": args.level, "cap": args.cap,
              "signs": args.signs, "field": A.field.spec()}
    try:
        X = nerve(A, args.level, args.cap, signs=args.signs)
    except CapExceeded as e:
        raise CapRefusal(f"level estimate {e.estimate} exceeds cap {e.cap}") from None
    checks = []
    v = validate(X, sample=args.sample if args.sample > 0 else None)
    checks.append(_check_entry("simplicial", v.ok,
                               [str(x) for x in v.violations[:args.witnesses]],
                               checked=v.checked))
    q = is_quasicategory(X, args.level, stop_after=args.witnesses)
    checks.append(_check_entry(
        "inner-horns", q.ok,
        [{"n": h.n, "k": h.k, "faces": {str(j): _simplex_line(A, s) for j, s in h.faces}}
         for h in q.counterexamples],
        horns={f"{n},{k}": c for (n, k), c in sorted(q.horns_checked.items())}))
    if v.ok and q.ok:
        try:
            ok, detail = compare_ho(A, X)
        except Exception as e:  # Ho is not well defined on a broken nerve
            ok, detail = False, str(e)
        checks.append(_check_entry("ho-comparison", ok, [] if ok else [detail]))
    data = {"sizes": X.sizes()}
    if args.dump:
        data["levels"] = {str(n): [_simplex_line(A, s) for s in X.levels[n]]
                          for n in range(X.L + 1)}
    return _report("nerve", config, checks, data)


# ----------------------------------------------------------------------- dk

def cmd_dk(args):
    from . import dold_kan as DK
    from .chain import random_complex
    from .linear import QQ
    F = field_from_spec(args.field) if args.field else None
    checks, data = [], {}
    config = {"zdelta": args.zdelta, "roundtrip": args.roundtrip, "cross": args.cross,
              "seed": args.seed}
    if args.zdelta is not None:
        if args.zdelta < 0:
            raise InputError("--zdelta: negative degree")
        M = DK.z_delta(args.zdelta, max(args.zdelta, 1), F or QQ)
        N = DK.normalized_chains(M, args.zdelta)
        gens = {}
        for n in range(args.zdelta + 1):
            gens[str(n)] = N.fmt(n)
        data["normalized"] = gens
        diffs = {}
        for n in range(1, args.zdelta + 1):
            diffs[str(n)] = [_vec(M.field, M.face(n, 0, N.incl[b])) for b in N.basis(n)]
        data["differential"] = diffs
        checks.append(_check_entry("zdelta", True))
    if args.roundtrip:
        rng = random.Random(args.seed)
        fields = [F] if F else [field_from_spec("F2"), field_from_spec("F3")]
        fails = []
        count = 0
        for K in fields:
            for i in range(args.samples):
                C = random_complex(K, rng)
                r = DK.roundtrip_check(C)
                count += 1
                if not r.ok:
                    fails.append({"field": K.spec(), "sample": i, "detail": r.detail})
        checks.append(_check_entry("roundtrip", not fails, fails[:args.witnesses], samples=count))
    if args.cross is not None:
        if not args.path or not args.hom:
            raise InputError("--cross needs a category file and --hom X Y")
        A = load_category(args.path, F)
        x, y = args.hom
        for o in (x, y):
            if o not in A.objects:
                raise InputError(f"--hom: unknown object {o!r}")
        C = A.hom_chain(x, y)
        sols = DK.solve_cross(args.cross, C)
        data["cross"] = {"n": args.cross, "hom": [x, y], "solutions": len(sols)}
        maps = DK.brute_chain_maps(A.field, args.cross, C)
        checks.append(_check_entry("cross-vs-chain-maps", len(sols) == len(maps),
                                   [] if len(sols) == len(maps) else [[len(sols), len(maps)]]))
    if not checks:
        raise InputError("dk: nothing to do (use --zdelta, --roundtrip or --cross)")
    return _report("dk", config, checks, data)


# ------------------------------------------------------------------ compare

def cmd_compare(args):
    from .nerve import CapExceeded, nerve, nerve_map
    from .simplicial import weak_equivalence_check
    field = field_from_spec(args.field) if args.field else None
    A = load_category(args.path_a, field)
    B = load_category(args.path_b, field)
    fns = [Fn for Fn in load_functors(args.path_a, A, field) if Fn.name == args.functor]
    if not fns:
        raise InputError(f"{args.path_a}: no functor named {args.functor!r}")
    Fn = fns[0]
    from .core import table_signature
    if table_signature(Fn.target) != table_signature(B):
        raise InputError(f"functor {args.functor!r} does not target {args.path_b}")
    Fn.target = B
    config = {"a": Path(args.path_a).name, "b": Path(args.path_b).name,
              "functor": args.functor, "level": args.level, "cap": args.cap}
    checks = []
    fr = check_functor(Fn, args.level)
    checks.append(_check_entry("functor", fr.ok, _wit_generic(B.field, fr, args.witnesses)))
    qe = check_quasi_equivalence(Fn)
    checks.append(_check_entry("we1", qe.info["we1"],
                               [jsonable(w) for w in qe.witnesses if w[0] != "we2"][:args.witnesses]))
    checks.append(_check_entry("we2", qe.info["we2"],
                               [jsonable(w) for w in qe.witnesses if w[0] == "we2"][:args.witnesses]))
    try:
        NA = nerve(A, args.level, args.cap)
        NB = nerve(B, args.level, args.cap)
    except CapExceeded as e:
        raise CapRefusal(f"level estimate {e.estimate} exceeds cap {e.cap}") from None
    Fm = nerve_map(Fn, NA, NB, args.level, args.cap)
    fm = Fm.check()
    checks.append(_check_entry("nerve-map", not fm, [jsonable(w) for w in fm[:args.witnesses]]))
    we = weak_equivalence_check(Fm, args.level)
    checks.append(_check_entry(
        "weak-equivalence", we.ok, [] if we.ok else [we.ho_detail],
        mapping={f"{x.objects[0]},{y.objects[0]}": {str(j): list(r) for j, r in rep.items()}
                 for (x, y), rep in we.mapping.items()}))
    qe_ok = fr.ok and qe.ok
    data = {"implications": [
        {"statement": "quasi-equivalence implies Joyal weak equivalence of nerves",
         "hypothesis": qe_ok, "conclusion": we.ok,
         "instance": "holds" if (not qe_ok or we.ok) else "VIOLATED"},
        {"statement": "Joyal weak equivalence of nerves implies quasi-equivalence",
         "hypothesis": we.ok, "conclusion": qe_ok,
         "instance": "holds" if (not we.ok or qe_ok) else "fails (not a theorem)"}]}
    data["nerve_sizes"] = {"a": NA.sizes(), "b": NB.sizes()}
    return _report("compare", config, checks, data, expect_all=False)


# ------------------------------------------------------------------ reports

def _report(command, config, checks, data, expect_all=True):
    return {"schema": SCHEMA, "command": command, "config": config, "checks": checks,
            "data": data, "ok": all(c["ok"] for c in checks)}


def _text(rep):
    lines = [f"{rep['command']}: {'PASS' if rep['ok'] else 'FAIL'}"]
    for c in rep["checks"]:
        lines.append(f"  {'pass' if c['ok'] else 'FAIL'}  {c['name']}")
        for w in c["witnesses"]:
            lines.append(f"        witness: {json.dumps(jsonable(w), sort_keys=True, ensure_ascii=False)}")
    for k, v in rep["data"].items():
        if k == "levels":
            for n, ls in v.items():
                lines.append(f"  level {n}: {len(ls)} simplices")
                lines.extend(f"    {s}" for s in ls)
        elif k == "normalized":
            for n, gens in v.items():
                lines.append(f"  degree {n}: {', '.join(gens) if gens else '0'}")
        else:
            lines.append(f"  {k}: {json.dumps(jsonable(v), sort_keys=True, ensure_ascii=False)}")
    return "\n".join(lines) + "\n"


def build_parser():
    p = argparse.ArgumentParser(prog="ainfty", description="A∞-category checks and nerves")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="override the field: Q or Fp:p")
    common.add_argument("--json", action="store_true", help="print the canonical JSON report")
    common.add_argument("--golden", help="compare with (or create) a golden report")
    common.add_argument("--timing", action="store_true", help="add wall time (not canonical)")
    common.add_argument("--witnesses", type=int, default=5, help="witnesses kept per check")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="relations, units, functors")
    c.add_argument("path", nargs="?")
    c.add_argument("--arity", type=int, default=3)
    c.add_argument("--no-units", dest="units", action="store_false")
    c.add_argument("--family", action="store_true", help="F_2 table family pass-set hash")
    c.add_argument("--max-bits", type=int, default=14)
    c.set_defaults(func=cmd_check)

    n = sub.add_parser("nerve", parents=[common], help="A∞-nerve levels and horn checks")
    n.add_argument("path")
    n.add_argument("--level", type=int, default=3)
    n.add_argument("--cap", type=int, default=DEFAULT_CAP)
    n.add_argument("--signs", choices=["printed", "functor"], default="printed")
    n.add_argument("--sample", type=int, default=20,
                   help="simplices per level for full functoriality (0 = all)")
    n.add_argument("--dump", action="store_true", help="list every simplex")
    n.set_defaults(func=cmd_nerve)

    d = sub.add_parser("dk", parents=[common], help="normalized chains and Dold-Kan")
    d.add_argument("path", nargs="?")
    d.add_argument("--zdelta", type=int)
    d.add_argument("--roundtrip", action="store_true")
    d.add_argument("--samples", type=int, default=25)
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--cross", type=int)
    d.add_argument("--hom", nargs=2, metavar=("X", "Y"))
    d.set_defaults(func=cmd_dk)

    m = sub.add_parser("compare", parents=[common], help="quasi-equivalence vs nerve weak equivalence")
    m.add_argument("path_a")
    m.add_argument("path_b")
    m.add_argument("--functor", required=True)
    m.add_argument("--level", type=int, default=3)
    m.add_argument("--cap", type=int, default=DEFAULT_CAP)
    m.set_defaults(func=cmd_compare)
    return p


def run(argv=None, out=None):
    """Run one command; returns (exit code, report or None)."""
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        rep = args.func(args)
    except (InputError, FieldError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT, None
    except CapRefusal as e:
        print(f"refused: {e}", file=sys.stderr)
        return EXIT_CAP, None
    except WindowError as e:
        print(f"refused: {e}", file=sys.stderr)
        return EXIT_CAP, None
    text = canonical(rep)
    code = EXIT_OK if rep["ok"] else EXIT_FAIL
    if args.golden:
        g = Path(args.golden)
        if g.exists():
            if g.read_text(encoding="utf-8") != text:
                print(f"golden mismatch: {g}", file=sys.stderr)
                code = EXIT_FAIL
        else:
            g.parent.mkdir(parents=True, exist_ok=True)
            g.write_text(text, encoding="utf-8")
    body = text if args.json else _text(rep)
    out.write(body)
    if args.timing:
        out.write(f"time: {time.perf_counter() - t0:.3f}s\n")
    return code, rep


def main(argv=None):
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
