"""Command line front end.

One file holds one functor (JSON); pipelines compose via --out.  Inputs
are file paths or ``corpus:NAME`` references built on the fly.  Exit codes:
0 success, 1 oracle failure, 2 input error.  FCALC_MARGIN overrides the
default stability margin of 2.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .cattilde import CatError, category, tilde_hom, verify_axioms
from .corpus import ORACLES, build, build_sharp, list_entries, run_oracles
from .fimod import (
    FunctorError, TruncFIModule, WindowError, diff, dim_profile, kappa,
    generation_degree, shift, strong_degree, verify_six_term, weak_degree,
)
from .fisharp import (
    FISharpModule, SymRepList, alpha, dold_kan_decompose, dold_kan_reconstruct,
    eta_restrict,
)


class InputError(Exception):
    pass


def default_margin() -> int:
    raw = os.environ.get("FCALC_MARGIN")
    if raw is None:
        return 2
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"FCALC_MARGIN must be an integer, got {raw!r}")


def load_functor(ref: str, N: int | None, coeff: str | None, want_sharp=False):
    """A file path, or corpus:NAME built at the requested size."""
    if ref.startswith("corpus:"):
        name = ref[len("corpus:"):]
        n = N if N is not None else 10
        c = coeff or "Z"
        try:
            if want_sharp or name.startswith("free_sharp"):
                return build_sharp(name, c, n)
            return build(name, c, n)
        except (FunctorError, ValueError, IndexError) as exc:
            raise InputError(f"cannot build {ref}: {exc}")
    try:
        with open(ref) as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {ref}")
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {ref} at line {exc.lineno}, "
                         f"column {exc.colno}: {exc.msg}")
    try:
        if "proj" in data:
            return FISharpModule.from_json(data)
        if "reps" in data:
            return SymRepList.from_json(data)
        return TruncFIModule.from_json(data)
    except (FunctorError, KeyError, ValueError) as exc:
        raise InputError(f"invalid functor data in {ref}: {exc}")


def emit(data: dict, out: str | None):
    text = json.dumps(data, indent=1)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def as_fi(module) -> TruncFIModule:
    if isinstance(module, FISharpModule):
        return eta_restrict(module)
    if isinstance(module, TruncFIModule):
        return module
    raise InputError("this command needs an FI- or FI#-module input")


def cmd_verify(args) -> int:
    module = load_functor(args.input, args.N, args.coeff)
    if isinstance(module, SymRepList):
        raise InputError("verify expects a functor, not a representation list")
    bad = module.verify()
    if bad:
        for line in bad:
            print(f"violation: {line}")
        return 2
    print(f"ok: all structural invariants hold on [0, {module.N}]")
    return 0


def cmd_degree(args) -> int:
    F = as_fi(load_functor(args.input, args.N, args.coeff))
    margin = args.margin if args.margin is not None else default_margin()
    if args.weak:
        rep = weak_degree(F, margin)
        kind = "weak"
    elif args.generation:
        rep = generation_degree(F)
        kind = "generation"
    else:
        rep = strong_degree(F)
        kind = "strong"
    if args.json:
        emit({"kind": kind, "value": rep.value, "window": rep.window,
              "margin": rep.margin}, args.out)
    else:
        body = f"{kind} degree = {rep.value}"
        if rep.window is not None:
            body += f", window [{rep.window[0]},{rep.window[1]}]"
        print(body)
    return 0


def _transform(args, op) -> int:
    F = as_fi(load_functor(args.input, args.N, args.coeff))
    G = op(F)
    emit(G.to_json(), args.out)
    return 0


def cmd_diff(args) -> int:
    return _transform(args, lambda F: diff(F, args.x))


def cmd_shift(args) -> int:
    return _transform(args, lambda F: shift(F, args.x))


def cmd_kappa(args) -> int:
    return _transform(args, lambda F: kappa(F, args.x))


def cmd_dims(args) -> int:
    F = as_fi(load_functor(args.input, args.N, args.coeff))
    prof = dim_profile(F)
    if args.json:
        emit({"profiles": prof.profiles, "dims": prof.dims, "diffs": prof.diffs,
              "poly_degree": prof.poly_degree, "poly_from": prof.poly_from},
             args.out)
        return 0
    print("level:", " ".join(f"{n:>4}" for n in range(F.N + 1)))
    print("dim:  ", " ".join(f"{d:>4}" for d in prof.dims))
    for k, row in enumerate(prof.diffs[1:], start=1):
        print(f"d^{k}:  ", " ".join(f"{d:>4}" for d in row))
    if prof.poly_degree is not None:
        print(f"polynomial of degree <= {prof.poly_degree} from level "
              f"{prof.poly_from} on (window evidence)")
    return 0


def cmd_six_term(args) -> int:
    F = as_fi(load_functor(args.input, args.N, args.coeff))
    ok = verify_six_term(F)
    print(f"six-term exactness on [0, {F.N - 2}]: {'pass' if ok else 'FAIL'}")
    return 0 if ok else 1


def cmd_dk_decompose(args) -> int:
    module = load_functor(args.input, args.N, args.coeff, want_sharp=True)
    if not isinstance(module, FISharpModule):
        raise InputError("dk-decompose needs an FI#-module (with proj data)")
    reps = dold_kan_decompose(module)
    emit(reps.to_json(), args.out)
    return 0


def cmd_dk_reconstruct(args) -> int:
    data = load_functor(args.input, None, None)
    if not isinstance(data, SymRepList):
        raise InputError("dk-reconstruct needs a representation list "
                         '(JSON with "reps")')
    module = dold_kan_reconstruct(data, args.N)
    emit(module.to_json(), args.out)
    return 0


def cmd_alpha(args) -> int:
    F = as_fi(load_functor(args.input, args.N, args.coeff))
    margin = args.margin if args.margin is not None else default_margin()
    res = alpha(F, margin)
    if args.json or args.out:
        emit(res.module.to_json(), args.out)
    else:
        profiles = [m.invariant_factors() for m in res.module.levels]
        print("level profiles:", profiles)
    print(f"alpha certified on [0, {res.module.N}] "
          f"(input window [0, {F.N}], margin {margin})", file=sys.stderr)
    return 0


def cmd_tilde_hom(args) -> int:
    cat = category(args.cat)
    classes = tilde_hom(cat, args.a, args.b)
    if args.json:
        emit({"cat": cat.name, "a": args.a, "b": args.b,
              "classes": [h.to_json() for h in classes]}, args.out)
        return 0
    print(f"{len(classes)} classes in {cat.name}-tilde({args.a}, {args.b}):")
    for h in classes:
        if cat.name == "theta":
            dom, vals = h.as_partial()
            body = ", ".join(f"{i}->{v}" for i, v in zip(dom, vals)) or "nowhere defined"
            print(f"  [{body}]")
        else:
            print(f"  preimages of target: {h.normal}")
    return 0


def cmd_tilde_axioms(args) -> int:
    cat = category(args.cat)
    report = verify_axioms(cat, args.bound)
    print(report)
    return 0 if report.ok else 1


def cmd_corpus(args) -> int:
    if args.action == "list":
        for name in list_entries():
            spec = ORACLES[name]
            print(f"{name:24} coeff {spec['coeff']:3} N {spec['N']:3} "
                  f"({len(spec['facts'])} oracles)")
        return 0
    if args.action == "emit":
        if not args.name:
            raise InputError("corpus emit needs a name")
        n = args.N if args.N is not None else 10
        c = args.coeff or "Z"
        try:
            if args.name.startswith("free_sharp"):
                module = build_sharp(args.name, c, n)
            else:
                module = build(args.name, c, n)
        except FunctorError as exc:
            raise InputError(str(exc))
        emit(module.to_json(), args.out)
        return 0
    if args.action == "check":
        names = list_entries() if args.name in (None, "all") else [args.name]
        failed = False
        for name in names:
            report = run_oracles(name)
            for line in report.lines():
                print(line)
            failed = failed or not report.ok
        return 1 if failed else 0
    raise InputError(f"unknown corpus action {args.action!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fcalc",
        description="exact calculus for truncated functors on finite sets "
                    "and injections")
    sub = ap.add_subparsers(dest="verb", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument("input", help="functor JSON file or corpus:NAME")
        p.add_argument("--N", type=int, default=None,
                       help="truncation for corpus builds")
        p.add_argument("--coeff", default=None, help="Z, Q, F2, F<p>")
        p.add_argument("--out", default=None, help="write JSON output here")
        p.add_argument("--json", action="store_true",
                       help="machine-readable output")

    p = sub.add_parser("verify", help="check the structural invariants")
    common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("degree", help="strong / weak / generation degree")
    common(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--strong", action="store_true")
    group.add_argument("--weak", action="store_true")
    group.add_argument("--generation", action="store_true")
    p.add_argument("--margin", type=int, default=None)
    p.set_defaults(fn=cmd_degree)

    for verb, fn in (("diff", cmd_diff), ("shift", cmd_shift), ("kappa", cmd_kappa)):
        p = sub.add_parser(verb, help=f"apply {verb} and emit the result")
        common(p)
        p.add_argument("--x", type=int, default=1)
        p.set_defaults(fn=fn)

    p = sub.add_parser("dims", help="dimension profile and difference table")
    common(p)
    p.set_defaults(fn=cmd_dims)

    p = sub.add_parser("six-term", help="verify the kernel-cokernel six-term "
                                        "exact sequence")
    common(p)
    p.set_defaults(fn=cmd_six_term)

    p = sub.add_parser("dk-decompose", help="cross-effect decomposition of an "
                                            "FI#-module")
    common(p)
    p.set_defaults(fn=cmd_dk_decompose)

    p = sub.add_parser("dk-reconstruct", help="assemble an FI#-module from "
                                              "representations")
    common(p)
    p.set_defaults(fn=cmd_dk_reconstruct)

    p = sub.add_parser("alpha", help="stabilized translation colimit (to FI#)")
    common(p)
    p.add_argument("--margin", type=int, default=None)
    p.set_defaults(fn=cmd_alpha)

    p = sub.add_parser("tilde-hom", help="morphism classes of the nullified "
                                         "category")
    p.add_argument("--cat", default="theta", help="theta or sigma")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("--out", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_tilde_hom)

    p = sub.add_parser("tilde-axioms", help="category axioms of the "
                                            "nullification, exhaustively")
    p.add_argument("--cat", default="theta")
    p.add_argument("--bound", type=int, default=3)
    p.set_defaults(fn=cmd_tilde_axioms)

    p = sub.add_parser("corpus", help="list / emit / check worked examples")
    p.add_argument("action", choices=["list", "emit", "check"])
    p.add_argument("name", nargs="?", default=None)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--coeff", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_corpus)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (WindowError, FunctorError, CatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
