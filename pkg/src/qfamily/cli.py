"""Command-line front end: ``qfamily <command> ...``."""

from __future__ import annotations

import argparse
import glob
import json
import os
import sys
from importlib import resources
from typing import Optional, Sequence

from .algebra import check_axioms
from .chains.cocycles import check_cocycle2
from .diagram import DiagramError, format_diagram, load_diagram, mirror
from .invariants import MODES, InvariantError, phi
from .io import FormatError, load_cocycle, load_family, load_xset


def _family_args(p: argparse.ArgumentParser, cocycle: bool = False) -> None:
    p.add_argument("--family", default="sl2z3-linear", help="builtin name or .gfam file")
    p.add_argument("--xset", default="trivial", help="trivial or self")
    if cocycle:
        p.add_argument("--cocycle", default="nosaka-sl2z3", help="builtin name or .coc2 file")
        p.add_argument("-p", type=int, default=3, help="coefficient modulus of builtin cocycles")


def _threads(args) -> Optional[int]:
    return args.threads if args.threads is not None else None


def cmd_check_axioms(args) -> int:
    f = load_family(args.family)
    ys = load_xset(args.xset, f)
    targets = {
        "group": [f.group],
        "family": [f],
        "quandle": [f.associated],
        "xset": [ys],
    }
    names = list(targets) if args.object == "all" else [args.object]
    ok = True
    for name in names:
        for obj in targets[name]:
            rep = check_axioms(obj, family=f)
            print(f"{name}: {rep}")
            ok &= bool(rep)
    return 0 if ok else 1


def cmd_verify_cocycle(args) -> int:
    f = load_family(args.family)
    ys = load_xset(args.xset, f)
    theta = load_cocycle(args.cocycle, f, ys, args.p)
    rep = check_cocycle2(theta, f, ys)
    print(rep)
    return 0 if rep else 1


def _render(v, fmt: str) -> str:
    return json.dumps(v.to_json(), separators=(",", ":")) if fmt == "structured" else v.to_text()


def cmd_invariant(args) -> int:
    f = load_family(args.family)
    ys = load_xset(args.xset, f)
    theta = load_cocycle(args.cocycle, f, ys, args.p)
    d = load_diagram(args.diagram)
    if args.mirror:
        d = mirror(d)
    v = phi(d, f, theta, args.mode, ys=ys, workers=_threads(args))
    print(_render(v, args.format))
    return 0


def bundled_corpus() -> str:
    return str(resources.files("qfamily") / "corpus")


def cmd_table(args) -> int:
    corpus = args.corpus or bundled_corpus()
    paths = sorted(glob.glob(os.path.join(corpus, "*.hkd")))
    if not paths:
        print(f"error: no .hkd files in {corpus}", file=sys.stderr)
        return 2
    f = load_family(args.family)
    ys = load_xset(args.xset, f)
    theta = load_cocycle(args.cocycle, f, ys, args.p)
    bad = 0
    rows = []
    for path in paths:
        d = load_diagram(path)
        expect = dict(d.expect)
        v = phi(d, f, theta, args.mode, ys=ys, workers=_threads(args))
        text = v.to_text()
        if args.mode in expect:
            status = "ok" if expect[args.mode] == text else "MISMATCH"
            bad += status != "ok"
        else:
            status = "-"
        if args.format == "structured":
            rows.append({"name": d.name, "status": status, "invariant": v.to_json()})
        else:
            line = f"{d.name}\t{text}\t{status}"
            if status == "MISMATCH":
                line += f" (expected {expect[args.mode]})"
            rows.append(line)
    if args.format == "structured":
        print(json.dumps(rows, separators=(",", ":")))
    else:
        print("\n".join(rows))
    return 1 if bad else 0


def cmd_mirror(args) -> int:
    d = mirror(load_diagram(args.diagram))
    text = format_diagram(d)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qfamily", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-axioms", help="exhaustive axiom checks")
    _family_args(p)
    p.add_argument("--object", default="all", choices=["all", "group", "family", "quandle", "xset"])
    p.set_defaults(func=cmd_check_axioms)

    p = sub.add_parser("verify-cocycle", help="exhaustive 2-cocycle check")
    _family_args(p, cocycle=True)
    p.set_defaults(func=cmd_verify_cocycle)

    for name, func, hlp in (
        ("invariant", cmd_invariant, "cocycle invariant of one diagram"),
        ("table", cmd_table, "invariants of every diagram in a corpus"),
    ):
        p = sub.add_parser(name, help=hlp)
        _family_args(p, cocycle=True)
        p.add_argument("--mode", default="conj", choices=MODES)
        p.add_argument("--format", default="text", choices=["text", "structured"])
        p.add_argument("--threads", type=int, default=None, help="worker processes (default QF_THREADS or 1)")
        if name == "invariant":
            p.add_argument("--diagram", required=True)
            p.add_argument("--mirror", action="store_true", help="use the mirror image")
        else:
            p.add_argument("--corpus", default=None, help="directory of .hkd files (default: bundled)")
        p.set_defaults(func=func)

    p = sub.add_parser("mirror", help="print the mirror image of a diagram")
    p.add_argument("--diagram", required=True)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_mirror)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, DiagramError, InvariantError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
