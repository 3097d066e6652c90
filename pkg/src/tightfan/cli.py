"""Command-line front end over the JSON formats of :mod:`tightfan.io`.

Exit codes: 0 when a result was computed (negative answers included), 1 for
invalid input, 2 when a result contradicted a theorem the library relies on.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import io as tio
from .errors import InvariantViolation, MalformedInput, TightFanError
from .fan import face_fan
from .parallelohedra import delone_classify, face_stars, verify_parallelohedron_tightness, voronoi_cell
from .polytope import polar
from .scaling import canonical_scaling, infeasibility_certificate, is_polytopal, lifting_from_scaling
from .tightness import NotTight, classify, is_tight


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _kind(value) -> str:
    return getattr(value, "value", value)


def _center(obj, dim):
    if isinstance(obj, dict) and "center" in obj:
        return tio.vec_from_json(obj["center"], "$.center", dim)
    return None


# ---- fan ---------------------------------------------------------------

def fan_check(obj, args):
    F = tio.fan_from_json(obj)
    complete, pointed = F.is_complete(), F.is_pointed()
    return {"complete": complete, "pointed": pointed,
            "tight": is_tight(F) if complete and pointed else None}


def fan_classify(obj, args):
    F = tio.fan_from_json(obj)
    kind = classify(F)
    return {"tight": kind is not NotTight, "type": _kind(kind)}


def fan_scale(obj, args):
    F = tio.fan_from_json(obj)
    w = canonical_scaling(F)
    if w is None:
        return {"canonical_scaling": None, "certificate": infeasibility_certificate(F).to_json()}
    return {"canonical_scaling": w.to_json(), "certificate": None}


def _fan_and_scaling(obj):
    if isinstance(obj, dict) and "fan" in obj:
        F = tio.fan_from_json(obj["fan"], "$.fan")
        if "scaling" in obj:
            return F, tio.scaling_from_json(obj["scaling"], F, "$.scaling")
        return F, canonical_scaling(F)
    F = tio.fan_from_json(obj)
    return F, canonical_scaling(F)


def fan_lift(obj, args):
    F, w = _fan_and_scaling(obj)
    if w is None:
        return {"lifting": None, "reason": "no canonical scaling"}
    lift = lifting_from_scaling(F, w)
    return {"lifting": {"apex": tio.vec_to_json(lift.apex), "root": lift.root,
                        "convex": lift.convex,
                        "functionals": [tio.vec_to_json(a) for a in lift.functionals]},
            "scaling": w.to_json()}


def fan_polytopality(obj, args):
    F = tio.fan_from_json(obj)
    res = is_polytopal(F)
    if res:
        return {"polytopal": True, "witness": res.witness.to_json(),
                "scaling": res.scaling.to_json()}
    return {"polytopal": False, "certificate": res.certificate.to_json()}


# ---- polytope ----------------------------------------------------------

def polytope_facefan(obj, args):
    P = tio.polytope_from_json(obj)
    return face_fan(P, _center(obj, P.dim)).to_json()


def polytope_polar(obj, args):
    P = tio.polytope_from_json(obj)
    Q, _ = polar(P, _center(obj, P.dim))
    return Q.to_json()


# ---- lattice -----------------------------------------------------------

def lattice_cell(obj, args):
    L = tio.lattice_from_json(obj)
    V = voronoi_cell(L)
    out = V.to_json()
    out["f_vector"] = list(V.f_vector)
    out["relevant_vectors"] = [tio.vec_to_json(z) for z in L.relevant_vectors]
    return out


def lattice_stars(obj, args):
    L = tio.lattice_from_json(obj)
    codims = [args.codim] if args.codim else range(1, L.dim + 1)
    return {"stars": [s.to_json() for k in codims for s in face_stars(L, k)]}


def lattice_delone(obj, args):
    L = tio.lattice_from_json(obj)
    delone_classify(L)
    orbits = []
    for s in face_stars(L, 3):
        orbits.append({"codim": 3, "cells": s.cell_count, "type": _kind(classify(s.meeting))})
    return {"orbits": orbits}


def lattice_verify(obj, args):
    return verify_parallelohedron_tightness(tio.lattice_from_json(obj)).to_json()


COMMANDS = {
    "fan": {"check": fan_check, "classify": fan_classify, "scale": fan_scale,
            "lift": fan_lift, "polytopality": fan_polytopality},
    "polytope": {"facefan": polytope_facefan, "polar": polytope_polar},
    "lattice": {"cell": lattice_cell, "stars": lattice_stars, "delone": lattice_delone,
                "verify": lattice_verify},
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tightfan", description="Exact computations on complete fans, "
                     "polytopes and lattice tilings.  Reads and writes JSON.")
    groups = parser.add_subparsers(dest="group", required=True)
    for group, commands in COMMANDS.items():
        gp = groups.add_parser(group)
        sub = gp.add_subparsers(dest="command", required=True)
        for name, func in commands.items():
            cp = sub.add_parser(name, description=(func.__doc__ or None))
            cp.add_argument("--in", dest="inp", default="-", help="input JSON file ('-' for stdin)")
            cp.add_argument("--out", default="-", help="output file ('-' for stdout)")
            cp.add_argument("--pretty", action="store_true", help="indent the output")
            if func is lattice_stars:
                cp.add_argument("--codim", type=int, default=None)
            cp.set_defaults(func=func)
    return parser


def run(argv: Optional[Sequence[str]] = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"tightfan: {exc}", file=stderr)
        return 1
    try:
        if args.inp == "-":
            text = stdin.read()
        else:
            with open(args.inp, encoding="utf-8") as fh:
                text = fh.read()
        result = args.func(tio.loads(text), args)
    except OSError as exc:
        print(f"tightfan: cannot read input: {exc}", file=stderr)
        return 1
    except (TightFanError, TypeError) as exc:
        kind = "malformed input" if isinstance(exc, MalformedInput) else type(exc).__name__
        print(f"tightfan: {kind}: {exc}", file=stderr)
        return 1
    except InvariantViolation as exc:
        print(f"tightfan: internal invariant violated ({type(exc).__name__}): {exc}", file=stderr)
        return 2
    text = tio.dumps(result, args.pretty)
    if args.out == "-":
        stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
