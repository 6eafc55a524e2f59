"""Command-line entry point: parse the text formats, dispatch to the
library, emit one deterministic JSON object on stdout.

Exit codes: 0 success (including boolean-false results), 1 input or parse
error, 2 mathematical precondition violation (or an inconclusive
randomized test).  Diagnostics go to stderr; stdout carries exactly one
JSON object with a trailing newline.
"""

from __future__ import annotations

import argparse
import json
import sys

from .apolarity import DPForm, apolar_ideal, parse_dp
from .errors import (AlgebraError, InconclusiveError, InputError, ParseError,
                     PreconditionError)
from .field import parse_field
from .groebner import quotient_dimension
from .poly import Ring, format_poly, ideal, parse_ideal_file, parse_poly, ring_make
from .schemes import (hilbert_function, is_gorenstein, is_local_at_origin,
                      scheme_degree, socle_dimension, span_dimension)
from .secant import (membership_report, rank_profile, secant_ideal_rnc,
                     span_closure_eliminate, span_intersection_check)
from .smoothing import (check_flat_finite, distraction_family, fiber_at,
                        is_etale_fiber, make_family, relative_degree,
                        triangular_smoothing)


def _add_common(p):
    p.add_argument("--field", default="QQ", help="QQ or GF:p")
    p.add_argument("--vars", help="comma-separated variable names")
    p.add_argument("--gens", help="semicolon-separated inline polynomials")
    p.add_argument("--ideal-file", help="file with one polynomial per line")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fst",
                                 description="exact finite-scheme toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    for name in ("gorenstein", "degree", "hilbert", "span"):
        p = sub.add_parser(name)
        _add_common(p)
        if name == "degree":
            p.add_argument("--ambient", choices=("affine", "projective"),
                           default="affine")
        if name in ("hilbert", "span"):
            p.add_argument("--d", type=int, required=True)

    p = sub.add_parser("cat-rank")
    p.add_argument("--field", default="QQ")
    p.add_argument("--dp", required=True, help="divided-power form")
    p.add_argument("--vars")
    p.add_argument("--r", type=int)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("secant-member")
    p.add_argument("--field", default="QQ")
    p.add_argument("--dp", required=True)
    p.add_argument("--vars")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("secant-ideal")
    p.add_argument("--field", default="QQ")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, required=True)

    p = sub.add_parser("apolar")
    p.add_argument("--field", default="QQ")
    p.add_argument("--dp", required=True)
    p.add_argument("--vars", help="names for the dual variables")

    p = sub.add_parser("smooth-family")
    _add_common(p)
    p.add_argument("--kind", choices=("triangular", "distraction"),
                   required=True)
    p.add_argument("--base-params", default="",
                   help="comma list of adjoined parameter variables")
    p.add_argument("--samples", default="0,1")

    p = sub.add_parser("flat-check")
    _add_common(p)
    p.add_argument("--samples", default="0,1")

    p = sub.add_parser("eliminate-span")
    _add_common(p)
    p.add_argument("--params", required=True, help="comma list to eliminate")

    p = sub.add_parser("span-intersect")
    _add_common(p)
    p.add_argument("--gens2", help="second ideal, inline")
    p.add_argument("--ideal-file2", help="second ideal, from a file")
    p.add_argument("--d", type=int, required=True)

    return ap


def _ring_from(args) -> Ring:
    if not args.vars:
        raise InputError("--vars is required for this command")
    names = [v.strip() for v in args.vars.split(",") if v.strip()]
    return ring_make(parse_field(args.field), names)


def _ideal_from(args, ring, gens_attr="gens", file_attr="ideal_file"):
    gens = getattr(args, gens_attr, None)
    path = getattr(args, file_attr, None)
    if (gens is None) == (path is None):
        raise InputError("provide exactly one of --gens/--ideal-file "
                         "(or --gens2/--ideal-file2)")
    if path is not None:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_ideal_file(fh.read(), ring)
    polys = [parse_poly(p, ring) for p in gens.split(";") if p.strip()]
    return ideal(ring, polys)


def _dp_from(args) -> DPForm:
    field = parse_field(args.field)
    ring = None
    if getattr(args, "vars", None):
        names = tuple(v.strip() for v in args.vars.split(",") if v.strip())
        ring = Ring(field, names)
    return parse_dp(args.dp, ring=ring, field=field)


def _samples_from(args):
    return [int(s) for s in args.samples.split(",") if s.strip()]


def _echo(args) -> dict:
    skip = {"command", "func"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip or v is None:
            continue
        out[k.replace("_", "-")] = v
    return out


def _run_command(args) -> dict:
    cmd = args.command
    if cmd == "gorenstein":
        ring = _ring_from(args)
        I = _ideal_from(args, ring)
        gor = is_gorenstein(I, seed=args.seed)
        socle = socle_dimension(I) if is_local_at_origin(I) else None
        return {"gorenstein": gor, "socle": socle}

    if cmd == "degree":
        ring = _ring_from(args)
        I = _ideal_from(args, ring)
        return {"degree": scheme_degree(I, args.ambient)}

    if cmd == "hilbert":
        ring = _ring_from(args)
        I = _ideal_from(args, ring)
        values = [hilbert_function(I, d) for d in range(args.d + 1)]
        return {"hilbert": values, "degree": scheme_degree(I, "projective")}

    if cmd == "span":
        ring = _ring_from(args)
        I = _ideal_from(args, ring)
        return {"span_dimension": span_dimension(I, args.d)}

    if cmd == "cat-rank":
        F = _dp_from(args)
        profile = rank_profile(F)
        result = {"d": F.degree, "n": F.ring.nvars,
                  "ranks": list(profile.ranks)}
        if args.r is not None:
            report = membership_report(F, args.r)
            result["member_catalecticant_locus"] = \
                report["member_catalecticant_locus"]
        return result

    if cmd == "secant-member":
        F = _dp_from(args)
        return membership_report(F, args.r)

    if cmd == "secant-ideal":
        I = secant_ideal_rnc(args.d, args.r, parse_field(args.field))
        return {"variables": list(I.ring.variables),
                "generators": [format_poly(g) for g in I.generators]}

    if cmd == "apolar":
        F = _dp_from(args)
        I = apolar_ideal(F)
        profile = rank_profile(F)
        return {"variables": list(I.ring.variables),
                "generators": [format_poly(g) for g in I.generators],
                "ranks": list(profile.ranks)}

    if cmd == "smooth-family":
        ring = _ring_from(args)
        I = _ideal_from(args, ring)
        if args.kind == "triangular":
            base = tuple(v.strip() for v in args.base_params.split(",")
                         if v.strip())
            Z = triangular_smoothing(list(I.generators), base)
        else:
            Z = distraction_family(I)
        samples = _samples_from(args)
        report = check_flat_finite(Z, samples)
        fiber1 = fiber_at(Z, 1)
        etale = is_etale_fiber(fiber1, actives=Z.actives)
        return {"generators": [format_poly(g) for g in Z.generators],
                "basis": [list(b) for b in (Z.basis or ())],
                "rank": report.rank,
                "samples": report.per_sample_degrees,
                "etale_at_1": etale,
                "flat": report.flat_evidence,
                "mode": report.mode}

    if cmd == "flat-check":
        ring = _ring_from(args)
        I = _ideal_from(args, ring)
        probe = make_family(ring, I.generators, 1)
        rank0 = relative_degree(fiber_at(probe, 0))
        Z = make_family(ring, I.generators, max(rank0, 1))
        report = check_flat_finite(Z, _samples_from(args))
        return report.to_json()

    if cmd == "eliminate-span":
        ring = _ring_from(args)
        I = _ideal_from(args, ring)
        params = [v.strip() for v in args.params.split(",") if v.strip()]
        out = span_closure_eliminate(I, params)
        return {"variables": list(out.ring.variables),
                "generators": [format_poly(g) for g in out.generators]}

    if cmd == "span-intersect":
        ring = _ring_from(args)
        I = _ideal_from(args, ring)
        J = _ideal_from(args, ring, "gens2", "ideal_file2")
        return span_intersection_check(I, J, args.d).to_json()

    raise InputError(f"unknown command {cmd!r}")


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, ensure_ascii=False) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    echo = _echo(args)
    try:
        result = _run_command(args)
    except ParseError as exc:
        _emit({"command": args.command, "input_echo": echo,
               "error_kind": "parse", "message": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InputError as exc:
        _emit({"command": args.command, "input_echo": echo,
               "error_kind": "input", "message": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InconclusiveError as exc:
        _emit({"command": args.command, "input_echo": echo,
               "error_kind": "inconclusive", "message": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        _emit({"command": args.command, "input_echo": echo,
               "error_kind": "precondition", "message": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        _emit({"command": args.command, "input_echo": echo,
               "error_kind": "io", "message": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit({"command": args.command, "input_echo": echo, "result": result})
    return 0


if __name__ == "__main__":
    sys.exit(main())
