"""Command-line interface: ``aomoto <command> <arrangement> [options]``.

The arrangement argument is a JSON file or the name of a built-in instance
(E1, E3, E4, FIG1).  Every command prints a JSON report on standard output.
Exit status: 0 on success, 1 when a check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any

from .arrangement import ArrangementError, ResourceError, betti_euler, intersection_poset
from .chamber_complex import (CertificateRefused, ChamberComplex, LocalSystemData, cdo_local_hypothesis,
                              chamber_certificate)
from .chambers import DenseEdgeMismatch, enumerate_chambers, infinity_span
from .corpus import BUILTIN_ROWS, DEFAULT_SEED, builtin, builtin_corpus, full_corpus, random_corpus
from .flags import FlagError, opposite_signs, verify_flag
from .io import ParsedInput, SchemaError, arrangement_to_obj, coerce_values, dumps, parse_arrangement_file, split_values
from .orlik_solomon import WeightVector, aomoto_cohomology, check_cdo_units, os_algebra
from .rings import RingError, RingSpec, parse_ring_spec
from .verify import VerificationReport, VerifyOptions, run_verify_suite

COMMANDS = ("poset", "chambers", "strata", "dense-infinity", "aomoto", "chamber-complex", "local",
            "certificate", "verify")

CORPORA = ("builtin", "random", "full")


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    """Raised with a report when the command's check does not hold."""

    def __init__(self, report: dict):
        super().__init__("check failed")
        self.report = report


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="aomoto", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", nargs="?", help="arrangement JSON file or built-in name")
    p.add_argument("--ring", help="Z, Q, Z/<m>, F_<p> or Q(zeta_<n>)")
    p.add_argument("--lambda", dest="lam", help="weights, comma separated or a JSON list")
    p.add_argument("--q-sqrt", dest="q_sqrt", help="half-monodromies q_i^(1/2), comma separated or a JSON list")
    p.add_argument("--seed", type=int, help="seed for flags and random choices (env AOMOTO_SEED)")
    p.add_argument("--level", type=int, help="restrict block reports to one level k")
    p.add_argument("--dim-threshold", type=int, default=0, metavar="p",
                   help="only require units on dense edges at infinity of dim >= p")
    p.add_argument("--corpus", choices=CORPORA, help="verify a corpus instead of a single input")
    p.add_argument("--json", action="store_true", help="emit JSON (the default output format)")
    p.add_argument("--timings", action="store_true", help="include wall-clock durations in verify reports")
    return p


# -- input handling ------------------------------------------------------------


def load_input(name: str) -> ParsedInput:
    if name.upper() in BUILTIN_ROWS and not Path(name).exists():
        return ParsedInput(builtin(name))
    if not Path(name).exists():
        raise UsageError(f"{name}: no such file or built-in arrangement")
    return parse_arrangement_file(name)


def resolve_seed(args, parsed: ParsedInput | None) -> int:
    if args.seed is not None:
        return args.seed
    if parsed is not None and parsed.seed is not None:
        return parsed.seed
    env = os.environ.get("AOMOTO_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"AOMOTO_SEED must be an integer, got {env!r}") from None
    return 0


def resolve_ring(args, parsed: ParsedInput | None) -> RingSpec | None:
    if args.ring is not None:
        try:
            return parse_ring_spec(args.ring)
        except RingError as e:
            raise UsageError(str(e)) from None
    return parsed.ring if parsed is not None else None


def resolve_values(args, parsed: ParsedInput | None, ring: RingSpec | None, n: int, key: str) -> list | None:
    text = getattr(args, key)
    flag = "--lambda" if key == "lam" else "--q-sqrt"
    if text is None:
        vals = getattr(parsed, key) if parsed is not None else None
        if vals is not None and args.ring is not None:
            raise UsageError(f"{flag} must be given again when --ring overrides the file's ring")
        return vals
    if ring is None:
        raise UsageError(f"{flag} requires --ring")
    vals = coerce_values(ring, split_values(text), flag)
    if len(vals) != n:
        raise UsageError(f"{flag}: expected {n} values, got {len(vals)}")
    return vals


def _frac(x: Fraction) -> str:
    return str(x)


def _point(v) -> list[str]:
    return [_frac(x) for x in v]


def _flat(X) -> dict:
    return {"support": X.label(), "dim": X.dim}


# -- commands --------------------------------------------------------------------


def cmd_poset(ctx) -> dict:
    A = ctx["A"]
    affine, projective = intersection_poset(A)
    b, chi = betti_euler(A)
    return {
        "arrangement": arrangement_to_obj(A),
        "affine": [dict(_flat(X), mu=A.mobius[X.support], point=_point(X.witness[0])) for X in affine],
        "projective": [_flat(X) for X in projective],
        "betti": list(b),
        "chi": chi,
    }


def cmd_chambers(ctx) -> dict:
    A = ctx["A"]
    chambers = enumerate_chambers(A)
    out = []
    for C in chambers:
        X = infinity_span(A, C)
        row = {"signs": C.label(), "bounded": C.bounded, "point": _point(C.interior_point),
               "recession": [_point(v) for v in C.recession_generators]}
        if not C.bounded:
            row["x"] = _flat(X)
            row["opposite"] = "".join("+" if s > 0 else "-" for s in opposite_signs(A, C))
        out.append(row)
    return {"count": len(chambers), "bounded": sum(C.bounded for C in chambers), "chambers": out}


def cmd_strata(ctx) -> dict:
    cx = ctx["complex"]()
    report = verify_flag(cx.A, cx.flag)
    out = {"flag": cx.flag.to_json(), "flag_check": report.to_json(), "strata": cx.strat.to_json()}
    if not report.ok:
        raise CheckFailed(out)
    return out


def cmd_dense_infinity(ctx) -> dict:
    from .chambers import dense_edges

    A = ctx["A"]
    try:
        flats = dense_edges(A, "at_infinity")
    except DenseEdgeMismatch as e:
        raise CheckFailed({"error": str(e)}) from None
    return {"dense_edges_at_infinity": [_flat(X) for X in flats]}


def _weights(ctx) -> WeightVector:
    if ctx["ring"] is None or ctx["lam"] is None:
        raise UsageError("this command needs --ring and --lambda (or 'ring' and 'lambda' in the input file)")
    return WeightVector(ctx["ring"], tuple(ctx["lam"]))


def _groups(groups) -> dict:
    return {"dims": [g.free_rank for g in groups], "torsion": [list(g.torsion_invariants) for g in groups],
            "groups": [g.to_json() for g in groups]}


def cmd_aomoto(ctx) -> dict:
    A = ctx["A"]
    w = _weights(ctx)
    hyp = check_cdo_units(A, w, ctx["dim_threshold"])
    out: dict[str, Any] = {"weights": w.to_json(), "nbc_counts": [len(B) for B in os_algebra(A).nbc],
                           "hypothesis": hyp.to_json()}
    if w.ring.is_field or w.ring.kind == "integers":
        out["mode"] = "full"
        out.update(_groups(aomoto_cohomology(A, w)))
        return out
    # non-field quotient rings: only the chamber certificate route applies
    out["mode"] = "certificate"
    cert = chamber_certificate(ctx["complex"](), w)
    if not cert.ok:
        out["refusal"] = cert.refusal
        raise CheckFailed(out)
    out.update(_groups(cert.groups))
    return out


def cmd_chamber_complex(ctx) -> dict:
    cx = ctx["complex"]()
    out: dict[str, Any] = {"flag": cx.flag.to_json(), "dims": cx.dims, "degrees": cx.degrees.to_json()}
    if ctx["lam"] is not None:
        w = _weights(ctx)
        out["weights"] = w.to_json()
        out["cohomology"] = _groups(cx.cohomology(w))
    return out


def cmd_local(ctx) -> dict:
    if ctx["ring"] is None or ctx["q_sqrt"] is None:
        raise UsageError("local needs --ring and --q-sqrt (or 'ring' and 'q_sqrt' in the input file)")
    try:
        ls = LocalSystemData(ctx["ring"], tuple(ctx["q_sqrt"]))
    except ValueError as e:
        raise UsageError(str(e)) from None
    cx = ctx["complex"]()
    ok, bad = cdo_local_hypothesis(cx.A, ls)
    b, chi = betti_euler(cx.A)
    out = {"local_system": ls.to_json(),
           "hypothesis": {"ok": ok, "violators": [_flat(X) for X, _ in bad]}}
    out.update(_groups(cx.cohomology(ls)))
    if ok and out["dims"] != [0] * cx.A.dim + [abs(chi)]:
        raise CheckFailed(out)
    return out


def cmd_certificate(ctx) -> dict:
    cx = ctx["complex"]()
    w = _weights(ctx)
    level = ctx["level"]
    if level is not None:
        if not 0 <= level < cx.A.dim:
            raise UsageError(f"--level must lie in 0..{cx.A.dim - 1}")
        block = cx.restricted_block(w, level)
        out = block.to_json()
        if not (block.triangular and block.det_is_unit):
            raise CheckFailed(out)
        return out
    cert = chamber_certificate(cx, w)
    out = cert.to_json()
    out["dims"] = [g.free_rank for g in cert.groups]
    if not cert.ok:
        raise CheckFailed(out)
    return out


def _verify_options(ctx) -> VerifyOptions:
    return VerifyOptions(seed=ctx["seed"], ring=ctx["ring"], lam=ctx["lam"], q_sqrt=ctx["q_sqrt"],
                         dim_threshold=ctx["dim_threshold"])


def run_corpus(which: str, options: VerifyOptions) -> list[tuple[str, VerificationReport]]:
    if which == "builtin":
        corpus = builtin_corpus()
    elif which == "random":
        corpus = random_corpus(DEFAULT_SEED)
    else:
        corpus = full_corpus(DEFAULT_SEED)
    return [(name, run_verify_suite(A, options, name)) for name, A in corpus]


HANDLERS = {
    "poset": cmd_poset,
    "chambers": cmd_chambers,
    "strata": cmd_strata,
    "dense-infinity": cmd_dense_infinity,
    "aomoto": cmd_aomoto,
    "chamber-complex": cmd_chamber_complex,
    "local": cmd_local,
    "certificate": cmd_certificate,
}


def run(args) -> tuple[int, dict]:
    if args.command == "verify" and args.corpus is not None:
        if args.input is not None:
            raise UsageError("give either an input or --corpus, not both")
        if args.lam is not None or args.q_sqrt is not None:
            raise UsageError("--lambda and --q-sqrt apply to a single arrangement, not a corpus")
        seed = resolve_seed(args, None)
        opts = VerifyOptions(seed=seed, dim_threshold=args.dim_threshold)
        t0 = time.perf_counter()
        reports = run_corpus(args.corpus, opts)
        out = {"corpus": args.corpus, "seed": seed, "ok": all(r.ok for _, r in reports),
               "instances": [r.to_json(args.timings) for _, r in reports]}
        if args.timings:
            out["seconds"] = round(time.perf_counter() - t0, 3)
        return (0 if out["ok"] else 1), out
    if args.input is None:
        raise UsageError(f"{args.command} needs an arrangement file or built-in name")
    parsed = load_input(args.input)
    A = parsed.arrangement
    ring = resolve_ring(args, parsed)
    ctx: dict[str, Any] = {
        "A": A,
        "ring": ring,
        "lam": resolve_values(args, parsed, ring, A.n, "lam"),
        "q_sqrt": resolve_values(args, parsed, ring, A.n, "q_sqrt"),
        "seed": resolve_seed(args, parsed),
        "level": args.level,
        "dim_threshold": args.dim_threshold,
    }
    cache: dict[str, ChamberComplex] = {}

    def complex_():
        if "cx" not in cache:
            cache["cx"] = ChamberComplex(A, seed=ctx["seed"])
        return cache["cx"]

    ctx["complex"] = complex_
    if args.command == "verify":
        report = run_verify_suite(A, _verify_options(ctx), args.input)
        return (0 if report.ok else 1), report.to_json(args.timings)
    try:
        return 0, HANDLERS[args.command](ctx)
    except CheckFailed as e:
        return 1, e.report


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, out = run(args)
    except (UsageError, SchemaError, RingError, ArrangementError) as e:
        print(f"aomoto: error: {e}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    except (FlagError, ResourceError, CertificateRefused) as e:
        print(f"aomoto: {e}", file=sys.stderr)
        return 1
    sys.stdout.write(dumps(out) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
