"""Command-line front end.

Exit codes: 0 ok, 1 a requested verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from .charbox import NoFormulaError, ch_restricted_verma, ch_simple_subgeneric, ch_verma, weight_json
from .jantzen import linkage_check, sum_formula_rhs, verify_shapovalov, verify_sum_formula
from .rootdata import AffineRoot, AffineWeight, FiniteRootSystem, UnknownSeriesError, build_root_system
from .weylcalc import Box, NotCriticalError, down, integral_roots, leq, require_critical

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def _vector(text: str) -> List[Fraction]:
    return [_rational(x) for x in text.split(",")] if text.strip() else []


def load_system(series: str) -> FiniteRootSystem:
    try:
        return build_root_system(series)
    except UnknownSeriesError as e:
        raise UsageError(f"unknown series: {e}") from None


def parse_weight(system: FiniteRootSystem, args) -> AffineWeight:
    finite = _vector(args.weight)
    if len(finite) != system.rank:
        raise UsageError(f"--weight needs {system.rank} coordinates for {system.name}, got {len(finite)}")
    level = _rational(args.level) if args.level is not None else None
    if args.critical:
        crit = Fraction(-system.dual_coxeter)
        if level is not None and level != crit:
            raise UsageError(f"--critical forces level {crit}, which conflicts with --level {level}")
        level = crit
    if level is None:
        level = Fraction(0)
    return system.weight(finite, level=level, ddeg=_rational(args.ddeg))


# -- output -------------------------------------------------------------------------

def _emit(args, payload: dict, tsv_rows: Optional[Sequence[Sequence[object]]] = None) -> None:
    if args.format == "tsv" and tsv_rows is not None:
        for row in tsv_rows:
            print("\t".join(str(x) for x in row))
    else:
        print(json.dumps(payload, sort_keys=True, indent=1))


def _offset_str(nu) -> str:
    return f"{nu.c0};{','.join(map(str, nu.cfin))}"


def difference_str(system: FiniteRootSystem, nu) -> str:
    """``lambda - nu`` with nu split into its finite root part and delta part."""
    gamma = [c - nu.c0 * th for c, th in zip(nu.cfin, system.theta)]
    out = "lambda"
    for i, g in enumerate(gamma, start=1):
        if g:
            mag = "" if abs(g) == 1 else f"{abs(g)}*"
            out += f" {'-' if g > 0 else '+'} {mag}alpha{i}"
    if nu.c0:
        out += f" - {'' if nu.c0 == 1 else str(nu.c0) + '*'}delta"
    return out


def _char_rows(ch) -> List[List[object]]:
    return [["offset", "value"]] + [[_offset_str(k), v] for k, v in ch.coeffs]


# -- commands ---------------------------------------------------------------------

def cmd_roots(args) -> int:
    s = load_system(args.series)
    info = s.summary()
    rows = [[k, json.dumps(v)] for k, v in sorted(info.items())]
    _emit(args, info, rows)
    return EXIT_OK


def _box(args) -> Box:
    if args.dmax < 0 or args.hmax < 0:
        raise UsageError("--dmax and --hmax must be non-negative")
    return Box(args.dmax, args.hmax)


def cmd_sumformula(args) -> int:
    s = load_system(args.series)
    lam = parse_weight(s, args)
    box = _box(args)
    require_critical(s, lam)
    kind = integral_roots(s, lam).kind.value
    if args.verify:
        report = verify_sum_formula(s, lam, box)
        payload = report.to_json()
        payload["kind"] = kind
        payload["linkage"] = linkage_check(s, lam, box).verdict
        rows = [["offset", "lhs", "rhs", "match"]] + [
            [_offset_str(r.offset), r.lhs, r.rhs, r.match] for r in report.rows]
        rows.append(["verdict", report.verdict, "", ""])
        _emit(args, payload, rows)
        return EXIT_OK if report.verdict is True and payload["linkage"] else EXIT_FAIL
    ch = sum_formula_rhs(s, lam, box)
    payload = ch.to_json()
    payload["kind"] = kind
    _emit(args, payload, _char_rows(ch))
    return EXIT_OK


def cmd_char(args) -> int:
    s = load_system(args.series)
    lam = parse_weight(s, args)
    box = _box(args)
    if args.simple:
        ch = ch_simple_subgeneric(s, lam, box)
    elif args.restricted:
        ch = ch_restricted_verma(s, lam, box)
    else:
        ch = ch_verma(s, lam, box)
    _emit(args, ch.to_json(), _char_rows(ch))
    return EXIT_OK


def cmd_down(args) -> int:
    s = load_system(args.series)
    lam = parse_weight(s, args)
    alpha = tuple(int(x) for x in _vector(args.alpha))
    if len(alpha) != s.rank:
        raise UsageError(f"--alpha needs {s.rank} simple-root coordinates")
    if args.k < 0:
        raise UsageError("-k must be non-negative")
    try:
        AffineRoot(alpha, 0)
    except ValueError:
        raise UsageError("--alpha must be a nonzero root") from None
    chain = []
    cur = lam
    for i in range(1, args.k + 1):
        try:
            cur = down(s, alpha, cur)
        except ValueError as e:
            if isinstance(e, NotCriticalError):
                raise
            raise UsageError(str(e)) from None
        nu = leq(s, cur, lam)
        chain.append({"k": i, "offset": nu.to_json(), "weight": weight_json(cur),
                      "difference": difference_str(s, nu)})
    payload = {"lambda": weight_json(lam), "alpha": list(alpha), "chain": chain}
    rows = [["k", "offset", "difference"]] + [
        [e["k"], f"{e['offset']['c0']};{','.join(map(str, e['offset']['cfin']))}", e["difference"]]
        for e in chain]
    _emit(args, payload, rows)
    return EXIT_OK


def cmd_verify_shapovalov(args) -> int:
    s = load_system(args.series)
    lam = parse_weight(s, args)
    if s.datum.series != "A":
        raise UsageError(f"the oracle realizes type A only, not {s.name}")
    report = verify_shapovalov(s, lam, _box(args), args.direction)
    rows = [["eta", "status", "ratio"]] + [
        [_offset_str(r.eta), r.status, "" if r.ratio is None else r.ratio] for r in report.rows]
    rows.append(["verdict", report.verdict, ""])
    _emit(args, report.to_json(), rows)
    return EXIT_OK if report.verdict else EXIT_FAIL


def cmd_selfcheck(args) -> int:
    """Randomized Jacobi and contravariance samples, reproducible through --seed."""
    from .oracle.checks import contravariance_defect, jacobiator
    from .oracle.liealg import LoopAlgebra
    from .oracle.verma import VermaLattice

    s = load_system(args.series)
    if s.datum.series != "A":
        raise UsageError(f"the oracle realizes type A only, not {s.name}")
    rng = random.Random(args.seed)
    alg = LoopAlgebra(s)
    ids = alg.basis_ids(3)
    jacobi_ok = all(not jacobiator(alg, *(rng.choice(ids) for _ in range(3))) for _ in range(args.samples))
    lam = s.weight([Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(s.rank)],
                   level=-s.dual_coxeter)
    v = VermaLattice(s, lam, "rho")
    contra_ok = all(contravariance_defect(v, rng) is None for _ in range(args.samples))
    payload = {"series": s.name, "seed": args.seed, "samples": args.samples,
               "jacobi": jacobi_ok, "contravariance": contra_ok}
    _emit(args, payload, [[k, payload[k]] for k in sorted(payload)])
    return EXIT_OK if jacobi_ok and contra_ok else EXIT_FAIL


# -- parser -----------------------------------------------------------------------

def _weight_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--series", required=True, help="series and rank, e.g. A1, A2, G2")
    p.add_argument("--weight", required=True, help='finite coordinates <lambda, alpha_i^vee>, e.g. "0,1/2"')
    p.add_argument("--critical", action="store_true", help="force the critical level -h^vee")
    p.add_argument("--level", default=None, help="level p/q (default 0 unless --critical)")
    p.add_argument("--ddeg", default="0", help="delta coefficient p/q (default 0)")


def _box_flags(p: argparse.ArgumentParser, dmax: int = 1, hmax: int = 2) -> None:
    p.add_argument("--dmax", type=int, default=dmax, help="largest delta-degree in the box")
    p.add_argument("--hmax", type=int, default=hmax, help="largest finite height in the box")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="affjantzen", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", help="root system summary")
    p.add_argument("series", nargs="?", default=None)
    p.add_argument("--series", dest="series_opt", default=None)
    _common(p)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("sumformula", help="right-hand side of the restricted sum formula")
    _weight_flags(p)
    _box_flags(p)
    p.add_argument("--verify", action="store_true", help="compare against the oracle (type A)")
    _common(p)
    p.set_defaults(func=cmd_sumformula)

    p = sub.add_parser("char", help="truncated characters")
    _weight_flags(p)
    _box_flags(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--restricted", action="store_true", help="restricted Verma character")
    g.add_argument("--simple", action="store_true", help="simple character (generic or subgeneric)")
    _common(p)
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("down", help="iterate the down operator")
    _weight_flags(p)
    p.add_argument("--alpha", required=True, help='positive root in simple coordinates, e.g. "1,1"')
    p.add_argument("-k", type=int, default=1, help="number of steps")
    _common(p)
    p.set_defaults(func=cmd_down)

    p = sub.add_parser("verify-shapovalov", help="oracle determinants against the product formula")
    _weight_flags(p)
    _box_flags(p)
    p.add_argument("--direction", choices=("rho", "rhobar"), default="rho")
    _common(p)
    p.set_defaults(func=cmd_verify_shapovalov)

    p = sub.add_parser("selfcheck", help="randomized Jacobi and contravariance samples")
    p.add_argument("--series", required=True)
    p.add_argument("--samples", type=int, default=20)
    _common(p)
    p.set_defaults(func=cmd_selfcheck)
    return parser


_VALUE_FLAGS = ("--weight", "--level", "--ddeg", "--alpha")


def _join_values(argv: Sequence[str]) -> List[str]:
    """``--weight -1/2`` -> ``--weight=-1/2`` so negative rationals are not read as flags."""
    out: List[str] = []
    it = iter(argv)
    for a in it:
        if a in _VALUE_FLAGS:
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_values(sys.argv[1:] if argv is None else argv))
    if args.command == "roots":
        args.series = args.series or args.series_opt
        if not args.series:
            parser.error("roots needs a series")
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except NotCriticalError as e:
        print(f"error: not critical: {e}", file=sys.stderr)
        return EXIT_USAGE
    except NoFormulaError as e:
        msg = str(e)
        print(f"error: {msg if msg.startswith('no formula in scope') else 'no formula in scope: ' + msg}",
              file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
