"""Command-line entry point: ``gaussromanov <group> <action> [options]``.

Exit status is 0 on success, 1 when arguments fail validation and 2 when a
verification fails.  Output depends only on the arguments and the cache.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import analytic_constants as ac
from . import covering_erdos as ce
from . import representation_density as rd
from . import romanov_series as rs
from .cyclotomic_orders import DEFAULT_EFFORT, CyclotomicFactorizer, FactorCache
from .gaussian_primes import count_primes_in_disk, mitsui_ratio, prime_record, primes_in_disk

CACHE_ENV = "GAUSSROMANOV_CACHE"

# tail inputs used for the x0 = 200 assembly
TAIL_DEFAULTS = {"E": 3.33018, "a": 3.997993, "b": -7.503313, "c": 3.5206, "scale": 0.999749}


class VerificationFailed(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _exact(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _factorizer(args) -> CyclotomicFactorizer:
    path = args.cache or os.environ.get(CACHE_ENV) or None
    return CyclotomicFactorizer(effort=args.effort, cache=FactorCache(path))


# handlers return the text to print


def cmd_primes(args) -> str:
    if args.action == "count":
        n = count_primes_in_disk(args.x)
        if args.format == "json":
            return _json({"x": args.x, "count": n, "mitsui_ratio": mitsui_ratio(args.x) if args.x >= 2 else None})
        return f"{n}\n"
    rows = []
    for z in primes_in_disk(args.x):
        rows.append([z.re, z.im, z.norm(), prime_record(z).degree])
    if args.format == "json":
        return _json([{"re": a, "im": b, "norm": str(n), "degree": d} for a, b, n, d in rows])
    return _csv([["re", "im", "norm", "degree"], *rows])


def cmd_orders(args) -> str:
    factorizer = _factorizer(args)
    factorizer.prefetch(range(1, args.emax + 1), workers=args.threads)
    records, complete = factorizer.order_records(args.emax)
    if args.format == "json":
        return _json(
            {
                "emax": args.emax,
                "complete": complete,
                "primes": [
                    {"prime": str(r.prime.generator), "norm": str(r.prime.norm), "degree": r.prime.degree, "order": r.order}
                    for r in records
                ],
            }
        )
    rows = [[r.prime.generator.re, r.prime.generator.im, r.prime.norm, r.prime.degree, r.order] for r in records]
    return _csv([["re", "im", "norm", "degree", "order"], *rows])


def cmd_romanov(args) -> str:
    if args.action == "tail":
        value = rs.tail_bound_assembly(args.x0, args.E, args.a, args.b, args.c, args.scale)
        if args.format == "json":
            return _json({"x0": args.x0, "E_at_x0": args.E, "a": args.a, "b": args.b, "c": args.c, "scale": args.scale, "tail": value})
        return f"{value:.6f}\n"
    factorizer = _factorizer(args)
    factorizer.prefetch(range(1, args.emax + 1), workers=args.threads)
    ledger = rs.build_ledger(args.emax, factorizer)
    if args.format == "json":
        return _json(
            {
                "emax": args.emax,
                "complete": ledger.complete,
                "entries": [
                    {"e": x.e, "F": _exact(x.F), "G": _exact(x.G), "partial_S": _exact(x.S), "E": _exact(x.E), "complete": x.complete}
                    for x in ledger.entries
                ],
            }
        )
    return ledger.to_csv()


def cmd_density(args) -> str:
    rep = rd.density_scan(args.x)
    out = rep.as_json()
    out["cauchy_schwarz_holds"] = rep.cauchy_schwarz_holds
    if not rep.cauchy_schwarz_holds:
        raise VerificationFailed(_json(out))
    return _json(out)


def cmd_sieve(args) -> str:
    samples = rd.sieve_bound_check(args.x)
    if args.format == "json":
        text = _json(
            {
                "x": args.x,
                "kappa": ac.kappa_qi(),
                "samples": [{"zeta": str(s.zeta), "pairs": s.pairs, "ratio": s.ratio, "within": s.within} for s in samples],
            }
        )
    else:
        text = _csv([["zeta", "pairs", "ratio", "within"], *([str(s.zeta), s.pairs, f"{s.ratio:.6f}", str(s.within).lower()] for s in samples)])
    if not all(s.within for s in samples):
        raise VerificationFailed(text)
    return text


def cmd_covering(args) -> str:
    if args.action == "verify":
        ok, witness = ce.verify_covering(ce.ERDOS_SYSTEM)
        if args.format == "json":
            text = _json({"covering": ok, "lcm": ce.ERDOS_SYSTEM.lcm, "uncovered": witness})
        else:
            text = f"covering: {str(ok).lower()}, lcm={ce.ERDOS_SYSTEM.lcm}\n"
        if not ok:
            raise VerificationFailed(text)
        return text
    try:
        obs = ce.build_obstruction()
        divisible = ce.obstruction_divisibility_check(obs, max(48, args.kcap or 0))
        found = ce.scan_obstruction(obs, args.radius, args.kcap)
    except ce.ObstructionError as exc:
        raise VerificationFailed(f"obstruction failed: {exc}\n") from exc
    out = obs.as_json()
    out["divisibility_check"] = divisible
    out["scan"] = {
        "radius": args.radius,
        "k_cap": args.kcap or ce.default_k_cap(obs, args.radius),
        "exceptions": [{"zeta": str(e.zeta), "k": e.k, "prime": str(e.prime)} for e in found],
    }
    out["note"] = (
        f"the printed modulus {ce.PRINTED_MODULUS} is not an associate of the product of the listed primes; "
        f"recomputed modulus {obs.M} is used"
    )
    text = _json(out)
    if not divisible:
        raise VerificationFailed(text)
    return text


def cmd_constants(args) -> str:
    report = ac.assemble_density_bound(args.head, args.tail)
    certified = {
        "L_chi1_2": ac.l_chi1_2().as_dict(),
        "catalan": ac.catalan_constant().as_dict(),
        "l_product_inverse": ac.l_product_bound().as_dict(),
    }
    return _json({"certified": certified, **report.as_dict()})


def cmd_verify(args) -> str:
    from .verify import run_all

    results = run_all()
    text = "".join(r.line() + "\n" for r in results)
    passed = sum(r.passed for r in results)
    text += f"{passed}/{len(results)} criteria passed\n"
    if passed != len(results):
        raise VerificationFailed(text)
    return text


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("csv", "json", "text"), default=None, help="output format")
    common.add_argument("--cache", default=None, help=f"factor cache file (default: ${CACHE_ENV})")
    common.add_argument("--effort", type=_positive_int, default=DEFAULT_EFFORT, help="factoring budget in operations")
    common.add_argument("--threads", type=_positive_int, default=1, help="worker processes for factoring")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized property tests")

    parser = _Parser(prog="gaussromanov", description="Romanov-type computations over the Gaussian integers.")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def action(group, name, handler, **kw):
        sub = group.add_parser(name, parents=[common], **kw)
        sub.set_defaults(handler=handler, action=name)
        return sub

    primes = groups.add_parser("primes", help="Gaussian primes in a disk").add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name in ("list", "count"):
        action(primes, name, cmd_primes).add_argument("--x", type=_positive_float, default=10.0, help="house bound (default 10)")

    orders = groups.add_parser("orders", help="orders of 1+i").add_subparsers(dest="action", required=True, parser_class=_Parser)
    action(orders, "table", cmd_orders).add_argument("--emax", type=_positive_int, default=24, help="largest order (default 24)")

    romanov = groups.add_parser("romanov", help="exact series ledger").add_subparsers(dest="action", required=True, parser_class=_Parser)
    action(romanov, "sum", cmd_romanov).add_argument("--emax", type=_positive_int, default=24, help="largest exponent (default 24)")
    tail = action(romanov, "tail", cmd_romanov)
    tail.add_argument("--x0", type=_positive_float, default=200.0, help="cut point (default 200)")
    for key, value in TAIL_DEFAULTS.items():
        tail.add_argument(f"--{key}", type=float, default=value, help=f"default {value}")

    density = groups.add_parser("density", help="representation density").add_subparsers(dest="action", required=True, parser_class=_Parser)
    action(density, "scan", cmd_density).add_argument("--x", type=_positive_float, default=500.0, help="house bound (default 500)")

    sieve = groups.add_parser("sieve", help="prime pair counts against kappa").add_subparsers(dest="action", required=True, parser_class=_Parser)
    action(sieve, "check", cmd_sieve).add_argument("--x", type=_positive_float, default=500.0, help="house bound (default 500)")

    covering = groups.add_parser("covering", help="covering system and obstruction class").add_subparsers(dest="action", required=True, parser_class=_Parser)
    action(covering, "verify", cmd_covering)
    obs = action(covering, "obstruction", cmd_covering)
    obs.add_argument("--radius", type=_positive_float, default=2000.0, help="scan radius in house (default 2000)")
    obs.add_argument("--kcap", type=_positive_int, default=None, help="largest exponent scanned (default from radius)")

    constants = groups.add_parser("constants", help="analytic constants").add_subparsers(dest="action", required=True, parser_class=_Parser)
    report = action(constants, "report", cmd_constants)
    report.add_argument("--head", type=float, default=ac.REFERENCE_HEAD, help="head sum bound")
    report.add_argument("--tail", type=float, default=ac.REFERENCE_TAIL, help="tail sum bound")

    verify = groups.add_parser("verify", help="acceptance checks").add_subparsers(dest="action", required=True, parser_class=_Parser)
    action(verify, "all", cmd_verify)
    return parser


_DEFAULT_FORMAT = {"primes": "csv", "orders": "csv", "romanov": "csv", "sieve": "csv", "covering": "text"}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = _DEFAULT_FORMAT.get(args.group, "json")
    try:
        text = args.handler(args)
    except VerificationFailed as exc:
        sys.stdout.write(str(exc))
        return 2
    except (ValueError, rs.IncompleteFactorization) as exc:
        print(f"gaussromanov: error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
