"""Acceptance criteria as runnable checks.

Each check returns (passed, detail).  ``run`` times it against its budget;
exceeding the budget is a failure.  Oracles here are deliberately
independent of the fast paths they check: brute enumeration, adaptive
quadrature, subset sums.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath

from . import analytic_constants as ac
from . import covering_erdos as ce
from . import representation_density as rd
from . import romanov_series as rs
from .cyclotomic_orders import CyclotomicFactorizer, default_factorizer, ord_one_plus_i
from .gaussian_core import ONE_PLUS_I, GInt, gpow, norm_power_minus_one_closed_form
from .gaussian_primes import is_prime_element, mitsui_ratio, nth_odd_prime, prime_ideals_up_to, primes_in_disk

Outcome = tuple[bool, str]


@dataclass(frozen=True)
class Criterion:
    number: int
    name: str
    budget: float  # seconds
    check: Callable[[], Outcome]


@dataclass(frozen=True)
class Result:
    criterion: Criterion
    passed: bool
    detail: str
    seconds: float

    def line(self, timing: bool = False) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" [{self.seconds:.3f}s]" if timing else ""
        return f"{status} {self.criterion.number:2d} {self.criterion.name}: {self.detail}{extra}"


def covering_system() -> Outcome:
    ok, witness = ce.verify_covering(ce.ERDOS_SYSTEM)
    ok2, _ = ce.verify_covering_by_refinement(ce.ERDOS_SYSTEM)
    return ok and ok2 and ce.ERDOS_SYSTEM.lcm == 24, f"covering={ok} refinement={ok2} lcm={ce.ERDOS_SYSTEM.lcm}"


ORDER_TABLE = {GInt(2, 1): 2, GInt(2, 3): 3, GInt(1, 2): 4, GInt(3, 0): 8, GInt(3, 2): 12, GInt(7, 0): 24}


def order_table() -> Outcome:
    got = {p: ord_one_plus_i(p) for p in ORDER_TABLE}
    bad = {str(p): o for p, o in got.items() if o != ORDER_TABLE[p]}
    return not bad, "all six orders match" if not bad else f"mismatches {bad}"


def romanov_oracle(factorizer: CyclotomicFactorizer | None = None) -> Outcome:
    factorizer = factorizer or default_factorizer()
    ledger = rs.build_ledger(24, factorizer)
    if not ledger.complete:
        return False, "factorizations up to 24 incomplete"
    bad = [e for e in range(1, 25) if rs.brute_force_G(e, factorizer) != ledger[e].G]
    s4 = ledger[4].S
    ok = not bad and s4 == Fraction(1156, 975)
    return ok, f"G matches subset enumeration for e<=24: {not bad}; S(4)={s4}"


def romanov_head(emax: int = 72, factorizer: CyclotomicFactorizer | None = None) -> Outcome:
    ledger = rs.build_ledger(emax, factorizer or default_factorizer())
    complete = [x for x in ledger.entries if x.complete]
    below = all(x.S < Fraction(rs.HEAD_BOUND) for x in complete)
    monotone = all(a.S <= b.S for a, b in zip(ledger.entries, ledger.entries[1:]))
    last = complete[-1]
    return (
        below and monotone and len(complete) == emax,
        f"{len(complete)}/{emax} complete; S({last.e})={float(last.S):.6f} < {rs.HEAD_BOUND}: {below}; monotone: {monotone}",
    )


def tail_arithmetic() -> Outcome:
    v = rs.tail_bound_assembly(200, 3.33018, 3.997993, -7.503313, 3.5206, 0.999749)
    return 0.5773 <= v <= 0.5777, f"tail={v:.6f}"


def odd_prime_209() -> Outcome:
    p = nth_odd_prime(209)
    return p == 1291, f"p_209={p}"


def _brute_D(x: int) -> int:
    """Trial-divide each (1+i)^k - 1 by every prime ideal of small enough norm."""
    seen = set()
    for k in range(-(-x // 2), x + 1):
        z = gpow(ONE_PLUS_I, k) - 1
        n = z.norm()
        for rec in prime_ideals_up_to(n):
            g = rec.generator
            q = z * g.conjugate()
            if q.re % rec.norm == 0 and q.im % rec.norm == 0:
                seen.add(g)
    return len(seen)


def prime_factor_count_D(factorizer: CyclotomicFactorizer | None = None) -> Outcome:
    factorizer = factorizer or default_factorizer()
    got = {x: rs.distinct_prime_factor_count_D(x, factorizer) for x in (4, 8)}
    brute = {x: _brute_D(x) for x in (4, 8)}
    ok = got[4] == (3, True) and got[8] == (6, True) and brute == {4: 3, 8: 6}
    return ok, f"D(4)={got[4][0]} D(8)={got[8][0]}; brute force {brute[4]}, {brute[8]}"


def l_value_bound() -> Outcome:
    c = ac.l_product_bound()
    ok = c.certainly_at_least(0.88492) and abs(c.value - 0.884925) <= 1e-5
    return ok, f"{c.value:.9f} +/- {c.radius:.1e}; lower end >= 0.88492: {c.certainly_at_least(0.88492)}"


def constant_assembly() -> Outcome:
    r = ac.assemble_density_bound(1.27095, 0.57749)
    return abs(r.final_bound - 0.00110183) <= 2e-7, f"final_bound={r.final_bound:.10f}"


def prime_counts() -> Outcome:
    fast = sum(1 for _ in primes_in_disk(10))
    brute_primes = sum(1 for a in range(-10, 11) for b in range(-10, 11) if a * a + b * b <= 100 and is_prime_element(GInt(a, b)))
    brute_lattice = sum(1 for a in range(-10, 11) for b in range(-10, 11) if a * a + b * b <= 100)
    lat = ac.lattice_count(10)
    m = mitsui_ratio(3000)
    ok = fast == brute_primes == 100 and lat == brute_lattice == 317 and 0.8 <= m <= 1.2
    return ok, f"primes={fast} (brute {brute_primes}); lattice={lat} (brute {brute_lattice}); mitsui(3000)={m:.4f}"


def density_scan() -> Outcome:
    rep = rd.density_scan(500)
    cs = rep.cauchy_schwarz_holds
    in_range = ac.REFERENCE_FINAL_BOUND <= rep.eta_density <= 0.55
    fast64 = rd.density_scan(64)
    oracle64, values = rd.density_scan_oracle(64)
    grid, R = rd.representation_grid(rd.ScanParams(64))
    same = (fast64.sum_r, fast64.sum_r2, fast64.sum_eta) == (oracle64.sum_r, oracle64.sum_r2, oracle64.sum_eta)
    pointwise = all(int(grid[a + R, b + R]) == v for (a, b), v in values.items()) and int(grid.sum()) == sum(values.values())
    ok = cs and in_range and same and pointwise
    return ok, f"x=500: C-S {cs}, eta_density={rep.eta_density:.4f}; x=64 forward == oracle: {same and pointwise}"


def sieve_corridor() -> Outcome:
    kappa = 416.27
    samples = rd.sieve_bound_check(500, kappa=kappa)
    spot = samples[0]
    agree = rd.prime_pair_count(spot.zeta, 500, True) == spot.pairs
    worst = max(samples, key=lambda s: s.ratio)
    ok = agree and all(s.within for s in samples)
    return ok, f"{len(samples)} differences, max ratio {worst.ratio:.3f} at {worst.zeta} (kappa {kappa})"


def obstruction() -> Outcome:
    try:
        obs = ce.build_obstruction()
        divisible = ce.obstruction_divisibility_check(obs, 48)
        found = ce.scan_obstruction(obs, 2000)
    except ce.ObstructionError as exc:
        return False, f"construction failed: {exc}"
    target = GInt(1365, 1365)
    associate = obs.M == target
    ok = divisible and associate and all(obs.checks.values())
    return ok, (
        f"x0={obs.x0} M={obs.M}; divisibility to 48: {divisible}; scan<=2000: {len(found)} exceptional representations; "
        f"printed modulus {ce.PRINTED_MODULUS} (norm {ce.PRINTED_MODULUS.norm()}) differs from recomputed {obs.M} (norm {obs.M.norm()})"
    )


def geometry() -> Outcome:
    exact = 2 * math.pi / 3 - math.sqrt(3) / 2
    area = ac.circle_intersection_area(1, 1)
    with mpmath.workdps(30):
        quad = float(4 * mpmath.quad(lambda t: mpmath.sqrt(1 - t * t), [0.5, 1]))
    first = abs(area - exact) <= 1e-9 and abs(area - quad) <= 1e-9
    gaps = {x: math.pi * x * x - ac.circle_intersection_area(x, math.sqrt(x)) for x in (100, 400, 1600)}
    second = all(g <= 2 * x**1.5 for x, g in gaps.items())
    return first and second, f"area(1,1)={area:.12f} quad={quad:.12f}; lens deficits within 2x^1.5: {second}"


def norm_house() -> Outcome:
    bound = all((gpow(ONE_PLUS_I, k) - 1).norm() <= 12 * 2**k for k in range(1, 65))
    closed = all((gpow(ONE_PLUS_I, k) - 1).norm() == norm_power_minus_one_closed_form(k) for k in range(1, 65))
    return bound and closed, f"N((1+i)^k-1) <= 12*2^k: {bound}; cosine closed form exact: {closed}"


CRITERIA: tuple[Criterion, ...] = (
    Criterion(1, "covering system", 0.001, covering_system),
    Criterion(2, "order table", 1, order_table),
    Criterion(3, "Romanov series exact oracle", 10, romanov_oracle),
    Criterion(4, "Romanov head bound", 600, romanov_head),
    Criterion(5, "tail arithmetic", 0.001, tail_arithmetic),
    Criterion(6, "209th odd prime", 0.01, odd_prime_209),
    Criterion(7, "prime-factor count of D", 1, prime_factor_count_D),
    Criterion(8, "L-value bound", 1, l_value_bound),
    Criterion(9, "constant assembly", 0.001, constant_assembly),
    Criterion(10, "prime counts", 30, prime_counts),
    Criterion(11, "density scan", 120, density_scan),
    Criterion(12, "sieve corridor", 300, sieve_corridor),
    Criterion(13, "obstruction", 300, obstruction),
    Criterion(14, "geometry", 10, geometry),
    Criterion(15, "norm-house inequality", 1, norm_house),
)


def run(criterion: Criterion) -> Result:
    start = time.perf_counter()
    try:
        passed, detail = criterion.check()
    except Exception as exc:  # a crash is a failure, reported like one
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    if passed and elapsed > criterion.budget:
        passed, detail = False, f"{detail} (took {elapsed:.2f}s, budget {criterion.budget}s)"
    return Result(criterion, passed, detail, elapsed)


def run_all() -> list[Result]:
    return [run(c) for c in CRITERIA]
