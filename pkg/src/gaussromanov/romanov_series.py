"""Exact evaluation of the Romanov series over squarefree ideals of Z[i].

For each exponent e two exact rationals are tracked:

    F(e) = prod over primes p with ord(p) | e of (1 + 1/N(p))
         = sum of 1/N(a) over squarefree a coprime to (1+i) with ord(a) | e
    G(e) = sum over d | e of mobius(e/d) F(d)
         = sum of 1/N(a) over squarefree a with ord(a) == e exactly

The unit ideal has order 1 and norm 1, so G(1) == 1.  When a factorization
is incomplete, F and G are computed over the known primes only; every omitted
ideal carries positive mass, so the results are lower bounds and are flagged.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .cyclotomic_orders import CyclotomicFactorizer, default_factorizer, divisors, mobius, ord_one_plus_i
from .gaussian_core import GInt
from .gaussian_primes import PrimeRecord, nth_odd_prime, primes_up_to

__all__ = [
    "HEAD_BOUND",
    "IncompleteFactorization",
    "LedgerEntry",
    "SumLedger",
    "build_ledger",
    "F_of",
    "G_of",
    "brute_force_G",
    "romanov_partial_sum",
    "E_partial",
    "distinct_prime_factor_count_D",
    "nth_odd_prime",
    "tail_bound_assembly",
    "odd_prime_square_product",
    "mertens_odd_product_check",
]

HEAD_BOUND = 1.27095
CHEN_SUN_MERTENS = 0.922913686


class IncompleteFactorization(ArithmeticError):
    pass


@dataclass(frozen=True)
class LedgerEntry:
    e: int
    F: Fraction
    G: Fraction
    S: Fraction  # sum_{k <= e} G(k)/k
    E: Fraction  # sum_{k <= e} G(k)
    complete: bool


@dataclass
class SumLedger:
    entries: list[LedgerEntry] = field(default_factory=list)

    def __getitem__(self, e: int) -> LedgerEntry:
        return self.entries[e - 1]

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def emax(self) -> int:
        return len(self.entries)

    @property
    def complete(self) -> bool:
        return all(x.complete for x in self.entries)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["e", "F_num", "F_den", "G_num", "G_den", "partial_S_num", "partial_S_den", "complete"])
        for x in self.entries:
            w.writerow(
                [
                    x.e,
                    x.F.numerator,
                    x.F.denominator,
                    x.G.numerator,
                    x.G.denominator,
                    x.S.numerator,
                    x.S.denominator,
                    "true" if x.complete else "false",
                ]
            )
        return buf.getvalue()


def _local_factors(emax: int, factorizer: CyclotomicFactorizer) -> tuple[list[Fraction], list[bool]]:
    """P(d) = prod over primes of exact order d of (1 + 1/N(p)), for d <= emax."""
    factors = [Fraction(1)] * (emax + 1)
    flags = [True] * (emax + 1)
    for d in range(1, emax + 1):
        primes, ok = factorizer.primes_of_order(d)
        prod = Fraction(1)
        for p in primes:
            prod *= Fraction(p.norm + 1, p.norm)
        factors[d] = prod
        flags[d] = ok
    return factors, flags


def build_ledger(emax: int, factorizer: CyclotomicFactorizer | None = None) -> SumLedger:
    factorizer = factorizer or default_factorizer()
    local, flags = _local_factors(emax, factorizer)
    F = [Fraction(0)] * (emax + 1)
    ledger = SumLedger()
    S = Fraction(0)
    E = Fraction(0)
    for e in range(1, emax + 1):
        divs = divisors(e)
        F[e] = math.prod((local[d] for d in divs), start=Fraction(1))
        G = sum((mobius(e // d) * F[d] for d in divs), start=Fraction(0))
        S += G / e
        E += G
        ledger.entries.append(LedgerEntry(e, F[e], G, S, E, all(flags[d] for d in divs)))
    return ledger


def _entry(e: int, exact: bool, factorizer: CyclotomicFactorizer | None) -> LedgerEntry:
    if e < 1:
        raise ValueError("exponent must be >= 1")
    entry = build_ledger(e, factorizer)[e]
    if exact and not entry.complete:
        raise IncompleteFactorization(f"factorizations below e={e} are incomplete")
    return entry


def F_of(e: int, exact: bool = True, factorizer: CyclotomicFactorizer | None = None) -> Fraction:
    return _entry(e, exact, factorizer).F


def G_of(e: int, exact: bool = True, factorizer: CyclotomicFactorizer | None = None) -> Fraction:
    return _entry(e, exact, factorizer).G


def romanov_partial_sum(E: int, exact: bool = True, factorizer: CyclotomicFactorizer | None = None) -> Fraction:
    """sum over e <= E of G(e)/e."""
    return _entry(E, exact, factorizer).S


def E_partial(x: int, exact: bool = True, factorizer: CyclotomicFactorizer | None = None) -> Fraction:
    """sum over k <= x of G(k); with exact=False a certified lower bound."""
    return _entry(x, exact, factorizer).E


def brute_force_G(e: int, factorizer: CyclotomicFactorizer | None = None) -> Fraction:
    """G(e) by enumerating subsets of primes whose orders have lcm exactly e."""
    factorizer = factorizer or default_factorizer()
    pool: list[tuple[int, int]] = []
    for d in divisors(e):
        primes, ok = factorizer.primes_of_order(d)
        if not ok:
            raise IncompleteFactorization(f"primes of order {d} are not all known")
        pool.extend((ord_one_plus_i(p), p.norm) for p in primes)
    total = Fraction(0)
    for size in range(len(pool) + 1):
        for subset in combinations(pool, size):
            lcm = math.lcm(1, *(o for o, _ in subset))
            if lcm == e:
                total += Fraction(1, math.prod(n for _, n in subset))
    return total


def distinct_prime_factor_count_D(
    x: int, factorizer: CyclotomicFactorizer | None = None
) -> tuple[int, bool]:
    """Distinct Gaussian prime divisors of prod over ceil(x/2) <= k <= x of ((1+i)**k - 1)."""
    if x < 2:
        raise ValueError("x must be >= 2")
    factorizer = factorizer or default_factorizer()
    seen: set[GInt] = set()
    complete = True
    for k in range(-(-x // 2), x + 1):
        fact = factorizer.factorization(k)
        complete &= fact.complete
        seen.update(p.generator for p in fact.primes())
    return len(seen), complete


def tail_bound_assembly(x0: float, E_at_x0: float, a: float, b: float, c: float, scale: float) -> float:
    """-E(x0)/x0 + scale * integral from x0 to infinity of (a log^2 t + b log t + c)/t^2 dt."""
    if x0 <= 1:
        raise ValueError("x0 must exceed 1")
    L = math.log(x0)
    integral = (a * (L * L + 2 * L + 2) + b * (L + 1) + c) / x0
    return -E_at_x0 / x0 + scale * integral


def odd_prime_square_product(m: int) -> Fraction:
    """prod over the first m odd primes of (1 - 1/p^2)^2, exactly."""
    out = Fraction(1)
    for p in primes_up_to(nth_odd_prime(m)).tolist()[1:]:
        out *= Fraction(p * p - 1, p * p) ** 2
    return out


def mertens_odd_product_check(x: float) -> float:
    """prod over 3 <= p <= x of (1 - 1/p)^-1, divided by 0.922913686 log x."""
    if x < 74:
        raise ValueError("the odd-prime Mertens bound is stated for x >= 74")
    primes = primes_up_to(math.floor(x))[1:]
    log_product = math.fsum(-math.log1p(-1.0 / p) for p in primes.tolist())
    return math.exp(log_product) / (CHEN_SUN_MERTENS * math.log(x))
