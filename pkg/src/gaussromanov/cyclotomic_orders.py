"""Factor (1+i)**e - 1, and classify Gaussian primes by the order of 1+i.

The factorization route goes through the cyclotomic values Phi_d(1+i):
since x**e - 1 is the product of Phi_d(x) over d | e, each piece is
factored separately and a prime of exact order d always divides Phi_d(1+i).
"""

from __future__ import annotations

import logging
import math
import os
import threading
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, NamedTuple

from .gaussian_core import (
    ONE,
    ONE_PLUS_I,
    UNITS,
    GInt,
    IntLike,
    divrem,
    exact_div,
    gpow,
    pow_mod,
)
from .gaussian_primes import PrimeRecord, is_probable_prime, primes_up_to, prime_record, two_squares

log = logging.getLogger(__name__)

__all__ = [
    "DEFAULT_EFFORT",
    "Effort",
    "Factorization",
    "GaussianFactorization",
    "OrderRecord",
    "FactorCache",
    "CyclotomicFactorizer",
    "power_minus_one",
    "cyclotomic_value",
    "factor_norm",
    "gaussian_prime_divisors",
    "ord_one_plus_i",
    "primes_of_order",
    "divisors",
    "mobius",
    "default_factorizer",
]

TRIAL_LIMIT = 10**6
# operation budget (modular multiplications) per factor_norm call
DEFAULT_EFFORT = 4_000_000


# small integer helpers


def divisors(n: int) -> list[int]:
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def mobius(n: int) -> int:
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


# rational factorization


class Effort:
    """Wall-clock-free work budget, counted in modular multiplications."""

    def __init__(self, budget: int = DEFAULT_EFFORT) -> None:
        self.budget = budget
        self.used = 0

    @property
    def exhausted(self) -> bool:
        return self.used >= self.budget

    def spend(self, ops: int) -> bool:
        self.used += ops
        return self.used < self.budget


class Factorization(NamedTuple):
    primes: tuple[int, ...]  # sorted, with repetition
    cofactor: int  # 1 when complete
    complete: bool

    def counter(self) -> Counter:
        return Counter(self.primes)


@lru_cache(maxsize=1)
def _trial_blocks() -> tuple[tuple[int, tuple[int, ...]], ...]:
    primes = primes_up_to(TRIAL_LIMIT).tolist()
    blocks = []
    for i in range(0, len(primes), 512):
        chunk = tuple(primes[i : i + 512])
        blocks.append((math.prod(chunk), chunk))
    return tuple(blocks)


def _trial_division(n: int) -> tuple[list[int], int]:
    found: list[int] = []
    for block_product, chunk in _trial_blocks():
        if n == 1:
            break
        if chunk[0] * chunk[0] > n:
            break
        if math.gcd(n, block_product) == 1:
            continue
        for p in chunk:
            while n % p == 0:
                found.append(p)
                n //= p
    if 1 < n < TRIAL_LIMIT * TRIAL_LIMIT:
        # no factor below the trial limit, so n is prime
        found.append(n)
        n = 1
    return found, n


def _iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) by Newton's method."""
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _integer_root(n: int) -> tuple[int, int]:
    """(r, k) with r**k == n and k maximal."""
    best = (n, 1)
    for k in primes_up_to(n.bit_length()).tolist():
        r = _iroot(n, k)
        if r > 1 and r**k == n:
            root, j = _integer_root(r)
            return root, j * k
    return best


def _pollard_pm1(n: int, effort: Effort, bound: int) -> int | None:
    a = 2
    for q in primes_up_to(bound).tolist():
        qk = q
        while qk * q <= bound:
            qk *= q
        a = pow(a, qk, n)
        if not effort.spend(qk.bit_length()):
            break
    g = math.gcd(a - 1, n)
    return g if 1 < g < n else None


def _pollard_brent(n: int, c: int, effort: Effort, batch: int = 128) -> int | None:
    y, r, q = 2, 1, 1
    g = 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(batch, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += batch
        if not effort.spend(2 * r):
            break
        r *= 2
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
    return g if 1 < g < n else None


def _split(n: int, effort: Effort) -> int | None:
    if effort.exhausted:
        return None
    d = _pollard_pm1(n, effort, bound=min(20000, max(1000, effort.budget // 400)))
    if d:
        return d
    for c in range(1, 64):
        if effort.exhausted:
            return None
        d = _pollard_brent(n, c, effort)
        if d:
            return d
    return None


def factor_norm(N: int, effort: Effort | int | None = None) -> Factorization:
    """Factor a positive integer: trial division to 10**6, then Pollard p-1 and rho.

    ``product(primes) * cofactor == N`` always holds; ``complete`` is False iff a
    composite cofactor survived the effort budget.
    """
    if N < 1:
        raise ValueError("factor_norm needs N >= 1")
    if not isinstance(effort, Effort):
        effort = Effort(DEFAULT_EFFORT if effort is None else int(effort))
    found, rest = _trial_division(N)
    stuck: list[int] = []
    stack = [rest] if rest > 1 else []
    while stack:
        m = stack.pop()
        if is_probable_prime(m):
            found.append(m)
            continue
        root, k = _integer_root(m)
        if k > 1:
            stack.extend([root] * k)
            continue
        d = _split(m, effort)
        if d is None:
            stuck.append(m)
        else:
            stack.extend([d, m // d])
    cofactor = math.prod(stuck)
    return Factorization(tuple(sorted(found)), cofactor, not stuck)


# Gaussian side


def power_minus_one(e: int, xi: IntLike = ONE_PLUS_I) -> GInt:
    if e < 1:
        raise ValueError("exponent must be >= 1")
    return gpow(xi, e) - ONE


def _unit_quotient(z: GInt, w: GInt) -> GInt:
    q, r = divrem(z, w)
    if r or q not in UNITS:
        raise ArithmeticError(f"{z} is not a unit multiple of {w}")
    return q


class GaussianFactorization(NamedTuple):
    factors: tuple[tuple[PrimeRecord, int], ...]  # sorted by norm, re, im
    complete: bool

    def primes(self) -> list[PrimeRecord]:
        return [p for p, _ in self.factors]

    def product(self) -> GInt:
        out = ONE
        for p, k in self.factors:
            out = out * gpow(p.generator, k)
        return out


def gaussian_prime_divisors(z: IntLike, effort: Effort | int | None = None) -> GaussianFactorization:
    """Canonical prime divisors of z with multiplicities.

    Rational primes of the norm split as: 2 -> (1+i); p = 3 mod 4 stays inert;
    p = 1 mod 4 gives the two conjugate primes a+bi, b+ai.
    """
    z = GInt.coerce(z)
    if z.is_zero():
        raise ValueError("zero has no factorization")
    fact = factor_norm(z.norm(), effort)
    rest = z
    out: list[tuple[PrimeRecord, int]] = []
    for p in sorted(set(fact.primes)):
        if p == 2:
            candidates = [PrimeRecord(2, ONE_PLUS_I, 1)]
        elif p % 4 == 3:
            candidates = [PrimeRecord(p * p, GInt(p, 0), 2)]
        else:
            a, b = two_squares(p)
            candidates = [PrimeRecord(p, GInt(b, a), 1), PrimeRecord(p, GInt(a, b), 1)]
        for rec in candidates:
            k = 0
            while True:
                q, r = divrem(rest, rec.generator)
                if r:
                    break
                rest = q
                k += 1
            if k:
                out.append((rec, k))
    if fact.complete and not rest.is_unit():
        raise ArithmeticError(f"factorization of {z} did not reduce to a unit")
    out.sort(key=lambda t: t[0].sort_key())
    return GaussianFactorization(tuple(out), fact.complete)


def _as_record(p: PrimeRecord | IntLike) -> PrimeRecord:
    if isinstance(p, PrimeRecord):
        return p
    return prime_record(p)


@lru_cache(maxsize=None)
def _order_cached(gen_re: int, gen_im: int, norm: int, degree: int) -> int:
    group_order = norm - 1
    rational = norm if degree == 1 else math.isqrt(norm)
    if degree == 1:
        # Z[i]/(a+bi) = Z/p with i -> -a/b
        image = (1 - gen_re * pow(gen_im, -1, rational)) % rational

        def is_one(k: int) -> bool:
            return pow(image, k, rational) == 1

    else:
        modulus = GInt(rational, 0)

        def is_one(k: int) -> bool:
            return pow_mod(ONE_PLUS_I, k, modulus) == ONE

    fact = factor_norm(group_order, Effort(10**12))
    if not fact.complete:
        raise ArithmeticError(f"could not factor group order {group_order}")
    order = group_order
    for q in sorted(set(fact.primes)):
        while order % q == 0 and is_one(order // q):
            order //= q
    if not is_one(order):
        raise ArithmeticError("order computation failed")
    return order


def ord_one_plus_i(p: PrimeRecord | IntLike) -> int:
    """Multiplicative order of 1+i modulo the prime p."""
    rec = _as_record(p)
    if rec.norm == 2:
        raise ValueError("1+i has no multiplicative order modulo (1+i)")
    g = rec.generator
    return _order_cached(g.re, g.im, rec.norm, rec.degree)


@dataclass(frozen=True)
class OrderRecord:
    prime: PrimeRecord
    order: int


# cache file


def _format_entry(e: int, fact: GaussianFactorization) -> str:
    body = "|".join(f"{p.generator.re},{p.generator.im},{k}" for p, k in fact.factors)
    return f"{e};{'true' if fact.complete else 'false'};{body}"


def _parse_entry(line: str) -> tuple[int, GaussianFactorization]:
    e_text, flag, body = line.rstrip("\n").split(";")
    if flag not in ("true", "false"):
        raise ValueError(f"bad completeness flag {flag!r}")
    factors = []
    if body:
        for item in body.split("|"):
            re_text, im_text, k_text = item.split(",")
            factors.append((prime_record(GInt(int(re_text), int(im_text))), int(k_text)))
    return int(e_text), GaussianFactorization(tuple(factors), flag == "true")


class FactorCache:
    """Factorizations of (1+i)**e - 1 keyed by e, optionally persisted to an append-only file.

    Lines look like ``e;complete;re,im,mult|re,im,mult|...``.  A later complete
    line supersedes an earlier incomplete one for the same e.
    """

    def __init__(self, path: str | os.PathLike | None = None) -> None:
        self.path = Path(path) if path else None
        self.entries: dict[int, GaussianFactorization] = {}
        self._lock = threading.Lock()
        if self.path and self.path.exists():
            for line in self.path.read_text(encoding="utf-8").splitlines():
                if line.strip():
                    e, fact = _parse_entry(line)
                    if fact.complete or e not in self.entries:
                        self.entries[e] = fact

    def get(self, e: int) -> GaussianFactorization | None:
        return self.entries.get(e)

    def put(self, e: int, fact: GaussianFactorization) -> None:
        with self._lock:
            old = self.entries.get(e)
            if old is not None and (old.complete or not fact.complete):
                return
            self.entries[e] = fact
            if self.path:
                self.path.parent.mkdir(parents=True, exist_ok=True)
                with self.path.open("a", encoding="utf-8") as fh:
                    fh.write(_format_entry(e, fact) + "\n")

    def dumps(self) -> str:
        return "".join(_format_entry(e, self.entries[e]) + "\n" for e in sorted(self.entries))


# cyclotomic decomposition


@lru_cache(maxsize=None)
def cyclotomic_value(d: int) -> GInt:
    """Phi_d(1+i), via (1+i)**d - 1 divided by Phi_m(1+i) for the proper divisors m."""
    value = power_minus_one(d)
    for m in divisors(d)[:-1]:
        value = exact_div(value, cyclotomic_value(m))
    return value


def _factor_cyclotomic(args: tuple[int, int]) -> tuple[int, GaussianFactorization]:
    d, budget = args
    return d, gaussian_prime_divisors(cyclotomic_value(d), Effort(budget))


@dataclass
class CyclotomicFactorizer:
    effort: int = DEFAULT_EFFORT
    cache: FactorCache = field(default_factory=FactorCache)
    _phi: dict[int, GaussianFactorization] = field(default_factory=dict, repr=False)

    def phi_factorization(self, d: int) -> GaussianFactorization:
        if d not in self._phi:
            self._phi[d] = _factor_cyclotomic((d, self.effort))[1]
        return self._phi[d]

    def prefetch(self, exponents: Iterable[int], workers: int = 1) -> None:
        """Factor the cyclotomic pieces needed for ``exponents``, optionally in parallel."""
        needed = sorted({d for e in exponents if self.cache.get(e) is None for d in divisors(e)} - set(self._phi))
        if workers > 1 and len(needed) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for d, fact in pool.map(_factor_cyclotomic, [(d, self.effort) for d in needed]):
                    self._phi[d] = fact
        else:
            for d in needed:
                self.phi_factorization(d)

    def factorization(self, e: int) -> GaussianFactorization:
        """Prime factorization of (1+i)**e - 1."""
        cached = self.cache.get(e)
        if cached is not None and cached.complete:
            return cached
        mult: Counter = Counter()
        records: dict[GInt, PrimeRecord] = {}
        complete = True
        seen_in: dict[GInt, int] = {}
        for d in divisors(e):
            fact = self.phi_factorization(d)
            complete &= fact.complete
            for p, k in fact.factors:
                g = p.generator
                if g in seen_in:
                    log.info("prime %s divides both Phi_%d(1+i) and Phi_%d(1+i)", g, seen_in[g], d)
                seen_in.setdefault(g, d)
                records[g] = p
                mult[g] += k
        factors = tuple(sorted(((records[g], k) for g, k in mult.items()), key=lambda t: t[0].sort_key()))
        result = GaussianFactorization(factors, complete)
        if complete:
            check = result.product()
            _unit_quotient(power_minus_one(e), check)
        self.cache.put(e, result)
        return result

    def primes_of_order(self, e: int) -> tuple[list[PrimeRecord], bool]:
        """Prime ideals (other than (1+i)) with ord_one_plus_i exactly e."""
        fact = self.factorization(e)
        out = [p for p in fact.primes() if p.norm != 2 and ord_one_plus_i(p) == e]
        out.sort(key=PrimeRecord.sort_key)
        return out, fact.complete

    def order_records(self, emax: int) -> tuple[list[OrderRecord], bool]:
        records: list[OrderRecord] = []
        complete = True
        for e in range(1, emax + 1):
            primes, ok = self.primes_of_order(e)
            complete &= ok
            records.extend(OrderRecord(p, e) for p in primes)
        return records, complete


_default = CyclotomicFactorizer()


def default_factorizer() -> CyclotomicFactorizer:
    return _default


def primes_of_order(e: int, effort: int | None = None) -> tuple[list[PrimeRecord], bool]:
    if e < 1:
        raise ValueError("order must be >= 1")
    if effort is None or effort == _default.effort:
        return _default.primes_of_order(e)
    return CyclotomicFactorizer(effort=effort).primes_of_order(e)


