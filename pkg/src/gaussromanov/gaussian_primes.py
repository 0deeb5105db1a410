"""Prime elements and prime ideals of Z[i], plus the rational prime tools behind them."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .gaussian_core import GInt, IntLike, canonical_associate, norm_bound

__all__ = [
    "FieldParams",
    "QI",
    "PrimeRecord",
    "is_probable_prime",
    "primes_up_to",
    "nth_odd_prime",
    "two_squares",
    "is_prime_element",
    "prime_record",
    "prime_ideals_up_to",
    "primes_in_disk",
    "count_primes_in_disk",
    "mitsui_ratio",
]


@dataclass(frozen=True)
class FieldParams:
    n: int = 2
    r1: int = 0
    r2: int = 1
    omega: int = 4
    class_number: int = 1
    regulator: int = 1
    rho: float = math.pi / 4
    discriminant: int = -4

    @property
    def mitsui_constant(self) -> float:
        # omega / (n h 2^r1 R)
        return self.omega / (self.n * self.class_number * 2**self.r1 * self.regulator)


QI = FieldParams()


@dataclass(frozen=True)
class PrimeRecord:
    """A prime ideal of Z[i], stored by its canonical generator."""

    norm: int
    generator: GInt
    degree: int

    @property
    def rational_prime(self) -> int:
        return self.norm if self.degree == 1 else math.isqrt(self.norm)

    def sort_key(self) -> tuple[int, int, int]:
        return (self.norm, self.generator.re, self.generator.im)

    def __str__(self) -> str:
        return str(self.generator)


# rational primes

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# Miller-Rabin with the first 13 prime bases is exact below this bound
_MR_DETERMINISTIC_LIMIT = 3317044064679887385961981


def _miller_rabin(n: int, base: int) -> bool:
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas(n: int) -> bool:
    d = 5
    while True:
        j = _jacobi(d, n)
        if j == -1:
            break
        if j == 0 and abs(d) != n:
            return False
        d = -d - 2 if d > 0 else -d + 2
        if d == 13 and math.isqrt(n) ** 2 == n:
            return False
    p, q = 1, (1 - d) // 4
    k = n + 1
    s = (k & -k).bit_length() - 1
    k >>= s
    inv2 = (n + 1) // 2
    u, v, qk = 1, p, q % n
    for bit in bin(k)[3:]:
        u, v = u * v % n, (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = (p * u + v) * inv2 % n, (d * u + p * v) * inv2 % n
            qk = qk * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        qk = qk * qk % n
        if v == 0:
            return True
    return False


def is_probable_prime(n: int) -> bool:
    """Rational primality.

    Exact below 3.3e24 (Miller-Rabin, first 13 prime bases).  Above that,
    Baillie-PSW followed by 64 Miller-Rabin rounds with bases seeded from n,
    so the result is reproducible and the error probability is below 2**-128.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 43 * 43:
        return True
    if n < _MR_DETERMINISTIC_LIMIT:
        return all(_miller_rabin(n, a) for a in _SMALL_PRIMES)
    if not (_miller_rabin(n, 2) and _strong_lucas(n)):
        return False
    rng = random.Random(n)
    return all(_miller_rabin(n, rng.randrange(2, n - 1)) for _ in range(64))


def _simple_sieve(n: int) -> np.ndarray:
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags)


def primes_up_to(n: int, segment: int = 1 << 20) -> np.ndarray:
    """All primes <= n as an int64 array (segmented sieve of Eratosthenes)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    root = math.isqrt(n)
    base = _simple_sieve(root)
    if n <= max(root, 1 << 16):
        return _simple_sieve(n).astype(np.int64)
    chunks = [base.astype(np.int64)]
    lo = root + 1
    while lo <= n:
        hi = min(lo + segment - 1, n)
        flags = np.ones(hi - lo + 1, dtype=bool)
        for p in base:
            p = int(p)
            if p * p > hi:
                break
            start = max(p * p, -(-lo // p) * p)
            flags[start - lo :: p] = False
        chunks.append(np.flatnonzero(flags).astype(np.int64) + lo)
        lo = hi + 1
    return np.concatenate(chunks)


def nth_odd_prime(n: int) -> int:
    """The n-th odd prime: nth_odd_prime(1) == 3."""
    if n < 1:
        raise ValueError("n must be >= 1")
    limit = 64
    while True:
        primes = primes_up_to(limit)
        if len(primes) > n:
            return int(primes[n])  # primes[0] is 2
        limit *= 2


def _sqrt_minus_one(p: int) -> int:
    for c in range(2, p):
        if pow(c, (p - 1) // 2, p) == p - 1:
            return pow(c, (p - 1) // 4, p)
    raise ValueError(f"{p} is not a prime congruent to 1 mod 4")


def two_squares(p: int) -> tuple[int, int]:
    """(a, b) with a > b > 0 and a*a + b*b == p, for a prime p = 1 mod 4.

    Hermite-Serret: run the Euclidean algorithm on (p, sqrt(-1) mod p) and
    stop at the first remainder below sqrt(p).
    """
    if p == 2:
        return 1, 1
    if p % 4 != 1:
        raise ValueError(f"{p} is not a sum of two squares")
    r = _sqrt_minus_one(p)
    a, b = p, r
    limit = math.isqrt(p)
    while b > limit:
        a, b = b, a % b
    c = math.isqrt(p - b * b)
    if b * b + c * c != p:
        raise ValueError(f"{p} is not prime")
    return max(b, c), min(b, c)


# Gaussian primes


def is_prime_element(z: IntLike) -> bool:
    z = GInt.coerce(z)
    n = z.norm()
    if is_probable_prime(n):
        return True
    if z.re == 0 or z.im == 0:
        p = abs(z.re + z.im)
        return p % 4 == 3 and is_probable_prime(p)
    return False


def prime_record(z: IntLike) -> PrimeRecord:
    z = GInt.coerce(z)
    if not is_prime_element(z):
        raise ValueError(f"{z} is not a Gaussian prime")
    n = z.norm()
    degree = 1 if is_probable_prime(n) else 2
    return PrimeRecord(n, canonical_associate(z), degree)


def _ideals_of_rational_prime(p: int) -> list[PrimeRecord]:
    if p == 2:
        return [PrimeRecord(2, GInt(1, 1), 1)]
    if p % 4 == 3:
        return [PrimeRecord(p * p, GInt(p, 0), 2)]
    a, b = two_squares(p)
    return [PrimeRecord(p, GInt(b, a), 1), PrimeRecord(p, GInt(a, b), 1)]


def prime_ideals_up_to(X: int) -> list[PrimeRecord]:
    """Canonical generators of every prime ideal of norm <= X, sorted by norm."""
    if X < 2:
        return []
    out: list[PrimeRecord] = []
    for p in primes_up_to(X).tolist():
        if p % 4 == 3:
            if p * p <= X:
                out.extend(_ideals_of_rational_prime(p))
        else:
            out.extend(_ideals_of_rational_prime(p))
    out.sort(key=PrimeRecord.sort_key)
    return out


def _associates(z: GInt) -> list[GInt]:
    return [z, GInt(-z.im, z.re), GInt(-z.re, -z.im), GInt(z.im, -z.re)]


def primes_in_disk(x) -> Iterator[GInt]:
    """Every prime element with house <= x, ordered by (norm, re, im)."""
    bound = norm_bound(x)
    for group in _group_by_norm(prime_ideals_up_to(bound)):
        yield from sorted(
            (a for r in group for a in _associates(r.generator)),
            key=GInt.sort_key,
        )


def _group_by_norm(records: list[PrimeRecord]) -> Iterator[list[PrimeRecord]]:
    group: list[PrimeRecord] = []
    for r in records:
        if group and group[0].norm != r.norm:
            yield group
            group = []
        group.append(r)
    if group:
        yield group


def count_primes_in_disk(x) -> int:
    """#primes_in_disk(x), from rational prime counts alone."""
    bound = norm_bound(x)
    primes = primes_up_to(bound)
    if len(primes) == 0:
        return 0
    split = int(np.count_nonzero(primes % 4 == 1))
    inert = int(np.count_nonzero(primes[: np.searchsorted(primes, math.isqrt(bound), side="right")] % 4 == 3))
    ramified = 1
    return 4 * (ramified + 2 * split + inert)


def mitsui_ratio(x) -> float:
    """#{prime elements, house <= x} divided by the asymptotic 2x^2/log x."""
    if x < 2:
        raise ValueError("mitsui_ratio needs x >= 2")
    return count_primes_in_disk(x) * math.log(x) / (QI.mitsui_constant * x * x)
