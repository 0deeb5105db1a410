"""Analytic constants behind the explicit density bound for Z[i], and the geometry checks.

Quantities that feed an inequality (the Catalan constant, the L-value
product) are returned as ``(value, radius)`` pairs whose radius is a
certified bound on the absolute error; the enclosures are computed with
mpmath interval arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from functools import lru_cache

import mpmath
import numpy as np

from .gaussian_core import norm_bound
from .gaussian_primes import QI, primes_up_to

__all__ = [
    "Certified",
    "ConstantsReport",
    "catalan_constant",
    "catalan_partial_sum",
    "l_chi1_2",
    "l_product_bound",
    "kappa_qi",
    "assemble_density_bound",
    "mertens_qi_check",
    "sierpinski_partial",
    "circle_intersection_area",
    "lens_area_by_antiderivative",
    "lattice_count",
    "REFERENCE_HEAD",
    "REFERENCE_TAIL",
    "REFERENCE_FINAL_BOUND",
    "REFERENCE_L_PRODUCT",
]

REFERENCE_HEAD = 1.27095
REFERENCE_TAIL = 0.57749
REFERENCE_FINAL_BOUND = 0.00110183
REFERENCE_L_PRODUCT = 0.88492
SIEVE_FACTOR = 1.2771
RAMIFIED_FACTOR = 1.5  # prod over p containing 1+i of (1 + 1/N(p))


@dataclass(frozen=True)
class Certified:
    value: float
    radius: float

    @property
    def lo(self) -> float:
        return self.value - self.radius

    @property
    def hi(self) -> float:
        return self.value + self.radius

    def certainly_at_least(self, threshold: float) -> bool:
        return self.lo >= threshold

    def as_dict(self) -> dict[str, float]:
        return {"value": self.value, "error": self.radius}


def _from_interval(iv) -> Certified:
    lo = mpmath.mpf(iv.a)
    hi = mpmath.mpf(iv.b)
    mid = (lo + hi) / 2
    # widen by the rounding of the midpoint to a double
    value = float(mid)
    radius = float(max(hi - mpmath.mpf(value), mpmath.mpf(value) - lo)) * (1 + 1e-15) + 1e-300
    return Certified(value, radius)


def catalan_partial_sum(k: int) -> float:
    """sum over j <= k of (-1)^j / (2j+1)^2."""
    return math.fsum((-1) ** j / (2 * j + 1) ** 2 for j in range(k + 1))


_CATALAN_EPS = 1e-25


@lru_cache(maxsize=None)
def _catalan_interval(eps: float):
    """Enclosure of L(chi_2, 2) via Cohen-Villegas-Zagier acceleration.

    The terms 1/(2k+1)^2 form a moment sequence with a positive weight of
    total mass 1, so the n-term accelerated sum is within 2/(3+sqrt 8)^n.
    """
    n = max(4, math.ceil(math.log(2 / eps) / math.log(3 + math.sqrt(8))) + 2)
    with mpmath.workdps(max(30, n)):
        iv = mpmath.iv
        d = (iv.mpf(3) + iv.sqrt(8)) ** n
        d = (d + 1 / d) / 2
        b = iv.mpf(-1)
        c = -d
        s = iv.mpf(0)
        for k in range(n):
            c = b - c
            s = s + c / iv.mpf(2 * k + 1) ** 2
            b = b * (k + n) * (k - n) / ((k + iv.mpf(0.5)) * (k + 1))
        s = s / d
        tail = 2 / (iv.mpf(3) + iv.sqrt(8)) ** n
        return s + iv.mpf([-1, 1]) * tail


@lru_cache(maxsize=None)
def catalan_constant(eps: float = 1e-12) -> Certified:
    if eps <= 0:
        raise ValueError("eps must be positive")
    # one shared enclosure serves every eps it already meets
    return _from_interval(_catalan_interval(min(eps, _CATALAN_EPS)))


@lru_cache(maxsize=None)
def l_chi1_2() -> Certified:
    """L(chi_1, 2) = zeta(2)(1 - 1/4) = pi^2/8."""
    with mpmath.workdps(30):
        return _from_interval(mpmath.iv.pi**2 / 8)


@lru_cache(maxsize=None)
def l_product_bound() -> Certified:
    """(L(chi_1,2) L(chi_2,2))^-1, the Euler product over odd primes of Z[i]."""
    with mpmath.workdps(30):
        iv = mpmath.iv
        value = 1 / ((iv.pi**2 / 8) * _catalan_interval(_CATALAN_EPS))
        return _from_interval(value)


def kappa_qi(sieve_factor: float = SIEVE_FACTOR) -> float:
    return 1024 / math.pi * sieve_factor


@dataclass(frozen=True)
class ConstantsReport:
    L_chi1_2: float
    catalan: float
    l_product_inverse: float
    kappa: float
    c1: float
    c2: float
    c3: float
    c_tilde1: float
    c_tilde2: float
    c_tilde3: float
    c_tilde4: float
    final_bound: float

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


def assemble_density_bound(S_head: float = REFERENCE_HEAD, S_tail: float = REFERENCE_TAIL) -> ConstantsReport:
    """Reassemble the lower-density constant c1 / (c2 c3) from its ingredients.

    With sum r ~ (2/log 2) x^2 the squared first moment gives c1 = 4/log^2 2;
    c2 = 2/log 2 + (1/log^2 2) * kappa * (S_head + S_tail) * 3/2 and c3 = pi.
    """
    if S_head < 0 or S_tail < 0:
        raise ValueError("series bounds must be nonnegative")
    log2 = math.log(2)
    mitsui = QI.mitsui_constant
    # sum r ~ mitsui x^2 / (2 log house(1+i)) = mitsui x^2 / log 2
    first_moment = mitsui / (2 * math.log(math.sqrt(2)))
    c1 = first_moment**2
    c_tilde1 = 1 / log2**2
    c_tilde2 = kappa_qi()
    c_tilde3 = S_head + S_tail
    c2 = first_moment + c_tilde1 * c_tilde2 * c_tilde3 * RAMIFIED_FACTOR
    c3 = math.pi
    return ConstantsReport(
        L_chi1_2=l_chi1_2().value,
        catalan=catalan_constant().value,
        l_product_inverse=l_product_bound().value,
        kappa=c_tilde2,
        c1=c1,
        c2=c2,
        c3=c3,
        c_tilde1=c_tilde1,
        c_tilde2=c_tilde2,
        c_tilde3=c_tilde3,
        c_tilde4=RAMIFIED_FACTOR,
        final_bound=c1 / (c2 * c3),
    )


def _prime_ideal_norms(X: int) -> np.ndarray:
    primes = primes_up_to(X)
    split = primes[primes % 4 == 1]
    inert = primes[(primes % 4 == 3) & (primes * primes <= X)]
    return np.concatenate([[2], split, split, inert * inert]).astype(np.float64)


def mertens_qi_check(X: int) -> tuple[float, float, float]:
    """Product over prime ideals of norm <= X of (1 - 1/N)^-1 against e^gamma (pi/4) log X."""
    if X < 100:
        raise ValueError("X must be >= 100")
    norms = _prime_ideal_norms(X)
    log_product = math.fsum((-np.log1p(-1.0 / norms)).tolist())
    product = math.exp(log_product)
    predicted = math.exp(float(mpmath.euler)) * QI.rho * math.log(X)
    return product, predicted, abs(product - predicted) / predicted


def sierpinski_partial(x: int) -> float:
    """sum over m <= x of r2(m)/m, minus pi log x."""
    if x < 1:
        raise ValueError("x must be >= 1")
    R = math.isqrt(x)
    b = np.arange(-R, R + 1, dtype=np.int64)
    rows = []
    for a in range(-R, R + 1):
        m = a * a + b * b
        m = m[(m > 0) & (m <= x)]
        rows.append(float(np.sum(1.0 / m)))
    return math.fsum(rows) - math.pi * math.log(x)


def circle_intersection_area(x: float, d: float) -> float:
    """Area common to two disks of radius x whose centres are d apart."""
    if x <= 0 or d < 0:
        raise ValueError("need x > 0 and d >= 0")
    if d >= 2 * x:
        return 0.0
    # two circular segments
    return 2 * x * x * math.acos(d / (2 * x)) - d / 2 * math.sqrt(4 * x * x - d * d)


def lens_area_by_antiderivative(x: float, d: float) -> float:
    """4 * integral from d/2 to x of sqrt(x^2 - t^2) dt, in closed form.

    The antiderivative t sqrt(x^2-t^2) + x^2 arctan(t/sqrt(x^2-t^2)) has a
    removable singularity at t = x; arcsin(t/x) is the same function there.
    """
    def antiderivative(t: float) -> float:
        return t * math.sqrt(max(x * x - t * t, 0.0)) + x * x * math.asin(min(t / x, 1.0))

    return 2 * (antiderivative(x) - antiderivative(d / 2))


def lattice_count(x) -> int:
    """#{z in Z[i] : house(z) <= x}, exactly."""
    bound = norm_bound(x)
    R = math.isqrt(bound)
    return sum(2 * math.isqrt(bound - a * a) + 1 for a in range(-R, R + 1))
