"""Exact arithmetic in the Gaussian integers Z[i].

Values are immutable; components are Python ints, so powers such as
(1+i)**200 are exact.  In Q(i) both embeddings are complex conjugate, so the
house of z satisfies ``house(z)**2 == norm(z)`` and every "house <= x"
predicate in this package is evaluated as ``norm <= x**2``.
"""

from __future__ import annotations

import math
from typing import Union

__all__ = [
    "GInt",
    "ONE",
    "ZERO",
    "I",
    "ONE_PLUS_I",
    "UNITS",
    "norm",
    "house_squared",
    "gpow",
    "divrem",
    "exact_div",
    "gcd",
    "canonical_associate",
    "congruent",
    "pow_mod",
    "parse_gint",
    "norm_bound",
    "xgcd",
    "scaled_cosine",
    "norm_power_minus_one_closed_form",
]

IntLike = Union[int, "GInt"]


def _div_nearest(a: int, b: int) -> int:
    """Nearest integer to a/b for b > 0; exact halves round toward zero."""
    q, r = divmod(a, b)
    twice = 2 * r
    if twice > b or (twice == b and q < 0):
        q += 1
    return q


class GInt:
    __slots__ = ("re", "im")

    def __init__(self, re: int = 0, im: int = 0) -> None:
        object.__setattr__(self, "re", int(re))
        object.__setattr__(self, "im", int(im))

    def __setattr__(self, name, value):
        raise AttributeError("GInt is immutable")

    @staticmethod
    def coerce(value: IntLike) -> GInt:
        if isinstance(value, GInt):
            return value
        if isinstance(value, int):
            return GInt(value, 0)
        if isinstance(value, str):
            return parse_gint(value)
        raise TypeError(f"cannot interpret {value!r} as a Gaussian integer")

    # ring structure

    def __add__(self, other: IntLike) -> GInt:
        if isinstance(other, int):
            return GInt(self.re + other, self.im)
        if isinstance(other, GInt):
            return GInt(self.re + other.re, self.im + other.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: IntLike) -> GInt:
        if isinstance(other, int):
            return GInt(self.re - other, self.im)
        if isinstance(other, GInt):
            return GInt(self.re - other.re, self.im - other.im)
        return NotImplemented

    def __rsub__(self, other: IntLike) -> GInt:
        if isinstance(other, int):
            return GInt(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other: IntLike) -> GInt:
        if isinstance(other, int):
            return GInt(self.re * other, self.im * other)
        if isinstance(other, GInt):
            a, b, c, d = self.re, self.im, other.re, other.im
            return GInt(a * c - b * d, a * d + b * c)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self) -> GInt:
        return GInt(-self.re, -self.im)

    def __pos__(self) -> GInt:
        return self

    def __pow__(self, k: int) -> GInt:
        return gpow(self, k)

    def __floordiv__(self, other: IntLike) -> GInt:
        return divrem(self, GInt.coerce(other))[0]

    def __mod__(self, other: IntLike) -> GInt:
        return divrem(self, GInt.coerce(other))[1]

    def __divmod__(self, other: IntLike) -> tuple[GInt, GInt]:
        return divrem(self, GInt.coerce(other))

    def conjugate(self) -> GInt:
        return GInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    # comparison and hashing

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GInt):
            return self.re == other.re and self.im == other.im
        if isinstance(other, int):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        # consistent with equality against plain ints
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def sort_key(self) -> tuple[int, int, int]:
        return (self.norm(), self.re, self.im)

    def __repr__(self) -> str:
        return f"GInt({self.re}, {self.im})"

    def __str__(self) -> str:
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __reduce__(self):
        return (GInt, (self.re, self.im))


ZERO = GInt(0, 0)
ONE = GInt(1, 0)
I = GInt(0, 1)
ONE_PLUS_I = GInt(1, 1)
UNITS = (ONE, I, GInt(-1, 0), GInt(0, -1))


def _coefficient(text: str) -> int:
    if text in ("", "+"):
        return 1
    if text == "-":
        return -1
    return int(text)


def parse_gint(text: str) -> GInt:
    """Parse "a+bi", "a-bi", "3", "-2i", "i", "1-i" and similar forms."""
    s = text.strip().replace(" ", "").replace("j", "i")
    try:
        if not s.endswith("i"):
            return GInt(int(s), 0)
        body = s[:-1]
        split = max(body.rfind("+"), body.rfind("-"))
        if split > 0:
            return GInt(int(body[:split]), _coefficient(body[split:]))
        return GInt(0, _coefficient(body))
    except ValueError:
        raise ValueError(f"invalid Gaussian integer literal: {text!r}") from None


def norm(z: IntLike) -> int:
    return GInt.coerce(z).norm()


def house_squared(z: IntLike) -> int:
    # both embeddings of Q(i) have modulus |z|
    return GInt.coerce(z).norm()


def gpow(z: IntLike, k: int) -> GInt:
    if k < 0:
        raise ValueError("negative exponent")
    base = GInt.coerce(z)
    result = ONE
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def divrem(a: IntLike, b: IntLike) -> tuple[GInt, GInt]:
    """Euclidean division with ``norm(r) <= norm(b) / 2``.

    The quotient is the componentwise nearest integer to a/b, with exact
    half-integers rounded toward zero.
    """
    a = GInt.coerce(a)
    b = GInt.coerce(b)
    n = b.norm()
    if n == 0:
        raise ZeroDivisionError("Gaussian division by zero")
    num = a * b.conjugate()
    q = GInt(_div_nearest(num.re, n), _div_nearest(num.im, n))
    return q, a - q * b


def exact_div(a: IntLike, b: IntLike) -> GInt:
    q, r = divrem(a, b)
    if r:
        raise ArithmeticError(f"{b} does not divide {a}")
    return q


def canonical_associate(z: IntLike) -> GInt:
    """The associate of z with re > 0 and im >= 0."""
    z = GInt.coerce(z)
    if z.is_zero():
        raise ValueError("zero has no canonical associate")
    for _ in range(4):
        if z.re > 0 and z.im >= 0:
            return z
        z = GInt(-z.im, z.re)  # multiply by i
    raise AssertionError("unreachable")


def gcd(a: IntLike, b: IntLike) -> GInt:
    a = GInt.coerce(a)
    b = GInt.coerce(b)
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while b:
        a, b = b, divrem(a, b)[1]
    return canonical_associate(a)


def congruent(a: IntLike, b: IntLike, m: IntLike) -> bool:
    m = GInt.coerce(m)
    if m.is_zero():
        raise ZeroDivisionError("zero modulus")
    return divrem(GInt.coerce(a) - GInt.coerce(b), m)[1].is_zero()


def pow_mod(z: IntLike, k: int, m: IntLike) -> GInt:
    """z**k reduced modulo m (divrem representative)."""
    m = GInt.coerce(m)
    base = divrem(GInt.coerce(z), m)[1]
    result = divrem(ONE, m)[1]
    while k:
        if k & 1:
            result = divrem(result * base, m)[1]
        k >>= 1
        if k:
            base = divrem(base * base, m)[1]
    return result


def norm_bound(x) -> int:
    """Largest integer N with N <= x**2, so ``house(z) <= x`` iff ``norm(z) <= N``."""
    if isinstance(x, int):
        if x < 0:
            raise ValueError("negative radius")
        return x * x
    from fractions import Fraction

    q = Fraction(x)
    if q < 0:
        raise ValueError("negative radius")
    return math.floor(q * q)


def xgcd(a: IntLike, b: IntLike) -> tuple[GInt, GInt, GInt]:
    """(g, u, v) with u*a + v*b == g, g a gcd of a and b (not canonicalized)."""
    r0, r1 = GInt.coerce(a), GInt.coerce(b)
    u0, u1 = ONE, ZERO
    v0, v1 = ZERO, ONE
    while r1:
        q, r = divrem(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    return r0, u0, v0


# 2^(k/2) cos(k pi/4) by k mod 8, as (sign, halve-down); exact integers
_COS_TABLE = {0: (1, 0), 1: (1, 1), 2: (0, 0), 3: (-1, 1), 4: (-1, 0), 5: (-1, 1), 6: (0, 0), 7: (1, 1)}


def scaled_cosine(k: int) -> int:
    """2^(k/2) * cos(k*pi/4), which is always an integer."""
    if k < 0:
        raise ValueError("k must be >= 0")
    sign, odd = _COS_TABLE[k % 8]
    return sign * (1 << ((k - odd) // 2))


def norm_power_minus_one_closed_form(k: int) -> int:
    """N((1+i)^k - 1) = 2^k + 1 - 2^(k/2+1) cos(k pi/4)."""
    return (1 << k) + 1 - 2 * scaled_cosine(k)
