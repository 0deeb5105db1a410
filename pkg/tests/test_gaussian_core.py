from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gaussromanov.gaussian_core import (
    I,
    ONE,
    ONE_PLUS_I,
    UNITS,
    ZERO,
    GInt,
    canonical_associate,
    congruent,
    divrem,
    exact_div,
    gcd,
    gpow,
    house_squared,
    norm,
    norm_bound,
    norm_power_minus_one_closed_form,
    parse_gint,
    scaled_cosine,
    xgcd,
)

ints = st.integers(min_value=-10**6, max_value=10**6)
gints = st.builds(GInt, ints, ints)
nonzero = gints.filter(lambda z: not z.is_zero())


def G(a, b=0):
    return GInt(a, b)


@pytest.mark.parametrize(
    "z, n",
    [(ONE_PLUS_I, 2), (G(3, 2), 13), (G(1365, 1365), 3726450)],
)
def test_norm_examples(z, n):
    assert norm(z) == n


@pytest.mark.parametrize("z, h", [(ONE_PLUS_I, 2), (ZERO, 0), (G(3, 4), 25)])
def test_house_squared(z, h):
    assert house_squared(z) == h


def test_powers():
    assert gpow(ONE_PLUS_I, 2) == G(0, 2)
    assert gpow(ONE_PLUS_I, 23) == G(2048, -2048)
    assert gpow(ONE_PLUS_I, 8) == G(16)
    assert gpow(G(5, -7), 0) == ONE


@pytest.mark.parametrize(
    "a, b, q, r",
    [
        (G(5), G(2, 1), G(2, -1), ZERO),
        (G(-3, 2), G(2, 3), I, ZERO),
        (G(3), ONE_PLUS_I, G(1, -1), ONE),
    ],
)
def test_divrem_examples(a, b, q, r):
    assert divrem(a, b) == (q, r)


def test_divrem_by_zero():
    with pytest.raises(ZeroDivisionError):
        divrem(G(1), ZERO)


def test_exact_div_rejects_remainder():
    assert exact_div(G(5), G(2, 1)) == G(2, -1)
    with pytest.raises(ArithmeticError):
        exact_div(G(3), ONE_PLUS_I)


@pytest.mark.parametrize(
    "a, b, g",
    [(ONE_PLUS_I, G(3), ONE), (G(5), G(3, 1), G(1, 2)), (ZERO, G(2, 3), G(2, 3))],
)
def test_gcd_examples(a, b, g):
    assert gcd(a, b) == g


@pytest.mark.parametrize("z, c", [(G(2, -1), G(1, 2)), (G(-3), G(3)), (ONE_PLUS_I, ONE_PLUS_I)])
def test_canonical_examples(z, c):
    assert canonical_associate(z) == c


def test_congruent_examples():
    assert congruent(gpow(ONE_PLUS_I, 2), 1, G(2, 1))
    assert not congruent(1, 0, ONE_PLUS_I)
    assert congruent(gpow(ONE_PLUS_I, 24), 1, G(7))


@pytest.mark.parametrize(
    "text, z",
    [("3+2i", G(3, 2)), ("-i", G(0, -1)), ("2i", G(0, 2)), ("5", G(5)), ("1-i", G(1, -1)), (" -4 - 7j ", G(-4, -7))],
)
def test_parse(text, z):
    assert parse_gint(text) == z


@pytest.mark.parametrize("bad", ["", "i+", "3+2k", "++1"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_gint(bad)


def test_norm_bound_is_exact_floor():
    assert norm_bound(10) == 100
    assert norm_bound(math.sqrt(2)) == 2
    assert norm_bound(2.5) == 6


# properties


@given(gints, gints, gints)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert norm(a * b) == norm(a) * norm(b)


@given(gints, nonzero)
def test_euclidean_bound(a, b):
    q, r = divrem(a, b)
    assert q * b + r == a
    assert 2 * norm(r) <= norm(b)


@given(nonzero)
def test_canonical_idempotent_and_class_constant(z):
    c = canonical_associate(z)
    assert canonical_associate(c) == c
    assert all(canonical_associate(u * z) == c for u in UNITS)
    assert c.re > 0 and c.im >= 0


def test_zero_inputs_rejected():
    with pytest.raises(ValueError):
        canonical_associate(ZERO)
    with pytest.raises(ValueError):
        gcd(0, 0)


@given(gints, nonzero)
def test_gcd_divides_and_bezout(a, b):
    g = gcd(a, b)
    assert g == canonical_associate(g)
    h, u, v = xgcd(a, b)
    assert u * a + v * b == h
    assert canonical_associate(h) == g
    assert divrem(a, g)[1].is_zero() and divrem(b, g)[1].is_zero()


@given(gints)
def test_str_round_trip(z):
    assert parse_gint(str(z)) == z


def test_norm_house_inequality_and_closed_form():
    for k in range(1, 65):
        n = norm(gpow(ONE_PLUS_I, k) - 1)
        assert n <= 12 * 2**k
        assert n == norm_power_minus_one_closed_form(k)
        # float cosine as an independent reading of the same identity
        approx = 2**k + 1 - 2 ** (k / 2 + 1) * math.cos(k * math.pi / 4)
        assert abs(n - approx) <= 1e-9 * 2**k
    assert [scaled_cosine(k) for k in range(8)] == [1, 1, 0, -2, -4, -4, 0, 8]
