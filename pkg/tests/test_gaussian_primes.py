from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gaussromanov.gaussian_core import ONE_PLUS_I, GInt, canonical_associate
from gaussromanov.gaussian_primes import (
    count_primes_in_disk,
    is_prime_element,
    is_probable_prime,
    mitsui_ratio,
    nth_odd_prime,
    prime_ideals_up_to,
    prime_record,
    primes_in_disk,
    primes_up_to,
    two_squares,
)


def trial_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def brute_prime_element(z: GInt) -> bool:
    """Irreducible iff no element of norm strictly between 1 and N(z) divides it."""
    n = z.norm()
    if n < 2:
        return False
    R = math.isqrt(n)
    for a in range(-R, R + 1):
        for b in range(-R, R + 1):
            m = a * a + b * b
            if 1 < m < n and n % m == 0:
                q = z * GInt(a, -b)
                if q.re % m == 0 and q.im % m == 0:
                    return False
    return True


def test_sieve_matches_trial_division():
    got = primes_up_to(20000).tolist()
    assert got == [n for n in range(20001) if trial_prime(n)]


def test_sieve_segments_agree():
    assert primes_up_to(300000, segment=4096).tolist() == primes_up_to(300000).tolist()


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_sieve_edges(n):
    assert primes_up_to(n).tolist() == [p for p in (2, 3) if p <= n]


@given(st.integers(min_value=0, max_value=200000))
def test_probable_prime_small(n):
    assert is_probable_prime(n) == trial_prime(n)


@pytest.mark.parametrize(
    "n, expected",
    [
        (3215031751, False),  # strong pseudoprime to bases 2, 3, 5, 7
        (3825123056546413051, False),  # strong pseudoprime to bases up to 23
        (2**89 - 1, True),
        (2**127 - 1, True),
        ((2**61 - 1) * (2**89 - 1), False),
        (2**521 - 1, True),
        (2**523 - 1, False),
    ],
)
def test_probable_prime_large(n, expected):
    assert is_probable_prime(n) == expected


def test_nth_odd_prime():
    assert nth_odd_prime(1) == 3
    assert nth_odd_prime(2) == 5
    assert nth_odd_prime(209) == 1291


@pytest.mark.parametrize("p", [5, 13, 17, 29, 1000000009, 2**255 - 19])
def test_two_squares(p):
    a, b = two_squares(p)
    assert a * a + b * b == p and a > b > 0


def test_two_squares_all_small():
    for p in primes_up_to(5000).tolist():
        if p % 4 == 1:
            a, b = two_squares(p)
            assert a * a + b * b == p


@pytest.mark.parametrize(
    "z, expected",
    [(ONE_PLUS_I, True), (GInt(3), True), (GInt(5), False), (GInt(0), False), (GInt(0, 1), False), (GInt(0, 7), True)],
)
def test_is_prime_element_examples(z, expected):
    assert is_prime_element(z) == expected


def test_is_prime_element_against_divisor_search():
    for a in range(-12, 13):
        for b in range(-12, 13):
            z = GInt(a, b)
            assert is_prime_element(z) == brute_prime_element(z), z


def test_prime_ideals_examples():
    gens = lambda X: [r.generator for r in prime_ideals_up_to(X)]
    assert gens(2) == [ONE_PLUS_I]
    assert gens(5) == [ONE_PLUS_I, GInt(1, 2), GInt(2, 1)]
    assert gens(10) == [ONE_PLUS_I, GInt(1, 2), GInt(2, 1), GInt(3)]
    assert len(prime_ideals_up_to(100)) == 25


def test_prime_records():
    r = prime_record(GInt(0, 3))
    assert (r.norm, r.generator, r.degree, r.rational_prime) == (9, GInt(3), 2, 3)
    assert prime_record(GInt(-1, 2)).generator == GInt(2, 1)
    with pytest.raises(ValueError):
        prime_record(GInt(5))


def test_primes_in_disk_examples():
    assert list(primes_in_disk(1)) == []
    assert sorted(primes_in_disk(2), key=GInt.sort_key) == sorted(
        [GInt(1, 1), GInt(-1, 1), GInt(-1, -1), GInt(1, -1)], key=GInt.sort_key
    )
    assert sum(1 for _ in primes_in_disk(10)) == 100


@pytest.mark.parametrize("x", [3, 7.5, 10, 23, 50])
def test_primes_in_disk_exhaustive(x):
    got = list(primes_in_disk(x))
    assert got == sorted(got, key=GInt.sort_key)
    R = math.floor(x)
    brute = [
        GInt(a, b)
        for a in range(-R, R + 1)
        for b in range(-R, R + 1)
        if a * a + b * b <= x * x and is_prime_element(GInt(a, b))
    ]
    assert set(got) == set(brute) and len(got) == len(brute)
    assert len(got) == 4 * len(prime_ideals_up_to(math.floor(x * x)))
    assert count_primes_in_disk(x) == len(got)


def test_associates_share_one_ideal():
    seen = {}
    for z in primes_in_disk(20):
        seen.setdefault(canonical_associate(z), []).append(z)
    assert all(len(v) == 4 for v in seen.values())


def test_mitsui_examples():
    assert mitsui_ratio(10) == pytest.approx(100 * math.log(10) / 200, abs=1e-4)
    assert mitsui_ratio(2) == pytest.approx(4 * math.log(2) / 8, abs=1e-4)
    assert 0.8 <= mitsui_ratio(3000) <= 1.2
    with pytest.raises(ValueError):
        mitsui_ratio(1.5)


@pytest.mark.parametrize("x", [500, 1200, 2500, 5000])
def test_mitsui_corridor(x):
    assert 0.7 <= mitsui_ratio(x) <= 1.3
