from __future__ import annotations

import math
from fractions import Fraction

import pytest
from scipy import integrate

from gaussromanov.cyclotomic_orders import CyclotomicFactorizer, default_factorizer, divisors
from gaussromanov.romanov_series import (
    HEAD_BOUND,
    E_partial,
    F_of,
    G_of,
    IncompleteFactorization,
    brute_force_G,
    build_ledger,
    distinct_prime_factor_count_D,
    mertens_odd_product_check,
    nth_odd_prime,
    odd_prime_square_product,
    romanov_partial_sum,
    tail_bound_assembly,
)

F = Fraction


@pytest.fixture(scope="module")
def ledger():
    return build_ledger(72)


@pytest.mark.parametrize("e, value", [(1, F(1)), (2, F(6, 5)), (4, F(36, 25))])
def test_F_examples(e, value):
    assert F_of(e) == value


@pytest.mark.parametrize("e, value", [(1, F(1)), (2, F(1, 5)), (3, F(1, 13)), (4, F(6, 25))])
def test_G_examples(e, value):
    assert G_of(e) == value


@pytest.mark.parametrize("e, value", [(1, F(1)), (2, F(1, 5)), (4, F(6, 25))])
def test_brute_force_G_examples(e, value):
    assert brute_force_G(e) == value


@pytest.mark.parametrize("E, value", [(1, F(1)), (2, F(11, 10)), (4, F(1156, 975))])
def test_partial_sum_examples(E, value):
    assert romanov_partial_sum(E) == value


def test_partial_sum_decimal():
    assert float(romanov_partial_sum(4)) == pytest.approx(1.185641, abs=1e-6)


@pytest.mark.parametrize("x, value", [(1, F(1)), (2, F(6, 5))])
def test_E_partial_examples(x, value):
    assert E_partial(x) == value


def test_rejects_bad_exponent():
    with pytest.raises(ValueError):
        F_of(0)


def test_exact_mode_refuses_incomplete():
    weak = CyclotomicFactorizer(effort=1)
    with pytest.raises(IncompleteFactorization):
        romanov_partial_sum(53, factorizer=weak)
    lower = romanov_partial_sum(53, exact=False, factorizer=weak)
    assert lower <= romanov_partial_sum(53)
    ledger = build_ledger(53, weak)
    assert ledger[52].complete and not ledger[53].complete


def test_mobius_consistency(ledger):
    for e in range(1, 73):
        assert sum(ledger[d].G for d in divisors(e)) == ledger[e].F


def test_oracle_equality(ledger):
    for e in range(1, 25):
        assert brute_force_G(e) == ledger[e].G, e


def test_head_bound_monotone(ledger):
    assert ledger.complete
    prev_S, prev_E = F(0), F(0)
    for x in ledger.entries:
        assert prev_S <= x.S < F(HEAD_BOUND)
        assert prev_E <= x.E
        prev_S, prev_E = x.S, x.E


def test_growth_corridor(ledger):
    for x in range(8, 73):
        assert ledger[x].E <= 4 * math.log(x) ** 2


def test_ledger_csv(ledger):
    text = build_ledger(4).to_csv().splitlines()
    assert text[0] == "e,F_num,F_den,G_num,G_den,partial_S_num,partial_S_den,complete"
    assert text[-1] == "4,36,25,6,25,1156,975,true"


def test_D_examples():
    assert distinct_prime_factor_count_D(4) == (3, True)
    assert distinct_prime_factor_count_D(8) == (6, True)
    with pytest.raises(ValueError):
        distinct_prime_factor_count_D(1)


def test_D_primes_have_odd_norm():
    fz = default_factorizer()
    for k in range(2, 73):
        assert all(p.norm % 2 for p in fz.factorization(k).primes())


def test_nth_odd_prime():
    assert (nth_odd_prime(1), nth_odd_prime(2), nth_odd_prime(209)) == (3, 5, 1291)


def test_tail_examples():
    assert tail_bound_assembly(200, 3.33018, 3.997993, -7.503313, 3.5206, 0.999749) == pytest.approx(0.57749, abs=2e-5)
    assert tail_bound_assembly(1.0000001, 0, 0, 0, 1, 1) == pytest.approx(1, abs=1e-6)
    assert tail_bound_assembly(200, 0, 0, 0, 0, 1) == 0
    with pytest.raises(ValueError):
        tail_bound_assembly(1, 0, 0, 0, 1, 1)


@pytest.mark.parametrize("x0, a, b, c", [(200, 3.997993, -7.503313, 3.5206), (50, 1, 0, 0), (10, 0, 2, -1)])
def test_tail_against_quadrature(x0, a, b, c):
    f = lambda t: (a * math.log(t) ** 2 + b * math.log(t) + c) / t**2
    numeric, _ = integrate.quad(f, x0, math.inf, limit=200)
    assert tail_bound_assembly(x0, 0, a, b, c, 1) == pytest.approx(numeric, rel=1e-8)


def test_odd_prime_square_product():
    assert odd_prime_square_product(1) == F(64, 81)
    assert odd_prime_square_product(2) == F(64, 81) * F(576, 625)
    approx = math.prod((1 - 1 / p**2) ** 2 for p in (3, 5, 7, 11, 13))
    assert float(odd_prime_square_product(5)) == pytest.approx(approx, rel=1e-12)


@pytest.mark.parametrize("x, lo", [(74, 0), (1000, 0), (10**6, 0.9)])
def test_mertens_odd_product(x, lo):
    assert lo < mertens_odd_product_check(x) <= 1


def test_mertens_domain():
    with pytest.raises(ValueError):
        mertens_odd_product_check(73)
