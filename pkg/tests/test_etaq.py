import random
from fractions import Fraction

import pytest
from sympy.functions.combinatorial.numbers import jacobi_symbol, kronecker_symbol

from qcong.etaq import (
    EtaQuotient,
    divisors,
    factorize,
    form_meta,
    index_gamma0,
    is_prime,
    kronecker,
    min_level,
    pow2_family_hypothesis,
    pow2_family_quotient,
    pow2_family_table,
    primepow_family_hypothesis,
    primepow_family_quotient,
    primepow_family_table,
    squarefree_kernel,
    sturm_bound,
)


# --- small number theory ------------------------------------------------------

def test_factorize():
    assert factorize(1) == {}
    assert factorize(768) == {2: 8, 3: 1}
    assert factorize(2304) == {2: 8, 3: 2}


def test_divisors():
    assert divisors(14) == [1, 2, 7, 14]
    assert len(divisors(768)) == 18


def test_is_prime():
    assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(1)


def test_kronecker_against_sympy():
    rng = random.Random(11)
    for _ in range(200):
        a = rng.randint(-60, 60)
        n = rng.randint(1, 60)
        assert kronecker(a, n) == kronecker_symbol(a, n)
    # odd positive n must also agree with the Jacobi symbol
    for _ in range(100):
        a = rng.randint(-60, 60)
        n = rng.choice(range(1, 80, 2))
        assert kronecker(a, n) == jacobi_symbol(a, n)


def test_squarefree_kernel():
    assert squarefree_kernel(Fraction(12)) == 3
    assert squarefree_kernel(Fraction(-4)) == -1
    assert squarefree_kernel(Fraction(9, 4)) == 1
    assert squarefree_kernel(Fraction(-18)) == -2


def test_index_gamma0():
    assert index_gamma0(1) == 1
    assert index_gamma0(2) == 3
    assert index_gamma0(4) == 6
    assert index_gamma0(14) == 24
    assert index_gamma0(768) == 1536


def test_sturm_bound():
    assert sturm_bound(390, 4) == 195
    assert sturm_bound(12, 1) == 1


# --- quotients ----------------------------------------------------------------

def test_quotient_normalizes_exponents():
    eq = EtaQuotient(4, {1: 2, "1": 3, 2: 0})
    assert eq.exponents == {1: 5}
    with pytest.raises(ValueError):
        EtaQuotient(0, {1: 1})
    with pytest.raises(ValueError):
        EtaQuotient(4, {0: 1})


def test_discriminant_weight_and_conditions():
    # eta(z)^816 / eta(2z)^36 on level 4
    eq = EtaQuotient(4, {1: 816, 2: -36})
    assert eq.weight() == 390
    assert eq.cond24() == (True, True)
    assert eq.sturm() == 195
    assert eq.character_discriminant() == 1
    holo, orders = eq.is_holomorphic()
    assert holo and set(orders) == {1, 2, 4}


def test_delta_cusp_order():
    # eta(z)^24 is the discriminant form: simple zero at the one cusp
    eq = EtaQuotient(1, {1: 24})
    assert eq.cusp_order(1) == 1
    assert eq.sturm() == 1


def test_cusp_order_rejects_non_divisor():
    eq = EtaQuotient(4, {1: 816, 2: -36})
    with pytest.raises(ValueError):
        eq.cusp_order(3)


def test_half_integral_weight_has_no_sturm():
    eq = primepow_family_quotient(5, 1, 1, 5)
    assert eq.weight() == Fraction(15, 2)
    assert not eq.weight_is_integral()
    with pytest.raises(ValueError):
        eq.sturm()
    with pytest.raises(ValueError):
        eq.character_discriminant()
    meta = form_meta(eq)
    assert meta.sturm is None and meta.character_discriminant is None


def test_scale_outside_level_is_tolerated():
    # the certificate families put eta(72z) on a level 72 does not divide;
    # the second 24-condition is then evaluated as an exact rational
    eq = EtaQuotient(768, {24: 1, 72: -1, 96: 1, 48: -1})
    c1, c2 = eq.cond24()
    assert isinstance(c1, bool) and isinstance(c2, bool)


# --- the smallest working level -------------------------------------------------

def test_min_level_pow2_family():
    r = pow2_family_quotient(1, 1, 2).exponents
    assert min_level(r, 96) == 768


def test_min_level_primepow_family():
    # the published level is 2304 but the conditions already close at 384
    r = primepow_family_quotient(5, 1, 1, 5).exponents
    assert min_level(r, 96) == 384


def test_min_level_rejects_broken_first_condition():
    with pytest.raises(ValueError):
        min_level({1: 1}, 96)


# --- the two certificate families ----------------------------------------------

POW2_GRID = [(a, m, k) for a in (1, 2, 3) for m in (1, 3, 5) for k in (2, 3, 4, 5)]


@pytest.mark.parametrize("alpha,m,k", POW2_GRID)
def test_pow2_table_is_sign_faithful(alpha, m, k):
    eq = pow2_family_quotient(alpha, m, k)
    orders = eq.cusp_orders()
    for group, value in pow2_family_table(alpha, m, k):
        for d in group:
            order = orders[d]
            assert (value > 0) == (order > 0) and (value < 0) == (order < 0), (
                d, value, order)


@pytest.mark.parametrize("alpha,m,k", [(1, 1, 2), (1, 3, 3), (2, 1, 3), (2, 5, 5), (3, 7, 6)])
def test_pow2_hypothesis_gives_holomorphy(alpha, m, k):
    assert pow2_family_hypothesis(alpha, m, k)
    holo, _ = pow2_family_quotient(alpha, m, k).is_holomorphic()
    assert holo


def test_pow2_hypothesis_boundary():
    assert not pow2_family_hypothesis(1, 1, 1)     # k must reach 2
    assert not pow2_family_hypothesis(5, 7, 2)     # 9 >= 28 fails
    with pytest.raises(ValueError):
        pow2_family_quotient(1, 2, 2)              # even m


@pytest.mark.parametrize("p,a,k,t", [(5, 1, 1, 5), (5, 1, 2, 25), (7, 1, 1, 7),
                                     (11, 1, 1, 11), (13, 1, 2, 13)])
def test_primepow_hypothesis_gives_holomorphy(p, a, k, t):
    assert primepow_family_hypothesis(p, a, k, t)
    holo, _ = primepow_family_quotient(p, a, k, t).is_holomorphic()
    assert holo


def test_primepow_validation():
    with pytest.raises(ValueError):
        primepow_family_quotient(4, 1, 1, 4)       # p not prime
    with pytest.raises(ValueError):
        primepow_family_quotient(5, 1, 1, 6)       # t not a multiple of p^a
    with pytest.raises(ValueError):
        primepow_family_quotient(5, 1, 1, 15)      # t picks up the prime 3


def test_primepow_table_is_not_sign_faithful():
    """The published rows for the level-2304 family are weaker than the raw
    cusp orders: at (5, 1, 2, 35) the hypothesis holds and every cusp order
    is nonnegative, yet the last row evaluates to 2*125 + 8*(1-35) = -22.
    Pin the point so the divergence stays documented."""
    p, a, k, t = 5, 1, 2, 35
    assert primepow_family_hypothesis(p, a, k, t)
    holo, orders = primepow_family_quotient(p, a, k, t).is_holomorphic()
    assert holo and all(v >= 0 for v in orders.values())
    table = primepow_family_table(p, a, k, t)
    assert table[-1][1] == -22


def test_primepow_table_rows_at_base_points():
    for (p, a, k, t) in [(5, 1, 1, 5), (7, 1, 1, 7), (11, 1, 2, 11)]:
        assert primepow_family_hypothesis(p, a, k, t)
        assert all(value >= 0 for _, value in primepow_family_table(p, a, k, t))


def test_random_quotients_meta_is_consistent():
    rng = random.Random(5)
    for _ in range(20):
        level = rng.choice([1, 2, 4, 6, 8, 12, 24])
        exps = {d: rng.randint(-6, 6) for d in divisors(level) if rng.random() < 0.7}
        if not any(exps.values()):
            exps = {1: 1}
        eq = EtaQuotient(level, exps)
        meta = form_meta(eq)
        assert meta.weight == Fraction(sum(eq.exponents.values()), 2)
        assert meta.holomorphic == all(v >= 0 for v in meta.cusp_orders.values())
        if meta.weight_is_integral:
            assert meta.sturm == sturm_bound(int(meta.weight), level)
