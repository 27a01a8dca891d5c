"""Scalar layer: fixed-precision p-adic arithmetic, Teichmueller lifts,
Frobenius, and the logarithm. Expected values come from exact rational
summation oracles computed in the tests themselves."""

import random
from fractions import Fraction

import pytest

from padictori import (
    NotAUnit,
    PadicContext,
    PrecisionExhausted,
    frobenius,
    log_unit,
    scalar_from_rational,
    scalar_from_ring_element,
    teichmueller,
)


def int_rep(s, k):
    """Integer representative of a prime-field scalar mod p^k."""
    assert s.ctx.f_deg == 1
    assert not s.is_zeroish
    assert s.abs_precision() >= k
    return s.ctx.p**s.v * s.unit[0] % s.ctx.p**k


def log_oracle_mod(u, p, k, terms=40):
    """log of a 1-unit u by exact Fraction summation, reduced mod p^k.

    Valid when u = 1 + p*w with w integral; the tail beyond `terms` has
    valuation far above k for every input used here."""
    x = Fraction(u) - 1
    total = Fraction(0)
    power = Fraction(1)
    for m in range(1, terms + 1):
        power *= x
        total += Fraction((-1) ** (m + 1), m) * power
    a, b = total.numerator, total.denominator
    assert b % p != 0
    return a * pow(b, -1, p**k) % p**k


def test_log_of_six_matches_rational_summation():
    # oracle first: the exact alternating sum gives 55 mod 125
    assert log_oracle_mod(6, 5, 3) == 55
    ctx = PadicContext(5, 3)
    s = log_unit(scalar_from_rational(ctx, 6))
    assert int_rep(s, 3) == 55


def test_log_against_oracle_more_one_units():
    ctx = PadicContext(7, 6)
    for u in (8, 50, 1 + 7 * 3, 1 + 49 * 2, 1 - 7 * 5):
        want = log_oracle_mod(u, 7, 6)
        got = log_unit(scalar_from_rational(ctx, u))
        if want == 0:
            assert got.is_zeroish
        else:
            assert int_rep(got, 6) == want


def test_log_is_a_homomorphism():
    ctx = PadicContext(7, 8)
    rng = random.Random(71)
    for _ in range(100):
        a = rng.randrange(1, 7**8)
        b = rng.randrange(1, 7**8)
        if a % 7 == 0 or b % 7 == 0:
            continue
        la = log_unit(scalar_from_rational(ctx, a))
        lb = log_unit(scalar_from_rational(ctx, b))
        lab = log_unit(scalar_from_rational(ctx, a * b))
        diff = la + lb - lab
        assert diff.is_zeroish


def test_log_rejects_non_units():
    ctx = PadicContext(5, 4)
    with pytest.raises(NotAUnit):
        log_unit(scalar_from_rational(ctx, 10))
    with pytest.raises(NotAUnit):
        log_unit(ctx.zero())


def test_teichmueller_laws_prime_field():
    ctx = PadicContext(5, 6)
    one = ctx.from_rational(1)
    for u in range(1, 5):
        w = teichmueller(scalar_from_rational(ctx, u))
        assert (w**4 - one).is_zeroish
        assert log_unit(w).is_exact_zero
        assert (frobenius(w) - w**5).is_zeroish


def test_teichmueller_laws_f49():
    # every unit of F_49, lifted at N=6
    ctx = PadicContext(7, 6, f_deg=2)
    R = ctx.ring(6)
    one = ctx.from_rational(1)
    count = 0
    for a in range(7):
        for b in range(7):
            if a == 0 and b == 0:
                continue
            x = scalar_from_ring_element(ctx, R.from_coeffs((a, b)))
            w = teichmueller(x)
            assert (w**48 - one).is_zeroish
            assert log_unit(w).is_exact_zero
            assert (frobenius(w) - w**7).is_zeroish
            count += 1
    assert count == 48


def test_scalar_field_ops_match_fractions():
    ctx = PadicContext(7, 8)
    rng = random.Random(5)
    for _ in range(60):
        a = Fraction(rng.randrange(-200, 200), rng.choice((1, 2, 3, 4, 5, 6)))
        b = Fraction(rng.randrange(-200, 200), rng.choice((1, 2, 3, 4, 5, 6)))
        sa = scalar_from_rational(ctx, a)
        sb = scalar_from_rational(ctx, b)
        for op, val in (
            (sa + sb, a + b),
            (sa - sb, a - b),
            (sa * sb, a * b),
        ):
            ref = scalar_from_rational(ctx, val)
            assert (op - ref).is_zeroish


def test_scale_rational_is_exact():
    ctx = PadicContext(5, 6)
    s = scalar_from_rational(ctx, 35)
    t = s.scale_rational(Fraction(1, 5))
    assert (t - scalar_from_rational(ctx, 7)).is_zeroish
    # dividing by p drops the valuation, not the unit digits
    assert t.v == s.v - 1


def test_exhausted_scalar_raises_on_valuation():
    ctx = PadicContext(5, 4)
    a = scalar_from_rational(ctx, 1)
    b = scalar_from_rational(ctx, 1 + 5**4)
    d = a - b  # zero at working precision, valuation unknowable
    assert d.is_zeroish
    if d.exhausted:
        with pytest.raises(PrecisionExhausted):
            d.valuation()


def test_valuations_add_under_multiplication():
    ctx = PadicContext(3, 7)
    rng = random.Random(9)
    for _ in range(40):
        a = rng.randrange(1, 3**6)
        b = rng.randrange(1, 3**6)
        sa = scalar_from_rational(ctx, a)
        sb = scalar_from_rational(ctx, b)
        va = Fraction(a).numerator
        vb = Fraction(b).numerator
        ka = 0
        while va % 3 == 0:
            va //= 3
            ka += 1
        kb = 0
        while vb % 3 == 0:
            vb //= 3
            kb += 1
        assert (sa * sb).v == ka + kb
