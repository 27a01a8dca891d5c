"""Rational series and Newton polygons. The hull tests build polynomials
from roots with planted valuations, so the polygon output is checked
against ground truth rather than against the hull code itself."""

import random
from fractions import Fraction

import pytest

from padictori import (
    ValuedSeries,
    ZeroSeries,
    formal_exp,
    formal_log,
    log_one_plus_t,
    poly_newton_polygon,
    series_newton_polygon,
)


def poly_from_roots(roots, lead=Fraction(1)):
    coeffs = [lead]
    for r in roots:
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] -= c * r
        coeffs = nxt
    return coeffs


def planted_root(rng, p):
    """p^a * unit with the unit's numerator and denominator coprime to p."""
    a = rng.randrange(0, 4)
    num = rng.choice([n for n in range(1, 30) if n % p])
    den = rng.choice([n for n in range(1, 30) if n % p])
    sign = rng.choice((1, -1))
    return Fraction(sign * num * p**a, den), a


def test_log_series_polygon_small():
    s = log_one_plus_t(5, 126)
    poly = series_newton_polygon(s)
    assert poly.vertices == [(1, 0), (5, -1), (25, -2), (125, -3)]
    assert poly.negative_slopes() == [
        (Fraction(1, 4), 4),
        (Fraction(1, 20), 20),
        (Fraction(1, 100), 100),
    ]


def test_formal_log_matches_direct_series():
    for p in (3, 5, 7):
        s = ValuedSeries(p, [1, 1], trunc=40)
        assert formal_log(s).coeffs == log_one_plus_t(p, 40).coeffs


def test_log_exp_round_trip():
    rng = random.Random(17)
    for p in (3, 5):
        for _ in range(10):
            coeffs = [Fraction(1)] + [
                Fraction(rng.randrange(-9, 10), rng.randrange(1, 5))
                for _ in range(8)
            ]
            s = ValuedSeries(p, coeffs)
            back = formal_exp(formal_log(s))
            assert back.coeffs == s.coeffs
    z = ValuedSeries(7, [0] + [Fraction(i, i + 1) for i in range(1, 9)])
    assert formal_log(formal_exp(z)).coeffs == z.coeffs


def test_hull_matches_planted_root_valuations():
    rng = random.Random(23)
    for _ in range(150):
        p = rng.choice((2, 3, 5, 7))
        deg = rng.randrange(1, 9)
        roots = []
        vals = []
        for _ in range(deg):
            r, a = planted_root(rng, p)
            roots.append(r)
            vals.append(a)
        lead = Fraction(rng.choice([n for n in range(1, 20) if n % p]))
        coeffs = poly_from_roots(roots, lead)
        poly = poly_newton_polygon(coeffs, p)
        got = []
        for slope, length in poly.negative_slopes():
            assert slope.denominator == 1
            got.extend([int(slope)] * length)
        want = sorted((v for v in vals if v > 0), reverse=True)
        assert sorted(got, reverse=True) == want
        # roots of valuation zero fill the remaining hull length
        assert poly.zero_count(0) == deg


def test_hull_certified_faces_only_for_truncated_series():
    # the descending face that ends at the truncation index stays provisional
    s = log_one_plus_t(5, 25)
    poly = series_newton_polygon(s)
    assert poly.vertices == [(1, 0), (5, -1)]
    assert (25, Fraction(-2)) in [
        (i, Fraction(v)) for i, v in poly.provisional_vertices
    ]


def test_exact_polynomial_polygon_has_no_provisional_part():
    coeffs = poly_from_roots([Fraction(5), Fraction(1, 5), Fraction(3)])
    poly = poly_newton_polygon(coeffs, 5)
    assert poly.provisional_vertices == []
    assert poly.exact


def test_slopes_decrease_left_to_right():
    rng = random.Random(41)
    for _ in range(60):
        p = rng.choice((3, 5))
        deg = rng.randrange(2, 9)
        coeffs = [
            Fraction(rng.randrange(-50, 51)) * p ** rng.randrange(0, 5)
            for _ in range(deg)
        ] + [Fraction(1)]
        poly = poly_newton_polygon(coeffs, p)
        slopes = [s for s, _ in poly.all_slopes()]
        assert all(a > b for a, b in zip(slopes, slopes[1:]))


def test_zero_series_rejected():
    with pytest.raises(ZeroSeries):
        series_newton_polygon(ValuedSeries(5, [0, 0, 0]))
