"""Slope predictions on residue discs and the numeric bounds."""

import math
import random
from fractions import Fraction

import pytest

from padictori import (
    HypothesisViolated,
    PadicContext,
    PlaneCurve,
    RationalFunction,
    boundary_projections,
    log_series_on_disc,
    pair_log_minor,
    predict_slopes,
    ramification_bound,
    scalar_from_rational,
    torsion_image_bound,
    verify_slopes,
)
from padictori.errors import ZeroColumn

T_LINE = PlaneCurve({(0, 1): 1})


def fn_of_x(num, den=(1,)):
    return RationalFunction(
        {(i, 0): c for i, c in enumerate(num) if c},
        {(i, 0): c for i, c in enumerate(den) if c},
    )


def test_log_disc_coefficients_match_log_series():
    # log(1+t) on the disc at t=0: coefficients are (-1)^(m+1)/m exactly
    ctx = PadicContext(7, 8)
    series = log_series_on_disc(T_LINE, fn_of_x((1, 1)), ctx, (0,), (0,), 12)
    assert series.coeffs[0].is_zeroish
    for m in range(1, 13):
        want = scalar_from_rational(ctx, Fraction((-1) ** (m + 1), m))
        assert (series.coeffs[m] - want).is_zeroish


def test_torus_chart_slopes_match():
    ctx = PadicContext(5, 12)
    rep = verify_slopes(T_LINE, fn_of_x((0, 1)), ctx, (1,), (0,), 130)
    assert rep.verdict == "match"
    assert rep.k == 1
    assert [(i, Fraction(v)) for i, v in rep.computed.vertices] == [
        (1, 0), (5, -1), (25, -2), (125, -3)
    ]
    assert rep.computed.all_slopes() == [
        (Fraction(1, 4), 4),
        (Fraction(1, 20), 20),
        (Fraction(1, 100), 100),
    ]


def test_order_two_zero_gives_half_slope():
    # f = x*y on x+y=1 at x = 1/2: df/f has a simple zero, so k = 2 and the
    # first face right of k has slope 1/(2(p-1))
    curve = PlaneCurve({(1, 0): 1, (0, 1): 1, (0, 0): -1})
    fn = RationalFunction({(1, 1): 1}, {(0, 0): 1})
    ctx = PadicContext(7, 12)
    half = pow(2, -1, 7)
    rep = verify_slopes(curve, fn, ctx, (half,), (half,), 60)
    assert rep.k == 2
    assert rep.predicted.predicted_slopes[0] == (Fraction(1, 12), 12)
    assert rep.computed.negative_slopes()[0] == (Fraction(1, 12), 12)


def test_predict_slopes_formulas():
    pred = predict_slopes(1, None, 5, max_index=130)
    assert pred.predicted_vertices == ((1, 0), (5, -1), (25, -2), (125, -3))
    pred2 = predict_slopes(2, 1, 7, max_index=100)
    assert pred2.predicted_slopes[0] == (Fraction(1, 12), 12)
    with pytest.raises(HypothesisViolated):
        predict_slopes(7, 1, 7)


def test_pair_log_minor_proportional_logs_vanish():
    # f and f^2 have proportional logs on any pair of discs
    ctx = PadicContext(7, 6)
    f = fn_of_x((1, 1))
    f2 = fn_of_x((1, 2, 1))
    z1 = ((0,), (0,))
    z2 = ((1,), (0,))
    minor = pair_log_minor(T_LINE, f, f2, ctx, z1, z2, 4)
    assert minor.zero_to_truncation
    g = fn_of_x((2, 1))
    minor2 = pair_log_minor(T_LINE, f, g, ctx, z1, z2, 4)
    assert not minor2.zero_to_truncation


def test_ramification_bound_values():
    assert ramification_bound(0, 4) == (4, None)
    assert ramification_bound(0, 4, 5) == (4, True)
    assert ramification_bound(0, 4, 3) == (4, False)
    assert ramification_bound(2, 3, 7) == (7, True)
    with pytest.raises(HypothesisViolated):
        ramification_bound(-1, 2)


def torsion_bound_oracle(g, p):
    return p ** (4 * g) * 3**g * (p * (2 * g - 2) + 6 * g) * math.factorial(g)


def test_torsion_image_bound_values():
    assert torsion_bound_oracle(2, 5) == 154687500
    assert torsion_bound_oracle(2, 3) == 2125764
    assert torsion_image_bound(2, 5) == 154687500
    assert torsion_image_bound(2, 3) == 2125764
    for g, p in ((2, 7), (3, 5), (4, 11)):
        assert torsion_image_bound(g, p) == torsion_bound_oracle(g, p)
    with pytest.raises(HypothesisViolated):
        torsion_image_bound(1, 5)


def test_boundary_projections_annihilate_columns():
    rng = random.Random(77)
    for _ in range(50):
        n = rng.randrange(2, 5)
        m = rng.randrange(1, 4)
        a = [[rng.randrange(-6, 7) for _ in range(m)] for _ in range(n)]
        for j in range(m):
            if all(a[i][j] == 0 for i in range(n)):
                a[rng.randrange(n)][j] = 1
        maps = boundary_projections(a)
        assert len(maps) == m
        for j, rows in enumerate(maps):
            assert len(rows) == n - 1
            for row in rows:
                assert sum(row[k] * a[k][j] for k in range(n)) == 0
                assert any(row)


def test_boundary_projections_zero_column_rejected():
    with pytest.raises(ZeroColumn):
        boundary_projections([[0, 1], [0, 2]])
