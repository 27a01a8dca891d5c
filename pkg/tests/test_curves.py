"""Branch expansions on plane curves and the log-derivative identity.

The identity test recombines the certified log coefficients with the
function series through scalar arithmetic only, so it catches errors in
either the series inversion or the coefficientwise integration."""

import random

import pytest

from padictori import (
    PadicContext,
    PlaneCurve,
    RationalFunction,
    ZeroFunction,
    dlog_numerator,
    hensel_branch,
    log_series_on_disc,
    ord_at,
    scalar_from_ring_element,
)
from padictori.curves import eval_function_series, rs_eval_bivar
from padictori.errors import PointNotOnCurve, SingularPoint
from fractions import Fraction


def test_branch_on_the_line_is_linear():
    ctx = PadicContext(7, 6)
    R = ctx.ring(6)
    curve = PlaneCurve({(1, 0): 1, (0, 1): 1, (0, 0): -1})
    br = hensel_branch(curve, R, R.from_int(3), R.from_int(-2), 5)
    assert br.xs[:2] == [R.from_int(3), R.one()]
    assert br.ys[0] == R.from_int(-2)
    assert br.ys[1] == R.from_int(-1)
    assert all(R.is_zero(c) for c in br.ys[2:])


def random_graph_curve(rng, p):
    """y = g(x) with small integer g, plus a center on the reduction."""
    g = [rng.randrange(-4, 5) for _ in range(rng.randrange(2, 5))]
    h = {(0, 1): 1}
    for i, c in enumerate(g):
        if c:
            h[(i, 0)] = h.get((i, 0), 0) - c
    x0 = rng.randrange(p)
    y0 = sum(c * x0**i for i, c in enumerate(g)) % p
    return PlaneCurve(h), x0, y0


def test_branch_satisfies_curve_equation():
    rng = random.Random(33)
    for _ in range(15):
        p = rng.choice((5, 7))
        ctx = PadicContext(p, 5)
        R = ctx.ring(5)
        curve, x0, y0 = random_graph_curve(rng, p)
        br = hensel_branch(curve, R, R.from_int(x0), R.from_int(y0), 8)
        residue = rs_eval_bivar(R, curve.h, br.xs, br.ys, 9)
        assert all(R.is_zero(c) for c in residue)


def test_branch_rejects_bad_centers():
    ctx = PadicContext(5, 4)
    R = ctx.ring(4)
    line = PlaneCurve({(1, 0): 1, (0, 1): 1, (0, 0): -1})
    with pytest.raises(PointNotOnCurve):
        hensel_branch(line, R, R.from_int(1), R.from_int(1), 4)
    node = PlaneCurve({(2, 0): 1, (0, 2): -1})  # x^2 = y^2, singular at 0
    with pytest.raises(SingularPoint):
        hensel_branch(node, R, R.from_int(0), R.from_int(0), 4)


def test_function_series_on_branch():
    ctx = PadicContext(7, 6)
    R = ctx.ring(6)
    curve = PlaneCurve({(1, 0): 1, (0, 1): 1, (0, 0): -1})
    br = hensel_branch(curve, R, R.from_int(2), R.from_int(-1), 6)
    fx = eval_function_series(br, RationalFunction({(1, 0): 1}, {(0, 0): 1}))
    assert fx[:2] == [R.from_int(2), R.one()]
    fy = eval_function_series(br, RationalFunction({(0, 1): 1}, {(0, 0): 1}))
    assert fy[0] == R.from_int(-1)
    assert fy[1] == R.from_int(-1)


def test_ord_at_matches_dlog_zero_order():
    # f = x*y on x+y=1: the dlog numerator vanishes to order 1 at x=1/2
    curve = PlaneCurve({(1, 0): 1, (0, 1): 1, (0, 0): -1})
    fn = RationalFunction({(1, 1): 1}, {(0, 0): 1})
    ctxF = PadicContext(7, 2).residue_field()
    A = dlog_numerator(curve, fn)
    half = pow(2, -1, 7)
    assert ord_at(curve, ctxF, A, ctxF.from_int(half), ctxF.from_int(half)) == 1
    assert ord_at(curve, ctxF, A, ctxF.from_int(3), ctxF.from_int(-2)) == 0


def check_log_derivative_identity(rng, p, order=9):
    """(log f)' * f == f' as certified series on a random disc."""
    ctx = PadicContext(p, 6)
    R = ctx.ring(6)
    curve, x0, y0 = random_graph_curve(rng, p)
    num = {}
    for _ in range(rng.randrange(1, 4)):
        num[(rng.randrange(0, 3), rng.randrange(0, 2))] = rng.randrange(-5, 6)
    num[(0, 0)] = num.get((0, 0), 0)
    fn_num = {k: v for k, v in num.items() if v}
    if not fn_num:
        fn_num = {(0, 0): 1}
    fn = RationalFunction(fn_num, {(0, 0): 1})
    val0 = sum(
        c * x0**i * y0**j for (i, j), c in fn.num.items()
    ) % p
    if val0 == 0:
        return False
    series = log_series_on_disc(curve, fn, ctx, (x0,), (y0,), order)
    br = hensel_branch(curve, R, R.from_int(x0), R.from_int(y0), order)
    fs = [
        scalar_from_ring_element(ctx, c)
        for c in eval_function_series(br, fn)
    ]
    c = series.coeffs
    for k in range(order):
        lhs = ctx.zero()
        for i in range(k + 1):
            term = c[i + 1].scale_rational(Fraction(i + 1)) * fs[k - i]
            lhs = lhs + term
        rhs = fs[k + 1].scale_rational(Fraction(k + 1))
        assert (lhs - rhs).is_zeroish
    return True


def test_log_derivative_identity_random_discs():
    rng = random.Random(55)
    done = 0
    while done < 12:
        if check_log_derivative_identity(rng, rng.choice((5, 7))):
            done += 1


def test_zero_function_rejected():
    with pytest.raises(ZeroFunction):
        PlaneCurve({})
