"""Affine plane curves and local branch expansions.

A curve is an irreducible h in Z[x, y]. At a point of the reduction that
is smooth, one coordinate serves as the local parameter T and the other
is expanded as a power series by Newton iteration. The same code runs
over a residue field (exact mod-p expansions, used for orders of
vanishing) and over Z/p^N or its unramified extensions (p-adic disc
expansions, used for slope analysis).
"""

from __future__ import annotations

from dataclasses import dataclass

from .bipolys import (
    fb_eval,
    fb_from_int,
    zb_deriv_x,
    zb_deriv_y,
    zb_mul,
    zb_sub,
    zb_to_ypolys,
    zb_trim,
)
from .errors import (
    DivisionByZero,
    PointNotOnCurve,
    PoleOnDisc,
    SingularPoint,
    ZeroFunction,
)
from .rings import ResidueRing


def ring_is_unit(R, x) -> bool:
    if hasattr(R, "is_unit"):
        return R.is_unit(x)
    return not R.is_zero(x)


def element_from_ints(R, coeffs):
    """Build a ring or field element from integer coefficients in the
    generator (a bare int means a constant)."""
    if isinstance(coeffs, int):
        return R.from_int(coeffs)
    coeffs = list(coeffs)
    if len(coeffs) <= 1:
        return R.from_int(coeffs[0] if coeffs else 0)
    acc = R.zero()
    gpow = R.one()
    g = R.gen()
    for c in coeffs:
        acc = R.add(acc, R.mul(R.from_int(c), gpow))
        gpow = R.mul(gpow, g)
    return acc


# ---------------------------------------------------------------------------
# power series with ring coefficients (exact mod p^N arithmetic)
# ---------------------------------------------------------------------------


def rs_zeros(R, n: int) -> list:
    return [R.zero() for _ in range(n)]


def rs_pad(R, a: list, n: int) -> list:
    if len(a) >= n:
        return list(a[:n])
    return list(a) + rs_zeros(R, n - len(a))


def rs_add(R, a: list, b: list) -> list:
    n = max(len(a), len(b))
    a, b = rs_pad(R, a, n), rs_pad(R, b, n)
    return [R.add(x, y) for x, y in zip(a, b)]


def rs_sub(R, a: list, b: list) -> list:
    n = max(len(a), len(b))
    a, b = rs_pad(R, a, n), rs_pad(R, b, n)
    return [R.sub(x, y) for x, y in zip(a, b)]


def rs_scale(R, a: list, s) -> list:
    return [R.mul(x, s) for x in a]


def rs_mul(R, a: list, b: list, n: int) -> list:
    out = rs_zeros(R, n)
    for i, x in enumerate(a):
        if i >= n or R.is_zero(x):
            continue
        for j, y in enumerate(b):
            if i + j >= n:
                break
            if R.is_zero(y):
                continue
            out[i + j] = R.add(out[i + j], R.mul(x, y))
    return out


def rs_invert(R, a: list, n: int) -> list:
    """Multiplicative inverse mod T^n; the constant term must be a unit."""
    if not a or not ring_is_unit(R, a[0]):
        raise DivisionByZero("series constant term is not a unit")
    a = rs_pad(R, a, n)
    out = rs_zeros(R, n)
    c0 = R.inv(a[0])
    out[0] = c0
    for k in range(1, n):
        acc = R.zero()
        for i in range(1, k + 1):
            acc = R.add(acc, R.mul(a[i], out[k - i]))
        out[k] = R.neg(R.mul(c0, acc))
    return out


def rs_deriv(R, a: list) -> list:
    return [R.mul(a[i], R.from_int(i)) for i in range(1, len(a))]


def rs_order(R, a: list):
    for i, c in enumerate(a):
        if not R.is_zero(c):
            return i
    return None


def rs_eval_int_poly(R, coeffs: list, xs: list, n: int) -> list:
    """Evaluate an integer polynomial at a ring series (Horner)."""
    acc: list = []
    for c in reversed(coeffs):
        acc = rs_mul(R, acc, xs, n) if acc else rs_zeros(R, n)
        acc[0] = R.add(acc[0], R.from_int(c))
    return acc if acc else rs_zeros(R, n)


def rs_eval_bivar(R, h: dict, xs: list, ys: list, n: int) -> list:
    """Evaluate an integer bivariate at a pair of ring series (Horner in y)."""
    rows = zb_to_ypolys(h)
    if not rows:
        return rs_zeros(R, n)
    acc = rs_eval_int_poly(R, rows[-1], xs, n)
    for row in reversed(rows[:-1]):
        acc = rs_mul(R, acc, ys, n)
        acc = rs_add(R, acc, rs_eval_int_poly(R, row, xs, n))
    return acc


# ---------------------------------------------------------------------------
# curve model
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PlaneCurve:
    """Irreducible affine model h(x, y) = 0 with integer coefficients."""

    h: dict

    def __post_init__(self):
        object.__setattr__(self, "h", zb_trim(dict(self.h)))
        if not self.h:
            raise ZeroFunction("the zero polynomial does not define a curve")

    @classmethod
    def from_pairs(cls, pairs):
        from .bipolys import zb_from_pairs

        return cls(zb_from_pairs(pairs))

    def hx(self) -> dict:
        return zb_deriv_x(self.h)

    def hy(self) -> dict:
        return zb_deriv_y(self.h)

    def degree(self) -> int:
        return max(i + j for i, j in self.h)

    def smooth_plane_genus(self) -> int:
        d = self.degree()
        return (d - 1) * (d - 2) // 2

    def reduce(self, F) -> dict:
        return fb_from_int(F, self.h)

    def is_point(self, F, x, y) -> bool:
        return F.is_zero(fb_eval(F, self.reduce(F), x, y))

    def is_smooth_at(self, F, x, y) -> bool:
        if not self.is_point(F, x, y):
            return False
        gx = fb_eval(F, fb_from_int(F, self.hx()), x, y)
        gy = fb_eval(F, fb_from_int(F, self.hy()), x, y)
        return not (F.is_zero(gx) and F.is_zero(gy))


@dataclass(frozen=True)
class RationalFunction:
    """Function num/den restricted to a curve; both parts in Z[x, y]."""

    num: dict
    den: dict

    def __post_init__(self):
        object.__setattr__(self, "num", zb_trim(dict(self.num)))
        object.__setattr__(self, "den", zb_trim(dict(self.den)))
        if not self.den:
            raise DivisionByZero("zero denominator")

    @classmethod
    def from_pairs(cls, num_pairs, den_pairs=(((0, 0), 1),)):
        from .bipolys import zb_from_pairs

        return cls(zb_from_pairs(num_pairs), zb_from_pairs(den_pairs))

    def __hash__(self):
        return hash(
            (tuple(sorted(self.num.items())), tuple(sorted(self.den.items())))
        )


@dataclass(frozen=True)
class DiscPoint:
    """Center of a residue disc, as integer coefficient tuples in the
    residue-field generator, plus the chosen local parameter."""

    x0: tuple
    y0: tuple
    param: str

    @classmethod
    def make(cls, x0, y0, param="x"):
        def norm(c):
            if isinstance(c, int):
                return (c,)
            return tuple(int(v) for v in c)

        return cls(norm(x0), norm(y0), param)


# ---------------------------------------------------------------------------
# branch expansion
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class BranchSeries:
    """Local parametrization of a curve at a smooth point of its
    reduction: T is x - x0 (param "x") or y - y0 (param "y"), and xs, ys
    are the coordinate series in T with coefficients exact in R."""

    R: object
    param: str
    xs: list
    ys: list
    trunc: int


def _residue_of(R, x):
    if isinstance(R, ResidueRing):
        return R.residue_field(), R.to_residue(x)
    return R, x


def hensel_branch(curve: PlaneCurve, R, x0, y0, trunc: int, param=None) -> BranchSeries:
    """Expand the branch of the curve through (x0, y0) to order T^trunc.

    (x0, y0) must reduce to a smooth point of the curve mod p. When the
    y-partial is a unit there, T = x - x0 and y is solved as a series;
    otherwise T = y - y0 and x is solved. Passing param forces the choice
    (the partial along the solved coordinate must then be a unit). Over
    Z/p^N the given center is first refined to an exact root before the
    series iteration."""
    F, xr = _residue_of(R, x0)
    _, yr = _residue_of(R, y0)
    hF = curve.reduce(F)
    if not F.is_zero(fb_eval(F, hF, xr, yr)):
        raise PointNotOnCurve("the center does not lie on the reduced curve")
    gx = fb_eval(F, fb_from_int(F, curve.hx()), xr, yr)
    gy = fb_eval(F, fb_from_int(F, curve.hy()), xr, yr)
    if F.is_zero(gx) and F.is_zero(gy):
        raise SingularPoint("both partials vanish at the center")
    if param is None:
        param = "x" if not F.is_zero(gy) else "y"
    if param == "x":
        if F.is_zero(gy):
            raise SingularPoint("y-partial is not a unit; cannot use T = x - x0")
        hwork = curve.h
        a0, b0 = x0, y0
    else:
        if F.is_zero(gx):
            raise SingularPoint("x-partial is not a unit; cannot use T = y - y0")
        hwork = {(j, i): c for (i, j), c in curve.h.items()}
        a0, b0 = y0, x0

    # refine the solved coordinate to an exact root mod p^N
    dh = zb_deriv_y(hwork)
    if isinstance(R, ResidueRing) and R.k > 1:
        steps = 1
        while (1 << steps) < R.k:
            steps += 1
        for _ in range(steps + 1):
            val = _zb_eval_ring(R, hwork, a0, b0)
            der = _zb_eval_ring(R, dh, a0, b0)
            b0 = R.sub(b0, R.mul(val, R.inv(der)))

    n = trunc + 1
    xs = rs_pad(R, [a0, R.one()], n)
    ys = rs_pad(R, [b0], n)
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        cx = xs[:prec]
        cy = ys[:prec]
        val = rs_eval_bivar(R, hwork, cx, cy, prec)
        der = rs_eval_bivar(R, dh, cx, cy, prec)
        upd = rs_mul(R, val, rs_invert(R, der, prec), prec)
        ys = rs_pad(R, rs_sub(R, cy, upd), n)
    if param == "x":
        return BranchSeries(R, "x", xs, ys, trunc)
    return BranchSeries(R, "y", ys, xs, trunc)


def _zb_eval_ring(R, h: dict, x, y):
    acc = R.zero()
    for (i, j), c in h.items():
        term = R.mul(R.from_int(c), R.mul(R.pow_(x, i), R.pow_(y, j)))
        acc = R.add(acc, term)
    return acc


def eval_function_series(branch: BranchSeries, fn: RationalFunction) -> list:
    """Series of num/den along the branch; the denominator must be a unit
    at the disc center."""
    R = branch.R
    n = branch.trunc + 1
    ns = rs_eval_bivar(R, fn.num, branch.xs, branch.ys, n)
    ds = rs_eval_bivar(R, fn.den, branch.xs, branch.ys, n)
    if not ring_is_unit(R, ds[0]):
        raise PoleOnDisc("denominator vanishes at the disc center")
    return rs_mul(R, ns, rs_invert(R, ds, n), n)


# ---------------------------------------------------------------------------
# logarithmic derivative and orders of vanishing
# ---------------------------------------------------------------------------


def dlog_numerator(curve: PlaneCurve, fn: RationalFunction) -> dict:
    """Numerator of the logarithmic differential of fn along the curve.

    For f = num/den on h = 0 this is
    (num_x h_y - num_y h_x) den - (den_x h_y - den_y h_x) num,
    the polynomial whose zeros on the curve are the zeros of d(log f)
    away from poles of f."""
    hx, hy = curve.hx(), curve.hy()

    def wedge(g):
        return zb_sub(zb_mul(zb_deriv_x(g), hy), zb_mul(zb_deriv_y(g), hx))

    return zb_sub(zb_mul(wedge(fn.num), fn.den), zb_mul(wedge(fn.den), fn.num))


def _bivar_total_degree(a: dict) -> int:
    return max((i + j for i, j in a), default=0)


def ord_at(curve: PlaneCurve, F, g: dict, x0, y0) -> int:
    """Order of vanishing of the polynomial g at a smooth point of the
    curve over the field F. Raises ZeroFunction when g vanishes
    identically on the curve (detected through the Bezout bound)."""
    g = zb_trim(g)
    if not g:
        raise ZeroFunction("the zero polynomial has no finite order")
    cap = _bivar_total_degree(g) * curve.degree() + 1
    branch = hensel_branch(curve, F, x0, y0, cap)
    series = rs_eval_bivar(F, g, branch.xs, branch.ys, cap + 1)
    o = rs_order(F, series)
    if o is None or o >= cap:
        raise ZeroFunction("the polynomial vanishes identically on the curve")
    return o


def function_ord_at(curve: PlaneCurve, F, fn: RationalFunction, x0, y0) -> int:
    """Order of num/den at a smooth point (poles give negative orders)."""
    return ord_at(curve, F, fn.num, x0, y0) - ord_at(curve, F, fn.den, x0, y0)
