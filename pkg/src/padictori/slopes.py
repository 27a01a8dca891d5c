"""Disc logarithms, slope predictions, and slope verification.

For a function f that is a unit on a residue disc, log f expands as a
power series in the local parameter T. With k - 1 the order of vanishing
of df/f at the reduced center and k < p, the Newton polygon of that
series is pinned down exactly: for positive valuation of log f(z0) the
vertices right of k are (k p^n, -n). This module computes the series with
certified coefficient precision, builds the polygon, and compares it
against the prediction. It also houses the ramification bound, the
exponent maps that kill one boundary column, the torsion-image bound, and
the two-disc log minor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curves import (
    PlaneCurve,
    RationalFunction,
    dlog_numerator,
    element_from_ints,
    eval_function_series,
    hensel_branch,
    ord_at,
    rs_deriv,
    rs_invert,
    rs_mul,
)
from .errors import (
    HypothesisViolated,
    NotAUnit,
    NotPrime,
    PrecisionExhausted,
    ZeroColumn,
    ZeroSeries,
)
from .padics import PadicContext, log_unit, scalar_from_ring_element
from .rings import is_prime
from .series import INF, NewtonPolygon

# ---------------------------------------------------------------------------
# series with p-adic scalar coefficients
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PadicSeries:
    """Truncated power series whose coefficients are certified scalars."""

    ctx: PadicContext
    coeffs: list

    @property
    def trunc(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "PadicSeries") -> "PadicSeries":
        n = min(len(self.coeffs), len(other.coeffs))
        return PadicSeries(
            self.ctx, [self.coeffs[i] + other.coeffs[i] for i in range(n)]
        )

    def __sub__(self, other: "PadicSeries") -> "PadicSeries":
        n = min(len(self.coeffs), len(other.coeffs))
        return PadicSeries(
            self.ctx, [self.coeffs[i] - other.coeffs[i] for i in range(n)]
        )

    def newton_polygon(self, min_index: int = 0) -> NewtonPolygon:
        """Polygon of the coefficients with index >= min_index.

        Coefficients whose valuation is only bounded below (total
        cancellation at working precision) are admissible only where the
        bound keeps them on or above the hull built from the certified
        ones; otherwise the polygon cannot be certified and
        PrecisionExhausted is raised."""
        pts = []
        unknown = []
        for i in range(min_index, len(self.coeffs)):
            c = self.coeffs[i]
            if c.is_exact_zero:
                continue
            if c.exhausted:
                unknown.append((i, c.vbound))
                continue
            pts.append((i, c.v))
        if not pts:
            raise ZeroSeries("no certified nonzero coefficient in range")
        right_known = pts[-1][0]
        tail_unknown = [u for u in unknown if u[0] > right_known]
        last_index = right_known if tail_unknown else len(self.coeffs) - 1
        poly = NewtonPolygon(pts, last_index=last_index, exact=False)
        left_known = pts[0][0]
        for i, b in unknown:
            if i < left_known:
                raise PrecisionExhausted(
                    f"coefficient {i} is indistinguishable from zero and"
                    " lies left of every certified coefficient"
                )
            floor = _hull_floor(poly, i)
            if floor is not None and Fraction(b) < floor:
                raise PrecisionExhausted(
                    f"coefficient {i} is certified only to valuation"
                    f" >= {b}, below the hull at that index"
                )
        return poly


def _hull_floor(poly: NewtonPolygon, i: int):
    """Value at index i below which an extra point would change the
    certified hull: interpolation inside the hull range, the extension of
    the final segment beyond it."""
    segs = poly.segments
    if not segs:
        return None
    for s in segs:
        if s.left[0] <= i <= s.right[0]:
            gradient = Fraction(s.right[1] - s.left[1], s.right[0] - s.left[0])
            return Fraction(s.left[1]) + gradient * (i - s.left[0])
    last = segs[-1]
    if i > last.right[0]:
        gradient = Fraction(
            last.right[1] - last.left[1], last.right[0] - last.left[0]
        )
        return Fraction(last.right[1]) + gradient * (i - last.right[0])
    return None


# ---------------------------------------------------------------------------
# log of a function on a disc
# ---------------------------------------------------------------------------


def log_series_on_disc(
    curve: PlaneCurve,
    fn: RationalFunction,
    ctx: PadicContext,
    x0,
    y0,
    order: int,
    param=None,
) -> PadicSeries:
    """Series of log f on the disc around (x0, y0), to T^order.

    The constant term is log of the unit f(z0) (zero for torsion values);
    higher coefficients come from integrating the exact mod-p^N expansion
    of f'/f, so their certified precision accounts for the integer
    divisions."""
    R = ctx.ring(ctx.N)
    x0e = element_from_ints(R, x0)
    y0e = element_from_ints(R, y0)
    branch = hensel_branch(curve, R, x0e, y0e, order, param=param)
    fs = eval_function_series(branch, fn)
    if not R.is_unit(fs[0]):
        raise NotAUnit("f is not a unit at the disc center")
    coeffs = [log_unit(scalar_from_ring_element(ctx, fs[0]))]
    if order >= 1:
        dl = rs_mul(R, rs_deriv(R, fs), rs_invert(R, fs, order), order)
        for m in range(1, order + 1):
            s = scalar_from_ring_element(ctx, dl[m - 1])
            coeffs.append(s.scale_rational(Fraction(1, m)))
    return PadicSeries(ctx, coeffs)


# ---------------------------------------------------------------------------
# predictions and verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SlopePrediction:
    """Predicted polygon data for log f on a disc.

    k is one more than the vanishing order of df/f at the reduced center;
    v the valuation of log f(z0) (INF when it is zero to precision). With
    positive v the vertices are (k p^n, -n) and the slopes right of k are
    1/(k(p^n - p^(n-1))). With v <= 0 the stated slopes are 1/(k p^(v+1))
    together with 1/(k(p^(n+1) - p^n)) for n > v, and the stated vertices
    are (0,0) and (k p^n, -n) for n > v; that clause is reproduced exactly
    as stated and compared, with discrepancies reported, not repaired."""

    k: int
    v: object
    p: int
    predicted_vertices: tuple
    predicted_slopes: tuple
    case_tag: str


def predict_slopes(k: int, v, p: int, max_index: int = 10**6) -> SlopePrediction:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise HypothesisViolated("k must be a positive integer")
    if k >= p:
        raise HypothesisViolated(f"requires k < p, got k={k}, p={p}")
    if v is None:
        v = INF
    if v is INF or v > 0:
        vertices = []
        slopes = []
        n = 0
        while k * p**n <= max_index:
            vertices.append((k * p**n, -n))
            if n >= 1:
                length = k * (p**n - p ** (n - 1))
                slopes.append((Fraction(1, length), length))
            n += 1
        return SlopePrediction(
            k, v, p, tuple(vertices), tuple(slopes), "positive-log-valuation"
        )
    def norm(q: Fraction):
        return int(q) if q.denominator == 1 else q

    vertices = [(0, 0)]
    first_slope = Fraction(1, k) * Fraction(p) ** (-(v + 1))
    first_length = Fraction(k) * Fraction(p) ** (v + 1)
    slopes = [(norm(first_slope), norm(first_length))]
    n = v + 1
    while Fraction(k) * Fraction(p) ** n <= max_index:
        idx = Fraction(k) * Fraction(p) ** n
        vertices.append((norm(idx), -n))
        gap = Fraction(k) * (Fraction(p) ** (n + 1) - Fraction(p) ** n)
        if Fraction(k) * Fraction(p) ** (n + 1) <= max_index:
            slopes.append((norm(1 / gap), norm(gap)))
        n += 1
    return SlopePrediction(
        k, v, p, tuple(vertices), tuple(slopes), "nonpositive-log-valuation"
    )


@dataclass(frozen=True, eq=False)
class SlopeReport:
    """Computed-versus-predicted polygon for one (curve, f, disc)."""

    k: int
    v: object
    order: int
    computed: NewtonPolygon
    predicted: object
    verdict: str
    details: str
    p: int | None = None

    def to_dict(self) -> dict:
        def enc(x):
            if x is INF:
                return "inf"
            if isinstance(x, Fraction):
                return str(x)
            return x

        def encpts(pts):
            return [[enc(i), enc(val)] for i, val in pts]

        pred = None
        if self.predicted is not None:
            pred = {
                "case": self.predicted.case_tag,
                "vertices": encpts(self.predicted.predicted_vertices),
                "slopes": [
                    [enc(s), enc(ln)] for s, ln in self.predicted.predicted_slopes
                ],
            }
        return {
            "p": self.p,
            "k": self.k,
            "v": enc(self.v),
            "order": self.order,
            "verdict": self.verdict,
            "details": self.details,
            "predicted": pred,
            "computed_vertices": encpts(self.computed.vertices),
            "provisional_vertices": encpts(self.computed.provisional_vertices),
            "computed_slopes": [
                [enc(s), ln] for s, ln in self.computed.all_slopes()
            ],
        }


def verify_slopes(
    curve: PlaneCurve,
    fn: RationalFunction,
    ctx: PadicContext,
    x0,
    y0,
    order: int,
    param=None,
) -> SlopeReport:
    """Compute log f on the disc, its polygon right of k, and compare with
    the predicted vertices over the certified range."""
    F = ctx.residue_field()
    xF = element_from_ints(F, x0)
    yF = element_from_ints(F, y0)
    A = dlog_numerator(curve, fn)
    k = ord_at(curve, F, A, xF, yF) + 1
    series = log_series_on_disc(curve, fn, ctx, x0, y0, order, param=param)
    notes = []
    try:
        v = series.coeffs[0].valuation()
        if v is None:
            v = INF
    except PrecisionExhausted:
        v = INF
        notes.append(
            f"log f(z0) is indistinguishable from zero at precision {ctx.N};"
            " treated as +inf"
        )
    if k >= ctx.p:
        poly = series.newton_polygon(min_index=k)
        return SlopeReport(
            k,
            v,
            order,
            poly,
            None,
            "out_of_hypothesis",
            f"k={k} is not below p={ctx.p}; no prediction applies",
            p=ctx.p,
        )
    prediction = predict_slopes(k, v, ctx.p, max_index=order)
    poly = series.newton_polygon(min_index=k)
    computed = [(i, Fraction(val)) for i, val in poly.vertices]
    if computed:
        window = max(i for i, _ in computed)
    else:
        window = 0
    expected = [
        (i, Fraction(val))
        for i, val in prediction.predicted_vertices
        if Fraction(i) >= k and Fraction(i) <= window
    ]
    if len(computed) < 2:
        verdict = "mismatch"
        notes.append("certified range covers fewer than two vertices")
    elif computed == expected:
        verdict = "match"
    else:
        verdict = "mismatch"
        notes.append(f"computed {computed} vs predicted {expected}")
    return SlopeReport(
        k, v, order, poly, prediction, verdict, "; ".join(notes), p=ctx.p
    )


def ramified_slope_flag(report, p: int | None = None) -> bool:
    """True when the polygon certifies a non-integral negative slope
    strictly greater than 1/(p-1); such a slope forces df/f to vanish at
    the reduced center, so callers cross-check k > 1."""
    if isinstance(report, SlopeReport):
        poly = report.computed
        if p is None:
            p = report.p
    else:
        poly = report
    if p is None:
        raise NotPrime("a prime is required to evaluate the threshold")
    threshold = Fraction(1, p - 1)
    for slope, _length in poly.negative_slopes():
        s = Fraction(slope)
        if s.denominator > 1 and s > threshold:
            return True
    return False


def ramification_bound(g: int, d: int, p: int | None = None):
    """(bound, valid): ramification degrees of disc points lying in
    rank-one subgroups are at most 2g + d, provided p >= 2g + d."""
    if g < 0 or d < 0:
        raise HypothesisViolated("g and d must be nonnegative")
    bound = 2 * g + d
    valid = None if p is None else p >= bound
    return bound, valid


def boundary_projections(a):
    """One exponent matrix per column of a; the j-th map sends z to the
    tuple (z_i^{a[l][j]} * z_l^{-a[i][j]})_{i != l} with l the first row
    where column j is nonzero, so its matrix annihilates that column."""
    if not a or not a[0]:
        raise ZeroColumn("empty exponent matrix")
    n = len(a)
    maps = []
    for j in range(len(a[0])):
        col = [a[i][j] for i in range(n)]
        ell = next((i for i, c in enumerate(col) if c != 0), None)
        if ell is None:
            raise ZeroColumn(f"column {j} is identically zero")
        rows = []
        for i in range(n):
            if i == ell:
                continue
            row = [0] * n
            row[i] += col[ell]
            row[ell] -= col[i]
            rows.append(row)
        maps.append(rows)
    return maps


def torsion_image_bound(g: int, p: int) -> int:
    """Bound on the reductions of unramified torsion-like points:
    p^(4g) * 3^g * (p(2g-2) + 6g) * g!; needs g > 1 and p an odd prime."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if g <= 1:
        raise HypothesisViolated("the bound requires genus g > 1")
    if p == 2:
        raise HypothesisViolated("the bound requires an odd prime")
    fact = 1
    for i in range(2, g + 1):
        fact *= i
    return p ** (4 * g) * 3**g * (p * (2 * g - 2) + 6 * g) * fact


# ---------------------------------------------------------------------------
# two-disc minor
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PairLogMinor:
    """Coefficients of log f_i(z1) log f_j(z2) - log f_j(z1) log f_i(z2)
    on a product of two discs, indexed by (T1-degree, T2-degree)."""

    ctx: PadicContext
    coeffs: dict
    trunc: int

    @property
    def zero_to_truncation(self) -> bool:
        """No coefficient is certified nonzero."""
        return all(c.is_zeroish or c.exhausted for c in self.coeffs.values())


def pair_log_minor(
    curve: PlaneCurve,
    f_i: RationalFunction,
    f_j: RationalFunction,
    ctx: PadicContext,
    z1,
    z2,
    order: int,
) -> PairLogMinor:
    """The 2x2 log minor on the product of the discs around z1 and z2;
    identically zero to truncation exactly when the two logs are
    proportional there."""
    a_i = log_series_on_disc(curve, f_i, ctx, z1[0], z1[1], order)
    a_j = log_series_on_disc(curve, f_j, ctx, z1[0], z1[1], order)
    b_i = log_series_on_disc(curve, f_i, ctx, z2[0], z2[1], order)
    b_j = log_series_on_disc(curve, f_j, ctx, z2[0], z2[1], order)
    coeffs = {}
    for r in range(order + 1):
        for s in range(order + 1):
            coeffs[(r, s)] = (
                a_i.coeffs[r] * b_j.coeffs[s] - a_j.coeffs[r] * b_i.coeffs[s]
            )
    return PairLogMinor(ctx, coeffs, order)
