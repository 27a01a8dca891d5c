"""Truncated power series with exact rational coefficients, and Newton
polygons of their coefficient valuations.

A series is known modulo T^(trunc+1): coefficients are stored for degrees
0..trunc and nothing is asserted beyond. Newton polygons are LOWER convex
hulls of (degree, valuation); hull slopes are reported negated, so a root
of valuation v shows up as a slope-v segment. Hull features whose right
endpoint sits at the truncation index are provisional: more terms could
extend or replace them, and they are excluded from the certified view.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ComposeNonzeroConstant,
    ConstantTermNotUnit,
    DivisionByZero,
    DomainMismatch,
    ZeroSeries,
)


class _Infinity:
    """Valuation of zero. A dedicated sentinel: comparing huge Fractions
    against float('inf') can overflow, and None is not orderable."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is INF

    def __gt__(self, other):
        return other is not INF

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return other is INF

    def __hash__(self):
        return hash("valuation-infinity")

    def __neg__(self):
        raise ArithmeticError("cannot negate the infinite valuation")

    def __add__(self, other):
        return INF

    __radd__ = __add__

    def __repr__(self):
        return "INF"


INF = _Infinity()


def qval(x, p: int):
    """p-adic valuation of a rational; INF for zero."""
    x = Fraction(x)
    if x == 0:
        return INF
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


class ValuedSeries:
    """Power series over Q with a distinguished prime; known mod T^(trunc+1)."""

    __slots__ = ("p", "coeffs", "trunc")

    def __init__(self, p: int, coeffs, trunc: int | None = None):
        coeffs = [Fraction(c) for c in coeffs]
        if trunc is None:
            trunc = len(coeffs) - 1
        if trunc < 0:
            raise ZeroSeries("series needs at least the constant term")
        coeffs = coeffs[: trunc + 1]
        coeffs += [Fraction(0)] * (trunc + 1 - len(coeffs))
        self.p = p
        self.coeffs = coeffs
        self.trunc = trunc

    # -- helpers --------------------------------------------------------------

    def _check(self, other: "ValuedSeries"):
        if self.p != other.p:
            raise DomainMismatch("series over different primes")

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def order(self):
        """Degree of the first certified nonzero coefficient, or None if the
        series is zero through its truncation."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def is_known_zero(self) -> bool:
        return self.order() is None

    # -- ring operations -------------------------------------------------------

    def __add__(self, other: "ValuedSeries"):
        self._check(other)
        t = min(self.trunc, other.trunc)
        return ValuedSeries(
            self.p, [self.coeffs[i] + other.coeffs[i] for i in range(t + 1)], t
        )

    def __sub__(self, other: "ValuedSeries"):
        self._check(other)
        t = min(self.trunc, other.trunc)
        return ValuedSeries(
            self.p, [self.coeffs[i] - other.coeffs[i] for i in range(t + 1)], t
        )

    def __neg__(self):
        return ValuedSeries(self.p, [-c for c in self.coeffs], self.trunc)

    def scale(self, s):
        s = Fraction(s)
        return ValuedSeries(self.p, [c * s for c in self.coeffs], self.trunc)

    def __mul__(self, other: "ValuedSeries"):
        self._check(other)
        t = min(self.trunc, other.trunc)
        out = [Fraction(0)] * (t + 1)
        for i, a in enumerate(self.coeffs[: t + 1]):
            if a:
                for j in range(min(t - i, other.trunc) + 1):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return ValuedSeries(self.p, out, t)

    def shift(self, k: int):
        """Multiply by T^k (k >= 0)."""
        return ValuedSeries(
            self.p, [Fraction(0)] * k + self.coeffs, self.trunc + k
        )

    def truncate(self, t: int):
        return ValuedSeries(self.p, self.coeffs[: t + 1], min(self.trunc, t))

    def invert(self):
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ConstantTermNotUnit("cannot invert: constant term is zero")
        t = self.trunc
        inv0 = 1 / c0
        out = [inv0] + [Fraction(0)] * t
        for k in range(1, t + 1):
            s = Fraction(0)
            for i in range(1, k + 1):
                if self.coeffs[i]:
                    s += self.coeffs[i] * out[k - i]
            out[k] = -inv0 * s
        return ValuedSeries(self.p, out, t)

    def __truediv__(self, other: "ValuedSeries"):
        return self * other.invert()

    def compose(self, inner: "ValuedSeries"):
        """self(inner); inner must have zero constant term."""
        self._check(inner)
        if inner.coeffs[0] != 0:
            raise ComposeNonzeroConstant("inner series must vanish at 0")
        ordh = inner.order()
        if ordh is None:
            return ValuedSeries(self.p, [self.coeffs[0]], inner.trunc)
        t = min(inner.trunc, self.trunc * ordh)
        acc = ValuedSeries(self.p, [Fraction(0)], t)
        # Horner from the top coefficient that can still contribute
        top = min(self.trunc, t // ordh)
        inner_t = inner.truncate(t)
        for i in range(top, -1, -1):
            acc = acc * inner_t
            acc = ValuedSeries(
                self.p,
                [acc.coeffs[0] + self.coeffs[i]] + acc.coeffs[1:],
                acc.trunc,
            )
        return acc

    def derivative(self):
        if self.trunc == 0:
            return ValuedSeries(self.p, [Fraction(0)], 0)
        return ValuedSeries(
            self.p,
            [i * self.coeffs[i] for i in range(1, self.trunc + 1)],
            self.trunc - 1,
        )

    def integrate(self):
        """Antiderivative with zero constant term."""
        return ValuedSeries(
            self.p,
            [Fraction(0)]
            + [self.coeffs[i] / (i + 1) for i in range(self.trunc + 1)],
            self.trunc + 1,
        )

    def coefficient_valuations(self):
        return [qval(c, self.p) for c in self.coeffs]

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        return f"ValuedSeries(p={self.p}, [{head}...], trunc={self.trunc})"


def formal_log(s: ValuedSeries) -> ValuedSeries:
    """log of a series with constant term 1, integrating s'/s term by term."""
    if s.coeffs[0] != 1:
        raise ConstantTermNotUnit("formal log needs constant term 1")
    return (s.derivative() / s.truncate(s.trunc - 1)).integrate() if s.trunc > 0 \
        else ValuedSeries(s.p, [Fraction(0)], 0)


def formal_exp(s: ValuedSeries) -> ValuedSeries:
    """exp of a series with zero constant term."""
    if s.coeffs[0] != 0:
        raise ComposeNonzeroConstant("formal exp needs zero constant term")
    t = s.trunc
    # y' = s' y with y(0) = 1
    out = [Fraction(1)] + [Fraction(0)] * t
    for k in range(1, t + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            if s.coeffs[i]:
                acc += i * s.coeffs[i] * out[k - i]
        out[k] = acc / k
    return ValuedSeries(s.p, out, t)


def log_one_plus_t(p: int, trunc: int) -> ValuedSeries:
    """The series log(1+T) through degree trunc."""
    coeffs = [Fraction(0)] + [
        Fraction(1 if i % 2 == 1 else -1, i) for i in range(1, trunc + 1)
    ]
    return ValuedSeries(p, coeffs, trunc)


# ---------------------------------------------------------------------------
# Newton polygons
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    """One face of the lower hull. slope is the negated gradient, so roots
    of valuation v sit on the slope-v face; length is the horizontal run."""

    left: tuple
    right: tuple
    slope: Fraction
    length: int
    provisional: bool


class NewtonPolygon:
    """Lower convex hull of (index, valuation) points.

    vertices/segments exclude any feature whose right endpoint is the
    truncation index of a non-exact source; those appear in
    provisional_vertices / the segments' provisional flag instead.
    """

    def __init__(self, points, last_index: int | None = None, exact: bool = True):
        pts = [(int(i), v) for i, v in points if v is not INF]
        pts.sort(key=lambda t: t[0])
        if not pts:
            raise ZeroSeries("no finite-valuation coefficients")
        self.points = pts
        self.last_index = pts[-1][0] if last_index is None else last_index
        self.exact = exact
        hull = []
        for pt in pts:
            while len(hull) >= 2 and self._turns_up(hull[-2], hull[-1], pt):
                hull.pop()
            hull.append(pt)
        self._hull = hull
        segs = []
        for a, b in zip(hull, hull[1:]):
            grad = Fraction(Fraction(b[1]) - Fraction(a[1]), b[0] - a[0])
            prov = (not exact) and b[0] == self.last_index
            segs.append(
                Segment(
                    left=a,
                    right=b,
                    slope=-grad,
                    length=b[0] - a[0],
                    provisional=prov,
                )
            )
        self._segments = segs

    @staticmethod
    def _turns_up(a, b, c):
        # b is not below segment a-c: discard from the lower hull
        lhs = (Fraction(b[1]) - Fraction(a[1])) * (c[0] - a[0])
        rhs = (Fraction(c[1]) - Fraction(a[1])) * (b[0] - a[0])
        return lhs >= rhs

    @property
    def segments(self):
        return list(self._segments)

    @property
    def vertices(self):
        """Certified hull vertices only."""
        out = [self._hull[0]] if self._hull else []
        for seg in self._segments:
            if not seg.provisional:
                out.append(seg.right)
        return out

    @property
    def provisional_vertices(self):
        return [seg.right for seg in self._segments if seg.provisional]

    def all_slopes(self):
        """Certified (slope, length) pairs, left to right."""
        return [(s.slope, s.length) for s in self._segments if not s.provisional]

    def negative_slopes(self):
        """Faces where the hull descends (slope > 0 in our sign convention):
        these account for roots of positive valuation."""
        return [
            (s.slope, s.length)
            for s in self._segments
            if not s.provisional and s.slope > 0
        ]

    def zero_count(self, min_valuation) -> int:
        """Number of roots with valuation >= min_valuation, certified faces
        only, counted with multiplicity."""
        m = Fraction(min_valuation)
        total = 0
        for s in self._segments:
            if not s.provisional and s.slope >= m:
                total += s.length
        return total

    def __repr__(self):
        return f"NewtonPolygon(vertices={self.vertices}, provisional={self.provisional_vertices})"


def series_newton_polygon(s: ValuedSeries) -> NewtonPolygon:
    """Polygon of a truncated series; the tail is marked provisional."""
    vals = s.coefficient_valuations()
    pts = [(i, v) for i, v in enumerate(vals)]
    if all(v is INF for _, v in pts):
        raise ZeroSeries("series vanishes through its truncation")
    return NewtonPolygon(pts, last_index=s.trunc, exact=False)


def poly_newton_polygon(coeffs, p: int) -> NewtonPolygon:
    """Polygon of an exact polynomial with rational coefficients."""
    pts = [(i, qval(c, p)) for i, c in enumerate(coeffs)]
    if all(v is INF for _, v in pts):
        raise DivisionByZero("zero polynomial has no Newton polygon")
    return NewtonPolygon(pts, exact=True)
