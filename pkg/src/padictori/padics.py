"""Fixed-precision unramified p-adic scalars with certified digit counts.

A context fixes (p, N, f, m): working precision N and an unramified degree-f
extension cut out by a modulus m, monic and irreducible mod p (chosen by a
deterministic scan when not supplied). A scalar is p^v * u with u a unit
known modulo p^rel for a certified rel <= N. Addition with cancellation
lowers rel; if every certified digit cancels the scalar degrades to an
"exhausted" state that remembers only a lower bound on the valuation, and
any operation that needs actual digits raises PrecisionExhausted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DivisionByZero,
    DomainMismatch,
    NotAUnit,
    PrecisionExhausted,
)
from .rings import ResidueRing, modulus_scan


def _int_val(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class PadicContext:
    """Shared precision/extension data for a family of scalars."""

    def __init__(self, p: int, N: int, f_deg: int = 1, modulus=None):
        if N < 1:
            raise ValueError("precision N must be at least 1")
        if modulus is None:
            modulus = modulus_scan(p, f_deg)
        self.p = p
        self.N = N
        self.modulus = [int(c) for c in modulus]
        self.f_deg = len(self.modulus) - 1
        if f_deg not in (1, self.f_deg):
            raise DomainMismatch("modulus degree disagrees with f_deg")
        self._rings: dict[int, ResidueRing] = {}
        self.ring(N)  # validates p prime and modulus irreducible

    def ring(self, k: int) -> ResidueRing:
        if k not in self._rings:
            self._rings[k] = ResidueRing(self.p, k, self.modulus)
        return self._rings[k]

    def residue_field(self):
        return self.ring(1).residue_field()

    # -- scalar constructors --------------------------------------------------

    def zero(self) -> "PadicScalar":
        return PadicScalar(self, None, None, 0)

    def exhausted(self, vbound: int) -> "PadicScalar":
        return PadicScalar(self, None, None, 0, exhausted=True, vbound=vbound)

    def from_unit(self, element, v: int = 0, rel: int | None = None) -> "PadicScalar":
        """Scalar p^v * element; element must be a unit of ring(rel)."""
        rel = self.N if rel is None else min(rel, self.N)
        R = self.ring(rel)
        elt = tuple(int(c) % R.pk for c in element)
        if not R.is_unit(elt):
            raise NotAUnit("unit part is divisible by p")
        return PadicScalar(self, v, elt, rel)

    def from_rational(self, q) -> "PadicScalar":
        q = Fraction(q)
        if q == 0:
            return self.zero()
        num, den = q.numerator, q.denominator
        vn = _int_val(num, self.p)
        vd = _int_val(den, self.p)
        num //= self.p**vn
        den //= self.p**vd
        R = self.ring(self.N)
        u = R.mul(R.from_int(num), R.inv(R.from_int(den)))
        return PadicScalar(self, vn - vd, u, self.N)

    def __repr__(self):
        return f"Qp(p={self.p}, N={self.N}, f={self.f_deg})"

    def __eq__(self, other):
        return (
            isinstance(other, PadicContext)
            and other.p == self.p
            and other.N == self.N
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash((self.p, self.N, tuple(self.modulus)))


def scalar_from_rational(ctx: PadicContext, q) -> "PadicScalar":
    return ctx.from_rational(q)


def scalar_from_ring_element(ctx: PadicContext, element) -> "PadicScalar":
    """Interpret an element of ring(N) as a scalar known mod p^N. A zero
    element carries no valuation information beyond val >= N."""
    pk = ctx.p**ctx.N
    ints = [int(c) % pk for c in element]
    if all(c == 0 for c in ints):
        return ctx.exhausted(ctx.N)
    d = min(_int_val(c, ctx.p) for c in ints if c)
    if d == 0:
        return ctx.from_unit(tuple(ints), 0, ctx.N)
    unit = tuple(c // ctx.p**d for c in ints)
    return ctx.from_unit(unit, d, ctx.N - d)


@dataclass(frozen=True)
class PadicScalar:
    """p^v * unit with unit certified mod p^rel.

    v is None for the exact zero and for exhausted scalars; the latter keep
    only vbound with the meaning val >= vbound.
    """

    ctx: PadicContext
    v: int | None
    unit: tuple | None
    rel: int
    exhausted: bool = False
    vbound: int | None = None

    # -- state predicates -----------------------------------------------------

    @property
    def is_exact_zero(self) -> bool:
        return self.v is None and not self.exhausted

    @property
    def is_zeroish(self) -> bool:
        """True when no certified nonzero digit exists."""
        return self.v is None

    def valuation(self):
        """The valuation, or None for the exact zero (infinite)."""
        if self.exhausted:
            raise PrecisionExhausted(
                f"valuation known only to be >= {self.vbound}"
            )
        return self.v

    def abs_precision(self):
        """Scalar is certified modulo p^(this)."""
        if self.is_exact_zero:
            return None
        if self.exhausted:
            return self.vbound
        return self.v + self.rel

    def _check(self, other: "PadicScalar"):
        if self.ctx != other.ctx:
            raise DomainMismatch(f"{self.ctx} vs {other.ctx}")

    # -- arithmetic -----------------------------------------------------------

    def __neg__(self):
        if self.v is None:
            return self
        R = self.ctx.ring(self.rel)
        return PadicScalar(self.ctx, self.v, R.neg(self.unit), self.rel)

    def __add__(self, other: "PadicScalar"):
        self._check(other)
        if self.is_exact_zero:
            return other
        if other.is_exact_zero:
            return self
        if self.exhausted or other.exhausted:
            a = self.abs_precision()
            b = other.abs_precision()
            bound = min(a, b)
            if self.exhausted and other.exhausted:
                return self.ctx.exhausted(bound)
            known = other if self.exhausted else self
            exh = self if self.exhausted else other
            if known.v < exh.vbound:
                cap = min(known.rel, exh.vbound - known.v)
                R = self.ctx.ring(cap)
                return PadicScalar(
                    self.ctx, known.v, tuple(c % R.pk for c in known.unit), cap
                )
            return self.ctx.exhausted(bound)
        x, y = (self, other) if self.v <= other.v else (other, self)
        cap = min(x.v + x.rel, y.v + y.rel)  # certified absolute precision
        width = cap - x.v
        R = self.ctx.ring(width)
        p = self.ctx.p
        shift = p ** (y.v - x.v)
        xu = tuple(c % R.pk for c in x.unit)
        yu = tuple(c * shift % R.pk for c in y.unit)
        s = R.add(xu, yu)
        if R.is_zero(s):
            return self.ctx.exhausted(cap)
        d = min(_int_val(c, p) if c else width for c in s)
        d = min(d, width)
        if d == 0:
            return PadicScalar(self.ctx, x.v, s, width)
        newrel = width - d
        pd = p**d
        u = tuple((c // pd) % (p**newrel) for c in s)
        return PadicScalar(self.ctx, x.v + d, u, newrel)

    def __sub__(self, other: "PadicScalar"):
        return self + (-other)

    def __mul__(self, other: "PadicScalar"):
        self._check(other)
        if self.is_exact_zero or other.is_exact_zero:
            return self.ctx.zero()
        if self.exhausted or other.exhausted:
            a = self.vbound if self.exhausted else self.v
            b = other.vbound if other.exhausted else other.v
            return self.ctx.exhausted(a + b)
        rel = min(self.rel, other.rel)
        R = self.ctx.ring(rel)
        u = R.mul(
            tuple(c % R.pk for c in self.unit),
            tuple(c % R.pk for c in other.unit),
        )
        return PadicScalar(self.ctx, self.v + other.v, u, rel)

    def inverse(self):
        if self.is_exact_zero:
            raise DivisionByZero("inverse of exact zero")
        if self.exhausted:
            raise PrecisionExhausted("cannot invert: no certified digits")
        R = self.ctx.ring(self.rel)
        return PadicScalar(
            self.ctx, -self.v, R.inv(tuple(c % R.pk for c in self.unit)), self.rel
        )

    def __truediv__(self, other: "PadicScalar"):
        return self * other.inverse()

    def __pow__(self, n: int):
        if self.is_exact_zero:
            if n <= 0:
                raise DivisionByZero("0 to a nonpositive power")
            return self
        if n == 0:
            return self.ctx.from_rational(1)
        base = self if n > 0 else self.inverse()
        n = abs(n)
        result = None
        while n:
            if n & 1:
                result = base if result is None else result * base
            base = base * base
            n >>= 1
        return result

    def scale_rational(self, q) -> "PadicScalar":
        """Multiply by an exactly-known rational (no precision cost beyond
        the valuation shift)."""
        q = Fraction(q)
        if q == 0:
            return self.ctx.zero()
        if self.is_exact_zero:
            return self
        p = self.ctx.p
        num, den = q.numerator, q.denominator
        vq = _int_val(num, p) - _int_val(den, p)
        if self.exhausted:
            return self.ctx.exhausted(self.vbound + vq)
        num //= p ** _int_val(num, p)
        den //= p ** _int_val(den, p)
        R = self.ctx.ring(self.rel)
        u = R.mul(self.unit, R.mul(R.from_int(num), R.inv(R.from_int(den))))
        return PadicScalar(self.ctx, self.v + vq, u, self.rel)

    # -- comparisons ----------------------------------------------------------

    def agrees(self, other: "PadicScalar") -> bool:
        """Equality of all certified digits: the difference shows no
        certified nonzero digit."""
        return (self - other).is_zeroish

    def residue(self):
        """Image in the residue field; requires a nonnegative valuation."""
        if self.is_zeroish:
            return self.ctx.ring(1).to_residue(self.ctx.ring(1).zero())
        if self.v < 0:
            raise NotAUnit("negative valuation has no residue")
        if self.v > 0:
            return self.ctx.ring(1).to_residue(self.ctx.ring(1).zero())
        return self.ctx.ring(1).to_residue(tuple(c % self.ctx.p for c in self.unit))

    def lift_integer(self) -> int:
        """For f = 1 scalars with v >= 0: the integer p^v * unit mod p^(v+rel)."""
        if self.ctx.f_deg != 1:
            raise DomainMismatch("integer lift needs a degree-1 context")
        if self.is_zeroish:
            return 0
        if self.v < 0:
            raise NotAUnit("negative valuation")
        return self.ctx.p**self.v * self.unit[0]

    def __repr__(self):
        if self.is_exact_zero:
            return "PadicScalar(0)"
        if self.exhausted:
            return f"PadicScalar(val>={self.vbound}, exhausted)"
        return f"PadicScalar({self.ctx.p}^{self.v} * {self.unit} rel {self.rel})"


# ---------------------------------------------------------------------------
# core maps
# ---------------------------------------------------------------------------


def valuation(x: PadicScalar):
    return x.valuation()


def teichmueller(x: PadicScalar) -> PadicScalar:
    """The root of unity with the same residue as the unit x. Depends only on
    x mod p, so the result carries full working precision."""
    if x.is_zeroish or x.v != 0:
        raise NotAUnit("Teichmueller lift is defined for units only")
    ctx = x.ctx
    R = ctx.ring(ctx.N)
    w = R.teichmueller(tuple(c % ctx.p for c in x.unit))
    return PadicScalar(ctx, 0, w, ctx.N)


def frobenius(x: PadicScalar) -> PadicScalar:
    """Frobenius automorphism applied coefficientwise to the unit part."""
    if x.is_zeroish:
        return x
    R = x.ctx.ring(x.rel)
    return PadicScalar(x.ctx, x.v, R.frobenius(x.unit), x.rel)


def _log_term_count(p: int, N: int) -> int:
    # smallest M with i - floor(log_p i) >= N for all i > M, padded
    m, t = 0, N
    while p**m <= t:
        m += 1
        t = N + m
    return N + m + 2


def log_unit(x: PadicScalar) -> PadicScalar:
    """p-adic logarithm of a unit: log(x) = log(x / omega(x)) via the
    alternating series in T = x/omega(x) - 1. Kills the Teichmueller part, so
    roots of unity map to the canonical exact zero: when x agrees with its
    Teichmueller lift through every certified digit the log vanishes at
    working precision and is reported as zero."""
    if x.is_zeroish or x.v != 0:
        raise NotAUnit("log of a non-unit")
    ctx = x.ctx
    w = teichmueller(x)
    t = x / w - ctx.from_rational(1)
    if t.is_zeroish:
        return ctx.zero()
    M = _log_term_count(ctx.p, ctx.N)
    acc = ctx.zero()
    power = ctx.from_rational(1)
    for i in range(1, M + 1):
        power = power * t
        sign = 1 if i % 2 == 1 else -1
        acc = acc + power.scale_rational(Fraction(sign, i))
    return acc
