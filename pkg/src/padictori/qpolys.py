"""Exact univariate polynomial algebra over Z and Q, plus number fields.

Integer polynomials are lists of ints (little-endian, trimmed); rational
ones are lists of Fractions. The heavy path (the relation search) works
with integer polynomials and keeps coefficient growth in check with
primitive-part reduction and a subresultant-style remainder sequence.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .errors import DivisionByZero, NotAUnit, ReducibleModulus


class _RationalField:
    """Field-protocol wrapper around Fraction for the generic routines."""

    p = 0
    size = None

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def inv(self, x):
        if x == 0:
            raise NotAUnit("inverse of zero")
        return 1 / x

    def pow_(self, x, n):
        return x**n

    def is_zero(self, x):
        return x == 0

    def eq(self, x, y):
        return x == y


QQ = _RationalField()


# ---------------------------------------------------------------------------
# integer polynomials
# ---------------------------------------------------------------------------


def ztrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def zadd(a, b):
    n = max(len(a), len(b))
    return ztrim(
        [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    )


def zsub(a, b):
    n = max(len(a), len(b))
    return ztrim(
        [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    )


def zneg(a):
    return [-c for c in a]


def zscale(a, s):
    if s == 0:
        return []
    return [c * s for c in a]


def zmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return ztrim(out)


def zpow(a, n: int):
    result = [1]
    while n > 0:
        if n & 1:
            result = zmul(result, a)
        a = zmul(a, a)
        n >>= 1
    return result


def zeval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def zeval_frac(a, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def zderiv(a):
    return ztrim([i * a[i] for i in range(1, len(a))])


def zcontent(a) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
    return g


def zprimitive(a):
    """Primitive part with positive leading coefficient."""
    if not a:
        return []
    g = zcontent(a)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def zdivmod(a, b):
    """Exact-ish division over Q returning (quotient, remainder) with
    Fraction coefficients cleared; use only when divisibility over Q holds
    or the remainder is wanted exactly."""
    fa = [Fraction(c) for c in a]
    fb = [Fraction(c) for c in b]
    from .rings import pdivmod

    q, r = pdivmod(QQ, fa, fb)
    return q, r


def zdiv_exact(a, b):
    """a // b assuming b | a over Q with integer result."""
    q, r = zdivmod(a, b)
    if r:
        raise DivisionByZero("inexact polynomial division")
    out = []
    for c in q:
        if c.denominator != 1:
            raise DivisionByZero("quotient not integral")
        out.append(c.numerator)
    return ztrim(out)


def zpseudo_rem(a, b):
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, over Z."""
    if not b:
        raise DivisionByZero("pseudo-remainder by zero")
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return list(a)
    lb = b[-1]
    r = list(a)
    for _ in range(da - db + 1):
        if len(r) - 1 < db or not r:
            r = zscale(r, lb)
            continue
        top = r[-1]
        r = zscale(r, lb)
        d = len(r) - 1 - db
        for i in range(len(b)):
            r[d + i] -= top * b[i]
        r = ztrim(r)
    return r


def zgcd(a, b):
    """Primitive gcd over Z via a primitive remainder sequence."""
    a, b = ztrim(list(a)), ztrim(list(b))
    if not a:
        return zprimitive(b)
    if not b:
        return zprimitive(a)
    a, b = zprimitive(a), zprimitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = zpseudo_rem(a, b)
        a, b = b, zprimitive(r)
    return a


def zgcd_mod_check(a, b, r: int = (1 << 61) - 1):
    """Degree of gcd(a, b) modulo a large prime; 0 rules out a nontrivial
    common factor (valid when r divides neither leading coefficient)."""
    if not a or not b:
        return max(len(a), len(b)) - 1
    if a[-1] % r == 0 or b[-1] % r == 0:
        return None  # inconclusive, caller falls back to the exact gcd
    am = [c % r for c in a]
    bm = [c % r for c in b]
    from .rings import PrimeField, pgcd, ptrim

    F = PrimeField(r)
    g = pgcd(F, ptrim(F, am), ptrim(F, bm))
    return len(g) - 1


def zsquarefree_part(a):
    """Product of the distinct irreducible factors, primitive."""
    a = zprimitive(list(a))
    if len(a) <= 2:
        return a
    g = zgcd(a, zderiv(a))
    if len(g) == 1:
        return a
    return zdiv_exact(a, g)


# ---------------------------------------------------------------------------
# arithmetic functions and cyclotomic polynomials
# ---------------------------------------------------------------------------


def divisors(n: int):
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


_cyclotomic_cache: dict[int, list[int]] = {}


def cyclotomic_poly(d: int):
    """Coefficients of the d-th cyclotomic polynomial (int, little-endian)."""
    if d in _cyclotomic_cache:
        return _cyclotomic_cache[d]
    poly = [-1] + [0] * (d - 1) + [1]  # x^d - 1
    for e in divisors(d):
        if e < d:
            poly = zdiv_exact(poly, cyclotomic_poly(e))
    _cyclotomic_cache[d] = poly
    return poly


def prime_to_part(n: int, ell: int) -> int:
    """Largest divisor of n coprime to ell."""
    while n % ell == 0:
        n //= ell
    return n


# ---------------------------------------------------------------------------
# number fields
# ---------------------------------------------------------------------------


class NumberField:
    """Q[t]/(q) for q irreducible over Q (not verified here; callers pass
    factors of factored polynomials). Elements are tuples of Fractions."""

    def __init__(self, q_coeffs):
        q = [Fraction(c) for c in q_coeffs]
        while q and q[-1] == 0:
            q.pop()
        if len(q) < 2:
            raise ReducibleModulus("defining polynomial must be nonconstant")
        lc = q[-1]
        self.modpoly = [c / lc for c in q]
        self.deg = len(self.modpoly) - 1
        # reduction table: t^(deg+i) mod q, grown on demand
        self._red = [tuple(-c for c in self.modpoly[:-1])]

    def _ensure_red(self, count: int):
        while len(self._red) < count:
            cur = [Fraction(0)] + list(self._red[-1])
            top = cur[self.deg]
            cur = cur[: self.deg]
            if top:
                cur = [cur[i] - top * self.modpoly[i] for i in range(self.deg)]
            self._red.append(tuple(cur))

    def _wrap(self, coeffs):
        c = [Fraction(x) for x in coeffs]
        out = list(c[: self.deg]) + [Fraction(0)] * max(0, self.deg - len(c))
        if len(c) > self.deg:
            self._ensure_red(len(c) - self.deg)
            for i in range(self.deg, len(c)):
                if c[i]:
                    red = self._red[i - self.deg]
                    for j in range(self.deg):
                        out[j] += c[i] * red[j]
        return tuple(out)

    def zero(self):
        return (Fraction(0),) * self.deg

    def one(self):
        return self._wrap([1])

    def gen(self):
        return self._wrap([0, 1])

    def from_int_poly(self, coeffs):
        return self._wrap(coeffs)

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple(a - b for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a for a in x)

    def mul(self, x, y):
        prod = [Fraction(0)] * (2 * self.deg - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    prod[i + j] += a * b
        return self._wrap(prod)

    def inv(self, x):
        from .rings import pext_gcd, ptrim

        xs = ptrim(QQ, list(x))
        if not xs:
            raise NotAUnit("inverse of zero in number field")
        g, s, _ = pext_gcd(QQ, xs, self.modpoly)
        if len(g) != 1:
            raise NotAUnit("element shares a factor with the modulus")
        c = 1 / g[0]
        return self._wrap([v * c for v in s])

    def pow_(self, x, n: int):
        if n < 0:
            x, n = self.inv(x), -n
        result = self.one()
        while n > 0:
            if n & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            n >>= 1
        return result

    def is_zero(self, x):
        return all(a == 0 for a in x)

    def eq(self, x, y):
        return all(a == b for a, b in zip(x, y))

    def is_one(self, x):
        return self.eq(x, self.one())

    def torsion_order(self, x, max_order: int):
        """Smallest d <= max_order with x^d = 1, or None."""
        if self.is_zero(x):
            return None
        cur = x
        for d in range(1, max_order + 1):
            if self.is_one(cur):
                return d
            cur = self.mul(cur, x)
        return None

    def eval_int_poly(self, coeffs, x):
        acc = self.zero()
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), self.from_int_poly([c]))
        return acc

    def __repr__(self):
        return f"Q[t]/{self.modpoly}"


# ---------------------------------------------------------------------------
# rational reconstruction
# ---------------------------------------------------------------------------


def rational_reconstruct(a: int, m: int, bound: int | None = None):
    """Find n/d = a mod m with |n| <= bound, 0 < d <= bound, gcd(d, m) = 1.

    Half-extended Euclid; the default bound floor(sqrt(m/2)) makes the
    answer unique when it exists. Returns a Fraction or None.
    """
    if m <= 1:
        return None
    a %= m
    if bound is None:
        bound = isqrt(m // 2)
    if bound < 1:
        return None
    r0, r1 = m, a
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if r1 == 0 or abs(t1) > bound or gcd(abs(t1), m) != 1:
        return None
    num, den = r1, t1
    if den < 0:
        num, den = -num, -den
    if (den * a - num) % m != 0:
        return None
    return Fraction(num, den)
