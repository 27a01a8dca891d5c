"""Finite fields and unramified quotient rings, with exact integer arithmetic.

Polynomials are plain Python lists of coefficients in little-endian order
(index = degree) with no trailing zeros; the zero polynomial is []. All
routines here take an explicit field object implementing the small protocol
below, so the same code factors over F_p, over F_q, and over towers.

Field protocol: attributes p (characteristic), size; methods zero(), one(),
add, sub, neg, mul, inv, is_zero, eq, from_int, pow_, elements(), rand(rng).
"""

from __future__ import annotations

import random

from .errors import DivisionByZero, NotAUnit, NotPrime, ReducibleModulus

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all 64-bit inputs and reliable
    far beyond (fixed witness set)."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """F_p with int elements."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p
        self.size = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n: int):
        return n % self.p

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def neg(self, x):
        return -x % self.p

    def mul(self, x, y):
        return x * y % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise NotAUnit("inverse of 0 in prime field")
        return pow(x, -1, self.p)

    def pow_(self, x, n: int):
        if n < 0:
            return pow(self.inv(x), -n, self.p)
        return pow(x, n, self.p)

    def is_zero(self, x):
        return x % self.p == 0

    def eq(self, x, y):
        return (x - y) % self.p == 0

    def elements(self):
        return range(self.p)

    def rand(self, rng: random.Random):
        return rng.randrange(self.p)

    def __repr__(self):
        return f"F_{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


# ---------------------------------------------------------------------------
# generic polynomial algebra over a field object
# ---------------------------------------------------------------------------


def ptrim(F, c):
    c = list(c)
    while c and F.is_zero(c[-1]):
        c.pop()
    return c


def pdeg(c) -> int:
    # degree of [] is -1 by convention
    return len(c) - 1


def padd(F, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else F.zero()
        y = b[i] if i < len(b) else F.zero()
        out.append(F.add(x, y))
    return ptrim(F, out)


def psub(F, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else F.zero()
        y = b[i] if i < len(b) else F.zero()
        out.append(F.sub(x, y))
    return ptrim(F, out)


def pneg(F, a):
    return [F.neg(x) for x in a]


def pscale(F, a, s):
    if F.is_zero(s):
        return []
    return ptrim(F, [F.mul(x, s) for x in a])


def pmul(F, a, b):
    if not a or not b:
        return []
    out = [F.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if F.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return ptrim(F, out)


def pdivmod(F, a, b):
    """Quotient and remainder; leading coefficient of b must be invertible."""
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    lb = F.inv(b[-1])
    db = len(b) - 1
    q = [F.zero()] * max(0, len(a) - db)
    while len(a) - 1 >= db and a:
        c = F.mul(a[-1], lb)
        d = len(a) - 1 - db
        q[d] = c
        for i in range(len(b)):
            a[d + i] = F.sub(a[d + i], F.mul(c, b[i]))
        a = ptrim(F, a)
    return ptrim(F, q), a


def pmod(F, a, b):
    return pdivmod(F, a, b)[1]


def pmonic(F, a):
    if not a:
        return a
    return pscale(F, a, F.inv(a[-1]))


def pgcd(F, a, b):
    while b:
        a, b = b, pmod(F, a, b)
    return pmonic(F, a)


def pext_gcd(F, a, b):
    """Return (g, s, t) with s*a + t*b = g, g monic (or [])."""
    r0, r1 = list(a), list(b)
    s0, s1 = [F.one()], []
    t0, t1 = [], [F.one()]
    while r1:
        q, r = pdivmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(F, s0, pmul(F, q, s1))
        t0, t1 = t1, psub(F, t0, pmul(F, q, t1))
    if r0:
        c = F.inv(r0[-1])
        r0 = pscale(F, r0, c)
        s0 = pscale(F, s0, c)
        t0 = pscale(F, t0, c)
    return r0, s0, t0


def ppow_mod(F, a, e: int, m):
    """a^e mod m by binary powering."""
    result = [F.one()]
    base = pmod(F, a, m)
    while e > 0:
        if e & 1:
            result = pmod(F, pmul(F, result, base), m)
        base = pmod(F, pmul(F, base, base), m)
        e >>= 1
    return result


def peval(F, a, x):
    acc = F.zero()
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def pderiv(F, a):
    out = []
    for i in range(1, len(a)):
        out.append(F.mul(a[i], F.from_int(i)))
    return ptrim(F, out)


def pshift(F, a, k: int):
    """Multiply by X^k."""
    if not a:
        return []
    return [F.zero()] * k + list(a)


def is_irreducible(F, m) -> bool:
    """Rabin test: m of degree d over F_q is irreducible iff X^{q^d} = X
    mod m and gcd(X^{q^{d/l}} - X, m) = 1 for every prime l dividing d."""
    d = pdeg(m)
    if d <= 0:
        return False
    if d == 1:
        return True
    q = F.size
    x = [F.zero(), F.one()]
    primes = set()
    dd = d
    t = 2
    while t * t <= dd:
        while dd % t == 0:
            primes.add(t)
            dd //= t
        t += 1
    if dd > 1:
        primes.add(dd)
    for ell in sorted(primes):
        h = ppow_mod(F, x, q ** (d // ell), m)
        g = pgcd(F, psub(F, h, x), m)
        if pdeg(g) != 0:
            return False
    h = ppow_mod(F, x, q**d, m)
    return not psub(F, h, x)


def modulus_scan(p: int, f: int):
    """First monic irreducible of degree f over F_p, enumerating the lower
    coefficients as base-p digits of 0, 1, 2, ... (constant term fastest).

    Returns integer coefficients, little-endian, length f + 1.
    """
    F = PrimeField(p)
    if f == 1:
        return [0, 1]
    n = 0
    while True:
        coeffs, t = [], n
        for _ in range(f):
            coeffs.append(t % p)
            t //= p
        m = coeffs + [1]
        if is_irreducible(F, m):
            return m
        n += 1
        if n >= p**f:
            raise ReducibleModulus("no irreducible found; impossible")


# ---------------------------------------------------------------------------
# factorization over a finite field (odd characteristic for the random split)
# ---------------------------------------------------------------------------


def _pth_root_poly(F, a):
    # a is a polynomial in X^p with field coefficients; return b with b(X)^p = a
    p = F.p
    out = []
    for i in range(0, len(a), p):
        c = a[i]
        # c^(size/p) is the p-th root in F_{size}
        out.append(F.pow_(c, F.size // p))
    return ptrim(F, out)


def squarefree_decomposition(F, f):
    """Yield (g_i, i) with f = lc * prod g_i^i, g_i squarefree monic."""
    out = []
    f = pmonic(F, f)

    def run(f, mult):
        if pdeg(f) < 1:
            return
        df = pderiv(F, f)
        if not df:
            run(_pth_root_poly(F, f), mult * F.p)
            return
        a = pgcd(F, f, df)
        w = pdivmod(F, f, a)[0]
        i = 1
        while pdeg(w) > 0:
            y = pgcd(F, w, a)
            z = pdivmod(F, w, y)[0]
            if pdeg(z) > 0:
                out.append((z, i * mult))
            w = y
            a = pdivmod(F, a, y)[0]
            i += 1
        if pdeg(a) > 0:
            run(_pth_root_poly(F, a), mult * F.p)

    run(f, 1)
    return out


def _distinct_degree(F, f):
    """f squarefree monic. Yield (product of degree-d factors, d)."""
    out = []
    q = F.size
    x = [F.zero(), F.one()]
    h = list(x)
    d = 0
    rest = list(f)
    while pdeg(rest) > 2 * d + 1:
        d += 1
        h = ppow_mod(F, h, q, rest)
        g = pgcd(F, psub(F, h, x), rest)
        if pdeg(g) > 0:
            out.append((g, d))
            rest = pdivmod(F, rest, g)[0]
            h = pmod(F, h, rest)
    if pdeg(rest) > 0:
        out.append((rest, pdeg(rest)))
    return out


def _equal_degree_split(F, f, d, rng):
    """Cantor-Zassenhaus for odd field size; f = product of irreducibles of
    degree d. Returns the list of irreducible factors."""
    n = pdeg(f)
    if n == d:
        return [f]
    if F.size % 2 == 0:
        raise NotImplementedError("equal-degree splitting needs odd field size")
    e = (F.size**d - 1) // 2
    while True:
        u = ptrim(F, [F.rand(rng) for _ in range(n)])
        if pdeg(u) < 1:
            continue
        g = pgcd(F, u, f)
        if 0 < pdeg(g) < n:
            return _equal_degree_split(F, g, d, rng) + _equal_degree_split(
                F, pdivmod(F, f, g)[0], d, rng
            )
        h = psub(F, ppow_mod(F, u, e, f), [F.one()])
        g = pgcd(F, h, f)
        if 0 < pdeg(g) < n:
            return _equal_degree_split(F, g, d, rng) + _equal_degree_split(
                F, pdivmod(F, f, g)[0], d, rng
            )


def _seed_from_poly(f) -> int:
    return hash(("cz-seed", str(f))) & 0x7FFFFFFF


def factor_poly(F, f):
    """Full factorization over F. Returns (lc, [(monic irreducible, mult)]),
    factors sorted for determinism. Random choices are seeded from the input
    so repeated runs agree."""
    if not f:
        raise DivisionByZero("cannot factor the zero polynomial")
    lc = f[-1]
    if pdeg(f) == 0:
        return lc, []
    rng = random.Random(_seed_from_poly(f))
    out = []
    for g, mult in squarefree_decomposition(F, f):
        for h, d in _distinct_degree(F, g):
            for irr in _equal_degree_split(F, h, d, rng):
                out.append((pmonic(F, irr), mult))
    out.sort(key=lambda t: (pdeg(t[0]), str(t[0])))
    return lc, out


def poly_roots(F, f):
    """Roots of f in F itself, each listed once."""
    roots = []
    for g, _ in factor_poly(F, f)[1]:
        if pdeg(g) == 1:
            roots.append(F.neg(g[0]))
    return roots


class QuotientField:
    """base[X]/(m) for m monic irreducible over base; elements are tuples of
    base elements of length deg m."""

    def __init__(self, base, modpoly, check=True):
        modpoly = ptrim(base, list(modpoly))
        if pdeg(modpoly) < 1 or not base.eq(modpoly[-1], base.one()):
            raise ReducibleModulus("modulus must be monic of positive degree")
        if check and not is_irreducible(base, modpoly):
            raise ReducibleModulus(f"{modpoly} is reducible over {base}")
        self.base = base
        self.modpoly = modpoly
        self.deg = pdeg(modpoly)
        self.p = base.p
        self.size = base.size**self.deg

    def _wrap(self, coeffs):
        c = ptrim(self.base, coeffs)
        return tuple(c) + (self.base.zero(),) * (self.deg - len(c))

    def zero(self):
        return (self.base.zero(),) * self.deg

    def one(self):
        return self._wrap([self.base.one()])

    def gen(self):
        return self._wrap([self.base.zero(), self.base.one()])

    def from_int(self, n: int):
        return self._wrap([self.base.from_int(n)])

    def from_base(self, x):
        return self._wrap([x])

    def add(self, x, y):
        return tuple(self.base.add(a, b) for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple(self.base.sub(a, b) for a, b in zip(x, y))

    def neg(self, x):
        return tuple(self.base.neg(a) for a in x)

    def mul(self, x, y):
        prod = pmul(self.base, list(x), list(y))
        return self._wrap(pmod(self.base, prod, self.modpoly))

    def inv(self, x):
        g, s, _ = pext_gcd(self.base, ptrim(self.base, list(x)), self.modpoly)
        if pdeg(g) != 0:
            raise NotAUnit("element is not invertible")
        return self._wrap(pscale(self.base, s, self.base.inv(g[0])))

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
        return all(self.base.is_zero(a) for a in x)

    def eq(self, x, y):
        return all(self.base.eq(a, b) for a, b in zip(x, y))

    def elements(self):
        def rec(i):
            if i == self.deg:
                yield ()
                return
            for rest in rec(i + 1):
                for c in self.base.elements():
                    yield (c,) + rest

        return (self._wrap(list(t)) for t in rec(0))

    def rand(self, rng: random.Random):
        return tuple(self.base.rand(rng) for _ in range(self.deg))

    def __repr__(self):
        return f"{self.base}[X]/{self.modpoly}"

    def __eq__(self, other):
        return (
            isinstance(other, QuotientField)
            and other.base == self.base
            and other.modpoly == self.modpoly
        )

    def __hash__(self):
        return hash(("QuotientField", self.base, tuple(self.modpoly)))


# ---------------------------------------------------------------------------
# unramified quotient rings (Z/p^k)[a]/(m(a))
# ---------------------------------------------------------------------------


class ResidueRing:
    """(Z/p^k)[a]/(m(a)) with m monic of degree f, irreducible mod p.

    Elements are tuples of f ints in [0, p^k). Inversion reduces to the
    residue field and Hensel-doubles back up; the Frobenius automorphism is
    the unique lift of x -> x^p fixing Z/p^k, computed once at construction
    by Newton iteration on m.
    """

    def __init__(self, p: int, k: int, modpoly, check=True):
        if check and not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if k < 1:
            raise ValueError("precision k must be at least 1")
        self.p = p
        self.k = k
        self.pk = p**k
        mod = [int(c) % self.pk for c in modpoly]
        while mod and mod[-1] == 0:
            mod.pop()
        if not mod or mod[-1] != 1:
            raise ReducibleModulus("modulus must be monic")
        self.modpoly = mod
        self.f = len(mod) - 1
        if self.f < 1:
            raise ReducibleModulus("modulus must have positive degree")
        self._Fp = PrimeField(p)
        mbar = ptrim(self._Fp, [c % p for c in mod])
        if pdeg(mbar) != self.f:
            raise ReducibleModulus("modulus degree drops mod p")
        if check and self.f > 1 and not is_irreducible(self._Fp, mbar):
            raise ReducibleModulus(f"{mod} is reducible mod {p}")
        self._resfield = (
            QuotientField(self._Fp, mbar, check=False) if self.f > 1 else None
        )
        self._frob_gen_powers = None

    # -- basic ops ----------------------------------------------------------

    def zero(self):
        return (0,) * self.f

    def one(self):
        return self._wrap([1])

    def gen(self):
        return self._wrap([0, 1])

    def from_int(self, n: int):
        return self._wrap([n % self.pk])

    def from_coeffs(self, coeffs):
        return self._wrap([int(c) % self.pk for c in coeffs])

    def _wrap(self, coeffs):
        c = [int(x) % self.pk for x in coeffs]
        if len(c) >= len(self.modpoly):
            c = self._reduce(c)
        c = c[: self.f] + [0] * (self.f - len(c))
        return tuple(c)

    def _reduce(self, c):
        # division by the monic modulus over Z/p^k
        c = list(c)
        dm = self.f
        while len(c) > dm:
            top = c.pop()
            if top:
                d = len(c) - dm
                for i in range(dm):
                    c[d + i] = (c[d + i] - top * self.modpoly[i]) % self.pk
        return c

    def add(self, x, y):
        return tuple((a + b) % self.pk for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple((a - b) % self.pk for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a % self.pk for a in x)

    def mul(self, x, y):
        out = [0] * (2 * self.f - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    out[i + j] += a * b
        return self._wrap(out)

    def scale(self, x, n: int):
        n %= self.pk
        return tuple(a * n % self.pk for a in x)

    def is_zero(self, x):
        return all(a % self.pk == 0 for a in x)

    def eq(self, x, y):
        return all((a - b) % self.pk == 0 for a, b in zip(x, y))

    def is_unit(self, x):
        return any(a % self.p for a in x)

    def inv(self, x):
        if not self.is_unit(x):
            raise NotAUnit(f"{x} is divisible by {self.p}")
        # invert in the residue field, then Hensel: y <- y(2 - xy)
        if self.f == 1:
            y0 = pow(x[0] % self.p, -1, self.p)
            y = (y0,)
        else:
            Fq = self._resfield
            y = tuple(
                int(c) for c in Fq.inv(tuple(a % self.p for a in x))
            )
        prec = 1
        two = self.from_int(2)
        while prec < self.k:
            y = self.mul(y, self.sub(two, self.mul(x, y)))
            prec *= 2
        return y

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

    def rand(self, rng: random.Random):
        return tuple(rng.randrange(self.pk) for _ in range(self.f))

    def elements(self):
        def rec(i):
            if i == 0:
                yield ()
                return
            for rest in rec(i - 1):
                for c in range(self.pk):
                    yield rest + (c,)

        return rec(self.f)

    # -- structure maps ------------------------------------------------------

    def residue_field(self):
        """F_q = F_p[a]/(m mod p) as a QuotientField (or PrimeField if f=1)."""
        if self.f == 1:
            return self._Fp
        return self._resfield

    def to_residue(self, x):
        if self.f == 1:
            return x[0] % self.p
        return tuple(a % self.p for a in x)

    def lift_residue(self, xbar):
        if self.f == 1:
            return (int(xbar) % self.pk,)
        return tuple(int(a) % self.pk for a in xbar)

    def reduce_to(self, other: "ResidueRing", x):
        """Image of x in the same ring at lower precision."""
        if other.p != self.p or other.f != self.f or other.k > self.k:
            raise ValueError("target must be same ring at lower precision")
        return tuple(a % other.pk for a in x)

    def poly_eval(self, coeffs, x):
        """Evaluate a polynomial with ring-element coefficients at x."""
        acc = self.zero()
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc

    def eval_int_poly(self, coeffs, x):
        """Evaluate a polynomial with integer coefficients at x."""
        acc = self.zero()
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), self.from_int(c))
        return acc

    # -- Teichmueller and Frobenius -----------------------------------------

    def teichmueller(self, x):
        """The unique (q-1)-st root of unity congruent to x mod p; x must be
        a unit. Iterating y -> y^q gains one p-adic digit per step."""
        if not self.is_unit(x):
            raise NotAUnit("Teichmueller lift needs a unit")
        q = self.p**self.f
        y = x
        for _ in range(self.k):
            y2 = self.pow_(y, q)
            if self.eq(y2, y):
                return y2
            y = y2
        return y

    def _frob_image_of_gen(self):
        """Newton-lift a^p (mod p) to the root of m congruent to it."""
        x = self._wrap([0, 1])
        x = self.pow_(x, self.p)
        mprime = [
            self.from_int(i * self.modpoly[i]) for i in range(1, len(self.modpoly))
        ]
        mcoeffs = [self.from_int(c) for c in self.modpoly]
        prec = 1
        while prec < self.k:
            fx = self.poly_eval(mcoeffs, x)
            dfx = self.poly_eval(mprime, x)
            x = self.sub(x, self.mul(fx, self.inv(dfx)))
            prec *= 2
        return x

    def frobenius(self, x):
        """Ring automorphism lifting the p-power map on the residue field."""
        if self.f == 1:
            return x
        if self._frob_gen_powers is None:
            sa = self._frob_image_of_gen()
            powers = [self.one()]
            for _ in range(1, self.f):
                powers.append(self.mul(powers[-1], sa))
            self._frob_gen_powers = powers
        acc = self.zero()
        for c, pw in zip(x, self._frob_gen_powers):
            acc = self.add(acc, self.scale(pw, c))
        return acc

    def __repr__(self):
        return f"(Z/{self.p}^{self.k})[a]/{self.modpoly}"

    def __eq__(self, other):
        return (
            isinstance(other, ResidueRing)
            and other.p == self.p
            and other.k == self.k
            and other.modpoly == self.modpoly
        )

    def __hash__(self):
        return hash(("ResidueRing", self.p, self.k, tuple(self.modpoly)))
