"""Frobenius-defect tests and anomalous-disc enumeration.

The defect oracle recomputes H^sigma(x^p, y^p) - H^p with schoolbook
dictionary arithmetic over Z/p^2, so agreement certifies both the defect
polynomial and the ring layer it was computed in. The disc oracle scans
every point of the curve over F_q and F_q^2 directly."""

import itertools
import random

import pytest
import sympy

from padictori import (
    PrimeField,
    Witt2Polynomial,
    anomalous_discs,
    dlog_independent,
    exponent_normalize,
    finiteness_verdict,
    frobenius_defect,
)
from padictori.errors import (
    HypothesisViolated,
    NonradicalSystem,
    ZeroFunction,
    ZeroVector,
)
from padictori.witt import euler_relation_check


# ---------------------------------------------------------------------------
# independent W2 polynomial arithmetic
# ---------------------------------------------------------------------------


def dict_mul(R, a, b):
    out = {}
    for (i, j), c in a.items():
        for (k, l), d in b.items():
            key = (i + k, j + l)
            out[key] = R.add(out.get(key, R.zero()), R.mul(c, d))
    return {k: v for k, v in out.items() if not R.is_zero(v)}


def dict_pow(R, a, e):
    out = {(0, 0): R.one()}
    for _ in range(e):
        out = dict_mul(R, out, a)
    return out


def naive_defect(H):
    """(sigma H)(x^p, y^p) - H^p by direct expansion, coefficients in R."""
    R = H.ring
    p = R.p
    twisted = {
        (i * p, j * p): R.frobenius(c) for (i, j), c in H.coeffs.items()
    }
    power = dict_pow(R, H.coeffs, p)
    out = {}
    for key in set(twisted) | set(power):
        v = R.sub(twisted.get(key, R.zero()), power.get(key, R.zero()))
        if not R.is_zero(v):
            out[key] = v
    return out


def field_from_ints(F, ints):
    if not hasattr(F, "gen"):
        return F.from_int(ints[0] if ints else 0)
    acc = F.zero()
    for t in reversed(ints):
        acc = F.add(F.mul(acc, F.gen()), F.from_int(t))
    return acc


def assert_defect_congruence(H):
    """p * lift(G) == H^sigma(x^p, y^p) - H^p in Z/p^2, coefficientwise."""
    R = H.ring
    p = R.p
    F = R.residue_field()
    G = frobenius_defect(H)
    diff = naive_defect(H)
    for key, c in diff.items():
        ints = [int(v) for v in c]
        assert all(v % p == 0 for v in ints)
        want = field_from_ints(F, [(v // p) % p for v in ints])
        got = G.get(key, F.zero())
        assert F.is_zero(F.sub(want, got))
    for key in G:
        assert key in diff


def random_witt_poly(rng, q):
    p = 3 if q in (3, 9) else q
    f_deg = 2 if q == 9 else 1
    while True:
        coeffs = {}
        for _ in range(rng.randrange(2, 7)):
            i = rng.randrange(0, 5)
            j = rng.randrange(0, 5 - i)
            if f_deg == 1:
                coeffs[(i, j)] = rng.randrange(1, p**2)
            else:
                coeffs[(i, j)] = (rng.randrange(p**2), rng.randrange(p**2))
        H = Witt2Polynomial.from_integers(p, coeffs, f_deg=f_deg)
        if H.reduction()[1]:
            return H


def test_witt_congruence_random():
    rng = random.Random(13)
    for q in (3, 5, 7, 9):
        for _ in range(10):
            assert_defect_congruence(random_witt_poly(rng, q))


def test_frobenius_lift_fixes_defining_property():
    # sigma reduces to x -> x^p on the residue field
    rng = random.Random(99)
    H = random_witt_poly(rng, 9)
    R = H.ring
    for c in H.coeffs.values():
        fc = R.frobenius(c)
        cp = R.one()
        for _ in range(3):
            cp = R.mul(cp, c)
        assert all((a - b) % 3 == 0 for a, b in zip(fc, cp))


def test_line_defect_and_remainder():
    # H = x + y - 1 at p = 3: the sympy expansion gives the defect, and
    # substituting y -> 1 - x leaves 2*(x - x^2) over F_3
    x, y = sympy.symbols("x y")
    G_sym = sympy.expand((x**3 + y**3 - 1 - (x + y - 1) ** 3) / 3)
    rem_sym = sympy.Poly(G_sym.subs(y, 1 - x), x, domain=sympy.GF(3))
    lam = sympy.Poly(2 * (x - x**2), x, domain=sympy.GF(3))
    assert rem_sym == lam

    H = Witt2Polynomial.from_integers(3, {(1, 0): 1, (0, 1): 1, (0, 0): -1})
    G = frobenius_defect(H)
    G_want = {}
    poly = sympy.Poly(G_sym, x, y)
    for (i, j), c in poly.terms():
        if int(c) % 3:
            G_want[(i, j)] = int(c) % 3
    assert G == G_want
    verdict = finiteness_verdict(H)
    assert verdict.finite
    assert not verdict.divides
    # remainder reduced along the curve equals 2*(x - x^2)
    assert dict(verdict.remainder) == {(1, 0): 2, (2, 0): 1}


def test_subtorus_coset_diagnosed():
    # x*y = 7 at p = 5: 7^5 = 7 mod 25, so the lift points in the torsion
    # direction and the defect vanishes on the curve; the degeneracy chain
    # fires and the Euler-type relation exposes the subtorus coset
    H = Witt2Polynomial.from_integers(5, {(1, 1): 1, (0, 0): -7})
    verdict = finiteness_verdict(H)
    assert not verdict.finite
    assert verdict.divides
    assert verdict.euler is not None
    F = PrimeField(5)
    assert euler_relation_check(F, {(1, 1): 1, (0, 0): 3}) is not None
    assert euler_relation_check(F, {(1, 0): 1, (0, 1): 1, (0, 0): 4}) is None


def test_verdict_depends_on_the_lift():
    # same reduction x*y - 2 mod 5, generic lift: the Fermat quotient of 2
    # is nonzero so the defect does not vanish on the curve
    H = Witt2Polynomial.from_integers(5, {(1, 1): 1, (0, 0): -2})
    verdict = finiteness_verdict(H)
    assert verdict.finite
    assert verdict.verdict == "FINITE"


def test_zero_polynomial_rejected():
    H = Witt2Polynomial.from_integers(3, {(1, 0): 3, (0, 1): 6})
    with pytest.raises(ZeroFunction):
        finiteness_verdict(H)


def test_dlog_independent_examples():
    F = PrimeField(5)
    h = {(1, 0): 1, (0, 1): 1, (0, 0): 4}  # x + y - 1
    fx = ({(1, 0): 1}, {(0, 0): 1})
    fy = ({(0, 1): 1}, {(0, 0): 1})
    assert dlog_independent(F, h, fx, fy)
    fx2 = ({(2, 0): 1}, {(0, 0): 1})
    assert not dlog_independent(F, h, fx, fx2)
    assert not dlog_independent(F, h, fx, fx)


def test_dlog_dependence_on_powers_and_constants():
    F = PrimeField(7)
    h = {(1, 0): 1, (0, 1): 1, (0, 0): 6}
    f = ({(1, 0): 1, (0, 0): 2}, {(0, 0): 1})
    for m in (1, 2, 3):
        for c in (1, 2, 3):
            fm = {(0, 0): c}
            for _ in range(m):
                nxt = {}
                for (i, j), a in fm.items():
                    for (k, l), b in f[0].items():
                        key = (i + k, j + l)
                        nxt[key] = (nxt.get(key, 0) + a * b) % 7
                fm = {k: v for k, v in nxt.items() if v}
            assert not dlog_independent(F, h, f, (fm, {(0, 0): 1}))


def test_exponent_normalize():
    assert exponent_normalize((6, 0, 0), 5) == (1, 0, 0)
    assert exponent_normalize((2, 4, 6), 5) == (1, 2, 3)
    assert exponent_normalize((5, 25, 0), 5) == (1, 0, 0)
    with pytest.raises(ZeroVector):
        exponent_normalize((0, 0, 0), 5)
    rng = random.Random(3)
    for _ in range(60):
        p = rng.choice((3, 5, 7))
        v = tuple(rng.randrange(-20, 21) for _ in range(3))
        if all(c % p == 0 for c in v):
            continue
        w = exponent_normalize(v, p)
        assert exponent_normalize(w, p) == w
        s = rng.randrange(1, p)
        scaled = tuple(c * s for c in v)
        assert exponent_normalize(scaled, p) == w


# ---------------------------------------------------------------------------
# anomalous discs against a pointwise scan
# ---------------------------------------------------------------------------


class QuadExt:
    """F_p[s]/(s^2 - nr) with nr a fixed non-residue."""

    NR = {3: 2, 5: 2, 7: 3}

    def __init__(self, p):
        self.p = p
        self.nr = self.NR[p]

    def elements(self):
        return [(a, b) for a in range(self.p) for b in range(self.p)]

    def mul(self, u, v):
        p = self.p
        return (
            (u[0] * v[0] + self.nr * u[1] * v[1]) % p,
            (u[0] * v[1] + u[1] * v[0]) % p,
        )

    def add(self, u, v):
        return ((u[0] + v[0]) % self.p, (u[1] + v[1]) % self.p)

    def scale(self, u, n):
        return (u[0] * n % self.p, u[1] * n % self.p)

    def inv(self, u):
        # (a + bs)^-1 = (a - bs) / (a^2 - nr b^2)
        a, b = u
        d = (a * a - self.nr * b * b) % self.p
        di = pow(d, -1, self.p)
        return (a * di % self.p, -b * di % self.p)


def brute_anomalous_line(p, f_classes):
    """Points of x + y = 1 over F_p and F_p^2 where some class combination
    of the dlogs of (x, 1 - x) vanishes; returns per-class solutions and
    the distinct union. The combination n1/x - n2/(1-x) vanishes exactly
    when n1 (1-x) - n2 x does."""
    E = QuadExt(p)
    one = (1, 0)
    per_class = {}
    union = set()
    for n1, n2 in f_classes:
        sols = []
        for xx in E.elements():
            om = ((1 - xx[0]) % p, (-xx[1]) % p)
            if xx == (0, 0) or om == (0, 0):
                continue
            val = (
                (E.scale(om, n1)[0] - E.scale(xx, n2)[0]) % p,
                (E.scale(om, n1)[1] - E.scale(xx, n2)[1]) % p,
            )
            if val == (0, 0):
                sols.append(xx)
        per_class[(n1, n2)] = sols
        union.update(sols)
    return per_class, union


def minpoly_roots_in_quad(E, coeffs):
    """Roots of an F_p[t] polynomial (little-endian ints) inside E."""
    roots = []
    for xx in E.elements():
        acc = (0, 0)
        power = (1, 0)
        for c in coeffs:
            acc = E.add(acc, E.scale(power, int(c)))
            power = E.mul(power, xx)
        if acc == (0, 0):
            roots.append(xx)
    return roots


def test_anomalous_discs_line_matches_scan():
    p = 5
    F = PrimeField(p)
    h = {(1, 0): 1, (0, 1): 1, (0, 0): p - 1}
    f_list = [
        ({(1, 0): 1}, {(0, 0): 1}),
        ({(0, 0): 1, (1, 0): p - 1}, {(0, 0): 1}),
    ]
    rep = anomalous_discs(F, h, f_list, 0, 4)
    classes = [(1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (0, 1)]
    per_class, union = brute_anomalous_line(p, classes)
    assert rep.total == len(union) == 3
    assert rep.total <= 6
    E = QuadExt(p)
    lib = {tuple(c.exponents): c.points for c in rep.classes}
    assert set(lib) == set(per_class)
    for cls, sols in per_class.items():
        pts = set()
        for r in lib[cls]:
            pts.update(minpoly_roots_in_quad(E, list(r.x_minpoly)))
        assert pts == set(sols)


def test_anomalous_discs_pointwise_counts():
    # fixed small instances whose points all live in degree <= 2
    for p in (3, 5):
        F = PrimeField(p)
        h = {(1, 0): 1, (0, 1): 1, (0, 0): p - 1}
        f_list = [
            ({(1, 0): 1}, {(0, 0): 1}),
            ({(0, 0): 1, (1, 0): p - 1}, {(0, 0): 1}),
        ]
        rep = anomalous_discs(F, h, f_list, 0, 4)
        classes = [(1, k) for k in range(p)] + [(0, 1)]
        _, union = brute_anomalous_line(p, classes)
        assert rep.total == len(union)
        for c in rep.classes:
            for r in c.points:
                assert len(r.x_minpoly) - 1 <= 2


def test_anomalous_identical_functions_rejected():
    F = PrimeField(5)
    h = {(1, 0): 1, (0, 1): 1, (0, 0): 4}
    fx = ({(1, 0): 1}, {(0, 0): 1})
    with pytest.raises(NonradicalSystem):
        anomalous_discs(F, h, [fx, fx], 0, 4)
