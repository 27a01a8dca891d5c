"""Frobenius-defect divisibility tests and anomalous-disc enumeration.

A plane curve h = 0 over F_q meets only finitely many residue discs that
carry unramified points of a rank-one subgroup of the torus, provided the
defect polynomial G = (H^sigma(x^p, y^p) - H^p) / p is not divisible by h.
Here H is any lift of h to length-two Witt vectors and sigma is the
Frobenius lift on the coefficients. When divisibility does hold, the
failure is diagnosed step by step: the derivative identity that
divisibility forces, and finally an Euler-type relation
x h_x + a y h_y + b h = 0 certifying that the curve lies in a coset of a
proper subtorus modulo p.

The discs themselves are located per projective exponent class by
eliminating y with a resultant and factoring over F_q; the count is
compared against the genus bound supplied by the caller.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .bipolys import (
    fb_add,
    fb_degx,
    fb_degy,
    fb_deriv_x,
    fb_deriv_y,
    fb_divides_on_curve,
    fb_from_ypolys,
    fb_irreducible_probe,
    fb_map_coeffs,
    fb_mul,
    fb_pow,
    fb_prem_y_steps,
    fb_resultant_y,
    fb_scale,
    fb_sub,
    fb_subs_powers,
    fb_to_ypolys,
    fb_trim,
)
from .errors import (
    DegenerateDerivatives,
    DomainMismatch,
    HypothesisViolated,
    NonradicalSystem,
    NotPrime,
    ReducibleH,
    ZeroFunction,
    ZeroVector,
)
from .rings import (
    QuotientField,
    ResidueRing,
    factor_poly,
    is_prime,
    modulus_scan,
    pdeg,
    pgcd,
    pmod,
    pmonic,
    pmul,
    ptrim,
)

# ---------------------------------------------------------------------------
# length-two Witt coefficients
# ---------------------------------------------------------------------------


class Witt2Polynomial:
    """Bivariate polynomial with coefficients in W(F_q)/p^2.

    The coefficient ring is an unramified quotient (Z/p^2)[a]/(m(a)); sigma
    acts on coefficients as the canonical Frobenius lift (the identity when
    the residue field is F_p itself).
    """

    def __init__(self, ring: ResidueRing, coeffs: dict):
        if ring.k != 2:
            raise DomainMismatch("coefficients must live at precision p^2")
        self.ring = ring
        self.coeffs = {k: v for k, v in coeffs.items() if not ring.is_zero(v)}

    @classmethod
    def from_integers(cls, p: int, coeffs, f_deg: int = 1, modulus=None):
        """Build from integer (or coefficient-tuple) monomial data.

        coeffs is a dict {(i, j): c} or an iterable of ((i, j), c) pairs;
        each c is an integer or a little-endian tuple over the extension.
        """
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        ring = ResidueRing(p, 2, modulus if modulus is not None else modulus_scan(p, f_deg))
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        wrapped = {}
        for key, c in items:
            i, j = key
            if isinstance(c, int):
                elt = ring.from_int(c)
            else:
                elt = ring.from_coeffs([int(t) for t in c])
            wrapped[(int(i), int(j))] = elt
        return cls(ring, wrapped)

    def sigma(self) -> "Witt2Polynomial":
        """Apply the Frobenius lift to every coefficient."""
        return Witt2Polynomial(self.ring, fb_map_coeffs(self.coeffs, self.ring.frobenius))

    def residue_field(self):
        return self.ring.residue_field()

    def reduction(self):
        """(F_q, h) with h the mod-p image of the polynomial."""
        F = self.ring.residue_field()
        out = {}
        for key, c in self.coeffs.items():
            r = self.ring.to_residue(c)
            if not F.is_zero(r):
                out[key] = r
        return F, out

    def __repr__(self):
        return f"Witt2Polynomial({self.ring}, {len(self.coeffs)} terms)"


def _field_elt(F, ints):
    """Little-endian integer coefficients to an element of F_q."""
    if not hasattr(F, "gen"):
        return F.from_int(ints[0] if ints else 0)
    acc = F.zero()
    for t in reversed(ints):
        acc = F.add(F.mul(acc, F.gen()), F.from_int(t))
    return acc


def frobenius_defect(H: Witt2Polynomial) -> dict:
    """G = (H^sigma(x^p, y^p) - H^p) / p over the residue field.

    The numerator is divisible by p for every lift, an identity of Witt
    vectors; a nondivisible coefficient therefore signals broken ring
    arithmetic and aborts."""
    R = H.ring
    p = R.p
    _, h = H.reduction()
    if not h:
        raise ZeroFunction("polynomial vanishes modulo p")
    twisted = fb_subs_powers(fb_map_coeffs(H.coeffs, R.frobenius), p, p)
    diff = fb_sub(R, twisted, fb_pow(R, H.coeffs, p))
    F = R.residue_field()
    G: dict = {}
    for key, c in diff.items():
        ints = [int(v) for v in c]
        if any(v % p for v in ints):
            raise ArithmeticError("defect numerator not divisible by p")
        elt = _field_elt(F, [(v // p) % p for v in ints])
        if not F.is_zero(elt):
            G[key] = elt
    return G


# ---------------------------------------------------------------------------
# divisibility on the curve and the degeneracy chain
# ---------------------------------------------------------------------------


def _warn_if_reducible(F, h, strict: bool, context: str):
    verdict, certain = fb_irreducible_probe(F, h)
    if certain and not verdict:
        msg = f"curve polynomial is reducible; {context} assumes irreducibility"
        if strict:
            raise ReducibleH(msg)
        warnings.warn(msg, stacklevel=3)


def _reduce_rows_mod_h(F, g: dict, h: dict):
    """Rows of g reduced mod h, with the pseudo-division multiplier count."""
    if not g:
        return [], 0
    if fb_degy(h) > 0:
        return fb_prem_y_steps(F, g, h)
    hrow = pmonic(F, fb_to_ypolys(F, h)[0])
    return [pmod(F, r, hrow) for r in fb_to_ypolys(F, g)], 0


def divides_on_curve(F, G: dict, h: dict, strict: bool = False):
    """Whether h divides G in F_q[x, y], plus the remainder of the division.

    The remainder comes from pseudo-division by h as a polynomial in y over
    F_q[x] (so it is G reduced mod h up to a power of the leading
    y-coefficient); for y-free h each y-row is reduced mod h(x). A reducible
    h makes the verdict unreliable: it is reported as a warning, or raised
    as ReducibleH when strict is set."""
    h = fb_trim(F, h)
    G = fb_trim(F, G)
    if not h or (fb_degx(h) == 0 and fb_degy(h) == 0):
        raise ZeroFunction("divisor polynomial is constant")
    _warn_if_reducible(F, h, strict, "the divisibility verdict")
    rows, _ = _reduce_rows_mod_h(F, G, h)
    rem = fb_from_ypolys(F, rows)
    return (not rem), rem


def defect_derivative_criterion(F, h: dict) -> bool:
    """Whether x^{p-1} h_x(x^p, y^p) h_y = y^{p-1} h_y(x^p, y^p) h_x on h = 0.

    Divisibility of the defect polynomial by h forces this identity, so a
    False here certifies h does not divide the defect of any lift. Raises
    DegenerateDerivatives when a partial derivative of h vanishes
    identically, which makes the identity hold for empty reasons."""
    h = fb_trim(F, h)
    if not h or (fb_degx(h) == 0 and fb_degy(h) == 0):
        raise ZeroFunction("curve polynomial is constant")
    p = F.p
    hx, hy = fb_deriv_x(F, h), fb_deriv_y(F, h)
    if not hx or not hy:
        raise DegenerateDerivatives("a partial derivative of h vanishes identically")
    lhs = fb_mul(F, {(p - 1, 0): F.one()}, fb_mul(F, fb_subs_powers(hx, p, p), hy))
    rhs = fb_mul(F, {(0, p - 1): F.one()}, fb_mul(F, fb_subs_powers(hy, p, p), hx))
    return fb_divides_on_curve(F, h, fb_sub(F, lhs, rhs))


def _check_rows(F, rows, a, b) -> bool:
    return all(
        F.is_zero(F.sub(F.add(F.mul(c1, a), F.mul(c2, b)), r)) for c1, c2, r in rows
    )


def _solve_two_unknowns(F, rows):
    """Solve c1*a + c2*b = r over F for all rows; free unknowns become 0."""
    rows = [
        r
        for r in rows
        if not (F.is_zero(r[0]) and F.is_zero(r[1]) and F.is_zero(r[2]))
    ]
    for c1, c2, r in rows:
        if F.is_zero(c1) and F.is_zero(c2):
            return None
    if not rows:
        return F.zero(), F.zero()
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            c1, c2, r1 = rows[i]
            d1, d2, r2 = rows[j]
            det = F.sub(F.mul(c1, d2), F.mul(c2, d1))
            if F.is_zero(det):
                continue
            inv = F.inv(det)
            a = F.mul(inv, F.sub(F.mul(r1, d2), F.mul(c2, r2)))
            b = F.mul(inv, F.sub(F.mul(c1, r2), F.mul(r1, d1)))
            return (a, b) if _check_rows(F, rows, a, b) else None
    c1, c2, r = rows[0]
    if not F.is_zero(c1):
        a, b = F.mul(r, F.inv(c1)), F.zero()
    else:
        a, b = F.zero(), F.mul(r, F.inv(c2))
    return (a, b) if _check_rows(F, rows, a, b) else None


def euler_relation_check(F, h: dict):
    """Constants (a, b) with x h_x + a y h_y + b h = 0, or None.

    Such a relation means the curve lies in a coset of a proper subtorus
    modulo p. Solvability over the algebraic closure is detected by the
    F_q-linear system itself since rank does not grow under field
    extension."""
    h = fb_trim(F, h)
    if not h:
        raise ZeroFunction("curve polynomial is zero")
    p1 = fb_mul(F, {(1, 0): F.one()}, fb_deriv_x(F, h))
    p2 = fb_mul(F, {(0, 1): F.one()}, fb_deriv_y(F, h))
    monos = sorted(set(p1) | set(p2) | set(h))
    rows = [
        (p2.get(k, F.zero()), h.get(k, F.zero()), F.neg(p1.get(k, F.zero())))
        for k in monos
    ]
    return _solve_two_unknowns(F, rows)


# ---------------------------------------------------------------------------
# logarithmic-differential independence
# ---------------------------------------------------------------------------


def _as_pair(F, fn):
    """Accept a polynomial dict or a (numerator, denominator) pair."""
    if isinstance(fn, dict):
        num, den = fn, {(0, 0): F.one()}
    else:
        num, den = fn
    num, den = fb_trim(F, num), fb_trim(F, den)
    if not num or not den:
        raise ZeroFunction("function has a zero numerator or denominator")
    return num, den


def _fb_wedge(F, h, g):
    # numerator of dg against the curve direction: g_x h_y - g_y h_x
    return fb_sub(
        F,
        fb_mul(F, fb_deriv_x(F, g), fb_deriv_y(F, h)),
        fb_mul(F, fb_deriv_y(F, g), fb_deriv_x(F, h)),
    )


def fb_dlog_numerator(F, h: dict, fn) -> dict:
    """Numerator A of df/f restricted to h = 0, f = num/den.

    Along the curve df/f = A / (num * den * h_y) dx, so the vanishing locus
    of A on the curve (away from zeros and poles of f) is chart
    independent."""
    num, den = _as_pair(F, fn)
    return fb_sub(
        F,
        fb_mul(F, _fb_wedge(F, h, num), den),
        fb_mul(F, _fb_wedge(F, h, den), num),
    )


def _pow_rows(F, base, k):
    out = [F.one()]
    for _ in range(k):
        out = pmul(F, out, base)
    return out


def dlog_independent(F, h: dict, f, g) -> bool:
    """Whether df/f and dg/g are independent over the closure of F_q on h = 0.

    Tests proportionality of the cross-normalized numerators
    A_g * num_f * den_f and A_f * num_g * den_g modulo h via 2x2 coefficient
    minors (minor vanishing is field independent). Both reductions are
    scaled to the same pseudo-division multiplier so that a constant ratio
    survives the reduction."""
    h = fb_trim(F, h)
    if not h or (fb_degx(h) == 0 and fb_degy(h) == 0):
        raise ZeroFunction("curve polynomial is constant")
    fn, fd = _as_pair(F, f)
    gn, gd = _as_pair(F, g)
    for part in (fn, fd, gn, gd):
        if fb_divides_on_curve(F, h, part):
            raise ZeroFunction("function vanishes identically on the curve")
    af = fb_dlog_numerator(F, h, (fn, fd))
    ag = fb_dlog_numerator(F, h, (gn, gd))
    u = fb_mul(F, ag, fb_mul(F, fn, fd))
    v = fb_mul(F, af, fb_mul(F, gn, gd))
    urows, ku = _reduce_rows_mod_h(F, u, h)
    vrows, kv = _reduce_rows_mod_h(F, v, h)
    if fb_degy(h) > 0 and ku != kv:
        lead = fb_to_ypolys(F, h)[-1]
        if pdeg(lead) > 0:
            urows = [pmul(F, r, _pow_rows(F, lead, kv)) for r in urows]
            vrows = [pmul(F, r, _pow_rows(F, lead, ku)) for r in vrows]
    ur, vr = fb_from_ypolys(F, urows), fb_from_ypolys(F, vrows)
    monos = sorted(set(ur) | set(vr))
    vecs = [(ur.get(k, F.zero()), vr.get(k, F.zero())) for k in monos]
    anchor = next(
        (t for t in vecs if not (F.is_zero(t[0]) and F.is_zero(t[1]))), None
    )
    if anchor is None:
        return False
    ua, va = anchor
    return any(
        not F.is_zero(F.sub(F.mul(ua, vv), F.mul(va, uu))) for uu, vv in vecs
    )


# ---------------------------------------------------------------------------
# exponent vectors
# ---------------------------------------------------------------------------


def exponent_normalize(n, p: int) -> tuple:
    """Canonical representative of an exponent vector in P^{k-1}(F_p).

    Common p-power factors are divided out before reducing mod p (a p-th
    power relation is the Frobenius of a smaller one), then the vector is
    scaled so its first nonzero entry is 1."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    vec = [int(t) for t in n]
    if not vec or all(t == 0 for t in vec):
        raise ZeroVector("exponent vector is zero")
    while all(t % p == 0 for t in vec):
        vec = [t // p for t in vec]
    red = [t % p for t in vec]
    lead = next(t for t in red if t)
    inv = pow(lead, -1, p)
    return tuple(t * inv % p for t in red)


# ---------------------------------------------------------------------------
# the finiteness verdict
# ---------------------------------------------------------------------------


@dataclass
class FinitenessVerdict:
    """Outcome of the defect-divisibility test with a degeneracy diagnosis.

    finite=True means h does not divide the defect polynomial, which
    certifies finitely many anomalous residue discs. Otherwise the
    derivative identity and the Euler-type relation narrow down why the
    certificate failed."""

    finite: bool
    divides: bool
    remainder: dict
    derivative_identity: bool | None
    euler: tuple | None
    notes: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "FINITE" if self.finite else "DEGENERATE"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "defect_divisible": self.divides,
            "remainder_terms": len(self.remainder),
            "derivative_identity": self.derivative_identity,
            "euler_relation": None
            if self.euler is None
            else [_elt_json(c) for c in self.euler],
            "notes": list(self.notes),
        }


def finiteness_verdict(H: Witt2Polynomial) -> FinitenessVerdict:
    """Run the divisibility test on the reduction of H and diagnose failure."""
    F, h = H.reduction()
    if not h:
        raise ZeroFunction("curve polynomial vanishes modulo p")
    if fb_degx(h) == 0 and fb_degy(h) == 0:
        raise HypothesisViolated("curve polynomial is constant modulo p")
    G = frobenius_defect(H)
    div, rem = divides_on_curve(F, G, h)
    if not div:
        return FinitenessVerdict(True, False, rem, None, None, [])
    notes = ["the defect polynomial vanishes on the curve"]
    try:
        der = defect_derivative_criterion(F, h)
    except DegenerateDerivatives:
        der = None
        notes.append("a partial derivative of the curve vanishes identically")
    eu = euler_relation_check(F, h)
    if eu is not None:
        notes.append("the curve lies in a coset of a proper subtorus modulo p")
    return FinitenessVerdict(False, True, rem, der, eu, notes)


# ---------------------------------------------------------------------------
# anomalous residue discs
# ---------------------------------------------------------------------------


def _elt_json(c):
    """Field element to a JSON-friendly value (int, or nested lists)."""
    if isinstance(c, tuple):
        return [_elt_json(t) for t in c]
    return int(c)


@dataclass(frozen=True)
class PointRecord:
    """One curve point over the algebraic closure, in residue-field terms.

    The x-coordinate is a root of the stated minimal polynomial over F_q
    (root_index labels the Frobenius conjugate). When the y-coordinate lies
    in F_q(x) it is given as y_value, a polynomial in that root; otherwise
    y_minpoly is its minimal polynomial over F_q(x) and y_index labels the
    conjugate."""

    x_minpoly: tuple
    root_index: int
    y_value: tuple | None
    y_minpoly: tuple | None
    y_index: int

    def to_dict(self) -> dict:
        return {
            "x_minpoly": [_elt_json(c) for c in self.x_minpoly],
            "root_index": self.root_index,
            "y_value": None
            if self.y_value is None
            else [_elt_json(c) for c in self.y_value],
            "y_minpoly": None
            if self.y_minpoly is None
            else [_elt_json(c) for c in self.y_minpoly],
            "y_index": self.y_index,
        }


@dataclass
class AnomalousClass:
    exponents: tuple
    points: list

    def to_dict(self) -> dict:
        return {
            "exponents": list(self.exponents),
            "points": [r.to_dict() for r in self.points],
        }


@dataclass
class AnomalousReport:
    """Anomalous residue discs per projective exponent class.

    total counts distinct points over the algebraic closure after removing
    duplicates across classes; bound is the genus-based cap, valid whenever
    the curve and functions satisfy the independence hypotheses. axis names
    the coordinate whose minimal polynomials are listed ("y" when the curve
    was y-free and the elimination ran transposed)."""

    p: int
    n_functions: int
    classes: list
    total: int
    bound: int
    genus: int
    boundary_degree: int
    axis: str
    skipped: dict

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n_functions": self.n_functions,
            "classes": [c.to_dict() for c in self.classes],
            "total": self.total,
            "bound": self.bound,
            "genus": self.genus,
            "boundary_degree": self.boundary_degree,
            "axis": self.axis,
            "skipped": dict(self.skipped),
        }


def _projective_classes(n: int, p: int):
    """Canonical representatives of P^{n-1}(F_p): first nonzero entry 1."""
    out = []
    for lead in range(n):
        tail = n - 1 - lead
        for code in range(p**tail):
            rest, t = [], code
            for _ in range(tail):
                rest.append(t % p)
                t //= p
            out.append((0,) * lead + (1,) + tuple(rest))
    return out


def _transpose(a: dict) -> dict:
    return {(j, i): c for (i, j), c in a.items()}


def _peval_embedded(E, row, point, embed):
    acc = E.zero()
    for c in reversed(row):
        acc = E.add(E.mul(acc, point), embed(c))
    return acc


def _fb_at(E, rows, xbar, ybar, embed):
    """Evaluate a bivariate given by y-rows of F[x] lists at a point of E."""
    acc = E.zero()
    for row in reversed(rows):
        acc = E.add(E.mul(acc, ybar), _peval_embedded(E, row, xbar, embed))
    return acc


def _point_status(E, xbar, ybar, embed, hx_rows, hy_rows, prod_rows) -> str:
    for rows in prod_rows:
        if E.is_zero(_fb_at(E, rows, xbar, ybar, embed)):
            return "boundary"
    if E.is_zero(_fb_at(E, hx_rows, xbar, ybar, embed)) and E.is_zero(
        _fb_at(E, hy_rows, xbar, ybar, embed)
    ):
        return "singular"
    return "ok"


def _class_points(F, h, hx_rows, hy_rows, D, prod_rows, skipped):
    """Points on h = 0 where D vanishes, minus boundary and singular ones."""
    res = ptrim(F, fb_resultant_y(F, h, D))
    if not res:
        raise NonradicalSystem(
            "resultant vanished identically; the curve shares a component "
            "with the vanishing locus"
        )
    if pdeg(res) == 0:
        return []
    h_rows = fb_to_ypolys(F, h)
    d_rows = fb_to_ypolys(F, D)
    recs = []
    for u, _mult in factor_poly(F, res)[1]:
        m = pdeg(u)
        if m == 1:
            E, xbar, embed = F, F.neg(u[0]), (lambda c: c)
        else:
            E = QuotientField(F, u, check=False)
            xbar, embed = E.gen(), E.from_base
        h_at = ptrim(E, [_peval_embedded(E, r, xbar, embed) for r in h_rows])
        d_at = ptrim(E, [_peval_embedded(E, r, xbar, embed) for r in d_rows])
        if not h_at:
            raise NonradicalSystem("the curve contains a fiber of the elimination")
        gy = pmonic(E, pgcd(E, h_at, d_at)) if d_at else pmonic(E, h_at)
        if pdeg(gy) == 0:
            # leading-coefficient collapse, not an actual common root
            continue
        for w, _m2 in factor_poly(E, gy)[1]:
            e = pdeg(w)
            if e == 1:
                ybar = E.neg(w[0])
                status = _point_status(
                    E, xbar, ybar, embed, hx_rows, hy_rows, prod_rows
                )
                if status != "ok":
                    skipped[status] += m
                    continue
                yv = tuple(ybar) if isinstance(ybar, tuple) else (ybar,)
                for idx in range(m):
                    recs.append(PointRecord(tuple(u), idx, yv, None, 0))
            else:
                E2 = QuotientField(E, w, check=False)
                emb2 = (lambda f: (lambda c: E2.from_base(f(c))))(embed)
                status = _point_status(
                    E2, E2.from_base(xbar), E2.gen(), emb2, hx_rows, hy_rows, prod_rows
                )
                if status != "ok":
                    skipped[status] += m * e
                    continue
                wkey = tuple(w)
                for idx in range(m):
                    for jdx in range(e):
                        recs.append(PointRecord(tuple(u), idx, None, wkey, jdx))
    return recs


def anomalous_discs(F, h: dict, f_list, genus: int, boundary_degree: int) -> AnomalousReport:
    """Enumerate residue discs where some F_p-combination of dlog f_i vanishes.

    For each projective class (n_1 : ... : n_k) over F_p the combination
    sum n_i dlog f_i is cleared of denominators and intersected with the
    curve by resultant elimination. Points where some f_i has a zero or pole
    are excluded (the combination has poles there, not zeros), as are
    singular points of the reduction. genus and boundary_degree are supplied
    by the caller and only enter the reported bound
    (p^k - 1)/(p - 1) * (2g - 2 + d - 1)."""
    p = F.p
    h = fb_trim(F, h)
    if not h:
        raise ZeroFunction("curve polynomial is zero")
    if fb_degx(h) == 0 and fb_degy(h) == 0:
        raise HypothesisViolated("curve polynomial is constant")
    fns = [_as_pair(F, fn) for fn in f_list]
    axis = "x"
    if fb_degy(h) == 0:
        # eliminate along the other coordinate when the curve is y-free
        axis = "y"
        h = _transpose(h)
        fns = [(_transpose(n), _transpose(d)) for n, d in fns]
    _warn_if_reducible(F, h, False, "anomalous-disc enumeration")
    for num, den in fns:
        if fb_divides_on_curve(F, h, num) or fb_divides_on_curve(F, h, den):
            raise ZeroFunction("a coordinate function vanishes identically on the curve")
    a_list = [fb_dlog_numerator(F, h, fn) for fn in fns]
    prods = [fb_mul(F, num, den) for num, den in fns]
    prod_rows = [fb_to_ypolys(F, pr) for pr in prods]
    hx_rows = fb_to_ypolys(F, fb_deriv_x(F, h))
    hy_rows = fb_to_ypolys(F, fb_deriv_y(F, h))
    n = len(fns)
    classes = []
    seen: dict = {}
    skipped = {"boundary": 0, "singular": 0}
    for cls in _projective_classes(n, p):
        D: dict = {}
        for i, ai in enumerate(a_list):
            if cls[i] == 0:
                continue
            term = fb_scale(F, ai, F.from_int(cls[i]))
            for j in range(n):
                if j != i:
                    term = fb_mul(F, term, prods[j])
            D = fb_add(F, D, term)
        if fb_divides_on_curve(F, h, D):
            raise NonradicalSystem(
                f"the dlog combination for class {cls} vanishes identically "
                "on the curve"
            )
        recs = _class_points(F, h, hx_rows, hy_rows, D, prod_rows, skipped)
        classes.append(AnomalousClass(cls, recs))
        for r in recs:
            seen.setdefault(r, r)
    bound = (p**n - 1) // (p - 1) * (2 * genus - 2 + boundary_degree - 1)
    return AnomalousReport(
        p=p,
        n_functions=n,
        classes=classes,
        total=len(seen),
        bound=bound,
        genus=genus,
        boundary_degree=boundary_degree,
        axis=axis,
        skipped=skipped,
    )
