"""Search for curve points whose torus coordinates satisfy two independent
multiplicative relations, with exact certification.

A search instance is a rational parametrization (f1, f2, f3) of a curve in
the three-dimensional torus, a prime with a working precision, and a box:
exponent vectors n with |n_i| <= B, torsion orders d <= M. A point t0 is
certified when two Q-independent vectors n, m make f1^n1 f2^n2 f3^n3 and
the m-analogue roots of unity of order at most M at t0.

Candidates are located by a modular screen. Over many small finite fields
the three coordinate values at each residue point are turned into discrete
logarithms; an exponent vector survives at a point when the implied value
order is consistent with some torsion order in the box, and surviving
orders are intersected across two screen primes to pin the global order
down by the Chinese remainder theorem. Survivor pairs are resolved into
integer polynomials (numerators of f^n - zeta over the cyclotomic ring,
taken as norms to Z[t]) whose pairwise gcds cut out candidate minimal
polynomials. Verification is exact arithmetic in the number field of each
candidate; no floating point enters any emitted statement. The screen uses
numpy for bulk index arithmetic only, with every product kept far below
the exact-integer range of the float mantissa.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, isqrt

import numpy as np
import sympy

from .bipolys import resultant_poly_t
from .errors import (
    BadReduction,
    BoundsTooSmall,
    DependentFunctions,
    DivisionByZero,
    HypothesisViolated,
    NonUnitValue,
    NotAUnit,
    NotPrime,
    PadicToriError,
    PrecisionExhausted,
    ZeroFunction,
)
from .padics import PadicContext, log_unit, scalar_from_ring_element
from .qpolys import (
    NumberField,
    cyclotomic_poly,
    euler_phi,
    prime_to_part,
    rational_reconstruct,
    zdiv_exact,
    zgcd,
    zmul,
    zpow,
    zprimitive,
    zpseudo_rem,
    ztrim,
)
from .rings import (
    PrimeField,
    factor_poly,
    is_irreducible,
    is_prime,
    pdeg,
    pmonic,
    ppow_mod,
    ptrim,
)
from .slopes import (
    PadicSeries,
    boundary_projections,
    ramification_bound,
    torsion_image_bound,
)
from .witt import Witt2Polynomial, anomalous_discs, dlog_independent, finiteness_verdict

__all__ = [
    "TorusCurveSpec",
    "UnlikelyCertificate",
    "FilterVerdict",
    "RamificationReport",
    "StageRecord",
    "PipelineReport",
    "canonical_exponents",
    "relation_solve",
    "padic_rank_filter",
    "classify_ramification",
    "search_envelope",
    "run_pipeline",
]

_WILD = 65535  # order-class code for "no constraint at this record"
_MAX_B = 24
_MAX_M = 2000
_WINDOW = 16  # ranked members paired per nomination on crowded records
_SMALL_MEMBERS = 24  # below this, every independent member pair is tried
_PAIR_BUDGET = 300  # hard cap on pairs per nomination
_PROBE_CAP = 96  # exponents tested exactly per candidate point
_FIELD_CAP = 600_000  # largest screen field
_SWEEP_CAP = 512  # fields up to this size are swept point by point
_LAMBDA_CAP = 400.0  # expected screen survivors per point before a level is dropped


# ---------------------------------------------------------------------------
# polynomial term lists
# ---------------------------------------------------------------------------


def _upoly_from_terms(terms):
    """[[exponent, coefficient], ...] to a little-endian coefficient tuple."""
    if not isinstance(terms, (list, tuple)):
        raise HypothesisViolated("univariate terms must be a list of pairs")
    acc = {}
    for item in terms:
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise HypothesisViolated(f"malformed term {item!r}")
        e, c = item
        if not isinstance(e, int) or e < 0:
            raise HypothesisViolated(f"exponent {e!r} must be a nonnegative integer")
        acc[e] = acc.get(e, 0) + int(c)
    acc = {e: c for e, c in acc.items() if c}
    if not acc:
        return (0,)
    out = [0] * (max(acc) + 1)
    for e, c in acc.items():
        out[e] = c
    return tuple(out)


def _terms_from_upoly(coeffs):
    return [[e, int(c)] for e, c in enumerate(coeffs) if c]


def _bipoly_from_terms(terms):
    """[[[i, j], coefficient], ...] to a {(i, j): coefficient} dict."""
    if not isinstance(terms, (list, tuple)):
        raise HypothesisViolated("bivariate terms must be a list of pairs")
    acc = {}
    for item in terms:
        if (
            not isinstance(item, (list, tuple))
            or len(item) != 2
            or not isinstance(item[0], (list, tuple))
            or len(item[0]) != 2
        ):
            raise HypothesisViolated(f"malformed bivariate term {item!r}")
        (i, j), c = item
        if not isinstance(i, int) or not isinstance(j, int) or i < 0 or j < 0:
            raise HypothesisViolated(f"bad exponent pair ({i!r}, {j!r})")
        acc[(i, j)] = acc.get((i, j), 0) + int(c)
    return {k: v for k, v in acc.items() if v}


def _terms_from_bipoly(d):
    return [[[i, j], int(c)] for (i, j), c in sorted(d.items())]


def _poly_text(coeffs, var="t"):
    """Readable form of a little-endian integer polynomial."""
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not c:
            continue
        mag = abs(c)
        if e == 0:
            body = str(mag)
        elif e == 1:
            body = f"{var}" if mag == 1 else f"{mag}*{var}"
        else:
            body = f"{var}^{e}" if mag == 1 else f"{mag}*{var}^{e}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


@lru_cache(maxsize=None)
def _factor_int_poly(coeffs):
    """Irreducible integer factors (primitive, positive leading coefficient)
    of a little-endian polynomial, with multiplicities, sorted."""
    c = ztrim(list(coeffs))
    if len(c) <= 1:
        return ()
    poly = sympy.Poly(list(reversed(c)), sympy.Symbol("t"), domain="ZZ")
    _, factors = poly.factor_list()
    out = []
    for fac, mult in factors:
        fc = [int(x) for x in reversed(fac.all_coeffs())]
        if fc[-1] < 0:
            fc = [-x for x in fc]
        if len(fc) > 1:
            out.append((tuple(fc), int(mult)))
    out.sort(key=lambda fm: (len(fm[0]), fm[0]))
    return tuple(out)


# ---------------------------------------------------------------------------
# search instances
# ---------------------------------------------------------------------------


@dataclass
class TorusCurveSpec:
    """A parametrized curve in the three-torus plus search parameters.

    rational holds three (numerator, denominator) little-endian integer
    coefficient pairs in the parameter t. plane holds a bivariate curve
    polynomial H and three bivariate coordinate functions; such models are
    admitted when H has degree one in y, in which case y is eliminated and
    the instance becomes rational in x. bound_b caps |n_i| for exponent
    vectors, bound_m the torsion order."""

    prime: int
    precision: int
    bound_b: int
    bound_m: int
    genus: int = 0
    boundary_degree: int = 0
    rational: tuple | None = None
    plane: tuple | None = None

    # -- construction ---------------------------------------------------

    @classmethod
    def from_dict(cls, data: dict) -> "TorusCurveSpec":
        if not isinstance(data, dict):
            raise HypothesisViolated("curve spec must be a mapping")
        for key in ("prime", "precision", "model", "bounds"):
            if key not in data:
                raise HypothesisViolated(f"curve spec is missing {key!r}")
        bounds = data["bounds"]
        if not isinstance(bounds, dict) or "B" not in bounds or "M" not in bounds:
            raise HypothesisViolated("bounds must carry keys B and M")
        model = data["model"]
        rational = None
        plane = None
        if "rational" in model:
            fns = model["rational"]
            if not isinstance(fns, (list, tuple)) or len(fns) != 3:
                raise HypothesisViolated("model.rational must list three functions")
            trip = []
            for f in fns:
                if isinstance(f, dict):
                    num, den = f.get("num"), f.get("den")
                elif isinstance(f, (list, tuple)) and len(f) == 2:
                    num, den = f
                else:
                    raise HypothesisViolated(f"malformed rational function {f!r}")
                trip.append((_upoly_from_terms(num), _upoly_from_terms(den)))
            rational = tuple(trip)
        elif "plane" in model:
            pm = model["plane"]
            for key in ("H", "f1", "f2", "f3"):
                if key not in pm:
                    raise HypothesisViolated(f"plane model is missing {key!r}")
            plane = (
                tuple(sorted(_bipoly_from_terms(pm["H"]).items())),
                tuple(
                    tuple(sorted(_bipoly_from_terms(pm[k]).items()))
                    for k in ("f1", "f2", "f3")
                ),
            )
        else:
            raise HypothesisViolated("model must be rational or plane")
        spec = cls(
            prime=int(data["prime"]),
            precision=int(data["precision"]),
            bound_b=int(bounds["B"]),
            bound_m=int(bounds["M"]),
            genus=int(data.get("genus", 0)),
            boundary_degree=int(data.get("boundary_degree", 0)),
            rational=rational,
            plane=plane,
        )
        spec.validate()
        return spec

    @classmethod
    def from_json(cls, text: str) -> "TorusCurveSpec":
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_file(cls, path) -> "TorusCurveSpec":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(fh.read())

    def to_dict(self) -> dict:
        if self.rational is not None:
            model = {
                "rational": [
                    {"num": _terms_from_upoly(num), "den": _terms_from_upoly(den)}
                    for num, den in self.rational
                ]
            }
        else:
            h, fns = self.plane
            model = {
                "plane": {
                    "H": _terms_from_bipoly(dict(h)),
                    "f1": _terms_from_bipoly(dict(fns[0])),
                    "f2": _terms_from_bipoly(dict(fns[1])),
                    "f3": _terms_from_bipoly(dict(fns[2])),
                }
            }
        return {
            "prime": self.prime,
            "precision": self.precision,
            "genus": self.genus,
            "boundary_degree": self.boundary_degree,
            "bounds": {"B": self.bound_b, "M": self.bound_m},
            "model": model,
        }

    # -- checks -----------------------------------------------------------

    def validate(self):
        if not is_prime(self.prime):
            raise NotPrime(f"{self.prime} is not prime")
        if self.precision < 1:
            raise HypothesisViolated("precision must be at least 1")
        if self.bound_b < 1 or self.bound_m < 1:
            raise BoundsTooSmall(
                f"search box B={self.bound_b}, M={self.bound_m} admits no relation"
            )
        if self.bound_b > _MAX_B or self.bound_m > _MAX_M:
            raise HypothesisViolated(
                f"search box exceeds the supported range B<={_MAX_B}, M<={_MAX_M}"
            )
        if (self.rational is None) == (self.plane is None):
            raise HypothesisViolated("exactly one of rational, plane must be set")
        if self.genus < 0 or self.boundary_degree < 0:
            raise HypothesisViolated("genus and boundary degree must be nonnegative")
        for num, den in self.function_pairs():
            if len(num) == 1 and num[0] == 0:
                raise ZeroFunction("a coordinate function is identically zero")
            if len(den) == 1 and den[0] == 0:
                raise ZeroFunction("a coordinate function has zero denominator")
            wron = ztrim(
                [
                    a - b
                    for a, b in zip(
                        zmul(_deriv_int(num), list(den)) + [0],
                        zmul(_deriv_int(den), list(num)) + [0],
                    )
                ]
            )
            if len(wron) == 1 and wron[0] == 0:
                raise HypothesisViolated("coordinate functions must be nonconstant")

    def function_pairs(self):
        """The three coordinate functions as (num, den) integer pairs in
        one parameter, eliminating y for admissible plane models."""
        if self.rational is not None:
            return [
                (list(num), list(den) if any(den) else [1])
                for num, den in self.rational
            ]
        h = dict(self.plane[0])
        degy = max((j for (_, j) in h), default=0)
        if degy != 1:
            raise HypothesisViolated(
                "plane models enter the search only when the curve has degree"
                " one in y; higher models have no rational x-parametrization here"
            )
        h0 = [0] * (max((i for (i, j) in h if j == 0), default=0) + 1)
        h1 = [0] * (max((i for (i, j) in h if j == 1), default=0) + 1)
        for (i, j), c in h.items():
            (h0 if j == 0 else h1)[i] = c
        pnum = ztrim([-c for c in h0]) or [0]  # y = pnum / pden on the curve
        pden = ztrim(list(h1))
        if not pden or (len(pden) == 1 and pden[0] == 0):
            raise ZeroFunction("the y-coefficient of the curve polynomial is zero")
        pairs = []
        for fb in self.plane[1]:
            rows = {}
            for (i, j), c in dict(fb).items():
                row = rows.setdefault(j, {})
                row[i] = row.get(i, 0) + c
            degj = max(rows, default=0)
            num = [0]
            for j in range(degj + 1):
                row = rows.get(j, {})
                coeffs = [0] * (max(row, default=0) + 1)
                for i, c in row.items():
                    coeffs[i] = c
                term = zmul(
                    zmul(coeffs, zpow(pnum, j)), zpow(pden, degj - j)
                )
                num = [a + b for a, b in _zip_pad(num, term)]
            num = ztrim(num) or [0]
            den = zpow(pden, degj) if degj else [1]
            g = zgcd(num, den)
            if len(g) > 1:
                num = zdiv_exact(num, g)
                den = zdiv_exact(den, g)
            pairs.append((num, den))
        return pairs

    def describe(self) -> str:
        pairs = self.function_pairs()
        lines = [
            f"prime {self.prime}, precision {self.precision},"
            f" box |n| <= {self.bound_b}, order <= {self.bound_m}"
        ]
        for i, (num, den) in enumerate(pairs, start=1):
            if len(den) == 1 and den[0] == 1:
                lines.append(f"  f{i} = {_poly_text(num)}")
            else:
                lines.append(f"  f{i} = ({_poly_text(num)}) / ({_poly_text(den)})")
        return "\n".join(lines)


def _deriv_int(coeffs):
    return [i * coeffs[i] for i in range(1, len(coeffs))] or [0]


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))


# ---------------------------------------------------------------------------
# exponent vectors
# ---------------------------------------------------------------------------


def _norm_key(n):
    return (max(abs(c) for c in n), sum(abs(c) for c in n), n)


def canonical_exponents(b: int):
    """Nonzero integer vectors in the box |n_i| <= b with positive first
    nonzero entry (one per line through the origin and sign), shortest
    first."""
    if b < 1:
        raise BoundsTooSmall("exponent box must have B >= 1")
    out = []
    rng = range(-b, b + 1)
    for n1 in rng:
        for n2 in rng:
            for n3 in rng:
                n = (n1, n2, n3)
                lead = next((c for c in n if c), None)
                if lead is None or lead < 0:
                    continue
                out.append(n)
    out.sort(key=_norm_key)
    return out


def _cross(n, m):
    return (
        n[1] * m[2] - n[2] * m[1],
        n[2] * m[0] - n[0] * m[2],
        n[0] * m[1] - n[1] * m[0],
    )


def _independent(n, m) -> bool:
    return any(_cross(n, m))


def _witness_minor(n, m):
    """First nonzero 2x2 minor of the stacked pair, with its column pair."""
    for cols in ((0, 1), (0, 2), (1, 2)):
        i, j = cols
        val = n[i] * m[j] - n[j] * m[i]
        if val:
            return (cols, val)
    raise HypothesisViolated("exponent vectors are parallel")


# ---------------------------------------------------------------------------
# relation pieces
# ---------------------------------------------------------------------------


class _PieceCache:
    """Lazy integer polynomials whose roots carry candidate relations.

    For an exponent vector n split the product f^n into A/B with A, B
    polynomial. The piece for torsion order d is the resultant in z of
    Phi_d(z) and A - z B, computed as sum_k phi_k A^k B^(phi(d)-k); a
    parameter value where f^n equals some primitive d-th root of unity is
    a root. Factors supported on zeros and poles of the coordinates are
    boundary artifacts and are divided out."""

    def __init__(self, fn_pairs):
        self.fns = [(list(num), list(den)) for num, den in fn_pairs]
        prod = [1]
        for num, den in self.fns:
            prod = zmul(prod, zmul(list(num), list(den)))
        self.boundary = [list(f) for f, _ in _factor_int_poly(tuple(prod))]
        self.degs = [
            (len(ztrim(list(num))) - 1, len(ztrim(list(den))) - 1)
            for num, den in fn_pairs
        ]
        self._pows = {}
        self._ab = {}
        self._piece = {}
        self._mdeg = {}
        self.truncated = False

    def max_degree(self, n):
        """Degree bound for the numerator/denominator split of f^n."""
        got = self._mdeg.get(n)
        if got is None:
            da = db = 0
            for i, e in enumerate(n):
                dn, dd = self.degs[i]
                if e > 0:
                    da += e * dn
                    db += e * dd
                elif e < 0:
                    da += -e * dd
                    db += -e * dn
            got = max(da, db)
            self._mdeg[n] = got
        return got

    def _pow(self, i, which, e):
        key = (i, which, e)
        got = self._pows.get(key)
        if got is None:
            base = self.fns[i][0] if which == 0 else self.fns[i][1]
            got = zpow(list(base), e)
            self._pows[key] = got
        return got

    def _split(self, n):
        got = self._ab.get(n)
        if got is None:
            a, b = [1], [1]
            for i, e in enumerate(n):
                if e > 0:
                    a = zmul(a, self._pow(i, 0, e))
                    b = zmul(b, self._pow(i, 1, e))
                elif e < 0:
                    a = zmul(a, self._pow(i, 1, -e))
                    b = zmul(b, self._pow(i, 0, -e))
            got = (a, b)
            self._ab[n] = got
        return got

    def piece(self, n, d):
        key = (n, d)
        if key in self._piece:
            return self._piece[key]
        a, b = self._split(n)
        phi = cyclotomic_poly(d)
        m = len(phi) - 1
        if m * max(len(a), len(b)) > 4000:
            self.truncated = True  # runaway degree, skip defensively
            self._piece[key] = None
            return None
        acc = [0]
        apow = [1]
        for k in range(m + 1):
            if phi[k]:
                term = zmul(apow, zpow(list(b), m - k))
                acc = [
                    x + phi[k] * y for x, y in _zip_pad(acc, term)
                ]
            if k < m:
                apow = zmul(apow, a)
        acc = ztrim(acc)
        if not acc or (len(acc) == 1 and acc[0] == 0):
            self._piece[key] = None  # f^n is identically torsion; not a point locus
            return None
        acc = zprimitive(acc)
        for f in self.boundary:
            while len(acc) >= len(f):
                if any(zpseudo_rem(list(acc), list(f))):
                    break
                acc = zdiv_exact(list(acc), list(f))
        if len(acc) <= 1:
            self._piece[key] = None
            return None
        if acc[-1] < 0:
            acc = [-c for c in acc]
        out = tuple(acc)
        self._piece[key] = out
        return out


# ---------------------------------------------------------------------------
# screen fields
# ---------------------------------------------------------------------------


class _ScreenField:
    """F_{ell^e} with a primitive generator, set up for bulk arithmetic.

    Elements are integer codes: the digits of the code in base ell are the
    coordinates on the power basis of t. The class carries the discrete
    logarithm table of the full multiplicative group, the Frobenius
    permutation, and enough matrices to evaluate integer polynomials at
    selected rows without ever forming products outside int64 range."""

    def __init__(self, ell: int, e: int):
        self.ell = ell
        self.e = e
        self.q = ell**e
        self.q1 = self.q - 1
        F = PrimeField(ell)
        self.modulus = self._find_primitive_modulus(F, ell, e)
        self.weights = (ell ** np.arange(e, dtype=np.int64)).astype(np.int64)
        self.digits = (
            (np.arange(self.q, dtype=np.int64)[:, None] // self.weights[None, :])
            % ell
        ).astype(np.int64)
        # t^(e+j) mod modulus for j = 0 .. e-2, as digit rows
        red = []
        row = [(-c) % ell for c in self.modulus[:-1]]
        red.append(list(row))
        for _ in range(e - 2):
            row = [0] + row
            lead = row.pop()
            row = [(c + lead * r) % ell for c, r in zip(row, red[0])]
            red.append(list(row))
        self.red = np.array(red, dtype=np.int64) if red else np.zeros((0, e), np.int64)
        self.dlog = self._build_dlog()
        self.frob = self._build_frobenius(F)

    @staticmethod
    def _find_primitive_modulus(F, ell, e):
        """Deterministic scan for a monic irreducible of degree e whose
        root generates the multiplicative group."""
        q1 = ell**e - 1
        radicals = sorted(sympy.factorint(q1)) if q1 > 1 else []
        k = 0
        while True:
            k += 1
            low = []
            kk = k
            while kk:
                low.append(kk % ell)
                kk //= ell
            if len(low) > e or low[0] == 0:
                continue
            cand = low + [0] * (e - len(low)) + [1]
            if e > 1 and not is_irreducible(F, cand):
                continue
            if e == 1 and cand[0] == 0:
                continue
            ok = True
            for r in radicals:
                img = ppow_mod(F, [0, 1], q1 // r, cand)
                if pdeg(img) == 0 and img and img[0] == 1:
                    ok = False
                    break
            if ok:
                return cand

    def _build_dlog(self):
        table = np.full(self.q, -1, dtype=np.int64)
        if self.q1 == 0:
            return table
        e, ell = self.e, self.ell
        block = min(2048, self.q1)
        tmat = np.zeros((e, e), dtype=np.int64)
        for i in range(e - 1):
            tmat[i, i + 1] = 1
        tmat[e - 1] = np.array([(-c) % ell for c in self.modulus[:-1]], np.int64)
        tb = np.eye(e, dtype=np.int64)
        mpow = tmat.copy()
        b = block
        while b:
            if b & 1:
                tb = (tb @ mpow) % ell
            mpow = (mpow @ mpow) % ell
            b >>= 1
        rows = np.zeros((block, e), dtype=np.int64)
        rows[0, 0] = 1
        for i in range(1, block):
            rows[i] = (rows[i - 1] @ tmat) % ell
        j = 0
        while j < self.q1:
            take = min(block, self.q1 - j)
            codes = rows[:take] @ self.weights
            table[codes] = np.arange(j, j + take, dtype=np.int64)
            j += take
            if j < self.q1:
                rows = (rows @ tb) % ell
        return table

    def _build_frobenius(self, F):
        e, ell = self.e, self.ell
        fr = np.zeros((e, e), dtype=np.int64)
        for i in range(e):
            img = ppow_mod(F, [0] * i + [1], ell, self.modulus)
            for jj, c in enumerate(img):
                fr[i, jj] = c
        mixed = (self.digits.astype(np.float64) @ fr.astype(np.float64))
        mixed = np.rint(mixed).astype(np.int64) % ell
        return mixed @ self.weights

    # -- element sets -----------------------------------------------------

    def exact_degree_reps(self):
        """One orbit representative (the minimal code) for every Frobenius
        orbit of size exactly e."""
        idx = np.arange(self.q, dtype=np.int64)
        cur = idx.copy()
        mins = idx.copy()
        fixed_proper = np.zeros(self.q, dtype=bool)
        proper = {self.e // r for r in sympy.factorint(self.e)} if self.e > 1 else set()
        for step in range(1, self.e):
            cur = self.frob[cur]
            np.minimum(mins, cur, out=mins)
            if step in proper:
                fixed_proper |= cur == idx
        mask = (mins == idx) & ~fixed_proper
        if self.e == 1:
            mask = np.ones(self.q, dtype=bool)
        return idx[mask]

    def eval_codes(self, coeffs, rows_idx):
        """Codes of an integer polynomial evaluated at the given codes."""
        e, ell = self.e, self.ell
        xr = self.digits[rows_idx]
        cs = [int(c) % ell for c in coeffs] or [0]
        acc = np.zeros((len(rows_idx), e), dtype=np.int64)
        acc[:, 0] = cs[-1]
        for k in range(len(cs) - 2, -1, -1):
            wide = np.zeros((len(rows_idx), 2 * e - 1), dtype=np.int64)
            for a in range(e):
                wide[:, a : a + e] += acc[:, a : a + 1] * xr
            acc = wide[:, :e] + (
                wide[:, e:] @ self.red if e > 1 else 0
            )
            acc %= ell
            acc[:, 0] += cs[k]
            acc[:, 0] %= ell
        return acc @ self.weights


# ---------------------------------------------------------------------------
# screen records and nominations
# ---------------------------------------------------------------------------


@dataclass
class _Nomination:
    source: str
    members: list  # [(exponent tuple, torsion-order tuple)] ranked short first


def _trim_members(members):
    """Short head of a ranked member list plus one vector independent of
    the leader, so a crowded nomination stays pairable after trimming."""
    if len(members) <= _SMALL_MEMBERS:
        return members
    head = list(members[:_WINDOW])
    lead = members[0][0]
    comp = next((m for m in members if _independent(lead, m[0])), None)
    if comp is not None and comp not in head:
        head.append(comp)
    return head


def _allowed_order_set(ell: int, M: int):
    """Orders of reduced torsion values: prime-to-ell parts of d <= M."""
    return {prime_to_part(d, ell) for d in range(1, M + 1)}


@lru_cache(maxsize=None)
def _dset_single(ell: int, o: int, M: int):
    return tuple(d for d in range(1, M + 1) if prime_to_part(d, ell) == o)


class _CompatTable:
    """Torsion orders compatible with a pair of reduced order classes."""

    def __init__(self, ell2, ell3, M):
        self.ell2 = ell2
        self.ell3 = ell3
        self.M = M
        self._memo = {}

    def dset(self, a, b):
        key = (a, b)
        got = self._memo.get(key)
        if got is None:
            got = tuple(
                d
                for d in range(1, self.M + 1)
                if (a == _WILD or prime_to_part(d, self.ell2) == a)
                and (b == _WILD or prime_to_part(d, self.ell3) == b)
            )
            self._memo[key] = got
        return got


def _order_class_vector(n_mat, w, bads, q1, M, allowed):
    """Order-class codes for every exponent vector at one residue point.

    w is a 3-vector of discrete logs with None at coordinates whose value
    vanished or blew up; bads lists (index, sign) with sign +1 for a zero
    of the numerator, -1 for a pole, None when both vanish. Exponents whose
    bad-coordinate contributions all push the valuation one way cannot be
    torsion; mixed or unresolved contributions give no constraint; clean
    exponents are screened by the exact order of the unit part."""
    nv = n_mat
    good = [i for i in range(3) if w[i] is not None]
    if q1 >= 2 and good:
        r = np.zeros(len(nv), dtype=np.int64)
        for i in good:
            r += nv[:, i] * int(w[i])
        r %= q1
        g = np.gcd(r, q1)
        ov = (q1 // g).astype(np.int64)
    else:
        ov = np.ones(len(nv), dtype=np.int64)
    lut = np.zeros(M + 1, dtype=bool)
    for o in allowed:
        if o <= M:
            lut[o] = True
    keep = (ov <= M) & lut[ov.clip(max=M)]
    oc = np.where(keep, ov, 0).astype(np.uint16)
    if bads:
        pos = np.zeros(len(nv), dtype=bool)
        neg = np.zeros(len(nv), dtype=bool)
        unk = np.zeros(len(nv), dtype=bool)
        for i, sgn in bads:
            col = nv[:, i]
            if sgn is None:
                unk |= col != 0
            else:
                pos |= (col * sgn) > 0
                neg |= (col * sgn) < 0
        wild = (pos & neg) | unk
        kill = (pos ^ neg) & ~wild
        oc[kill] = 0
        oc[wild] = _WILD
    return oc


def _value_dlogs(fld: _ScreenField, fn_pairs, rows_idx):
    """Per-coordinate dlog arrays at the given rows, with -1 for a zero of
    the numerator, -2 for a pole, -3 when numerator and denominator both
    vanish."""
    out = []
    for num, den in fn_pairs:
        cn = fld.eval_codes(num, rows_idx)
        cd = fld.eval_codes(den, rows_idx)
        ln = fld.dlog[cn]
        ld = fld.dlog[cd]
        w = (ln - ld) % max(fld.q1, 1)
        w = np.where((ln < 0) & (ld < 0), -3, np.where(ln < 0, -1, np.where(ld < 0, -2, w)))
        out.append(w.astype(np.int64))
    return out


def _compat_any_table(ell2, ell3, M):
    """Boolean table over order-class codes, True where some torsion order
    d <= M reduces to both classes. Code M+1 stands for the wildcard."""
    tab = np.zeros((M + 2, M + 2), dtype=bool)
    for d in range(1, M + 1):
        a = prime_to_part(d, ell2)
        b = prime_to_part(d, ell3)
        tab[a, b] = True
        tab[M + 1, b] = True
        tab[a, M + 1] = True
    tab[M + 1, M + 1] = True
    return tab


def _screen_portfolio(fn_pairs, notes):
    """First two primes that keep every coordinate nondegenerate, with
    sweep levels (small fields, every point) and scan levels (large fields,
    degree-exact points only)."""
    chosen = []
    for ell in (2, 3, 5, 7, 11):
        ok = True
        for num, den in fn_pairs:
            if not any(c % ell for c in num) or not any(c % ell for c in den):
                ok = False
                break
        if ok:
            chosen.append(ell)
        else:
            notes.append(f"screen prime {ell} skipped: a coordinate degenerates mod {ell}")
        if len(chosen) == 2:
            break
    if len(chosen) < 2:
        raise HypothesisViolated(
            "no pair of screen primes keeps all coordinate functions nondegenerate"
        )
    levels = {}
    for ell in chosen:
        sweep = []
        e = 1
        while ell**e <= _SWEEP_CAP:
            sweep.append(e)
            e += 1
        scan = []
        while ell**e <= _FIELD_CAP:
            scan.append(e)
            e += 1
        levels[ell] = (sweep, scan)
    return chosen, levels


def _lambda_estimate(n_exp, q1, M, ell):
    if q1 <= 0:
        return float("inf")
    tot = 0
    for o in _allowed_order_set(ell, M):
        if o <= M and q1 % o == 0:
            tot += euler_phi(o)
    return n_exp * tot / q1


# ---------------------------------------------------------------------------
# the search proper
# ---------------------------------------------------------------------------


_GCD_PRIMES = (2147483647, 2147483629)
_PENDING_CAP = 50000  # queued piece pairs between batched gcd-degree passes


def _gcd_deg_mod(a, b):
    """Degree of gcd(a, b) modulo a word-size prime not dividing either
    leading coefficient; None when both fallback primes divide one. A zero
    certifies that the gcd over Z is constant, since the leading
    coefficient of any common factor divides both of theirs."""
    for r in _GCD_PRIMES:
        if a[-1] % r == 0 or b[-1] % r == 0:
            continue
        x = np.array([c % r for c in a], dtype=np.int64)
        y = np.array([c % r for c in b], dtype=np.int64)
        dx, dy = len(x) - 1, len(y) - 1
        while True:
            if dy < 0:
                return dx
            if dx < dy:
                x, y, dx, dy = y, x, dy, dx
                continue
            inv = pow(int(y[dy]), -1, r)
            while dx >= dy:
                c = (int(x[dx]) * inv) % r
                if c and dy:
                    lo = dx - dy
                    x[lo:dx] = (x[lo:dx] - c * y[:dy]) % r
                x[dx] = 0
                while dx >= 0 and x[dx] == 0:
                    dx -= 1
            x, y, dx, dy = y, x, dy, dx
    return None


_BATCH_R = 46337  # prime; (r-1)^2 stays below 2^31 so int32 products are exact


@lru_cache(maxsize=65536)
def _reduced_mod_r(coeffs):
    return np.array([c % _BATCH_R for c in coeffs], dtype=np.int32)


@lru_cache(maxsize=8192)
def _phi_lcm(da, db):
    """Degree of the cyclotomic field forced by a pair of torsion orders;
    any point carrying both relations has this dividing its degree."""
    return euler_phi(da * db // gcd(da, db))


def _batch_gcd_degrees(pairs):
    """Gcd degrees modulo a word prime for many coefficient-tuple pairs at
    once, by synchronized pseudo-division on degree-aligned int32 arrays.
    Products stay below 2^31 so the arithmetic is exact; rows whose leading
    coefficient the prime divides fall back to the scalar routine."""
    r = _BATCH_R
    out = np.full(len(pairs), -1, dtype=np.int64)
    order = sorted(
        range(len(pairs)), key=lambda k: max(len(pairs[k][0]), len(pairs[k][1]))
    )
    pos = 0
    while pos < len(order):
        w = max(len(pairs[order[pos]][0]), len(pairs[order[pos]][1]))
        take = max(64, (1 << 22) // (w + 1))
        chunk = np.array(order[pos : pos + take], dtype=np.int64)
        wp = 1 + max(max(len(pairs[k][0]), len(pairs[k][1])) for k in chunk)
        pos += len(chunk)
        rows = len(chunk)
        X = np.zeros((rows, wp), dtype=np.int32)
        Y = np.zeros((rows, wp), dtype=np.int32)
        dx = np.empty(rows, dtype=np.int64)
        dy = np.empty(rows, dtype=np.int64)
        alive = np.ones(rows, dtype=bool)
        for i, k in enumerate(chunk):
            a, b = pairs[k]
            if a[-1] % r == 0 or b[-1] % r == 0:
                got = _gcd_deg_mod(a, b)
                out[k] = len(b) - 1 if got is None else got
                alive[i] = False
                dx[i] = dy[i] = 0
                continue
            if len(a) < len(b):
                a, b = b, a
            X[i, : len(a)] = _reduced_mod_r(a)
            Y[i, : len(b)] = _reduced_mod_r(b)
            dx[i] = len(a) - 1
            dy[i] = len(b) - 1
        ar = np.arange(rows)
        cols = np.arange(wp)
        guard = 3 * wp + 8
        while alive.any() and guard > 0:
            guard -= 1
            sw = alive & (dx < dy)
            if sw.any():
                X[sw], Y[sw] = Y[sw].copy(), X[sw].copy()
                dx[sw], dy[sw] = dy[sw].copy(), dx[sw].copy()
            shift = np.where(alive, dx - dy, 0)
            idx = cols[None, :] - shift[:, None]
            np.copyto(idx, wp - 1, where=idx < 0)  # top column is always zero
            Ys = np.take_along_axis(Y, idx, axis=1)
            lcx = np.where(alive, X[ar, dx], 0).astype(np.int32)[:, None]
            lcy = np.where(alive, Y[ar, dy], 1).astype(np.int32)[:, None]
            X = (lcy * X - lcx * Ys) % r
            # track the new top coefficient; full scans only for rare rows
            # whose remainder dropped more than a few degrees at once
            dx[alive] -= 1
            for _ in range(3):
                low = alive & (dx >= 0) & (X[ar, np.maximum(dx, 0)] == 0)
                if not low.any():
                    break
                dx[low] -= 1
            low = alive & (dx >= 0) & (X[ar, np.maximum(dx, 0)] == 0)
            for i in np.nonzero(low)[0]:
                row = X[i, : dx[i] + 1]
                nz = np.nonzero(row)[0]
                dx[i] = nz[-1] if len(nz) else -1
            done = alive & (dx < 0)
            if done.any():
                out[chunk[done]] = dy[done]
                alive &= ~done
            if rows > 512 and alive.sum() * 2 < rows:
                keep = np.nonzero(alive)[0]
                X, Y = X[keep], Y[keep]
                dx, dy = dx[keep], dy[keep]
                chunk = chunk[keep]
                rows = len(keep)
                alive = np.ones(rows, dtype=bool)
                ar = np.arange(rows)
        for i in np.nonzero(alive)[0]:
            a, b = pairs[chunk[i]]
            got = _gcd_deg_mod(a, b)
            out[chunk[i]] = len(b) - 1 if got is None else got
    return out


@dataclass
class _SearchState:
    cache: _PieceCache
    pair_seen: set = field(default_factory=set)
    candidates: dict = field(default_factory=dict)
    pending: list = field(default_factory=list)
    pairs_tried: int = 0
    gcd_hits: int = 0


def _note_candidate(state, fac, pair, context_ns):
    musts, extras = state.candidates.setdefault(fac, ([], set()))
    if len(musts) < 32 and pair not in musts:
        musts.append(pair)
    if len(extras) < 64:
        extras.update(context_ns)


def _flush_pairs(state: _SearchState):
    if not state.pending:
        return
    degs = _batch_gcd_degrees([(pa, pb) for pa, pb, _, _ in state.pending])
    for (pa, pb, pair, ctx), dg in zip(state.pending, degs):
        if dg == 0:
            continue
        # confirm small-prime survivors at a 63-bit prime before exact work
        if _gcd_deg_mod(pa, pb) == 0:
            continue
        g = zgcd(list(pa), list(pb))
        if len(g) <= 1:
            continue
        state.gcd_hits += 1
        for fac, _ in _factor_int_poly(tuple(g)):
            _note_candidate(state, fac, pair, ctx)
    state.pending.clear()


def _extract(nom: _Nomination, state: _SearchState):
    """Queue the exact common-root sieve over one nomination's member pairs.

    Pieces are tested one torsion order at a time; the (n, d) pair memo is
    global, so repeat pairs across records cost one set lookup. Any
    irreducible factor of a common piece divisor satisfies both relations
    exactly, so each hit records the discovering pair as a probe that is
    guaranteed to verify."""
    members = nom.members
    if len(members) < 2:
        return
    cache = state.cache
    context_ns = tuple(m[0] for m in members[:24])
    budget = _PAIR_BUDGET
    for i in range(len(members)):
        ni, di = members[i]
        mi = cache.max_degree(ni)
        for j in range(i + 1, len(members)):
            nj, dj = members[j]
            if not _independent(ni, nj):
                continue
            budget -= 1
            if budget < 0:
                return
            mj = cache.max_degree(nj)
            for d_a in di:
                pd_a = mi * euler_phi(d_a)
                ka = (ni, d_a)
                for d_b in dj:
                    # a common root generates the lcm-order cyclotomic field,
                    # whose degree cannot exceed either piece's
                    fl = _phi_lcm(d_a, d_b)
                    if fl > pd_a or fl > mj * euler_phi(d_b):
                        continue
                    kb = (nj, d_b)
                    key = (ka, kb) if ka <= kb else (kb, ka)
                    if key in state.pair_seen:
                        continue
                    state.pair_seen.add(key)
                    pa = cache.piece(*key[0])
                    pb = cache.piece(*key[1])
                    if pa is None or pb is None:
                        continue
                    if fl >= len(pa) or fl >= len(pb):
                        continue
                    state.pairs_tried += 1
                    state.pending.append((pa, pb, (ni, nj), context_ns))
                    if len(state.pending) >= _PENDING_CAP:
                        _flush_pairs(state)


def _solo_scan(fld, fn_pairs, n_mat, exponents, M, noms, diag):
    """Scan one large field alone: every degree-exact residue point whose
    survivor set holds an independent pair nominates by itself. Points
    where a coordinate degenerates fall back to the cross-prime pool."""
    allowed = _allowed_order_set(fld.ell, M)
    lam = _lambda_estimate(len(exponents), fld.q1, M, fld.ell)
    if lam > _LAMBDA_CAP:
        diag["skipped_levels"].append((fld.ell, fld.e, round(lam, 1)))
        return []
    reps = fld.exact_degree_reps()
    if len(reps) == 0:
        return []
    ws = _value_dlogs(fld, fn_pairs, reps)
    wmat = np.stack(ws, axis=1)  # (#reps, 3)
    badmask = (wmat < 0).any(axis=1)
    pair_recs = []
    for ridx in np.nonzero(badmask)[0]:
        rec = _record_from_dlogs(fld, wmat[ridx], n_mat, M, allowed)
        if rec is not None:
            pair_recs.append(rec)
    good_rows = np.nonzero(~badmask)[0]
    if not len(good_rows):
        return pair_recs
    gcds = np.gcd(np.arange(fld.q1, dtype=np.int64), fld.q1)
    ot = fld.q1 // gcds
    lut = np.zeros(M + 1, dtype=bool)
    for o in allowed:
        if o <= M:
            lut[o] = True
    cls = np.where((ot <= M) & lut[ot.clip(max=M)], ot, 0).astype(np.int32)
    nf = n_mat.astype(np.float64)
    chunk = max(1, (1 << 21) // max(len(exponents), 1))
    for lo in range(0, len(good_rows), chunk):
        rows = good_rows[lo : lo + chunk]
        wc = wmat[rows].astype(np.float64)
        rm = np.rint(nf @ wc.T).astype(np.int64) % fld.q1
        oc = cls[rm]  # (#exponents, len(rows))
        nz_n, nz_c = np.nonzero(oc)
        if not len(nz_c):
            continue
        order = np.argsort(nz_c, kind="stable")
        nz_n, nz_c = nz_n[order], nz_c[order]
        start = 0
        while start < len(nz_c):
            stop = start
            col = int(nz_c[start])
            while stop < len(nz_c) and nz_c[stop] == col:
                stop += 1
            if stop - start >= 2:
                mem = []
                for k in range(start, stop):
                    ds = _dset_single(fld.ell, int(oc[nz_n[k], col]), M)
                    if ds:
                        mem.append((exponents[int(nz_n[k])], ds))
                mem.sort(key=lambda m: _norm_key(m[0]))
                if len(mem) >= 2 and any(
                    _independent(mem[0][0], m[0]) for m in mem[1:]
                ):
                    noms.append(
                        _Nomination(
                            source=f"F_{fld.ell}^{fld.e}",
                            members=_trim_members(mem),
                        )
                    )
            start = stop
    return pair_recs


def _record_from_dlogs(fld, wrow, n_mat, M, allowed):
    """A pair-pool record from one residue point's value data."""
    w = []
    bads = []
    for i, v in enumerate(wrow):
        v = int(v)
        if v == -1:
            bads.append((i, 1))
            w.append(None)
        elif v == -2:
            bads.append((i, -1))
            w.append(None)
        elif v == -3:
            bads.append((i, None))
            w.append(None)
        else:
            w.append(v)
    oc = _order_class_vector(n_mat, w, bads, fld.q1, M, allowed)
    if not oc.any():
        return None
    ocm = np.where(oc == _WILD, M + 1, oc).astype(np.int64)
    return (fld.ell, fld.e, oc, ocm)


def _infinite_record(ell, fn_pairs, n_mat, M):
    """The boundary disc at infinity: only the degree drop constrains which
    exponent combinations stay units there. When a leading coefficient
    vanishes mod ell the local degrees shift with the point, so no
    combination can be ruled out and the record is all wildcard."""
    delta = np.zeros(3, dtype=np.int64)
    certain = True
    for i, (num, den) in enumerate(fn_pairs):
        tn, td = ztrim(list(num)), ztrim(list(den))
        if tn[-1] % ell == 0 or td[-1] % ell == 0:
            certain = False
            break
        delta[i] = len(tn) - len(td)
    if certain:
        dots = n_mat @ delta
        oc = np.where(dots == 0, _WILD, 0).astype(np.uint16)
    else:
        oc = np.full(len(n_mat), _WILD, dtype=np.uint16)
    ocm = np.where(oc == _WILD, M + 1, oc).astype(np.int64)
    return (ell, 0, oc, ocm)


def _sweep_records(ell, levels, fn_pairs, n_mat, M, diag):
    allowed = _allowed_order_set(ell, M)
    recs = []
    for e in levels:
        fld = _ScreenField(ell, e)
        reps = fld.exact_degree_reps()
        if not len(reps):
            continue
        ws = _value_dlogs(fld, fn_pairs, reps)
        wmat = np.stack(ws, axis=1)
        for ridx in range(len(reps)):
            rec = _record_from_dlogs(fld, wmat[ridx], n_mat, M, allowed)
            if rec is not None:
                recs.append(rec)
    recs.append(_infinite_record(ell, fn_pairs, n_mat, M))
    diag["pair_records"][ell] = len(recs)
    return recs


def _cross_nominations(recs2, recs3, exponents, n_mat, compat, any_tab, noms, cap=20000):
    """Pair every record of one prime against every record of the other.

    Membership is decided by one vectorized table gather per record pair;
    torsion-order sets are materialized only for the trimmed member head."""
    seen_members = set()
    for ell2, e2, oc2, ocm2 in recs2:
        live2 = oc2 != 0
        for ell3, e3, oc3, ocm3 in recs3:
            if len(noms) >= cap:
                return
            valid = live2 & (oc3 != 0) & any_tab[ocm2, ocm3]
            idxs = np.nonzero(valid)[0]
            if len(idxs) < 2:
                continue
            sub = n_mat[idxs]
            indep = np.any(np.cross(sub, sub[0]) != 0, axis=1)
            ci = np.nonzero(indep)[0]
            if not len(ci):
                continue
            if len(idxs) <= _SMALL_MEMBERS:
                kept = idxs.tolist()
            else:
                kept = idxs[:_WINDOW].tolist()
                comp = int(idxs[ci[0]])
                if comp not in kept:
                    kept.append(comp)
            sig = (
                tuple(kept),
                tuple(int(oc2[i]) for i in kept),
                tuple(int(oc3[i]) for i in kept),
            )
            if sig in seen_members:
                continue
            seen_members.add(sig)
            members = [
                (exponents[i], compat.dset(int(oc2[i]), int(oc3[i]))) for i in kept
            ]
            noms.append(
                _Nomination(
                    source=f"pair F_{ell2}^{e2} x F_{ell3}^{e3}",
                    members=members,
                )
            )


def _verify_candidate(u, fn_pairs, M, probes):
    """Exact relation check in Q[t]/(u); returns (pair, extras) or None."""
    K = NumberField(list(u))
    theta = K.gen()
    vals = []
    invs = []
    for num, den in fn_pairs:
        a = K.eval_int_poly(list(num), theta)
        b = K.eval_int_poly(list(den), theta)
        if K.is_zero(a) or K.is_zero(b):
            return None  # boundary point, not in the torus
        try:
            v = K.mul(a, K.inv(b))
            vals.append(v)
            invs.append(K.inv(v))
        except (DivisionByZero, NotAUnit, ZeroDivisionError):
            return None
    pows = [{0: K.one(), 1: vals[i], -1: invs[i]} for i in range(3)]

    def power(i, e):
        got = pows[i].get(e)
        if got is None:
            base = vals[i] if e > 0 else invs[i]
            got = K.pow_(base, abs(e))
            pows[i][e] = got
        return got

    verified = []
    have_pair = False
    for n in probes[:_PROBE_CAP]:
        w = K.one()
        for i in range(3):
            if n[i]:
                w = K.mul(w, power(i, n[i]))
        o = K.torsion_order(w, M)
        if o is not None:
            verified.append((n, o))
            if not have_pair:
                have_pair = any(
                    _independent(verified[0][0], v[0]) for v in verified[1:]
                )
            if have_pair and len(verified) >= 8:
                break
    if len(verified) < 2:
        return None
    verified.sort(key=lambda no: _norm_key(no[0]))
    first = verified[0]
    second = next((v for v in verified[1:] if _independent(first[0], v[0])), None)
    if second is None:
        return None
    extras = tuple(v for v in verified if v is not first and v is not second)[:6]
    return (first, second, extras)


def _exact_dependence_check(fn_pairs):
    """Pairwise multiplicative independence over Q, through the exponent
    vectors on the common irreducible factor basis."""
    basis = {}
    vecs = []
    for num, den in fn_pairs:
        vec = {}
        for coeffs, side in ((num, 1), (den, -1)):
            for fac, mult in _factor_int_poly(tuple(coeffs)):
                j = basis.setdefault(fac, len(basis))
                vec[j] = vec.get(j, 0) + side * mult
        vecs.append(vec)
    for i in range(3):
        for j in range(i + 1, 3):
            a, b = vecs[i], vecs[j]
            keys = sorted(set(a) | set(b))
            va = [a.get(k, 0) for k in keys]
            vb = [b.get(k, 0) for k in keys]
            rank2 = any(
                va[s] * vb[t] - va[t] * vb[s]
                for s in range(len(keys))
                for t in range(s + 1, len(keys))
            )
            if not rank2:
                raise DependentFunctions(
                    f"f{i + 1} and f{j + 1} are multiplicatively dependent"
                )


def _reduction_dependence_check(spec, fn_pairs, notes):
    """The same check on the reduction mod the working prime, through the
    logarithmic-derivative criterion on the diagonal chart."""
    F = PrimeField(spec.prime)
    h = {(0, 1): 1, (1, 0): F.p - 1}
    converted = []
    for num, den in fn_pairs:
        fn = {(i, 0): c % spec.prime for i, c in enumerate(num) if c % spec.prime}
        fd = {(i, 0): c % spec.prime for i, c in enumerate(den) if c % spec.prime}
        if not fn or not fd:
            converted.append(None)
            continue
        converted.append((fn, fd))
    for i in range(3):
        for j in range(i + 1, 3):
            if converted[i] is None or converted[j] is None:
                notes.append(
                    f"reduction of f{i + 1} or f{j + 1} degenerates mod"
                    f" {spec.prime}; independence certified over Q only"
                )
                continue
            try:
                ok = dlog_independent(F, h, converted[i], converted[j])
            except (ZeroFunction, HypothesisViolated):
                notes.append(
                    f"dlog test for (f{i + 1}, f{j + 1}) degenerated mod"
                    f" {spec.prime}; independence certified over Q only"
                )
                continue
            if not ok:
                raise DependentFunctions(
                    f"f{i + 1} and f{j + 1} have dependent logarithmic"
                    f" derivatives mod {spec.prime}"
                )


def _relation_search(spec: TorusCurveSpec):
    spec.validate()
    fn_pairs = spec.function_pairs()
    notes = []
    _exact_dependence_check(fn_pairs)
    _reduction_dependence_check(spec, fn_pairs, notes)
    B, M = spec.bound_b, spec.bound_m
    exponents = canonical_exponents(B)
    n_mat = np.array(exponents, dtype=np.int64)
    diag = {
        "notes": notes,
        "skipped_levels": [],
        "pair_records": {},
        "nominations": 0,
        "pairs_tried": 0,
        "gcd_hits": 0,
        "candidates": 0,
    }
    primes, levels = _screen_portfolio(fn_pairs, notes)
    noms = []
    pair_pools = {}
    for ell in primes:
        sweep, scan = levels[ell]
        pool = _sweep_records(ell, sweep, fn_pairs, n_mat, M, diag)
        for e in scan:
            fld = _ScreenField(ell, e)
            pool.extend(_solo_scan(fld, fn_pairs, n_mat, exponents, M, noms, diag))
        pair_pools[ell] = pool
    compat = _CompatTable(primes[0], primes[1], M)
    any_tab = _compat_any_table(primes[0], primes[1], M)
    _cross_nominations(
        pair_pools[primes[0]],
        pair_pools[primes[1]],
        exponents,
        n_mat,
        compat,
        any_tab,
        noms,
    )
    diag["nominations"] = len(noms)
    state = _SearchState(cache=_PieceCache(fn_pairs))
    for nom in noms:
        _extract(nom, state)
    _flush_pairs(state)
    diag["pairs_tried"] = state.pairs_tried
    diag["gcd_hits"] = state.gcd_hits
    diag["candidates"] = len(state.candidates)
    if state.cache.truncated:
        notes.append(
            "some relation loci exceeded the degree cap and were skipped;"
            " rerun with smaller bounds for a complete sweep"
        )
    prefix = exponents[:48]
    certs = []
    for u in sorted(state.candidates, key=lambda c: (len(c), c)):
        musts, extras = state.candidates[u]
        pool = sorted(extras | set(prefix), key=_norm_key)[:64]
        probes = list(dict.fromkeys(pool + [n for ab in musts[:16] for n in ab]))
        got = _verify_candidate(u, fn_pairs, M, probes)
        if got is None:
            continue
        first, second, extras = got
        cols, minor = _witness_minor(first[0], second[0])
        deg = len(u) - 1
        for root_index in range(deg):
            certs.append(
                UnlikelyCertificate(
                    min_poly=u,
                    root_index=root_index,
                    degree=deg,
                    relations=(first, second),
                    independence_minor=(cols, minor),
                    extra_relations=extras,
                )
            )
    certs.sort(key=lambda c: (c.degree, c.min_poly, c.root_index))
    diag["levels"] = {ell: levels[ell] for ell in primes}
    diag["primes"] = primes
    if not certs:
        notes.append(
            f"no certificate pairs found within |n| <= {B}, order <= {M};"
            " the box may be too small"
        )
    return certs, diag


def relation_solve(spec: TorusCurveSpec):
    """All certified points found in the search box, one certificate per
    conjugate root, sorted by minimal polynomial and root label."""
    certs, _ = _relation_search(spec)
    return certs


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


@dataclass
class FilterVerdict:
    """Outcome of the p-adic logarithm rank test.

    passed means the log vector is consistent with a rank-one direction at
    working precision; a failure is always backed by either a certified
    nonzero minor or a reconstruction bound argument, so fail_certified
    is True on every failure. True relations are never rejected."""

    passed: bool
    fail_certified: bool
    prime: int
    precision: int
    direction: tuple | None = None
    height_bound: int | None = None
    digit_precision: int | None = None
    log_valuations: tuple = ()
    route: str = "direct"
    notes: tuple = ()

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "fail_certified": self.fail_certified,
            "prime": self.prime,
            "precision": self.precision,
            "direction": list(self.direction) if self.direction else None,
            "height_bound": self.height_bound,
            "digit_precision": self.digit_precision,
            "log_valuations": [
                v if v is None or isinstance(v, int) else str(v)
                for v in self.log_valuations
            ],
            "route": self.route,
            "notes": list(self.notes),
        }


@dataclass
class RamificationBranch:
    residue_degree: int
    multiplicity: int
    root_valuations: tuple
    ramification_degrees: tuple

    def to_dict(self) -> dict:
        return {
            "residue_degree": self.residue_degree,
            "multiplicity": self.multiplicity,
            "root_valuations": [str(v) for v in self.root_valuations],
            "ramification_degrees": list(self.ramification_degrees),
        }


@dataclass
class RamificationReport:
    """Classification of the point's residue discs at p."""

    prime: int
    is_ramified: bool
    branches: tuple
    bound: int | None = None
    bound_valid: bool | None = None
    notes: tuple = ()

    def to_dict(self) -> dict:
        return {
            "prime": self.prime,
            "is_ramified": self.is_ramified,
            "branches": [b.to_dict() for b in self.branches],
            "bound": self.bound,
            "bound_valid": self.bound_valid,
            "notes": list(self.notes),
        }


@dataclass
class UnlikelyCertificate:
    """An exactly verified point in a codimension-two subgroup.

    min_poly is the primitive integer minimal polynomial of the parameter
    value; root_index is a formal label 0 .. degree-1 for the conjugate
    roots (the certified relations hold at every conjugate, so the set of
    certificates is closed under conjugation). relations holds two
    exponent vectors with the exact torsion orders of the corresponding
    coordinate products; independence_minor names a nonzero 2x2 minor."""

    min_poly: tuple
    root_index: int
    degree: int
    relations: tuple
    independence_minor: tuple
    extra_relations: tuple = ()
    padic: FilterVerdict | None = None
    ramification: RamificationReport | None = None
    notes: tuple = ()

    def point_text(self) -> str:
        return f"root {self.root_index} of {_poly_text(self.min_poly)}"

    def to_dict(self) -> dict:
        return {
            "min_poly": list(self.min_poly),
            "min_poly_text": _poly_text(self.min_poly),
            "root_index": self.root_index,
            "degree": self.degree,
            "relations": [
                {"exponents": list(n), "order": o} for n, o in self.relations
            ],
            "independence_minor": {
                "columns": list(self.independence_minor[0]),
                "value": self.independence_minor[1],
            },
            "extra_relations": [
                {"exponents": list(n), "order": o} for n, o in self.extra_relations
            ],
            "padic": self.padic.to_dict() if self.padic else None,
            "ramification": self.ramification.to_dict() if self.ramification else None,
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------------------
# p-adic rank filter
# ---------------------------------------------------------------------------


def _as_min_poly(target):
    if isinstance(target, UnlikelyCertificate):
        return tuple(target.min_poly)
    if isinstance(target, Fraction) or isinstance(target, int):
        q = Fraction(target)
        return (-q.numerator, q.denominator)
    coeffs = ztrim([int(c) for c in target])
    if len(coeffs) < 2:
        raise HypothesisViolated("a point needs a nonconstant minimal polynomial")
    return tuple(coeffs)


def _reciprocal_instance(u, fn_pairs):
    """Swap t for 1/t so that a point with negative valuation becomes
    integral; the coordinate functions transform accordingly."""
    ur = tuple(reversed(u))
    if ur[-1] == 0:
        raise HypothesisViolated("zero is not a torus point")
    out = []
    for num, den in fn_pairs:
        num = ztrim(list(num))
        den = ztrim(list(den))
        dn, dd = len(num) - 1, len(den) - 1
        rn = list(reversed(num))
        rd = list(reversed(den))
        if dd > dn:
            rn = [0] * (dd - dn) + rn
        elif dn > dd:
            rd = [0] * (dn - dd) + rd
        out.append((ztrim(rn) or [0], ztrim(rd) or [0]))
    return ur, out


def _lift_point(u, p, N):
    """Newton lift of an unramified root of u: context, ring element, and
    the residue factor used; None when every residue factor is repeated."""
    F = PrimeField(p)
    ub = ptrim(F, [c % p for c in u])
    _, fac = factor_poly(F, pmonic(F, ub))
    simple = sorted(
        (v for v, m in fac if m == 1), key=lambda v: (pdeg(v), tuple(v))
    )
    if not simple:
        return None
    v = simple[0]
    fdeg = pdeg(v)
    modulus = [int(c) for c in v] if fdeg > 1 else None
    ctx = PadicContext(p, N, f_deg=max(fdeg, 1), modulus=modulus)
    R = ctx.ring(N)
    if fdeg == 1:
        root = (-v[0] * pow(v[1], -1, p)) % p
        theta = R.from_int(root)
    else:
        theta = R.gen()
    du = _deriv_int(list(u))
    for _ in range(N.bit_length() + 2):
        fv = R.eval_int_poly(list(u), theta)
        if R.is_zero(fv):
            break
        dv = R.eval_int_poly(du, theta)
        theta = R.sub(theta, R.mul(fv, R.inv(dv)))
    if not R.is_zero(R.eval_int_poly(list(u), theta)):
        raise PrecisionExhausted("Newton lift did not stabilize at this precision")
    return ctx, theta, v


def _value_scalars(ctx, theta, fn_pairs):
    R = ctx.ring(ctx.N)
    out = []
    for k, (num, den) in enumerate(fn_pairs, start=1):
        a = scalar_from_ring_element(ctx, R.eval_int_poly(list(num), theta))
        b = scalar_from_ring_element(ctx, R.eval_int_poly(list(den), theta))
        if a.is_zeroish or b.is_zeroish:
            raise NonUnitValue(
                f"f{k} vanishes or has a pole at the point to working precision"
            )
        out.append(a / b)
    return out


def _scalar_rational_digits(s):
    """(residue, modulus) for a scalar lying in Z_p, None when a certified
    digit lives outside the prime subfield (so no rational ratio exists)."""
    v = s.v
    if v is None or v < 0:
        return None if v is not None else (0, 0)
    higher = any(c for c in s.unit[1:])
    if higher:
        return None
    k = v + s.rel
    p = s.ctx.p
    return ((s.unit[0] * p**v) % p**k, p**k)


def padic_rank_filter(target, spec=None, *, fn_pairs=None, p=None, precision=None):
    """Test whether the p-adic logs of the coordinate values at the point
    fit a single rational direction.

    target is a certificate, a rational number, or the little-endian
    coefficients of the point's minimal polynomial. Failures are certified
    (a nonzero minor at a stated precision, or the absence of any integer
    direction up to the stated height bound); passes hold to precision.
    True torsion relations always pass."""
    if fn_pairs is None:
        if spec is None:
            raise HypothesisViolated("need a spec or explicit coordinate functions")
        fn_pairs = spec.function_pairs()
    p = p if p is not None else spec.prime
    N = precision if precision is not None else spec.precision
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    u = _as_min_poly(target)
    h0 = isqrt(p**N // 2)
    if h0 < 2:
        raise PrecisionExhausted(
            f"precision {N} at p={p} leaves reconstruction bound {h0} < 2"
        )
    notes = []
    route = "direct"
    if u[-1] % p == 0:
        u, fn_pairs = _reciprocal_instance(u, fn_pairs)
        route = "reciprocal"
        notes.append("point not integral at p; swapped t for 1/t first")
        if u[-1] % p == 0:
            raise BadReduction("degree drops mod p on both charts")
    lifted = _lift_point(u, p, N)
    if lifted is None:
        return FilterVerdict(
            passed=True,
            fail_certified=False,
            prime=p,
            precision=N,
            route=route,
            notes=tuple(
                notes
                + [
                    "every residue factor at p is repeated: the point is"
                    " ramified at p and the unramified log filter does not"
                    " apply; exact certification is unaffected"
                ]
            ),
        )
    ctx, theta, _ = lifted
    values = _value_scalars(ctx, theta, fn_pairs)
    vals = [s.v for s in values]
    if any(v != 0 for v in vals):
        colmat = [[v] for v in vals]
        emaps = boundary_projections(colmat)
        rows = emaps[0]
        combos = []
        for row in rows:
            acc = None
            for i, e in enumerate(row):
                if e:
                    term = values[i] ** e
                    acc = term if acc is None else acc * term
            combos.append(acc if acc is not None else ctx.from_rational(1))
        logs = [log_unit(c) for c in combos]
        route += "+boundary"
        notes.append(
            "nonzero valuations routed through the boundary projection;"
            " the rank test runs on the projected unit pair"
        )
    else:
        logs = [log_unit(s) for s in values]
    dims = len(logs)
    lvals = tuple(
        None if lg.is_zeroish else lg.v for lg in logs
    )
    nz = [i for i in range(dims) if not logs[i].is_zeroish]
    if len(nz) <= 1:
        direction = None
        if dims == 3 and len(nz) == 1:
            direction = tuple(1 if i in nz else 0 for i in range(3))
        return FilterVerdict(
            passed=True,
            fail_certified=False,
            prime=p,
            precision=N,
            direction=direction,
            log_valuations=lvals,
            route=route,
            notes=tuple(
                notes + ["at most one logarithm is nonzero at working precision"]
            ),
        )
    pivot = min(nz, key=lambda i: logs[i].v)
    ratios = {}
    hbound = None
    kdigits = None
    for i in nz:
        if i == pivot:
            continue
        rho = logs[i] / logs[pivot]
        dig = _scalar_rational_digits(rho)
        if dig is None:
            return FilterVerdict(
                passed=False,
                fail_certified=True,
                prime=p,
                precision=N,
                log_valuations=lvals,
                route=route,
                notes=tuple(
                    notes
                    + [
                        f"log ratio {i}:{pivot} has a certified digit outside"
                        " the prime subfield; no rational direction exists"
                    ]
                ),
            )
        a, m = dig
        if m == 0:
            continue
        k = 0
        mm = m
        while mm > 1:
            mm //= p
            k += 1
        # hold back digits from the height bound: an accidental congruence
        # then has to hold p^delta times farther than the lattice can reach
        delta = max(0, min(3, (k - 4) // 2))
        h = min(h0, isqrt(m // p**delta // 2))
        if h < 2:
            raise PrecisionExhausted(
                f"log ratio carries only {k} certified digits at p={p}"
            )
        hbound = h if hbound is None else min(hbound, h)
        kdigits = k if kdigits is None else min(kdigits, k)
        rec = rational_reconstruct(a, m, bound=h)
        if rec is None:
            return FilterVerdict(
                passed=False,
                fail_certified=True,
                prime=p,
                precision=N,
                height_bound=h,
                digit_precision=k,
                log_valuations=lvals,
                route=route,
                notes=tuple(
                    notes
                    + [
                        f"no integer direction of height <= {h} matches the"
                        f" log ratio {i}:{pivot} mod {p}^{k}"
                    ]
                ),
            )
        ratios[i] = rec
    denoms = 1
    for fr in ratios.values():
        denoms = denoms * fr.denominator // gcd(denoms, fr.denominator)
    direction = [0] * dims
    direction[pivot] = denoms
    for i, fr in ratios.items():
        direction[i] = int(fr * denoms)
    g = 0
    for c in direction:
        g = gcd(g, c)
    direction = tuple(c // max(g, 1) for c in direction)
    for i in range(dims):
        for j in range(i + 1, dims):
            minor = logs[i].scale_rational(direction[j]) - logs[j].scale_rational(
                direction[i]
            )
            if not minor.is_zeroish:
                return FilterVerdict(
                    passed=False,
                    fail_certified=True,
                    prime=p,
                    precision=N,
                    direction=direction,
                    height_bound=hbound,
                    digit_precision=kdigits,
                    log_valuations=lvals,
                    route=route,
                    notes=tuple(
                        notes
                        + [
                            f"minor ({i}, {j}) against the reconstructed"
                            " direction is certified nonzero"
                        ]
                    ),
                )
    return FilterVerdict(
        passed=True,
        fail_certified=False,
        prime=p,
        precision=N,
        direction=direction,
        height_bound=hbound,
        digit_precision=kdigits,
        log_valuations=lvals,
        route=route,
        notes=tuple(notes + ["all minors against the direction vanish to precision"]),
    )


# ---------------------------------------------------------------------------
# ramification at p
# ---------------------------------------------------------------------------


def classify_ramification(
    target,
    spec=None,
    *,
    p=None,
    precision=None,
    genus=None,
    boundary_degree=None,
):
    """Classify the residue discs of the point at p through the slope data
    of the shifted minimal polynomial.

    Simple residue factors are unramified outright. At a repeated factor
    the polynomial is recentered at the canonical torsion lift of the
    residue root and the slopes of its polygon read off the valuations of
    the nearby roots; a non-integral valuation certifies ramification of
    degree the slope denominator."""
    p = p if p is not None else (spec.prime if spec else None)
    if p is None or not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    N = precision if precision is not None else (spec.precision if spec else 8)
    g = genus if genus is not None else (spec.genus if spec else None)
    d = boundary_degree if boundary_degree is not None else (
        spec.boundary_degree if spec else None
    )
    u = _as_min_poly(target)
    if u[-1] % p == 0:
        raise BadReduction(f"the point is not integral at {p}")
    F = PrimeField(p)
    ub = ptrim(F, [c % p for c in u])
    factors = sorted(
        factor_poly(F, pmonic(F, ub))[1], key=lambda vm: (pdeg(vm[0]), tuple(vm[0]))
    )
    branches = []
    notes = []
    ramified = False
    for v, mult in factors:
        fdeg = pdeg(v)
        if mult == 1:
            branches.append(
                RamificationBranch(
                    residue_degree=fdeg,
                    multiplicity=1,
                    root_valuations=(),
                    ramification_degrees=(1,),
                )
            )
            continue
        workN = max(N, mult + 2)
        modulus = [int(c) for c in v] if fdeg > 1 else None
        ctx = PadicContext(p, workN, f_deg=max(fdeg, 1), modulus=modulus)
        R = ctx.ring(workN)
        if fdeg == 1:
            root = (-v[0] * pow(v[1], -1, p)) % p
            z0 = R.teichmueller(R.from_int(root)) if root else R.zero()
        else:
            z0 = R.teichmueller(R.gen())
        zpows = [R.one()]
        for _ in range(len(u) - 1):
            zpows.append(R.mul(zpows[-1], z0))
        shifted = []
        for j in range(len(u)):
            acc = R.zero()
            for k in range(j, len(u)):
                c = comb(k, j) * u[k]
                if c:
                    acc = R.add(acc, R.scale(zpows[k - j], c))
            shifted.append(acc)
        scalars = [scalar_from_ring_element(ctx, c) for c in shifted]
        poly = PadicSeries(ctx, scalars).newton_polygon(0)
        rvals = []
        for seg in poly.segments:
            slope = Fraction(
                seg.right[1] - seg.left[1], seg.right[0] - seg.left[0]
            )
            val = -slope
            if val > 0:
                rvals.append(val)
        rdegs = tuple(sorted({v.denominator for v in rvals})) or (1,)
        if any(v.denominator > 1 for v in rvals):
            ramified = True
        branches.append(
            RamificationBranch(
                residue_degree=fdeg,
                multiplicity=mult,
                root_valuations=tuple(rvals),
                ramification_degrees=rdegs,
            )
        )
    bound = valid = None
    if g is not None and d is not None:
        bound, valid = ramification_bound(g, d, p)
        worst = max((max(b.ramification_degrees) for b in branches), default=1)
        if bound and worst > bound:
            notes.append(
                f"a branch ramifies to degree {worst}, above the bound {bound}"
            )
    return RamificationReport(
        prime=p,
        is_ramified=ramified,
        branches=tuple(branches),
        bound=bound,
        bound_valid=valid,
        notes=tuple(notes),
    )


# ---------------------------------------------------------------------------
# coverage envelope
# ---------------------------------------------------------------------------


def _sums_reachable(parts, dmax):
    reach = [False] * (dmax + 1)
    reach[0] = True
    for s in range(1, dmax + 1):
        for q in parts:
            if q > s:
                break
            if reach[s - q]:
                reach[s] = True
                break
    return reach


def search_envelope(spec: TorusCurveSpec) -> dict:
    """What the screen portfolio guarantees: the largest D such that every
    point of minimal-polynomial degree at most D must show up at some
    screen record, plus honest caveats about the extraction stage."""
    fn_pairs = spec.function_pairs()
    notes = []
    primes, levels = _screen_portfolio(fn_pairs, notes)
    dmax = 64
    n_exp = ((2 * spec.bound_b + 1) ** 3 - 1) // 2
    kept = {}
    for ell in primes:
        sweep, scan = levels[ell]
        keep = [
            e
            for e in scan
            if _lambda_estimate(n_exp, ell**e - 1, spec.bound_m, ell) <= _LAMBDA_CAP
        ]
        dropped = sorted(set(scan) - set(keep))
        if dropped:
            notes.append(
                f"scan levels {dropped} at prime {ell} carry too many"
                " accidental survivors for this box and are not run"
            )
        kept[ell] = (sweep, keep)
    ell2, ell3 = primes
    sweep2, scan2 = kept[ell2]
    sweep3, scan3 = kept[ell3]
    cov2 = set(sweep2) | set(scan2)
    cov3 = set(sweep3) | set(scan3)
    # a point escapes when its factor shape avoids every solo level at both
    # primes and avoids every level entirely at one of them
    avoid_solo2 = _sums_reachable(
        sorted(set(range(1, dmax + 1)) - set(scan2)), dmax
    )
    avoid_solo3 = _sums_reachable(
        sorted(set(range(1, dmax + 1)) - set(scan3)), dmax
    )
    avoid_all2 = _sums_reachable(sorted(set(range(1, dmax + 1)) - cov2), dmax)
    avoid_all3 = _sums_reachable(sorted(set(range(1, dmax + 1)) - cov3), dmax)
    guaranteed = 0
    for D in range(1, dmax + 1):
        uncaught = (avoid_all2[D] and avoid_solo3[D]) or (
            avoid_solo2[D] and avoid_all3[D]
        )
        if uncaught:
            break
        guaranteed = D
    return {
        "screen_primes": primes,
        "sweep_degrees": {str(ell): kept[ell][0] for ell in primes},
        "scan_degrees": {str(ell): kept[ell][1] for ell in primes},
        "guaranteed_degree": guaranteed,
        "caveats": [
            "the guarantee covers nomination of the point's records;"
            " extraction pairs the shortest surviving exponents per record"
            " and can in principle overlook relations ranked beyond its"
            " window on crowded records",
            "a coordinate vanishing along the point's residue disc routes"
            " that disc through the record pairing at both primes, and a"
            " minimal polynomial dropping degree at a screen prime is"
            " tracked through the boundary valuation lattice only",
            f"searched region: |n_i| <= {spec.bound_b},"
            f" torsion order <= {spec.bound_m}; no claim beyond this box",
        ]
        + notes,
    }


# ---------------------------------------------------------------------------
# pipeline
# ---------------------------------------------------------------------------


@dataclass
class StageRecord:
    name: str
    description: str
    status: str
    payload: dict

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "status": self.status,
            "payload": self.payload,
        }


@dataclass
class PipelineReport:
    spec: dict
    stages: tuple
    certificates: tuple
    envelope: dict
    notes: tuple = ()

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "stages": [s.to_dict() for s in self.stages],
            "certificates": [c.to_dict() for c in self.certificates],
            "envelope": self.envelope,
            "notes": list(self.notes),
        }

    def render_text(self) -> str:
        lines = ["search and certification report", "=" * 34]
        lines.append(json.dumps(self.spec["bounds"]))
        for s in self.stages:
            lines.append(f"[{s.status}] {s.name}: {s.description}")
            for k, v in s.payload.items():
                lines.append(f"    {k}: {v}")
        lines.append(f"certificates: {len(self.certificates)}")
        for c in self.certificates:
            (n, on), (m, om) = c.relations
            lines.append(
                f"  {c.point_text()}: n={list(n)} (order {on}),"
                f" m={list(m)} (order {om})"
            )
            if c.padic is not None:
                lines.append(
                    f"    log filter: {'pass' if c.padic.passed else 'FAIL'}"
                    + (
                        f", direction {list(c.padic.direction)}"
                        if c.padic.direction
                        else ""
                    )
                )
            if c.ramification is not None:
                lines.append(
                    "    ramification: "
                    + ("ramified" if c.ramification.is_ramified else "unramified")
                )
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines)


def _pair_curve_polynomial(fi, fj):
    """Implicit integer curve through (f_i(t), f_j(t)): the t-resultant of
    x den_i - num_i and y den_j - num_j."""
    numi, deni = fi
    numj, denj = fj
    rows_a = []
    for k in range(max(len(numi), len(deni))):
        row = {}
        if k < len(deni) and deni[k]:
            row[(1, 0)] = deni[k]
        if k < len(numi) and numi[k]:
            row[(0, 0)] = row.get((0, 0), 0) - numi[k]
        rows_a.append(row)
    rows_b = []
    for k in range(max(len(numj), len(denj))):
        row = {}
        if k < len(denj) and denj[k]:
            row[(0, 1)] = denj[k]
        if k < len(numj) and numj[k]:
            row[(0, 0)] = row.get((0, 0), 0) - numj[k]
        rows_b.append(row)
    res = resultant_poly_t(rows_a, rows_b)
    if not res:
        raise ZeroFunction("the coordinate pair has a degenerate resultant")
    cont = 0
    for c in res.values():
        cont = gcd(cont, c)
    cont = max(cont, 1)
    lead = res[max(res)]
    sgn = -1 if lead < 0 else 1
    return {k: sgn * c // cont for k, c in res.items()}


def run_pipeline(spec: TorusCurveSpec) -> PipelineReport:
    """Run every stage on one instance: independence checks, the anomalous
    disc table, the finiteness test per coordinate pair, the search, the
    per-certificate p-adic filter and ramification classification, and the
    numeric bounds."""
    spec.validate()
    stages = []
    notes = []
    p = spec.prime
    F = PrimeField(p)
    fn_pairs = spec.function_pairs()

    _exact_dependence_check(fn_pairs)
    depnotes = []
    _reduction_dependence_check(spec, fn_pairs, depnotes)
    stages.append(
        StageRecord(
            name="independence",
            description="pairwise multiplicative independence of the"
            " coordinates, over Q and on the reduction",
            status="ok",
            payload={"pairs_checked": 3, "notes": depnotes},
        )
    )
    notes.extend(depnotes)

    h_chart = {(0, 1): 1, (1, 0): p - 1}
    f_charts = []
    chart_ok = True
    for num, den in fn_pairs:
        fn = {(i, 0): c % p for i, c in enumerate(num) if c % p}
        fd = {(i, 0): c % p for i, c in enumerate(den) if c % p}
        if not fn or not fd:
            chart_ok = False
        f_charts.append((fn, fd))
    if chart_ok:
        try:
            rep = anomalous_discs(
                F, h_chart, f_charts, spec.genus, spec.boundary_degree
            )
            stages.append(
                StageRecord(
                    name="anomalous-discs",
                    description="residue discs where an exponent combination"
                    " of the coordinate dlogs vanishes",
                    status="ok",
                    payload={
                        "total": rep.total,
                        "bound": rep.bound,
                        "classes": len(rep.classes),
                    },
                )
            )
            anomalous_report = rep
        except PadicToriError as err:
            stages.append(
                StageRecord(
                    name="anomalous-discs",
                    description="residue discs where an exponent combination"
                    " of the coordinate dlogs vanishes",
                    status="error",
                    payload={"error": f"{type(err).__name__}: {err}"},
                )
            )
            anomalous_report = None
    else:
        stages.append(
            StageRecord(
                name="anomalous-discs",
                description="skipped: a coordinate degenerates mod p",
                status="error",
                payload={"error": "degenerate reduction"},
            )
        )
        anomalous_report = None

    pair_payload = {}
    for i in range(3):
        for j in range(i + 1, 3):
            label = f"(f{i + 1}, f{j + 1})"
            try:
                hp = _pair_curve_polynomial(fn_pairs[i], fn_pairs[j])
                W = Witt2Polynomial.from_integers(p, hp)
                verdict = finiteness_verdict(W)
                pair_payload[label] = {
                    "finite": verdict.finite,
                    "divides": verdict.divides,
                }
            except PadicToriError as err:
                pair_payload[label] = {"error": f"{type(err).__name__}: {err}"}
    stages.append(
        StageRecord(
            name="finiteness-per-pair",
            description="defect-divisibility test on the implicit curve of"
            " each coordinate pair",
            status="ok",
            payload=pair_payload,
        )
    )

    certs, diag = _relation_search(spec)
    stages.append(
        StageRecord(
            name="search",
            description="exponent-box screen over two primes, gcd"
            " extraction, exact verification",
            status="ok",
            payload={
                "certificates": len(certs),
                "nominations": diag["nominations"],
                "gcd_hits": diag["gcd_hits"],
                "region": {"B": spec.bound_b, "M": spec.bound_m},
            },
        )
    )
    notes.extend(diag["notes"])

    filtered = []
    for cert in certs:
        cnotes = list(cert.notes)
        padic = None
        ram = None
        try:
            padic = padic_rank_filter(cert, spec)
        except PadicToriError as err:
            cnotes.append(f"log filter: {type(err).__name__}: {err}")
        try:
            ram = classify_ramification(cert, spec)
        except PadicToriError as err:
            cnotes.append(f"ramification: {type(err).__name__}: {err}")
        filtered.append(
            UnlikelyCertificate(
                min_poly=cert.min_poly,
                root_index=cert.root_index,
                degree=cert.degree,
                relations=cert.relations,
                independence_minor=cert.independence_minor,
                extra_relations=cert.extra_relations,
                padic=padic,
                ramification=ram,
                notes=tuple(cnotes),
            )
        )
    stages.append(
        StageRecord(
            name="certify",
            description="p-adic log rank filter and disc classification on"
            " every certificate",
            status="ok",
            payload={
                "passed": sum(1 for c in filtered if c.padic and c.padic.passed),
                "failed": sum(
                    1 for c in filtered if c.padic and not c.padic.passed
                ),
            },
        )
    )

    bound_payload = {}
    rb, rb_valid = ramification_bound(spec.genus, spec.boundary_degree, p)
    bound_payload["ramification_bound"] = {"value": rb, "valid": rb_valid}
    try:
        tb = torsion_image_bound(spec.genus, p)
        bound_payload["torsion_image_bound"] = {"value": tb, "valid": True}
    except PadicToriError as err:
        bound_payload["torsion_image_bound"] = {
            "error": f"{type(err).__name__}: {err}"
        }
    if anomalous_report is not None:
        bound_payload["anomalous_bound"] = {
            "value": anomalous_report.bound,
            "observed": anomalous_report.total,
        }
    stages.append(
        StageRecord(
            name="bounds",
            description="numeric bounds attached to the instance",
            status="ok",
            payload=bound_payload,
        )
    )
    if rb_valid is False:
        notes.append(
            f"ramification bound not valid at p={p}: requires p >= {rb}"
        )

    envelope = search_envelope(spec)
    notes.append(
        f"searched |n_i| <= {spec.bound_b}, torsion order <= {spec.bound_m};"
        f" every point of degree <= {envelope['guaranteed_degree']} in this"
        " box reaches the nomination stage"
    )
    return PipelineReport(
        spec=spec.to_dict(),
        stages=tuple(stages),
        certificates=tuple(filtered),
        envelope=envelope,
        notes=tuple(notes),
    )
