import warnings

from padictori.bipolys import (
    fb_from_int, fb_scale, fb_sub, fb_trim, fb_mul, fb_eval_y, zb_mul, zb_sub,
    zb_from_pairs, fb_pow,
)
from padictori.errors import (
    DegenerateDerivatives, NonradicalSystem, ZeroFunction, ZeroVector, ReducibleH,
)
from padictori.rings import PrimeField, QuotientField, peval, ptrim
from padictori.witt import (
    Witt2Polynomial, frobenius_defect, divides_on_curve,
    defect_derivative_criterion, euler_relation_check, dlog_independent,
    exponent_normalize, finiteness_verdict, anomalous_discs,
)

ok = 0

def check(name, cond):
    global ok
    assert cond, name
    ok += 1
    print("ok:", name)

# --- frobenius_defect examples ---
H = Witt2Polynomial.from_integers(3, {(1, 0): 1})  # H = x
check("G(x) = 0", frobenius_defect(H) == {})

F3 = PrimeField(3)
H = Witt2Polynomial.from_integers(3, {(1, 0): 1, (0, 1): 1, (0, 0): -1})
G = frobenius_defect(H)
# expected -(x^2 y + x y^2 - x^2 - y^2 + x + y - 2 x y) mod 3
exp = fb_from_int(F3, {(2, 1): -1, (1, 2): -1, (2, 0): 1, (0, 2): 1,
                       (1, 0): -1, (0, 1): -1, (1, 1): 2})
check("G(x+y-1) at p=3", G == exp)

# univariate binomial oracle: H = x - 1 at p = 5
H5 = Witt2Polynomial.from_integers(5, {(1, 0): 1, (0, 0): -1})
G5 = frobenius_defect(H5)
F5 = PrimeField(5)
from math import comb
oracle = {}
# (x^5 - 1 - (x-1)^5)/5 with integer coefficients
coeffs = [0] * 6
coeffs[5] += 1
coeffs[0] -= 1
for k in range(6):
    coeffs[k] -= comb(5, k) * (-1) ** (5 - k)
for k, c in enumerate(coeffs):
    assert c % 5 == 0
    if (c // 5) % 5:
        oracle[(k, 0)] = (c // 5) % 5
check("G(x-1) at p=5 binomial oracle", G5 == oracle)

# exact Witt congruence in-ring for random H over F_q, q in {3,5,7,9}
import random
rng = random.Random(7)
for q, p, f in [(3, 3, 1), (5, 5, 1), (7, 7, 1), (9, 3, 2)]:
    for _ in range(10):
        coeffs = {}
        for i in range(3):
            for j in range(3):
                if f == 1:
                    c = rng.randrange(p * p)
                else:
                    c = tuple(rng.randrange(p * p) for _ in range(f))
                coeffs[(i, j)] = c
        H = Witt2Polynomial.from_integers(p, coeffs, f_deg=f)
        _, h = H.reduction()
        if not h:
            continue
        G = frobenius_defect(H)
        R = H.ring
        # lift G and check p * lift(G) == H^sigma(x^p, y^p) - H^p in R
        lift = {k: R.lift_residue(c if f > 1 else c) for k, c in G.items()}
        lhs = fb_scale(R, lift, R.from_int(p))
        from padictori.bipolys import fb_subs_powers, fb_map_coeffs
        rhs = fb_sub(R, fb_subs_powers(fb_map_coeffs(H.coeffs, R.frobenius), p, p),
                     fb_pow(R, H.coeffs, p))
        check_eq = fb_trim(R, fb_sub(R, lhs, rhs)) == {}
        assert check_eq, (q, coeffs)
print("ok: witt congruence 40 random cases")
ok += 1

# --- divides_on_curve: line remainder oracle ---
h3 = fb_from_int(F3, {(1, 0): 1, (0, 1): 1, (0, 0): -1})
G = frobenius_defect(Witt2Polynomial.from_integers(3, {(1, 0): 1, (0, 1): 1, (0, 0): -1}))
div, rem = divides_on_curve(F3, G, h3)
check("h does not divide G on the line", div is False)
# remainder should be proportional to x - x^2 over F_3
target = fb_from_int(F3, {(1, 0): 1, (2, 0): -1})
found = None
for s in range(1, 3):
    if fb_trim(F3, fb_sub(F3, rem, fb_scale(F3, target, F3.from_int(s)))) == {}:
        found = s
check("remainder proportional to x - x^2", found is not None)

# sanity: divisible case gives (True, {})
prod = fb_mul(F3, h3, fb_from_int(F3, {(1, 1): 2, (0, 0): 1}))
div2, rem2 = divides_on_curve(F3, prod, h3)
check("multiple of h divides", div2 is True and rem2 == {})

# reducible h warns (content factor x, certifiable by the probe)
hred = fb_from_int(F3, {(1, 1): 1, (1, 0): 1})  # x(y + 1)
with warnings.catch_warnings(record=True) as w:
    warnings.simplefilter("always")
    divides_on_curve(F3, G, hred)
    check("reducible h warns", len(w) == 1)
try:
    divides_on_curve(F3, G, hred, strict=True)
    raise SystemExit("no ReducibleH")
except ReducibleH:
    check("strict raises ReducibleH", True)

# --- derivative criterion ---
check("criterion false on the line p=3", defect_derivative_criterion(F3, h3) is False)
hdiag = fb_from_int(F3, {(1, 0): 1, (0, 1): -1})  # x - y
check("criterion true on x=y", defect_derivative_criterion(F3, hdiag) is True)
try:
    defect_derivative_criterion(F3, fb_from_int(F3, {(1, 0): 1}))
    raise SystemExit("no DegenerateDerivatives")
except DegenerateDerivatives:
    check("h=x degenerates", True)

# --- euler relation ---
hxy = fb_from_int(F3, {(1, 1): 1, (0, 0): -1})  # xy - 1
check("xy-1 euler (-1,0)", euler_relation_check(F3, hxy) == (F3.from_int(-1), F3.zero()))
check("line euler None", euler_relation_check(F3, h3) is None)
check("h=x euler (0,-1)", euler_relation_check(F3, fb_from_int(F3, {(1, 0): 1}))
      == (F3.zero(), F3.from_int(-1)))

# --- dlog independence ---
F7 = PrimeField(7)
h7 = fb_from_int(F7, {(1, 0): 1, (0, 1): 1, (0, 0): -1})
fx = fb_from_int(F7, {(1, 0): 1})
fy = fb_from_int(F7, {(0, 1): 1})
fx2 = fb_from_int(F7, {(2, 0): 1})
check("x vs y independent on line", dlog_independent(F7, h7, fx, fy) is True)
check("x vs x^2 dependent", dlog_independent(F7, h7, fx, fx2) is False)
check("f vs f dependent", dlog_independent(F7, h7, fx, fx) is False)
# c * f^m for f = x + 2, m = 3, c = 5
fbase = fb_from_int(F7, {(1, 0): 1, (0, 0): 2})
fpow = fb_scale(F7, fb_pow(F7, fbase, 3), F7.from_int(5))
check("f vs c f^m dependent", dlog_independent(F7, h7, fbase, fpow) is False)
# rational function pair: f = x/(1-x) vs g = y on the line -> independent
frac = (fx, fb_from_int(F7, {(0, 0): 1, (1, 0): -1}))
check("rational f vs y independent", dlog_independent(F7, h7, frac, fy) is True)
# nonconstant lc_y: h with lc_y = x, f vs f^2 must stay dependent
hlc = fb_from_int(F7, {(1, 2): 1, (1, 0): 1, (0, 1): 1, (0, 0): 3})  # x y^2 + x + y + 3
f1 = fb_from_int(F7, {(1, 0): 1, (0, 1): 1})  # x + y
check("nonconstant lc dependent pair", dlog_independent(F7, hlc, f1, fb_pow(F7, f1, 2)) is False)
check("nonconstant lc independent pair", dlog_independent(F7, hlc, fx, fy) is True)

# --- exponent_normalize ---
check("(p+1,0,0)", exponent_normalize((6, 0, 0), 5) == (1, 0, 0))
check("(2,4,6) at 5", exponent_normalize((2, 4, 6), 5) == (1, 2, 3))
check("(p,p^2,0)", exponent_normalize((5, 25, 0), 5) == (1, 0, 0))
check("negatives", exponent_normalize((-1, 3), 5) == (1, 2))  # (4,3) scaled by 4^{-1}=4
try:
    exponent_normalize((0, 0, 0), 5)
    raise SystemExit("no ZeroVector")
except ZeroVector:
    check("zero vector raises", True)

# --- finiteness_verdict ---
Hline = Witt2Polynomial.from_integers(3, {(1, 0): 1, (0, 1): 1, (0, 0): -1})
v = finiteness_verdict(Hline)
check("line verdict FINITE", v.verdict == "FINITE" and v.finite and not v.divides)

# coset curve xy = c with c a Teichmueller unit (c = 1 works: xy - 1)
Hcoset = Witt2Polynomial.from_integers(3, {(1, 1): 1, (0, 0): -1})
v2 = finiteness_verdict(Hcoset)
check("xy=1 verdict DEGENERATE", v2.verdict == "DEGENERATE" and v2.divides)
check("xy=1 euler found", v2.euler == (F3.from_int(-1), F3.zero()))
check("xy=1 derivative identity holds", v2.derivative_identity is True)

# --- anomalous_discs: the line over F_5 ---
F5 = PrimeField(5)
h5 = fb_from_int(F5, {(1, 0): 1, (0, 1): 1, (0, 0): -1})
f_line = [fb_from_int(F5, {(1, 0): 1}), fb_from_int(F5, {(0, 0): 1, (1, 0): -1})]
rep = anomalous_discs(F5, h5, f_line, genus=0, boundary_degree=4)
check("line total 3", rep.total == 3)
check("line bound 6", rep.bound == 6)
xs = set()
for c in rep.classes:
    for r in c.points:
        assert len(r.x_minpoly) == 2 and r.y_value is not None
        xs.add(int(F5.neg(r.x_minpoly[0])))
check("line xs {2,3,4}", xs == {2, 3, 4})
check("6 classes", len(rep.classes) == 6)
check("total <= bound", rep.total <= rep.bound)

# identical functions -> NonradicalSystem
try:
    anomalous_discs(F5, h5, [f_line[0], f_line[0]], genus=0, boundary_degree=4)
    raise SystemExit("no NonradicalSystem")
except NonradicalSystem:
    check("identical f_i raises", True)

# quadratic x-root path: circle over F_3 with f = (x, y)
h_circ = fb_from_int(F3, {(2, 0): 1, (0, 2): 1, (0, 0): -1})
rep2 = anomalous_discs(F3, h_circ, [fb_from_int(F3, {(1, 0): 1}),
                                    fb_from_int(F3, {(0, 1): 1})],
                       genus=0, boundary_degree=8)
print("circle report: total", rep2.total, "bound", rep2.bound, "skipped", rep2.skipped)
degs = sorted({len(r.x_minpoly) - 1 for c in rep2.classes for r in c.points})
print("x-minpoly degrees seen:", degs)

# brute-force oracle for the circle over F_3 and F_9: count points with
# D_cls = 0, h = 0, x*y != 0, per class, deduped
F9 = QuotientField(F3, [1, 0, 1])  # t^2 + 1
brute = set()
per_class = {}
for cls in [(0, 1), (1, 0), (1, 1), (1, 2)]:
    pts = set()
    for E in (F3, F9):
        for x in E.elements():
            for y in E.elements():
                if E.is_zero(x) or E.is_zero(y):
                    continue
                hval = E.add(E.add(E.mul(x, x), E.mul(y, y)), E.from_int(-1))
                if not E.is_zero(hval):
                    continue
                # D = n1 * A1 * P2 + n2 * A2 * P1 with A1 = h_y = 2y, P1 = x,
                # A2 = -h_x = -2x, P2 = y
                d = E.add(
                    E.mul(E.from_int(2 * cls[0]), E.mul(E.mul(y, y), E.one())),
                    E.mul(E.from_int(-2 * cls[1]), E.mul(E.mul(x, x), E.one())),
                )
                if E.is_zero(d):
                    key = (x, y) if E is F9 else (F9.from_base(x), F9.from_base(y))
                    pts.add(key)
    per_class[cls] = len(pts)
    brute |= pts
print("brute per class:", per_class, "total:", len(brute))
check("circle report matches brute force", rep2.total == len(brute))
for c in rep2.classes:
    npts = sum(len(r.x_minpoly) - 1 if r.y_value is not None
               else (len(r.x_minpoly) - 1) for r in c.points) and None
# per-class counts: number of records per class should match per-point count
for c in rep2.classes:
    check(f"class {c.exponents} count", len(c.points) == per_class[tuple(c.exponents)])

print(f"\nall witt smoke checks passed ({ok})")
