"""Bivariate polynomials over Z and over finite fields.

Representation is a dict {(i, j): coefficient} with zero entries removed;
i is the x-degree, j the y-degree. Field-coefficient routines take the
field object explicitly (same protocol as rings.py). Resultants are
computed fraction-free (Bareiss) so every division is exact in the
coefficient domain.
"""

from __future__ import annotations

from .errors import DivisionByZero, ZeroFunction
from .qpolys import zdiv_exact, zmul, zsub, ztrim
from .rings import pdivmod, pmul, psub, ptrim

# ---------------------------------------------------------------------------
# integer-coefficient bivariates
# ---------------------------------------------------------------------------


def zb_trim(d: dict) -> dict:
    return {k: v for k, v in d.items() if v != 0}


def zb_from_pairs(pairs) -> dict:
    """Build from [((i, j), c), ...]."""
    out: dict = {}
    for (i, j), c in pairs:
        key = (int(i), int(j))
        out[key] = out.get(key, 0) + int(c)
    return zb_trim(out)


def zb_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return zb_trim(out)


def zb_neg(a: dict) -> dict:
    return {k: -v for k, v in a.items()}


def zb_sub(a: dict, b: dict) -> dict:
    return zb_add(a, zb_neg(b))


def zb_scale(a: dict, s: int) -> dict:
    if s == 0:
        return {}
    return {k: v * s for k, v in a.items()}


def zb_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            k = (i1 + i2, j1 + j2)
            out[k] = out.get(k, 0) + c1 * c2
    return zb_trim(out)


def zb_degx(a: dict) -> int:
    return max((i for i, _ in a), default=-1)


def zb_degy(a: dict) -> int:
    return max((j for _, j in a), default=-1)


def zb_deriv_x(a: dict) -> dict:
    return zb_trim({(i - 1, j): i * c for (i, j), c in a.items() if i > 0})


def zb_deriv_y(a: dict) -> dict:
    return zb_trim({(i, j - 1): j * c for (i, j), c in a.items() if j > 0})


def zb_eval(a: dict, x, y):
    acc = 0
    for (i, j), c in a.items():
        acc = acc + c * x**i * y**j
    return acc


def zb_to_ypolys(a: dict) -> list:
    """As a polynomial in y with integer x-polynomial coefficients
    (little-endian in both variables)."""
    dy = zb_degy(a)
    out = [[] for _ in range(dy + 1)]
    for (i, j), c in a.items():
        row = out[j]
        while len(row) <= i:
            row.append(0)
        row[i] += c
    return [ztrim(row) for row in out]


def zb_from_ypolys(rows) -> dict:
    out: dict = {}
    for j, row in enumerate(rows):
        for i, c in enumerate(row):
            if c:
                out[(i, j)] = out.get((i, j), 0) + c
    return zb_trim(out)


def zb_div_exact(a: dict, b: dict) -> dict:
    """a / b when the division is exact in Z[x, y]; works as y-polynomials
    with exact integer x-polynomial division at each step."""
    if not b:
        raise DivisionByZero("bivariate division by zero")
    if not a:
        return {}
    ra, rb = zb_to_ypolys(a), zb_to_ypolys(b)
    lead = rb[-1]
    out_rows = [[] for _ in range(len(ra) - len(rb) + 1)]
    cur = [list(r) for r in ra]
    while cur and len(cur) >= len(rb):
        top = cur[-1]
        if not top:
            cur.pop()
            continue
        q = zdiv_exact(top, lead)
        d = len(cur) - len(rb)
        out_rows[d] = q
        for j in range(len(rb)):
            cur[d + j] = zsub(cur[d + j], zmul(q, rb[j]))
        if ztrim(cur[-1]):
            raise DivisionByZero("bivariate division not exact")
        cur.pop()
    for row in cur:
        if ztrim(row):
            raise DivisionByZero("bivariate division not exact")
    return zb_from_ypolys(out_rows)


# ---------------------------------------------------------------------------
# field-coefficient bivariates
# ---------------------------------------------------------------------------


def fb_trim(F, d: dict) -> dict:
    return {k: v for k, v in d.items() if not F.is_zero(v)}


def fb_from_int(F, a: dict) -> dict:
    return fb_trim(F, {k: F.from_int(c) for k, c in a.items()})


def fb_add(F, a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = F.add(out[k], v) if k in out else v
    return fb_trim(F, out)


def fb_neg(F, a: dict) -> dict:
    return {k: F.neg(v) for k, v in a.items()}


def fb_sub(F, a: dict, b: dict) -> dict:
    return fb_add(F, a, fb_neg(F, b))


def fb_scale(F, a: dict, s) -> dict:
    return fb_trim(F, {k: F.mul(v, s) for k, v in a.items()})


def fb_mul(F, a: dict, b: dict) -> dict:
    out: dict = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            k = (i1 + i2, j1 + j2)
            t = F.mul(c1, c2)
            out[k] = F.add(out[k], t) if k in out else t
    return fb_trim(F, out)


def fb_pow(F, a: dict, n: int) -> dict:
    result = {(0, 0): F.one()}
    while n > 0:
        if n & 1:
            result = fb_mul(F, result, a)
        a = fb_mul(F, a, a)
        n >>= 1
    return result


def fb_degx(a: dict) -> int:
    return max((i for i, _ in a), default=-1)


def fb_degy(a: dict) -> int:
    return max((j for _, j in a), default=-1)


def fb_deriv_x(F, a: dict) -> dict:
    return fb_trim(
        F, {(i - 1, j): F.mul(c, F.from_int(i)) for (i, j), c in a.items() if i > 0}
    )


def fb_deriv_y(F, a: dict) -> dict:
    return fb_trim(
        F, {(i, j - 1): F.mul(c, F.from_int(j)) for (i, j), c in a.items() if j > 0}
    )


def fb_eval(F, a: dict, x, y):
    acc = F.zero()
    for (i, j), c in a.items():
        term = F.mul(c, F.mul(F.pow_(x, i), F.pow_(y, j)))
        acc = F.add(acc, term)
    return acc


def fb_subs_powers(a: dict, px: int, py: int) -> dict:
    """Substitute x -> x^px, y -> y^py (coefficients unchanged)."""
    return {(i * px, j * py): c for (i, j), c in a.items()}


def fb_map_coeffs(a: dict, fn) -> dict:
    return {k: fn(v) for k, v in a.items()}


def fb_to_ypolys(F, a: dict) -> list:
    dy = fb_degy(a)
    out = [[] for _ in range(dy + 1)]
    for (i, j), c in a.items():
        row = out[j]
        while len(row) <= i:
            row.append(F.zero())
        row[i] = F.add(row[i], c) if not F.is_zero(row[i]) else c
    return [ptrim(F, row) for row in out]


def fb_from_ypolys(F, rows) -> dict:
    out: dict = {}
    for j, row in enumerate(rows):
        for i, c in enumerate(row):
            if not F.is_zero(c):
                out[(i, j)] = c
    return out


def fb_eval_y(F, a: dict, y):
    """Substitute a field value for y; returns an F[x] list."""
    rows = fb_to_ypolys(F, a)
    acc: list = []
    for row in reversed(rows):
        acc = pmul(F, acc, [y]) if acc else []
        acc = _padd_list(F, acc, row)
    return acc


def _padd_list(F, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else F.zero()
        y = b[i] if i < len(b) else F.zero()
        out.append(F.add(x, y))
    return ptrim(F, out)


def fb_prem_y_steps(F, g: dict, h: dict):
    """Pseudo-remainder of g by h as polynomials in y over F[x].

    Returns (remainder rows, steps) where the remainder equals
    lc_y(h)^steps * g reduced mod h. An empty row list means that product is
    divisible by h, which for h irreducible with positive y-degree is
    equivalent to h | g."""
    rg, rh = fb_to_ypolys(F, g), fb_to_ypolys(F, h)
    if not rh:
        raise DivisionByZero("pseudo-division by the zero polynomial")
    dh = len(rh) - 1
    lead = rh[-1]
    cur = [list(r) for r in rg]
    steps = 0
    while len(cur) - 1 >= dh:
        if not cur[-1]:
            cur.pop()
            continue
        top = cur[-1]
        d = len(cur) - 1 - dh
        # cur <- lead * cur - top * y^d * h
        cur = [pmul(F, lead, row) for row in cur]
        steps += 1
        for j in range(dh + 1):
            cur[d + j] = psub(F, cur[d + j], pmul(F, top, rh[j]))
        cur.pop()
        while cur and not cur[-1]:
            cur.pop()
    return [ptrim(F, r) for r in cur], steps


def fb_prem_y(F, g: dict, h: dict):
    """Pseudo-remainder rows of g by h; see fb_prem_y_steps."""
    return fb_prem_y_steps(F, g, h)[0]


def fb_divides_on_curve(F, h: dict, g: dict) -> bool:
    """Whether h divides g in F[x, y], for h irreducible. Positive y-degree
    h uses pseudo-division; a y-free h must divide every y-coefficient."""
    if not g:
        return True
    if fb_degy(h) == 0:
        hx = fb_to_ypolys(F, h)[0]
        return all(
            not pdivmod(F, row, _monicize(F, hx))[1] for row in fb_to_ypolys(F, g)
        )
    rem = fb_prem_y(F, g, h)
    return all(not r for r in rem)


def _monicize(F, a):
    if not a:
        raise DivisionByZero("zero divisor polynomial")
    inv = F.inv(a[-1])
    return [F.mul(c, inv) for c in a]


# ---------------------------------------------------------------------------
# fraction-free determinants and resultants
# ---------------------------------------------------------------------------


def bareiss_det(mat, ops):
    """Fraction-free determinant. ops supplies zero/one/is_zero/mul/sub/
    divx (exact division) over an integral domain."""
    n = len(mat)
    if n == 0:
        return ops["one"]
    M = [list(row) for row in mat]
    prev = ops["one"]
    sign = 1
    for k in range(n - 1):
        if ops["is_zero"](M[k][k]):
            for r in range(k + 1, n):
                if not ops["is_zero"](M[r][k]):
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return ops["zero"]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = ops["sub"](
                    ops["mul"](M[i][j], M[k][k]), ops["mul"](M[i][k], M[k][j])
                )
                M[i][j] = ops["divx"](num, prev)
            M[i][k] = ops["zero"]
        prev = M[k][k]
    det = M[n - 1][n - 1]
    if sign == -1:
        det = ops["sub"](ops["zero"], det)
    return det


def _fx_ops(F):
    def divx(a, b):
        if b == [F.one()]:
            return a
        q, r = pdivmod(F, a, b)
        if r:
            raise DivisionByZero("inexact division in Bareiss elimination")
        return q

    return {
        "zero": [],
        "one": [F.one()],
        "is_zero": lambda a: not a,
        "mul": lambda a, b: pmul(F, a, b),
        "sub": lambda a, b: psub(F, a, b),
        "divx": divx,
    }


def _zxy_ops():
    return {
        "zero": {},
        "one": {(0, 0): 1},
        "is_zero": lambda a: not a,
        "mul": zb_mul,
        "sub": zb_sub,
        "divx": zb_div_exact,
    }


def _sylvester(rows_a, rows_b, zero):
    """Sylvester matrix rows for polys given as coefficient lists (index =
    degree) over an arbitrary domain."""
    da, db = len(rows_a) - 1, len(rows_b) - 1
    n = da + db
    mat = []
    for r in range(db):
        row = [zero] * n
        for k, c in enumerate(rows_a):
            row[r + (da - k)] = c
        mat.append([row[i] for i in range(n)])
    for r in range(da):
        row = [zero] * n
        for k, c in enumerate(rows_b):
            row[r + (db - k)] = c
        mat.append([row[i] for i in range(n)])
    return mat


def fb_resultant_y(F, a: dict, b: dict):
    """Res_y(a, b) as an F[x] polynomial (list)."""
    ra = fb_to_ypolys(F, a)
    rb = fb_to_ypolys(F, b)
    if len(ra) - 1 < 0 or len(rb) - 1 < 0:
        raise ZeroFunction("resultant with the zero polynomial")
    if len(ra) == 1 and len(rb) == 1:
        raise ZeroFunction("both arguments are y-free")
    if len(ra) == 1:
        # a is y-free: the resultant is a raised to deg_y(b)
        out = [F.one()]
        for _ in range(len(rb) - 1):
            out = pmul(F, out, ra[0])
        return out
    if len(rb) == 1:
        out = [F.one()]
        for _ in range(len(ra) - 1):
            out = pmul(F, out, rb[0])
        return out
    mat = _sylvester(ra, rb, [])
    return bareiss_det(mat, _fx_ops(F))


def fb_resultant_x(F, a: dict, b: dict):
    """Res_x(a, b) as an F[y] polynomial (list)."""
    swap_a = {(j, i): c for (i, j), c in a.items()}
    swap_b = {(j, i): c for (i, j), c in b.items()}
    return fb_resultant_y(F, swap_a, swap_b)


def resultant_poly_t(rows_a, rows_b):
    """Res_t of two polynomials in t whose coefficients are Z[x, y]
    bivariates (rows indexed by t-degree)."""
    ra = [dict(r) for r in rows_a]
    rb = [dict(r) for r in rows_b]
    while ra and not ra[-1]:
        ra.pop()
    while rb and not rb[-1]:
        rb.pop()
    if not ra or not rb:
        raise ZeroFunction("resultant with the zero polynomial")
    if len(ra) == 1 and len(rb) == 1:
        raise ZeroFunction("both arguments are t-free")
    if len(ra) == 1:
        out = {(0, 0): 1}
        for _ in range(len(rb) - 1):
            out = zb_mul(out, ra[0])
        return out
    if len(rb) == 1:
        out = {(0, 0): 1}
        for _ in range(len(ra) - 1):
            out = zb_mul(out, rb[0])
        return out
    mat = _sylvester(ra, rb, {})
    return bareiss_det(mat, _zxy_ops())


# ---------------------------------------------------------------------------
# irreducibility probe
# ---------------------------------------------------------------------------


def fb_irreducible_probe(F, h: dict):
    """(verdict, certain): verdict True means h is certainly irreducible
    over F; (False, True) means certainly reducible; (True, False) means no
    specialization settled it, reported as a best-effort yes.

    Tries specializations of x (checking the resulting y-polynomial) and of
    y (checking the x-polynomial); a full-degree irreducible specialization
    certifies irreducibility once the content in the other variable is
    trivial."""
    from .rings import is_irreducible

    dy = fb_degy(h)
    dx = fb_degx(h)
    if dy == 0:
        row = fb_to_ypolys(F, h)[0]
        return is_irreducible(F, row), True
    if dx == 0:
        col = [F.zero()] * (dy + 1)
        for (_, j), c in h.items():
            col[j] = c
        return is_irreducible(F, ptrim(F, col)), True
    res = _probe_direction(F, h)
    if res is not None:
        return res
    res = _probe_direction(F, {(j, i): c for (i, j), c in h.items()})
    if res is not None:
        return res
    return True, False


def _probe_direction(F, h: dict):
    from .rings import is_irreducible, peval, pgcd

    dy = fb_degy(h)
    rows = fb_to_ypolys(F, h)
    content = []
    for row in rows:
        content = pgcd(F, content, row) if content else list(row)
        if len(content) == 1:
            break
    if len(content) > 1:
        return False, True  # nontrivial polynomial content
    tried = 0
    for c in F.elements():
        spec = ptrim(F, [peval(F, row, c) for row in rows])
        if len(spec) - 1 == dy and is_irreducible(F, spec):
            return True, True
        tried += 1
        if tried >= 64:
            break
    return None
