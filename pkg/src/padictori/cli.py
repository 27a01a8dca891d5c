"""Command line front end.

Every subcommand reads exact integer or rational data, runs one library
entry point, and writes a report either as JSON or as short text lines.
Nothing here rounds: numbers in reports are integers, exact fractions
rendered as strings, or valuations.
"""

import argparse
import json
import sys
from fractions import Fraction

from .curves import PlaneCurve, RationalFunction
from .errors import PadicToriError
from .hunt import (
    TorusCurveSpec,
    classify_ramification,
    padic_rank_filter,
    run_pipeline,
    search_envelope,
    _pair_curve_polynomial,
    relation_solve,
)
from .padics import PadicContext
from .rings import PrimeField
from .series import ValuedSeries, series_newton_polygon
from .slopes import (
    log_series_on_disc,
    ramification_bound,
    torsion_image_bound,
    verify_slopes,
)
from .witt import Witt2Polynomial, anomalous_discs, finiteness_verdict


# ---------------------------------------------------------------------------
# encoding helpers
# ---------------------------------------------------------------------------


def _frac(x) -> str:
    f = Fraction(x)
    return str(f)


def _polygon_dict(poly) -> dict:
    return {
        "vertices": [[i, _frac(v)] for i, v in poly.vertices],
        "provisional_vertices": [
            [i, _frac(v)] for i, v in poly.provisional_vertices
        ],
        "slopes": [[_frac(s), n] for s, n in poly.all_slopes()],
        "negative_slopes": [[_frac(s), n] for s, n in poly.negative_slopes()],
        "last_index": poly.last_index,
    }


def _polygon_lines(poly) -> list:
    lines = ["vertices: " + " ".join(f"({i},{_frac(v)})" for i, v in poly.vertices)]
    if poly.provisional_vertices:
        lines.append(
            "provisional: "
            + " ".join(f"({i},{_frac(v)})" for i, v in poly.provisional_vertices)
        )
    lines.append(
        "slopes: "
        + " ".join(f"{_frac(s)}x{n}" for s, n in poly.all_slopes())
    )
    return lines


def _scalar_dict(s) -> dict:
    if s.is_exact_zero:
        return {"zero": True}
    if s.exhausted:
        return {"valuation_at_least": s.vbound}
    return {"valuation": s.v, "unit": list(s.unit), "unit_precision": s.rel}


def _emit(args, data: dict, text_lines) -> None:
    if args.format == "json":
        out = json.dumps(data, indent=2, sort_keys=True)
    else:
        out = "\n".join(text_lines)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        print(out)


# ---------------------------------------------------------------------------
# input parsing
# ---------------------------------------------------------------------------


def _parse_coeff(c):
    if isinstance(c, str):
        return Fraction(c)
    if isinstance(c, (list, tuple)) and len(c) == 2:
        return Fraction(int(c[0]), int(c[1]))
    return Fraction(c)


def _load_series(path, order):
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    for key in ("prime", "coefficients"):
        if key not in data:
            raise SystemExit(f"series file is missing {key!r}")
    coeffs = [_parse_coeff(c) for c in data["coefficients"]]
    if order is not None:
        coeffs = coeffs[: order + 1]
    return ValuedSeries(int(data["prime"]), coeffs)


def _residue_int(text: str, p: int) -> int:
    """A disc coordinate given as an integer or exact fraction, reduced
    mod p; the denominator must be a unit."""
    f = Fraction(text)
    if f.denominator % p == 0:
        raise SystemExit(f"coordinate {text} is not p-integral at p={p}")
    return f.numerator * pow(f.denominator, -1, p) % p


def _disc_setup(spec: TorusCurveSpec, args):
    """(curve, fn, x0, y0, param) for the log-disc and verify-slopes
    commands. Rational models ride on the vertical-free chart y = 0 with
    the coordinate functions pulled back along x = t."""
    idx = args.fn - 1
    coords = args.point.split(",")
    if spec.plane is not None:
        if len(coords) != 2:
            raise SystemExit("plane models need --point X,Y")
        h, fns = spec.plane
        curve = PlaneCurve(dict(h))
        fn = RationalFunction(dict(fns[idx]), {(0, 0): 1})
        x0 = (_residue_int(coords[0], spec.prime),)
        y0 = (_residue_int(coords[1], spec.prime),)
        return curve, fn, x0, y0, args.param
    if len(coords) != 1:
        raise SystemExit("rational models take a single --point value")
    num, den = spec.function_pairs()[idx]
    curve = PlaneCurve({(0, 1): 1})
    fn = RationalFunction(
        {(i, 0): c for i, c in enumerate(num) if c},
        {(i, 0): c for i, c in enumerate(den) if c},
    )
    x0 = (_residue_int(coords[0], spec.prime),)
    return curve, fn, x0, (0,), "x"


def _reduction_charts(spec: TorusCurveSpec):
    """The mod-p data used by the finiteness and anomalous commands: the
    diagonal chart curve and the coordinate functions in x alone."""
    p = spec.prime
    h_chart = {(0, 1): 1, (1, 0): p - 1}
    f_charts = []
    for num, den in spec.function_pairs():
        fn = {(i, 0): c % p for i, c in enumerate(num) if c % p}
        fd = {(i, 0): c % p for i, c in enumerate(den) if c % p}
        if not fn or not fd:
            raise SystemExit("a coordinate function degenerates mod p")
        f_charts.append((fn, fd))
    return h_chart, f_charts


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_np(args):
    s = _load_series(args.series, args.order)
    poly = series_newton_polygon(s)
    data = {"prime": s.p, "trunc": s.trunc}
    data.update(_polygon_dict(poly))
    lines = [f"newton polygon at p={s.p}, series known to T^{s.trunc}"]
    lines += _polygon_lines(poly)
    _emit(args, data, lines)


def _cmd_log_disc(args):
    spec = TorusCurveSpec.from_file(args.spec)
    order = args.order if args.order is not None else 4 * spec.prime
    curve, fn, x0, y0, param = _disc_setup(spec, args)
    ctx = PadicContext(spec.prime, spec.precision)
    series = log_series_on_disc(curve, fn, ctx, x0, y0, order, param=param)
    poly = series.newton_polygon()
    data = {
        "prime": spec.prime,
        "precision": spec.precision,
        "order": order,
        "coefficients": [_scalar_dict(c) for c in series.coeffs],
    }
    data["polygon"] = _polygon_dict(poly)
    lines = [f"log f{args.fn} on the disc at {args.point}, p={spec.prime}"]
    for i, c in enumerate(series.coeffs):
        d = _scalar_dict(c)
        if "zero" in d:
            lines.append(f"  T^{i}: 0")
        elif "valuation_at_least" in d:
            lines.append(f"  T^{i}: val >= {d['valuation_at_least']}")
        else:
            lines.append(
                f"  T^{i}: val {d['valuation']}, unit {d['unit']}"
                f" mod p^{d['unit_precision']}"
            )
    lines += _polygon_lines(poly)
    _emit(args, data, lines)


def _cmd_verify_slopes(args):
    spec = TorusCurveSpec.from_file(args.spec)
    order = args.order if args.order is not None else 4 * spec.prime
    curve, fn, x0, y0, param = _disc_setup(spec, args)
    ctx = PadicContext(spec.prime, spec.precision)
    rep = verify_slopes(curve, fn, ctx, x0, y0, order, param=param)
    data = rep.to_dict()
    lines = [
        f"slope check for f{args.fn} at {args.point}: {rep.verdict}",
        f"k={rep.k}, constant-term valuation {rep.v}",
    ]
    lines += _polygon_lines(rep.computed)
    if rep.details:
        lines.append(rep.details)
    _emit(args, data, lines)


def _cmd_finiteness(args):
    spec = TorusCurveSpec.from_file(args.spec)
    fn_pairs = spec.function_pairs()
    data = {}
    lines = []
    for i in range(3):
        for j in range(i + 1, 3):
            label = f"(f{i + 1}, f{j + 1})"
            hp = _pair_curve_polynomial(fn_pairs[i], fn_pairs[j])
            W = Witt2Polynomial.from_integers(spec.prime, hp)
            verdict = finiteness_verdict(W)
            data[label] = verdict.to_dict()
            lines.append(f"{label}: {verdict.verdict}")
            for note in verdict.notes:
                lines.append(f"    {note}")
    _emit(args, data, lines)


def _cmd_anomalous(args):
    spec = TorusCurveSpec.from_file(args.spec)
    h_chart, f_charts = _reduction_charts(spec)
    F = PrimeField(spec.prime)
    rep = anomalous_discs(F, h_chart, f_charts, spec.genus, spec.boundary_degree)
    data = rep.to_dict()
    lines = [
        f"anomalous residue discs at p={rep.p}: {rep.total}"
        f" (bound {rep.bound})"
    ]
    for cls in rep.classes:
        pts = ", ".join(str(list(r.x_minpoly)) for r in cls.points) or "none"
        lines.append(f"  class {list(cls.exponents)}: {pts}")
    _emit(args, data, lines)


def _cmd_hunt(args):
    spec = TorusCurveSpec.from_file(args.spec)
    certs = relation_solve(spec)
    env = search_envelope(spec)
    data = {
        "spec": spec.to_dict(),
        "certificates": [c.to_dict() for c in certs],
        "envelope": env,
    }
    lines = [f"certified points in the box B={spec.bound_b}, M={spec.bound_m}:"]
    for c in certs:
        (n, on), (m, om) = c.relations
        lines.append(
            f"  {c.point_text()}: n={list(n)} (order {on}),"
            f" m={list(m)} (order {om})"
        )
    if not certs:
        lines.append("  none (the box may simply be too small)")
    lines.append(f"screen guarantee: degree <= {env['guaranteed_degree']}")
    _emit(args, data, lines)


def _cmd_bounds(args):
    rb, valid = ramification_bound(args.g, args.d, args.p)
    data = {"ramification_bound": {"value": rb, "valid": valid}}
    lines = [f"ramification bound 2g+d = {rb} (valid at p={args.p}: {valid})"]
    try:
        tb = torsion_image_bound(args.g, args.p)
        data["torsion_image_bound"] = {"value": tb}
        lines.append(f"torsion image bound = {tb}")
    except PadicToriError as err:
        data["torsion_image_bound"] = {"error": str(err)}
        lines.append(f"torsion image bound: {err}")
    ab = (args.p**3 - 1) // (args.p - 1) * (2 * args.g - 2 + args.d - 1)
    data["anomalous_disc_bound"] = {"value": ab}
    lines.append(f"anomalous disc bound (n=3) = {ab}")
    _emit(args, data, lines)


def _cmd_pipeline(args):
    spec = TorusCurveSpec.from_file(args.spec)
    rep = run_pipeline(spec)
    _emit(args, rep.to_dict(), [rep.render_text()])


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padictori",
        description="exact p-adic tools for curve points in the torus"
        " lying in small-rank subgroups",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report to this path")
    common.add_argument(
        "--format", choices=("json", "text"), default="text",
        help="report format (default text)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_np = sub.add_parser(
        "np", parents=[common],
        help="Newton polygon of a series file",
    )
    p_np.add_argument("series", help="JSON file with prime and coefficients")
    p_np.add_argument("--order", type=int, help="truncate the series first")
    p_np.set_defaults(func=_cmd_np)

    p_ld = sub.add_parser(
        "log-disc", parents=[common],
        help="log series of a coordinate on a residue disc, with polygon",
    )
    p_ld.add_argument("spec", help="curve spec file")
    p_ld.add_argument("--point", required=True, help="disc center, X or X,Y")
    p_ld.add_argument("--fn", type=int, choices=(1, 2, 3), default=1)
    p_ld.add_argument("--order", type=int, help="series truncation order")
    p_ld.add_argument("--param", choices=("x", "y"), default="x")
    p_ld.set_defaults(func=_cmd_log_disc)

    p_vs = sub.add_parser(
        "verify-slopes", parents=[common],
        help="compare the disc polygon against the predicted slopes",
    )
    p_vs.add_argument("spec", help="curve spec file")
    p_vs.add_argument("--point", required=True, help="disc center, X or X,Y")
    p_vs.add_argument("--fn", type=int, choices=(1, 2, 3), default=1)
    p_vs.add_argument("--order", type=int, help="series truncation order")
    p_vs.add_argument("--param", choices=("x", "y"), default="x")
    p_vs.set_defaults(func=_cmd_verify_slopes)

    p_fin = sub.add_parser(
        "finiteness", parents=[common],
        help="defect-divisibility verdict for each coordinate pair",
    )
    p_fin.add_argument("spec", help="curve spec file")
    p_fin.set_defaults(func=_cmd_finiteness)

    p_an = sub.add_parser(
        "anomalous", parents=[common],
        help="anomalous residue discs per exponent class",
    )
    p_an.add_argument("spec", help="curve spec file")
    p_an.set_defaults(func=_cmd_anomalous)

    p_hunt = sub.add_parser(
        "hunt", parents=[common],
        help="search the box and certify every point found",
    )
    p_hunt.add_argument("spec", help="curve spec file")
    p_hunt.set_defaults(func=_cmd_hunt)

    p_b = sub.add_parser(
        "bounds", parents=[common],
        help="numeric bounds from genus, boundary degree, and prime",
    )
    p_b.add_argument("g", type=int)
    p_b.add_argument("d", type=int)
    p_b.add_argument("p", type=int)
    p_b.set_defaults(func=_cmd_bounds)

    p_pipe = sub.add_parser(
        "pipeline", parents=[common],
        help="run every stage on a spec and emit the full report",
    )
    p_pipe.add_argument("spec", help="curve spec file")
    p_pipe.set_defaults(func=_cmd_pipeline)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except PadicToriError as err:
        print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
