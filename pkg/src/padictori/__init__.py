"""Exact p-adic tools for locating and certifying curve points in the
three-dimensional torus that lie in rank-one algebraic subgroups.

The package is organized in layers. qpolys and rings hold exact rational
and finite-field polynomial arithmetic, padics the fixed-precision scalar
model, series and slopes the Newton-polygon machinery, curves the branch
expansions on plane curves, witt the Frobenius-lift divisibility tests,
and hunt the search-and-certify pipeline tying everything together. No
floating point enters any certified statement.
"""

from .errors import (
    BadReduction,
    BoundsTooSmall,
    DependentFunctions,
    DivisionByZero,
    DomainMismatch,
    HypothesisViolated,
    NonUnitValue,
    NotAUnit,
    NotPrime,
    PadicToriError,
    PrecisionExhausted,
    ZeroFunction,
    ZeroSeries,
    ZeroVector,
)
from .qpolys import (
    NumberField,
    cyclotomic_poly,
    euler_phi,
    rational_reconstruct,
)
from .rings import PrimeField, ResidueRing, factor_poly, is_prime
from .padics import (
    PadicContext,
    PadicScalar,
    frobenius,
    log_unit,
    scalar_from_rational,
    scalar_from_ring_element,
    teichmueller,
)
from .series import (
    NewtonPolygon,
    ValuedSeries,
    formal_exp,
    formal_log,
    log_one_plus_t,
    poly_newton_polygon,
    series_newton_polygon,
)
from .curves import (
    DiscPoint,
    PlaneCurve,
    RationalFunction,
    dlog_numerator,
    hensel_branch,
    ord_at,
)
from .slopes import (
    PadicSeries,
    SlopeReport,
    boundary_projections,
    log_series_on_disc,
    pair_log_minor,
    predict_slopes,
    ramification_bound,
    torsion_image_bound,
    verify_slopes,
)
from .witt import (
    AnomalousReport,
    FinitenessVerdict,
    Witt2Polynomial,
    anomalous_discs,
    dlog_independent,
    exponent_normalize,
    finiteness_verdict,
    frobenius_defect,
)
from .hunt import (
    FilterVerdict,
    PipelineReport,
    RamificationReport,
    StageRecord,
    TorusCurveSpec,
    UnlikelyCertificate,
    canonical_exponents,
    classify_ramification,
    padic_rank_filter,
    relation_solve,
    run_pipeline,
    search_envelope,
)

__version__ = "0.1.0"

__all__ = [
    "AnomalousReport",
    "BadReduction",
    "BoundsTooSmall",
    "DependentFunctions",
    "DiscPoint",
    "DivisionByZero",
    "DomainMismatch",
    "FilterVerdict",
    "FinitenessVerdict",
    "HypothesisViolated",
    "NewtonPolygon",
    "NonUnitValue",
    "NotAUnit",
    "NotPrime",
    "NumberField",
    "PadicContext",
    "PadicScalar",
    "PadicSeries",
    "PadicToriError",
    "PipelineReport",
    "PlaneCurve",
    "PrecisionExhausted",
    "PrimeField",
    "RamificationReport",
    "RationalFunction",
    "ResidueRing",
    "SlopeReport",
    "StageRecord",
    "TorusCurveSpec",
    "UnlikelyCertificate",
    "ValuedSeries",
    "Witt2Polynomial",
    "ZeroFunction",
    "ZeroSeries",
    "ZeroVector",
    "anomalous_discs",
    "boundary_projections",
    "canonical_exponents",
    "classify_ramification",
    "cyclotomic_poly",
    "dlog_independent",
    "dlog_numerator",
    "euler_phi",
    "exponent_normalize",
    "factor_poly",
    "finiteness_verdict",
    "formal_exp",
    "formal_log",
    "frobenius_defect",
    "frobenius",
    "hensel_branch",
    "is_prime",
    "log_one_plus_t",
    "log_series_on_disc",
    "log_unit",
    "ord_at",
    "padic_rank_filter",
    "pair_log_minor",
    "poly_newton_polygon",
    "predict_slopes",
    "rational_reconstruct",
    "ramification_bound",
    "relation_solve",
    "run_pipeline",
    "scalar_from_ring_element",
    "search_envelope",
    "series_newton_polygon",
    "scalar_from_rational",
    "teichmueller",
    "torsion_image_bound",
    "verify_slopes",
]
