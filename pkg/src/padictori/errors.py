"""Exception hierarchy for the package.

Every error raised by library code derives from PadicToriError so callers
can catch one type at an API boundary. Names describe the violated
precondition, not the internal routine that noticed it.
"""


class PadicToriError(Exception):
    """Base class for all package errors."""


class NotPrime(PadicToriError):
    """A context or ring was requested at a non-prime characteristic."""


class ReducibleModulus(PadicToriError):
    """The supplied extension modulus factors over the residue field."""


class DivisionByZero(PadicToriError):
    """Exact division by a zero element or zero series."""


class NotAUnit(PadicToriError):
    """Inversion or Teichmueller lift of a non-invertible element."""


class DomainMismatch(PadicToriError):
    """Two operands live over incompatible contexts or rings."""


class ComposeNonzeroConstant(PadicToriError):
    """Series composition g(h) needs h(0) = 0."""


class ConstantTermNotUnit(PadicToriError):
    """Series inversion needs an invertible constant term."""


class ZeroSeries(PadicToriError):
    """Operation undefined on the identically-zero series."""


class SingularPoint(PadicToriError):
    """Both partial derivatives of the plane model vanish at the center."""


class PointNotOnCurve(PadicToriError):
    """The supplied center does not satisfy the curve equation."""


class PoleOnDisc(PadicToriError):
    """A function has a pole at the center of the residue disc."""


class ZeroFunction(PadicToriError):
    """The function restricts to zero on the curve."""


class HypothesisViolated(PadicToriError):
    """Slope prediction requested outside its proven range (k >= p)."""


class ZeroColumn(PadicToriError):
    """Boundary projection requested for an identically-zero column."""


class ReducibleH(PadicToriError):
    """The plane model must be irreducible over the base field."""


class DegenerateDerivatives(PadicToriError):
    """A partial derivative of the model vanishes identically on the curve."""


class ZeroVector(PadicToriError):
    """Exponent normalization of the zero vector is undefined."""


class NonradicalSystem(PadicToriError):
    """The resultant eliminating y vanished identically; the locus is not finite."""


class DependentFunctions(PadicToriError):
    """The coordinate functions are multiplicatively dependent on the curve."""


class BoundsTooSmall(PadicToriError):
    """Search bounds exclude a region the request requires."""


class NonUnitValue(PadicToriError):
    """A coordinate value has nonzero valuation where a unit is required."""


class PrecisionExhausted(PadicToriError):
    """Cancellation consumed every certified digit; raise precision and retry."""


class BadReduction(PadicToriError):
    """The object does not reduce well at the chosen prime."""
