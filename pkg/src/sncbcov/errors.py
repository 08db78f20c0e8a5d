"""Exception hierarchy for the sncbcov library.

Every error raised on a violated precondition derives from SncBcovError so
callers (and the CLI) can distinguish domain errors from programming bugs.
"""
from __future__ import annotations


class SncBcovError(Exception):
    """Base class for all domain errors raised by this library."""


# -- exact arithmetic ------------------------------------------------------

class ZeroDenominatorError(SncBcovError, ZeroDivisionError):
    """Rational function constructed with a zero denominator."""


class PoleAtOneError(SncBcovError, ArithmeticError):
    """Rational function has a genuine pole at the point q = 1."""


class FractionalExponentError(SncBcovError, ValueError):
    """Polynomial with fractional exponents evaluated where only integer
    exponents give an exact rational value (any point other than 1)."""


# -- pair geometry ---------------------------------------------------------

class InvalidPairError(SncBcovError, ValueError):
    """Structural problem in SNC-pair data (labels, strata bounds,
    palindromicity, coefficient integrality)."""


class InvalidMultiplicityError(InvalidPairError):
    """A divisor multiplicity is 0 or equal to -d, so the weights
    -m/(m+d) are undefined or degenerate."""


class EmptyStratumError(InvalidPairError):
    """A stratum required to be nonzero (the ambient class, or the divisor
    being restricted to) is zero."""


class NoCoordinateModelError(SncBcovError):
    """Operation needs the coordinate-hyperplane model tag, which this pair
    does not carry (it was dropped by a transform)."""


class InvalidCenterError(SncBcovError, ValueError):
    """Blow-up center data is malformed or describes an empty center."""


class CenterMultiplicityError(InvalidCenterError):
    """Blow-up center lies inside a divisor of non-positive multiplicity."""


class MismatchedFormDegreeError(SncBcovError, ValueError):
    """Two pairs combined into one computation carry different pluricanonical
    degrees d."""


class NotDCanonicalError(SncBcovError):
    """Operation requires a pair whose d-canonical certificate is set."""


class NotEffectiveError(SncBcovError):
    """Operation requires an effective divisor (all multiplicities > 0)."""


class NegativeMultiplicityError(SncBcovError, ValueError):
    """Normal-form calculus received a negative multiplicity argument."""


# -- motivic specializations ----------------------------------------------

class SpecializationPoleError(SncBcovError, ZeroDivisionError):
    """A zeta/volume denominator L^(1+alpha) - 1 vanishes identically
    (alpha = -1)."""


class DiscrepancyRangeError(SncBcovError, ValueError):
    """A discrepancy violates the KLT bound a_j > -1."""


class NonPolynomialError(SncBcovError):
    """Stringy invariants did not reduce to a Laurent polynomial with
    integer exponents, so numeric chi-invariants are undefined."""


# -- file formats ----------------------------------------------------------

class SpecFormatError(SncBcovError, ValueError):
    """Pair-spec file is malformed or fails validation."""
