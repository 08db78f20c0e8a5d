"""Motivic zeta specializations, Gorenstein volumes, and stringy invariants.

Everything here is a finite sum over the closed strata of an SNC pair.
Writing L for the even generator q^2, a vector of rational exponents e_j
(one per divisor) determines the factored rational function

    F(e) = sum_J L^(|J|-n) [D_J] prod_{j in J} (1 - L^e_j) / (L^(1+e_j) - 1).

Two specializations share this shape:

  * the zeta specialization at a >= 0 uses e_j = a * m_j, poles at
    1 + a m_j = 0 are refused;
  * the Gorenstein volume of discrepancy data (a_j) uses e_j = a_j with the
    klt condition a_j > -1, so denominators never degenerate.

t^(2n) F is the associated stringy function; when it is an honest
polynomial its Euler-type specializations at dimension n are reported.

Under blow-up in an admissible center of codimension r contained in the
divisors S, the factored sum is preserved exactly when the exceptional
exponent satisfies e_E = r - 1 + sum_{j in S} e_j.  For the zeta
specialization with e_j = a m_j and m_E = sum m_j + (r-1) d this forces
a = 1/d, which is the parameter the change-of-variables certificate pins;
for volumes it is the usual discrepancy transform a_E = r - 1 + sum a_j.

Results are returned in factored form carrying the denominator hint, so
equality checks between transformed sums stay cheap; call reduced() for the
canonical representative.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import (
    DiscrepancyRangeError,
    NonPolynomialError,
    NotEffectiveError,
    SpecializationPoleError,
)
from .exact import GradedPoly, RatFunc
from .pairs import BlowupRecord, SncPair

Rat = Union[int, Fraction]


def _l_power(x: Fraction) -> GradedPoly:
    """L^x as the monomial q^(2x)."""
    f = 2 * Fraction(x)
    return GradedPoly.monomial(f.numerator, f.denominator)


def _factored_sum(pair: SncPair, exps: Sequence[Fraction]) -> RatFunc:
    """The strata sum F(e) in factored form over the common denominator
    prod_j (L^|1+e_j| - 1), with negative exponents flipped into monomial
    numerator factors."""
    active = sorted({j for J in pair.strata for j in J})
    pos: dict[int, bool] = {}
    val: dict[int, Fraction] = {}
    for j in active:
        c = 1 + Fraction(exps[j])
        if c == 0:
            raise SpecializationPoleError(
                f"divisor {pair.label(j)} hits the pole 1 + e = 0"
            )
        pos[j], val[j] = c > 0, abs(c)
    hint = tuple(2 * val[j] for j in active)
    total = GradedPoly.zero()
    for J, cls in pair.nonzero_strata():
        term = cls.poly * _l_power(Fraction(len(J) - pair.n))
        for j in active:
            if j in J:
                factor = GradedPoly.one() - _l_power(Fraction(exps[j]))
                if not pos[j]:
                    factor = factor * _l_power(val[j]) * -1
                term = term * factor
            else:
                term = term * (_l_power(val[j]) - 1)
        total = total + term
    den = GradedPoly.one()
    for j in active:
        den = den * (_l_power(val[j]) - 1)
    return RatFunc(total, den, hint)


# ---------------------------------------------------------------------------
# zeta specialization
# ---------------------------------------------------------------------------

def zeta_evaluate(pair: SncPair, a: Rat) -> RatFunc:
    """F at exponents e_j = a * m_j, in factored form.

    a must be a nonnegative rational; divisors with 1 + a m_j = 0 make the
    specialization genuinely singular and raise SpecializationPoleError.
    """
    a = Fraction(a)
    if a < 0:
        raise ValueError(f"specialization parameter must be >= 0, got {a}")
    exps = [a * pair.multiplicity(j) for j in range(pair.size)]
    return _factored_sum(pair, exps)


def specialization_limit(pair: SncPair, a: Rat) -> Fraction:
    """lim as q -> 1 of t^(2n) F_a; at a = 1/d this recovers the weighted
    Euler invariant chi_d whenever all strata classes live in even degree."""
    f = zeta_evaluate(pair, a)
    return (f * _l_power(Fraction(pair.n))).limit_at_one()


# ---------------------------------------------------------------------------
# Gorenstein volume and stringy invariants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiscrepancyData:
    """Rational exponents a_j > -1, one per divisor of the target pair."""

    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        vals = tuple(Fraction(v) for v in self.values)
        for v in vals:
            if v <= -1:
                raise DiscrepancyRangeError(f"discrepancy {v} is not > -1")
        object.__setattr__(self, "values", vals)

    @classmethod
    def of(cls, values: Iterable[Rat]) -> DiscrepancyData:
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def zeros(cls, size: int) -> DiscrepancyData:
        return cls((Fraction(0),) * size)

    def _check_size(self, pair: SncPair) -> None:
        if len(self.values) != pair.size:
            raise DiscrepancyRangeError(
                f"{len(self.values)} discrepancies for {pair.size} divisors"
            )


def motivic_volume(pair: SncPair, disc: DiscrepancyData) -> RatFunc:
    """Gorenstein-type volume: F at exponents e_j = a_j, factored form."""
    disc._check_size(pair)
    return _factored_sum(pair, list(disc.values))


@dataclass(frozen=True)
class StringyReport:
    dim: int
    function: RatFunc
    polynomial: Optional[GradedPoly]
    chi: Optional[Fraction]
    chi_prime: Optional[Fraction]
    chi_double_prime: Optional[Fraction]

    @property
    def is_polynomial(self) -> bool:
        return self.polynomial is not None

    def require_polynomial(self) -> GradedPoly:
        if self.polynomial is None:
            raise NonPolynomialError(
                f"stringy function is not a polynomial: {self.function}"
            )
        return self.polynomial


def stringy_invariants(pair: SncPair, disc: DiscrepancyData) -> StringyReport:
    """t^(2n) times the volume, reduced; Euler-type values are filled in
    only when the result is a true polynomial with integer exponents."""
    vol = motivic_volume(pair, disc)
    fn = (vol * _l_power(Fraction(pair.n))).reduced()
    poly = fn.num if fn.den == GradedPoly.one() else None
    if poly is not None and (poly.grain != 1 or (poly.min_exponent() or 0) < 0):
        poly = None
    if poly is None:
        return StringyReport(pair.n, fn, None, None, None, None)
    v, dv, ddv = poly.eval_derivatives(-1, 2)
    return StringyReport(
        dim=pair.n,
        function=fn,
        polynomial=poly,
        chi=Fraction(v),
        chi_prime=Fraction(-dv),
        chi_double_prime=Fraction(ddv - pair.n * pair.n * v),
    )


# ---------------------------------------------------------------------------
# determinant-line exponents per stratum
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DetLineData:
    coefficient: Fraction
    eta_exponent: Fraction


def det_line_exponents(pair: SncPair, J: Iterable[int]) -> DetLineData:
    """Leading data of one stratum's factor at the invariance parameter
    a = 1/d: the coefficient is the q -> 1 limit of the actual rational
    factors (equal to the combinatorial weight), and the exponent weight is
    (|J| - n) times it."""
    J = frozenset(J)
    coeff = Fraction(1)
    for j in sorted(J):
        m = pair.multiplicity(j)
        e = Fraction(m, pair.d)
        num = GradedPoly.one() - _l_power(e)
        den = _l_power(1 + e) - 1
        coeff *= RatFunc(num, den).limit_at_one()
    return DetLineData(
        coefficient=coeff,
        eta_exponent=(len(J) - pair.n) * coeff,
    )


# ---------------------------------------------------------------------------
# change-of-variables certificates for blow-ups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CovCertificate:
    kind: str
    parameter: Optional[Fraction]
    holds: bool
    lhs: RatFunc
    rhs: RatFunc


def change_of_variables_check(rec: BlowupRecord) -> CovCertificate:
    """Certify that the zeta specialization at a = 1/d is unchanged by one
    blow-up.  The factored sums of the old and new pair are compared as
    rational functions.  Restricted to effective divisors, the hypothesis
    under which the integration identity is asserted."""
    if not rec.pair.is_effective:
        raise NotEffectiveError(
            "change-of-variables certificate needs effective multiplicities"
        )
    a = Fraction(1, rec.pair.d)
    lhs = zeta_evaluate(rec.new_pair, a)
    rhs = zeta_evaluate(rec.pair, a)
    return CovCertificate("zeta", a, lhs == rhs, lhs, rhs)


def discrepancy_transform(
    rec: BlowupRecord, disc: DiscrepancyData
) -> DiscrepancyData:
    """Push discrepancy data through a blow-up: the exceptional divisor gets
    a_E = r - 1 + sum of the a_j over the divisors containing the center."""
    disc._check_size(rec.pair)
    a_e = Fraction(rec.center.r - 1) + sum(
        (disc.values[j] for j in rec.center.contains), Fraction(0)
    )
    return DiscrepancyData(disc.values + (a_e,))


def volume_change_of_variables_check(
    rec: BlowupRecord, disc: DiscrepancyData
) -> CovCertificate:
    """Certify that the Gorenstein volume is unchanged by one blow-up once
    the discrepancies are transformed along with the pair."""
    lhs = motivic_volume(rec.new_pair, discrepancy_transform(rec, disc))
    rhs = motivic_volume(rec.pair, disc)
    return CovCertificate("volume", None, lhs == rhs, lhs, rhs)
