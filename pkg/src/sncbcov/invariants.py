"""Weighted localizable invariants of SNC pairs.

For a pair with divisor multiplicities m_j and fixed degree d, each stratum
subset J carries the weight

    w_J = prod_{j in J}  -m_j / (m_j + d),

finite and nonzero because pair validation forbids m_j in {0, -d}.  The
weighted invariant attached to an evaluation phi of stratum classes is

    phi_d(X, D) = sum_J w_J phi([D_J]),

where phi may use the stratum's own dimension n - |J|.  Supported
evaluations of a class with Poincare polynomial P in dimension m:

    chi               P(-1)                   (Euler characteristic)
    chi_prime         -P'(-1)                 (equals sum (-1)^k k b_k)
    chi_double_prime  P''(-1) - m^2 P(-1)
    PoincareAt(x)     P(x)

chi_d is invariant under blow-ups in admissible centers; chi_prime_d and
chi_double_prime_d are not, and their defect is what the birational
normalization in the tau calculus absorbs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .errors import InvalidMultiplicityError, InvalidPairError
from .exact import GradedPoly
from .pairs import MotClass, SncPair

CHI = "chi"
CHI_PRIME = "chi_prime"
CHI_DOUBLE_PRIME = "chi_double_prime"


@dataclass(frozen=True)
class PoincareAt:
    """Evaluate the Poincare polynomial at a fixed rational point."""

    point: Union[int, Fraction]


Kind = Union[str, PoincareAt]


def localizable_eval(cls: MotClass, dim: int, kind: Kind) -> Fraction:
    """Apply one evaluation to a single stratum class of dimension dim."""
    p = cls.poly
    if isinstance(kind, PoincareAt):
        return Fraction(p.evaluate(kind.point))
    if kind == CHI:
        return Fraction(p.evaluate(-1))
    if kind == CHI_PRIME:
        return Fraction(-p.derivative().evaluate(-1))
    if kind == CHI_DOUBLE_PRIME:
        v, _, ddv = _derivs_at_minus_one(p)
        return Fraction(ddv - dim * dim * v)
    raise ValueError(f"unknown invariant kind: {kind!r}")


def weight(mults: Iterable[int], d: int) -> Fraction:
    """prod -m/(m+d) over the given multiplicities."""
    return _weight_cached(tuple(mults), d)


@lru_cache(maxsize=None)
def _weight_cached(mults: tuple, d: int) -> Fraction:
    w = Fraction(1)
    for m in mults:
        if m + d == 0:
            raise InvalidMultiplicityError(f"multiplicity {m} equals -d")
        w *= Fraction(-m, m + d)
    return w


@lru_cache(maxsize=8192)
def _derivs_at_minus_one(p: GradedPoly) -> tuple:
    return tuple(p.eval_derivatives(-1, 2))


def phi_d(pair: SncPair, kind: Kind) -> Fraction:
    total = Fraction(0)
    for J, cls in pair.nonzero_strata():
        w = weight(pair.multiplicities(J), pair.d)
        total += w * localizable_eval(cls, pair.n - len(J), kind)
    return total


def chi_d(pair: SncPair) -> Fraction:
    return phi_d(pair, CHI)


def chi_prime_d(pair: SncPair) -> Fraction:
    return phi_d(pair, CHI_PRIME)


def chi_double_prime_d(pair: SncPair) -> Fraction:
    return phi_d(pair, CHI_DOUBLE_PRIME)


@dataclass(frozen=True)
class InvariantVector:
    chi: Fraction
    chi_prime: Fraction
    chi_double_prime: Fraction


def invariant_vector(pair: SncPair) -> InvariantVector:
    """All three specializations in one pass over the strata."""
    chi = chi1 = chi2 = Fraction(0)
    for J, cls in pair.nonzero_strata():
        w = weight(pair.multiplicities(J), pair.d)
        dim = pair.n - len(J)
        v, dv, ddv = _derivs_at_minus_one(cls.poly)
        chi += w * v
        chi1 -= w * dv
        chi2 += w * (ddv - dim * dim * v)
    return InvariantVector(chi, chi1, chi2)


def chi_d_closed_form_projective(n: int, d: int, mults: Sequence[int]) -> Fraction:
    """chi_d of projective n-space with multiplicities on distinct coordinate
    hyperplanes, in closed form:

        chi_d = d^n * sum_j (m_j + d) / prod_j (m_j + d)

    after padding the list with zeros to n + 1 entries (an absent hyperplane
    behaves like multiplicity 0).
    """
    ms = [int(m) for m in mults]
    if len(ms) > n + 1:
        raise InvalidPairError(f"at most {n + 1} coordinate hyperplanes exist")
    ms += [0] * (n + 1 - len(ms))
    top = Fraction(d) ** n * sum(m + d for m in ms)
    for m in ms:
        if m + d == 0:
            raise InvalidMultiplicityError(f"multiplicity {m} equals -d")
        top /= m + d
    return top
