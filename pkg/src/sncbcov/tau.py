"""Formal ledger for BCOV-type torsion values.

Analytic quantities are never evaluated: they live as atoms (the torsion of
the line and the plane, plus opaque per-object atoms) and every statement
verified here is a linear identity over Q in those atoms.

The central closed form: for a balanced coordinate-model pair the
birationally normalized value vanishes, so the raw value is minus the
normalization term

    norm(pair) = -(1/2) phi'_d TauP1 + phi''_d (-(1/2) TauP2 + (3/4) TauP1),

and blow-ups change the raw value by

    chi_d(E, D_E) TauP1 - chi_d(Y, D_Y) normal_form(r, d, mults on S).

The verifiers below recompute both sides of such equations independently
and certify that the residual is the zero expression, coefficient by
coefficient.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    MismatchedFormDegreeError,
    NegativeMultiplicityError,
    NotDCanonicalError,
)
from .invariants import chi_d, invariant_vector
from .motivic import DiscrepancyData, stringy_invariants
from .pairs import (
    BlowupRecord,
    CenterDescriptor,
    SncPair,
    blow_up,
    center_pair,
    d_canonical_projective_model,
    fibration_pair,
    restrict_to_divisor,
)

Rat = Union[int, Fraction]


@dataclass(frozen=True)
class TauAtom:
    kind: str
    label: str = ""

    def __str__(self) -> str:
        if self.kind == "p1":
            return "TauP1"
        if self.kind == "p2":
            return "TauP2"
        name = "Opaque" if self.kind == "opaque" else "VolLog"
        return f'{name}("{self.label}")'


TAU_P1 = TauAtom("p1")
TAU_P2 = TauAtom("p2")


def opaque(label: str) -> TauAtom:
    return TauAtom("opaque", label)


def vol_log(label: str) -> TauAtom:
    return TauAtom("vol_log", label)


@dataclass(frozen=True)
class TauExpr:
    """Q-linear combination of atoms plus a rational constant."""

    terms: tuple[tuple[TauAtom, Fraction], ...] = ()
    constant: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        merged: dict[TauAtom, Fraction] = {}
        for atom, c in self.terms:
            c = merged.get(atom, Fraction(0)) + Fraction(c)
            merged[atom] = c
        cleaned = tuple(
            (atom, merged[atom])
            for atom in sorted(merged, key=lambda a: (a.kind, a.label))
            if merged[atom]
        )
        object.__setattr__(self, "terms", cleaned)
        object.__setattr__(self, "constant", Fraction(self.constant))

    @classmethod
    def zero(cls) -> TauExpr:
        return cls()

    @classmethod
    def of(cls, atom: TauAtom, coeff: Rat = 1) -> TauExpr:
        return cls(((atom, Fraction(coeff)),))

    @classmethod
    def const(cls, c: Rat) -> TauExpr:
        return cls((), Fraction(c))

    @property
    def is_zero(self) -> bool:
        return not self.terms and not self.constant

    def coefficient(self, atom: TauAtom) -> Fraction:
        for a, c in self.terms:
            if a == atom:
                return c
        return Fraction(0)

    def __add__(self, other: TauExpr) -> TauExpr:
        if not isinstance(other, TauExpr):
            return NotImplemented
        return TauExpr(self.terms + other.terms, self.constant + other.constant)

    def __sub__(self, other: TauExpr) -> TauExpr:
        return self + (-other)

    def __neg__(self) -> TauExpr:
        return self * -1

    def __mul__(self, scalar: Rat) -> TauExpr:
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        s = Fraction(scalar)
        return TauExpr(
            tuple((a, c * s) for a, c in self.terms), self.constant * s
        )

    __rmul__ = __mul__

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for atom, c in self.terms:
            if c == 1:
                parts.append(str(atom))
            elif c == -1:
                parts.append(f"-{atom}")
            else:
                parts.append(f"{c}*{atom}")
        if self.constant:
            parts.append(str(self.constant))
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


# ---------------------------------------------------------------------------
# closed forms for coordinate models
# ---------------------------------------------------------------------------

def _check_model_args(mults: Iterable[int], d: int) -> None:
    if d < 1:
        raise NegativeMultiplicityError(f"d must be a positive integer, got {d}")
    for m in mults:
        if m < 0:
            raise NegativeMultiplicityError(
                f"model multiplicities must be >= 0, got {m}"
            )


def tau_p1_eval(m: int, d: int) -> TauExpr:
    """Raw value for the one-dimensional model: independent of m."""
    _check_model_args([m], d)
    return TauExpr.of(TAU_P1)


def tau_p2_eval(m1: int, m2: int, d: int) -> TauExpr:
    """Raw value for the two-dimensional model with boundary mults m1, m2."""
    _check_model_args([m1, m2], d)
    c = (
        Fraction(3, 2)
        - Fraction(m1, m1 + d)
        - Fraction(m2, m2 + d)
        - Fraction(m1 + m2 + 3 * d, m1 + m2 + 2 * d)
    )
    return TauExpr.of(TAU_P2) + TauExpr.of(TAU_P1, c)


def normalization_term(pair: SncPair) -> TauExpr:
    """-(1/2) phi'_d TauP1 + phi''_d (-(1/2) TauP2 + (3/4) TauP1)."""
    vec = invariant_vector(pair)
    return TauExpr(
        (
            (TAU_P1, Fraction(3, 4) * vec.chi_double_prime - vec.chi_prime / 2),
            (TAU_P2, -vec.chi_double_prime / 2),
        )
    )


def tau_projective_normal_form(n: int, d: int, mults: Sequence[int]) -> TauExpr:
    """Raw value of the balanced n-dimensional coordinate model: the
    normalized value vanishes there, leaving minus the normalization term."""
    _check_model_args(mults, d)
    return -normalization_term(d_canonical_projective_model(n, d, mults))


def tau_bir(pair: SncPair, tau_value: TauExpr) -> TauExpr:
    """Birationally normalized value: raw value plus normalization term."""
    return tau_value + normalization_term(pair)


# ---------------------------------------------------------------------------
# functional-equation certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TauCertificate:
    kind: str
    ok: bool
    lhs: TauExpr
    rhs: TauExpr
    residual: TauExpr


def blowup_increment(rec: BlowupRecord) -> TauExpr:
    """The change of the raw value across one blow-up:
    chi_d of the exceptional pair times TauP1, minus chi_d of the center
    pair times the normal form in the center's codimension."""
    e_pair = restrict_to_divisor(rec.new_pair, rec.exceptional_index)
    y_pair = center_pair(rec.pair, rec.center)
    s_mults = rec.pair.multiplicities(rec.center.contains)
    return chi_d(e_pair) * tau_p1_eval(
        rec.exceptional_multiplicity, rec.pair.d
    ) - chi_d(y_pair) * tau_projective_normal_form(
        rec.center.r, rec.pair.d, s_mults
    )


def verify_blowup_record(rec: BlowupRecord) -> TauCertificate:
    if not rec.pair.d_canonical:
        raise NotDCanonicalError("blow-up certificate needs a balanced pair")
    lhs = normalization_term(rec.pair) - normalization_term(rec.new_pair)
    rhs = blowup_increment(rec)
    residual = lhs - rhs
    return TauCertificate("blowup", residual.is_zero, lhs, rhs, residual)


def verify_blowup_functional_equation(
    pair: SncPair, center: CenterDescriptor
) -> TauCertificate:
    """Certify that the raw-value increment predicted by the blow-up formula
    matches the change of the closed form, i.e. that the normalized value is
    untouched by this blow-up."""
    if not pair.d_canonical:
        raise NotDCanonicalError("blow-up certificate needs a balanced pair")
    return verify_blowup_record(blow_up(pair, center))


def verify_bundle_functional_equation(
    base: SncPair, fiber: SncPair
) -> TauCertificate:
    """Certify the product rule: the raw value of base x fiber equals
    chi_d(base) times the raw value of the model fiber."""
    if base.d != fiber.d:
        raise MismatchedFormDegreeError(
            f"base has d = {base.d} but fiber has d = {fiber.d}"
        )
    if not (fiber.d_canonical and fiber.model is not None):
        raise NotDCanonicalError("fiber must be a balanced coordinate model")
    lhs = -normalization_term(fibration_pair(base, fiber))
    rhs = chi_d(base) * -normalization_term(fiber)
    residual = lhs - rhs
    return TauCertificate("bundle", residual.is_zero, lhs, rhs, residual)


def tau_via_chain(records: Sequence[BlowupRecord]) -> TauExpr:
    """Raw value of the end of a blow-up chain, propagated step by step from
    the closed form of the chain's starting pair."""
    if not records:
        raise ValueError("empty blow-up chain")
    value = -normalization_term(records[0].pair)
    for rec in records:
        value = value + blowup_increment(rec)
    return value


def verify_taubir_vanishing(records: Sequence[BlowupRecord]) -> TauCertificate:
    """Certify that the normalized value of the end of a chain starting at a
    balanced model vanishes, with the raw value obtained by propagation
    rather than from the closed form of the final pair."""
    if not records[0].pair.d_canonical:
        raise NotDCanonicalError("chain must start at a balanced pair")
    value = tau_via_chain(records)
    result = tau_bir(records[-1].new_pair, value)
    return TauCertificate(
        "taubir", result.is_zero, value, -normalization_term(records[-1].new_pair), result
    )


# ---------------------------------------------------------------------------
# symbolic value for klt data through stringy invariants
# ---------------------------------------------------------------------------

def bcov_klt_symbolic(
    pair: SncPair, disc: DiscrepancyData, label: str
) -> TauExpr:
    """Assemble the formal value attached to klt discrepancy data: an opaque
    atom, a volume-term atom weighted by chi/12, and the TauP1/TauP2
    corrections weighted by the stringy chi' and chi''.  Requires the
    stringy function to be a polynomial."""
    rep = stringy_invariants(pair, disc)
    rep.require_polynomial()
    return (
        TauExpr.of(opaque(label))
        + TauExpr.of(vol_log(label), rep.chi / 12)
        + TauExpr.of(TAU_P1, Fraction(1, 2) * rep.chi_prime)
        + (
            TauExpr.of(TAU_P2, Fraction(1, 2))
            + TauExpr.of(TAU_P1, -Fraction(3, 4))
        )
        * rep.chi_double_prime
    )
