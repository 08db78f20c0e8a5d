"""Zeta specializations, volumes, stringy reports, change-of-variables."""
from fractions import Fraction

import pytest
import sympy
from genpairs import chains
from hypothesis import given, settings
from hypothesis import strategies as st

from sncbcov.errors import (
    DiscrepancyRangeError,
    NonPolynomialError,
    NotEffectiveError,
    SpecializationPoleError,
)
from sncbcov.exact import GradedPoly, RatFunc
from sncbcov.invariants import chi_d, weight
from sncbcov.motivic import (
    DiscrepancyData,
    change_of_variables_check,
    det_line_exponents,
    discrepancy_transform,
    motivic_volume,
    specialization_limit,
    stringy_invariants,
    volume_change_of_variables_check,
    zeta_evaluate,
)
from sncbcov.pairs import (
    blow_up,
    coordinate_center,
    d_canonical_projective_model,
    projective_space_pair,
    stratum_center,
)

F = Fraction
Q = sympy.Symbol("q", positive=True)


def sympy_poly(p: GradedPoly):
    return sum(
        sympy.Rational(c) * Q ** sympy.Rational(e, p.grain) for e, c in p.terms
    )


def sympy_ratfunc(r: RatFunc):
    return sympy_poly(r.num) / sympy_poly(r.den)


def brute_force_sum(pair, exps):
    """The strata sum, assembled term by term in sympy with no shared
    denominator bookkeeping."""
    total = sympy.Integer(0)
    for J, cls in pair.nonzero_strata():
        term = sympy_poly(cls.poly) * Q ** (2 * (len(J) - pair.n))
        for j in sorted(J):
            e = sympy.Rational(Fraction(exps[j]))
            term *= (1 - Q ** (2 * e)) / (Q ** (2 * (1 + e)) - 1)
        total += term
    return total


def free_point_blowup(n=2, d=1):
    """Blow up a model projective space at a point on no divisor."""
    pair = projective_space_pair(n, d, [])
    return blow_up(pair, coordinate_center(pair, set(range(1, n + 1))))


class TestZeta:
    def test_exceptional_plane_at_one(self):
        rec = free_point_blowup()
        z = zeta_evaluate(rec.new_pair, 1)
        assert z == RatFunc(GradedPoly({0: 1, -2: 1, -4: 1}))

    def test_at_zero_is_normalized_ambient(self):
        pair = d_canonical_projective_model(2, 1, [1, 1])
        z = zeta_evaluate(pair, 0)
        assert z == RatFunc(GradedPoly({0: 1, -2: 1, -4: 1}))

    def test_pole_detection(self):
        pair = d_canonical_projective_model(2, 1, [1, 1])  # has mult -5
        with pytest.raises(SpecializationPoleError):
            zeta_evaluate(pair, F(1, 5))

    def test_negative_parameter_rejected(self):
        pair = projective_space_pair(1, 1, [(0, 2)])
        with pytest.raises(ValueError):
            zeta_evaluate(pair, -1)

    @pytest.mark.parametrize("a", [0, 1, 2, F(1, 2), F(1, 3)])
    def test_against_sympy_brute_force(self, a):
        pair = projective_space_pair(2, 1, [(0, 1), (1, 2), (2, 3)])
        exps = [a * pair.multiplicity(j) for j in range(pair.size)]
        got = sympy_ratfunc(zeta_evaluate(pair, a).reduced())
        want = brute_force_sum(pair, exps)
        assert sympy.simplify(got - want) == 0

    def test_against_sympy_with_negative_multiplicity(self):
        pair = d_canonical_projective_model(2, 2, [1, 3])
        a = F(1, 3)
        exps = [a * pair.multiplicity(j) for j in range(pair.size)]
        got = sympy_ratfunc(zeta_evaluate(pair, a).reduced())
        want = brute_force_sum(pair, exps)
        assert sympy.simplify(got - want) == 0


class TestBridge:
    @settings(max_examples=40, deadline=None)
    @given(chains(max_dim=2, max_blowups=2))
    def test_limit_recovers_chi_d(self, chain):
        pair, _ = chain
        assert specialization_limit(pair, F(1, pair.d)) == chi_d(pair)

    @settings(max_examples=25, deadline=None)
    @given(chains(max_dim=2, max_blowups=1, balanced=False))
    def test_limit_recovers_chi_d_unbalanced(self, chain):
        pair, _ = chain
        assert specialization_limit(pair, F(1, pair.d)) == chi_d(pair)


class TestChangeOfVariables:
    @settings(max_examples=40, deadline=None)
    @given(chains(max_dim=3, max_blowups=2, effective=True))
    def test_zeta_certificates_hold(self, chain):
        _, records = chain
        for rec in records:
            cert = change_of_variables_check(rec)
            assert cert.holds
            assert cert.parameter == F(1, rec.pair.d)

    def test_effectiveness_required(self):
        pair = d_canonical_projective_model(2, 1, [1, 1])
        rec = blow_up(pair, stratum_center(pair, {1, 2}))
        with pytest.raises(NotEffectiveError):
            change_of_variables_check(rec)

    def test_wrong_parameter_breaks_invariance(self):
        pair = d_canonical_projective_model(2, 2, [1, 1])
        rec = blow_up(pair, stratum_center(pair, {1, 2}))
        a = 1  # the invariance parameter is 1/2 here
        assert zeta_evaluate(rec.new_pair, a) != zeta_evaluate(rec.pair, a)

    @settings(max_examples=30, deadline=None)
    @given(
        chains(max_dim=2, max_blowups=2),
        st.lists(
            st.fractions(F(-1, 2), F(3), max_denominator=4),
            min_size=8,
            max_size=8,
        ),
    )
    def test_volume_certificates_hold(self, chain, pool):
        _, records = chain
        for rec in records:
            disc = DiscrepancyData.of(pool[: rec.pair.size])
            cert = volume_change_of_variables_check(rec, disc)
            assert cert.holds

    def test_discrepancy_transform_rule(self):
        pair = d_canonical_projective_model(2, 1, [1, 1])
        rec = blow_up(pair, stratum_center(pair, {1, 2}))
        disc = DiscrepancyData.of([F(1, 2), F(1, 3), F(1, 4)])
        out = discrepancy_transform(rec, disc)
        assert out.values == (F(1, 2), F(1, 3), F(1, 4), 1 + F(1, 3) + F(1, 4))


class TestVolumeAndStringy:
    def test_boundary_free_space(self):
        pair = projective_space_pair(2, 1, [])
        rep = stringy_invariants(pair, DiscrepancyData.zeros(0))
        assert rep.polynomial == GradedPoly({0: 1, 2: 1, 4: 1})
        assert (rep.chi, rep.chi_prime, rep.chi_double_prime) == (3, 6, 2)

    def test_crepant_discrepancies_give_ambient_class(self):
        pair = d_canonical_projective_model(2, 1, [1, 1])
        rep = stringy_invariants(pair, DiscrepancyData.zeros(3))
        assert rep.polynomial == pair.stratum(()).poly

    def test_blowdown_of_point(self):
        """The exceptional divisor of a plane point carries a_E = 1 and the
        stringy polynomial matches the plane downstairs."""
        rec = free_point_blowup()
        disc = discrepancy_transform(rec, DiscrepancyData.zeros(0))
        assert disc.values == (1,)
        rep = stringy_invariants(rec.new_pair, disc)
        assert rep.polynomial == GradedPoly({0: 1, 2: 1, 4: 1})
        assert rep.chi == 3

    def test_fractional_discrepancy_not_polynomial(self):
        pair = projective_space_pair(1, 1, [(0, 2)])
        rep = stringy_invariants(pair, DiscrepancyData.of([F(1, 2)]))
        assert not rep.is_polynomial
        assert rep.chi is None
        expected = RatFunc(
            GradedPoly({4: 1, 3: 1, 2: 1, 1: 1, 0: 1}),
            GradedPoly({2: 1, 1: 1, 0: 1}),
        )
        assert rep.function == expected
        with pytest.raises(NonPolynomialError):
            rep.require_polynomial()

    def test_integer_discrepancy_can_still_be_rational(self):
        pair = projective_space_pair(1, 1, [(0, 2)])
        rep = stringy_invariants(pair, DiscrepancyData.of([1]))
        assert not rep.is_polynomial

    def test_volume_against_sympy(self):
        pair = projective_space_pair(2, 1, [(0, 1), (1, 1)])
        disc = DiscrepancyData.of([F(1, 2), 2])
        got = sympy_ratfunc(motivic_volume(pair, disc).reduced())
        want = brute_force_sum(pair, list(disc.values))
        assert sympy.simplify(got - want) == 0

    def test_range_validation(self):
        with pytest.raises(DiscrepancyRangeError):
            DiscrepancyData.of([-1])
        with pytest.raises(DiscrepancyRangeError):
            DiscrepancyData.of([F(-3, 2)])
        pair = projective_space_pair(1, 1, [(0, 2)])
        with pytest.raises(DiscrepancyRangeError):
            motivic_volume(pair, DiscrepancyData.zeros(3))


class TestDetLine:
    def test_ambient_stratum(self):
        pair = d_canonical_projective_model(3, 2, [1, 1])
        data = det_line_exponents(pair, ())
        assert data.coefficient == 1
        assert data.eta_exponent == -3

    def test_two_line_corner_on_plane(self):
        pair = projective_space_pair(2, 1, [(0, 1), (1, 1), (2, 1)])
        data = det_line_exponents(pair, {0, 1})
        assert data.coefficient == F(1, 4)
        assert data.eta_exponent == 0

    @settings(max_examples=30, deadline=None)
    @given(chains(max_dim=2, max_blowups=1, balanced=False))
    def test_coefficient_is_the_weight(self, chain):
        """The limit of the rational factors equals the combinatorial
        weight, stratum by stratum."""
        pair, _ = chain
        for J, _cls in pair.nonzero_strata():
            data = det_line_exponents(pair, J)
            w = weight(pair.multiplicities(J), pair.d)
            assert data.coefficient == w
            assert data.eta_exponent == (len(J) - pair.n) * w
