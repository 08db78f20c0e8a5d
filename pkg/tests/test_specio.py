"""Spec file loading, emission, and exact JSON serialization."""
from fractions import Fraction

import pytest
from genpairs import chains
from hypothesis import given, settings

from sncbcov.errors import SpecFormatError
from sncbcov.exact import GradedPoly, RatFunc
from sncbcov.pairs import d_canonical_projective_model, fibration_pair
from sncbcov.specio import (
    emit_pair_spec,
    emit_spec_dict,
    fraction_str,
    load_pair_spec,
    loads_pair_spec,
    parse_rational,
    poly_json,
    ratfunc_json,
    tau_expr_json,
)
from sncbcov.tau import TAU_P1, TAU_P2, TauExpr

F = Fraction


class TestRationals:
    def test_parse_int(self):
        assert parse_rational(3) == F(3)

    def test_parse_string(self):
        assert parse_rational("-7/12") == F(-7, 12)

    def test_parse_whitespace(self):
        assert parse_rational("  5/2 ") == F(5, 2)

    def test_parse_garbage_rejected(self):
        with pytest.raises(SpecFormatError, match="bad rational"):
            parse_rational("one half")

    def test_parse_zero_denominator_rejected(self):
        with pytest.raises(SpecFormatError):
            parse_rational("1/0")

    def test_fraction_str_always_has_denominator(self):
        assert fraction_str(F(3)) == "3/1"
        assert fraction_str(F(-1, 4)) == "-1/4"


class TestJsonSerializers:
    def test_poly_json(self):
        p = GradedPoly.monomial(1, grain=2) + GradedPoly.constant(F(1, 3))
        assert poly_json(p) == [[[0, 2], "1/3"], [[1, 2], "1/1"]]

    def test_ratfunc_json_reduces(self):
        q = GradedPoly.variable()
        two = GradedPoly.constant(2)
        r = RatFunc(two * q, two * q * q)
        assert ratfunc_json(r) == {
            "num": [[[-1, 1], "1/1"]],
            "den": [[[0, 1], "1/1"]],
        }

    def test_tau_expr_json(self):
        e = TauExpr.of(TAU_P2) - TauExpr.of(TAU_P1, F(3, 4)) + TauExpr.const(F(1, 2))
        assert tau_expr_json(e) == {
            "atoms": [["p1", "", "-3/4"], ["p2", "", "1/1"]],
            "constant": "1/2",
        }


class TestLoading:
    def test_projective_space(self):
        spec = loads_pair_spec(
            'kind = "projective_space"\nn = 2\nd = 1\n'
            "assignment = [[0, 1], [1, 1], [2, 1]]\n"
        )
        assert spec.kind == "projective_space"
        assert spec.pair.divisors == (("H0", 1), ("H1", 1), ("H2", 1))
        assert spec.records == ()

    def test_balanced_model(self):
        spec = loads_pair_spec(
            'kind = "balanced_model"\nn = 2\nd = 1\nmults = [1, 1]\n'
        )
        assert spec.pair.d_canonical
        assert tuple(m for _, m in spec.pair.divisors) == (-5, 1, 1)

    def test_explicit(self):
        text = """
kind = "explicit"
n = 1
d = 2
divisors = [["A", 3]]

[[strata]]
subset = []
coeffs = [[0, 1], [2, 1]]

[[strata]]
subset = [0]
coeffs = [[0, 1]]
"""
        spec = loads_pair_spec(text)
        assert spec.pair.n == 1
        assert spec.pair.multiplicity(0) == 3
        assert not spec.pair.d_canonical

    def test_fibration(self):
        text = """
kind = "fibration"

[base]
kind = "projective_space"
n = 1
d = 1
assignment = [[0, 2]]

[fiber]
kind = "balanced_model"
n = 1
d = 1
mults = []
"""
        spec = loads_pair_spec(text)
        assert spec.pair.n == 2
        assert spec.pair.size == 2

    def test_blowup_chain(self):
        text = """
kind = "blowup_chain"

[base]
kind = "balanced_model"
n = 2
d = 1
mults = [1, 1]

[[centers]]
divisors = [1, 2]

[[centers]]
divisors = [3]
"""
        spec = loads_pair_spec(text)
        assert len(spec.records) == 2
        assert spec.pair.size == 5
        # the second center is the exceptional divisor of the first step
        assert spec.records[1].center.contains == frozenset({3})

    def test_coordinate_center_in_chain(self):
        text = """
kind = "blowup_chain"

[base]
kind = "projective_space"
n = 2
d = 1
assignment = [[0, 1]]

[[centers]]
coordinates = [1, 2]
"""
        spec = loads_pair_spec(text)
        assert spec.records[0].exceptional_multiplicity == 1

    def test_discrepancy_spec(self):
        spec = loads_pair_spec('kind = "discrepancy"\nvalues = ["1/2", 0, 1]\n')
        assert spec.pair is None
        assert spec.discrepancies.values == (F(1, 2), F(0), F(1))

    def test_embedded_discrepancies(self):
        spec = loads_pair_spec(
            'kind = "projective_space"\nn = 1\nd = 1\n'
            'assignment = [[0, 2]]\ndiscrepancies = ["1/3"]\n'
        )
        assert spec.discrepancies.values == (F(1, 3),)


class TestDiagnostics:
    def test_missing_field_names_it(self):
        with pytest.raises(SpecFormatError, match="missing required field 'n'"):
            loads_pair_spec('kind = "projective_space"\nd = 1\nassignment = []\n')

    def test_wrong_type_names_field(self):
        with pytest.raises(SpecFormatError, match="'n' has the wrong type"):
            loads_pair_spec(
                'kind = "projective_space"\nn = "two"\nd = 1\nassignment = []\n'
            )

    def test_unknown_kind(self):
        with pytest.raises(SpecFormatError, match="unknown kind"):
            loads_pair_spec('kind = "mystery"\n')

    def test_bad_nested_path_reported(self):
        text = """
kind = "blowup_chain"

[base]
kind = "balanced_model"
n = 2
d = 1
mults = [1, 1]

[[centers]]
divisors = [1]
coordinates = [1]
"""
        with pytest.raises(SpecFormatError, match=r"centers\[0\]"):
            loads_pair_spec(text)

    def test_duplicate_subset_rejected(self):
        text = """
kind = "explicit"
n = 1
d = 1
divisors = []

[[strata]]
subset = []
coeffs = [[0, 1], [2, 1]]

[[strata]]
subset = []
coeffs = [[0, 2]]
"""
        with pytest.raises(SpecFormatError, match="duplicate subset"):
            loads_pair_spec(text)

    def test_toml_syntax_error(self):
        with pytest.raises(SpecFormatError, match="TOML parse error"):
            loads_pair_spec("kind = \n")

    def test_missing_file(self, tmp_path):
        with pytest.raises(SpecFormatError):
            load_pair_spec(str(tmp_path / "nope.toml"))


class TestRoundTrip:
    def test_explicit_round_trip_fixture(self):
        pair = fibration_pair(
            d_canonical_projective_model(1, 1, [2]),
            d_canonical_projective_model(2, 1, [1, 1]),
        )
        again = loads_pair_spec(emit_pair_spec(pair)).pair
        assert again.strata == pair.strata
        assert again.divisors == pair.divisors
        assert again.n == pair.n and again.d == pair.d
        assert again.d_canonical == pair.d_canonical

    @settings(max_examples=40, deadline=None)
    @given(chains(max_dim=3, max_blowups=2))
    def test_round_trip_reproduces_strata(self, case):
        pair, _ = case
        again = loads_pair_spec(emit_pair_spec(pair)).pair
        assert again.strata == pair.strata
        assert again.divisors == pair.divisors
        assert again.d_canonical == pair.d_canonical

    def test_round_trip_keeps_discrepancies(self):
        pair = d_canonical_projective_model(2, 1, [1, 1])
        from sncbcov.motivic import DiscrepancyData

        disc = DiscrepancyData.of([F(1, 2), 0, 1])
        spec = loads_pair_spec(emit_pair_spec(pair, disc))
        assert spec.discrepancies.values == (F(1, 2), F(0), F(1))

    def test_emit_spec_dict_round_trip(self):
        desc = {
            "kind": "blowup_chain",
            "base": {"kind": "balanced_model", "n": 2, "d": 1, "mults": [1, 1]},
            "centers": [{"divisors": [1, 2]}, {"divisors": [3]}],
        }
        spec = loads_pair_spec(emit_spec_dict(desc))
        assert len(spec.records) == 2
        assert spec.pair.size == 5
