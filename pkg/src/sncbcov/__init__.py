"""Exact strata combinatorics for simple-normal-crossing pairs.

The library computes, with no floating point anywhere:

- graded Laurent-polynomial and rational-function arithmetic over Q;
- strata classes of SNC pairs and their transforms under smooth blow-ups;
- weighted Euler-type invariants (chi_d and its first two log-type
  refinements) with weights -m/(m+d) per divisor multiplicity;
- Igusa-zeta-style motivic specializations, Gorenstein volumes, and stringy
  invariants of KLT resolution data;
- a formal calculus of BCOV-type normalization terms over the atoms
  tau(P^1) and tau(P^2), with machine-checkable certificates for the
  blow-up and fibration functional equations;
- a batch verification suite with deterministic, machine-readable reports.
"""
from __future__ import annotations

__version__ = "0.1.0"

from .exact import GradedPoly, RatFunc, Coeff, cyclotomic
from . import errors

__all__ = [
    "GradedPoly",
    "RatFunc",
    "Coeff",
    "cyclotomic",
    "errors",
    "__version__",
    "MotClass",
    "SncPair",
    "projective_space_pair",
    "d_canonical_projective_model",
    "fibration_pair",
    "stratum_center",
    "coordinate_center",
    "blow_up",
    "BlowupRecord",
    "invariant_vector",
    "phi_d",
    "chi_d",
    "chi_prime_d",
    "chi_double_prime_d",
    "chi_d_closed_form_projective",
    "zeta_evaluate",
    "specialization_limit",
    "change_of_variables_check",
    "DiscrepancyData",
    "motivic_volume",
    "stringy_invariants",
    "det_line_exponents",
    "TauExpr",
    "TAU_P1",
    "TAU_P2",
    "tau_p1_eval",
    "tau_p2_eval",
    "tau_projective_normal_form",
    "normalization_term",
    "tau_bir",
    "verify_blowup_functional_equation",
    "verify_bundle_functional_equation",
    "verify_taubir_vanishing",
    "bcov_klt_symbolic",
    "load_pair_spec",
    "emit_pair_spec",
    "run_verification_suite",
    "render_report",
]

from .pairs import (
    BlowupRecord,
    MotClass,
    SncPair,
    blow_up,
    coordinate_center,
    d_canonical_projective_model,
    fibration_pair,
    projective_space_pair,
    stratum_center,
)
from .invariants import (
    chi_d,
    chi_d_closed_form_projective,
    chi_double_prime_d,
    chi_prime_d,
    invariant_vector,
    phi_d,
)
from .motivic import (
    DiscrepancyData,
    change_of_variables_check,
    det_line_exponents,
    motivic_volume,
    specialization_limit,
    stringy_invariants,
    zeta_evaluate,
)
from .tau import (
    TAU_P1,
    TAU_P2,
    TauExpr,
    bcov_klt_symbolic,
    normalization_term,
    tau_bir,
    tau_p1_eval,
    tau_p2_eval,
    tau_projective_normal_form,
    verify_blowup_functional_equation,
    verify_bundle_functional_equation,
    verify_taubir_vanishing,
)
from .specio import emit_pair_spec, load_pair_spec
from .suite import render_report, run_verification_suite
