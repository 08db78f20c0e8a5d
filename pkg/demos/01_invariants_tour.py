"""Tour of SNC pairs and their weighted Euler-type invariants.

Run from the repository root after `pip install -e .`:

    python3 demos/01_invariants_tour.py
"""
from fractions import Fraction

from sncbcov import (
    chi_d,
    chi_d_closed_form_projective,
    d_canonical_projective_model,
    fibration_pair,
    invariant_vector,
    projective_space_pair,
)

F = Fraction


def show(title, pair):
    vec = invariant_vector(pair)
    print(f"{title}:")
    print(f"  n = {pair.n}, d = {pair.d}, divisors = {pair.divisors}")
    print(f"  chi_d = {vec.chi}   chi'_d = {vec.chi_prime}   chi''_d = {vec.chi_double_prime}")
    print()


print("=" * 70)
print("1. Boundary-free spaces: the weights are trivial, so the invariants")
print("   are the plain Euler characteristic and its two derivative-type")
print("   refinements of the Poincare polynomial at t = -1.")
print("=" * 70)
show("P^1", projective_space_pair(1, 1, []))
show("P^2", projective_space_pair(2, 1, []))
show("P^3", projective_space_pair(3, 1, []))
show("P^1 x P^1", fibration_pair(projective_space_pair(1, 1, []),
                                 projective_space_pair(1, 1, [])))

print("=" * 70)
print("2. Coordinate hyperplane divisors.  Each divisor of multiplicity m")
print("   contributes the weight -m/(m+d) to every stratum it bounds.")
print("=" * 70)
plane = projective_space_pair(2, 1, [(0, 1), (1, 1), (2, 1)])
show("P^2 with the three coordinate lines (all multiplicity 1)", plane)
print("The same number from the closed form d^n * sum(m_j+d)/prod(m_j+d):")
print(" ", chi_d_closed_form_projective(2, 1, [1, 1, 1]), "== chi_d above")
print()

print("=" * 70)
print("3. Balanced (d-canonical) coordinate models.  Choosing the last")
print("   multiplicity as -(sum m_i + (n+1)d) makes chi_d vanish exactly;")
print("   these models are the reference points of the tau calculus.")
print("=" * 70)
for mults in ([1, 1], [3, 2], [0, 7]):
    model = d_canonical_projective_model(2, 1, mults)
    show(f"balanced model for mults {mults}", model)
    assert chi_d(model) == 0

print("=" * 70)
print("4. Multiplicativity on products: chi_d is multiplicative, and the")
print("   first refinement obeys the usual derivative-style product rule.")
print("=" * 70)
base = projective_space_pair(1, 1, [(0, 2)])
fiber = projective_space_pair(2, 1, [(1, 3)])
prod = fibration_pair(base, fiber)
vb, vf, vp = invariant_vector(base), invariant_vector(fiber), invariant_vector(prod)
print(f"  chi_d(B) * chi_d(F) = {vb.chi * vf.chi} = chi_d(B x F) = {vp.chi}")
lhs = vb.chi_prime * vf.chi + vb.chi * vf.chi_prime
print(f"  chi'_d(B)chi_d(F) + chi_d(B)chi'_d(F) = {lhs} = chi'_d(B x F) = {vp.chi_prime}")
assert vp.chi == vb.chi * vf.chi and vp.chi_prime == lhs
print()
print("All identities above are exact rational equalities (no floats).")
