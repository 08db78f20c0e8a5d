"""Tests for exact graded-polynomial and rational-function arithmetic.

Expected values were computed independently before the implementation:
derivative tables by direct differentiation, reductions by factoring both
sides by hand, limits by l'Hopital.  sympy recomputes each oracle value live
so a slip in the frozen constants would also be caught.
"""
from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from sncbcov.exact import (
    GradedPoly,
    RatFunc,
    cyclotomic,
    _binomial_product,
)
from sncbcov.errors import (
    FractionalExponentError,
    PoleAtOneError,
    ZeroDenominatorError,
)

Q = sympy.Symbol("q", positive=True)


def to_sympy(p: GradedPoly):
    return sympy.Add(
        *(sympy.Rational(c) * Q ** sympy.Rational(e, p.grain) for e, c in p.terms)
    )


# ---------------------------------------------------------------------------
# canonical form
# ---------------------------------------------------------------------------

def test_canonical_grain_reduction():
    # q stored over grain 2 collapses to grain 1
    assert GradedPoly({2: 1}, 2) == GradedPoly({1: 1}, 1)
    # mixed-grain equality after rescaling
    assert GradedPoly({2: 1, 0: -1}, 4) == GradedPoly({1: 1, 0: -1}, 2)
    # zero coefficients dropped, zero polynomial has grain 1
    assert GradedPoly({5: 0, -3: 0}, 6) == GradedPoly.zero()
    assert GradedPoly.zero().grain == 1


def test_terms_sorted_and_merged():
    p = GradedPoly([(4, 1), (0, 2), (4, -1), (2, Fraction(1, 2))])
    assert p.terms == ((0, 2), (2, Fraction(1, 2)))


def test_coefficients_normalized_to_int():
    p = GradedPoly({0: Fraction(4, 2)})
    assert p.terms == ((0, 2),)
    assert isinstance(p.terms[0][1], int)


def test_fractional_exponent_representation():
    p = GradedPoly({1: 1, 0: -3}, 2)  # q^(1/2) - 3
    assert p.coefficient(Fraction(1, 2)) == 1
    assert p.coefficient(0) == -3
    assert p.coefficient(1) == 0
    assert p.min_exponent() == 0
    assert p.max_exponent() == Fraction(1, 2)


# ---------------------------------------------------------------------------
# ring arithmetic
# ---------------------------------------------------------------------------

def test_basic_arithmetic():
    q = GradedPoly.variable()
    p = (1 + q ** 2) * (1 - q) + q
    assert p == GradedPoly({0: 1, 2: 1, 3: -1})
    assert p - p == GradedPoly.zero()
    assert 2 * q == q + q
    assert Fraction(1, 2) * (q + q) == q


def test_mixed_grain_product():
    half = GradedPoly.monomial(1, 2)  # q^(1/2)
    assert half * half == GradedPoly.variable()
    third = GradedPoly.monomial(1, 3)
    assert (half * third).max_exponent() == Fraction(5, 6)


def test_pow():
    q = GradedPoly.variable()
    assert (1 + q) ** 0 == GradedPoly.one()
    assert (1 + q) ** 3 == GradedPoly({0: 1, 1: 3, 2: 3, 3: 1})


@st.composite
def polys(draw, min_exp=-6, max_exp=6, max_grain=3):
    grain = draw(st.integers(1, max_grain))
    n = draw(st.integers(0, 5))
    terms = {}
    for _ in range(n):
        e = draw(st.integers(min_exp, max_exp))
        c = Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 3)))
        terms[e] = c
    return GradedPoly(terms, grain)


@given(polys(), polys(), polys())
@settings(max_examples=60, deadline=None)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c


@given(polys(), polys())
@settings(max_examples=40, deadline=None)
def test_product_against_sympy(a, b):
    got = to_sympy(a * b)
    want = sympy.expand(to_sympy(a) * to_sympy(b))
    assert sympy.simplify(got - want) == 0


# ---------------------------------------------------------------------------
# evaluation and derivatives
# ---------------------------------------------------------------------------

def test_eval_derivatives_frozen():
    # p = 1 + q^2 + q^4 at q = -1: p = 3, p' = 2q + 4q^3 -> -6, p'' = 2 + 12q^2 -> 14
    p = GradedPoly({0: 1, 2: 1, 4: 1})
    assert p.eval_derivatives(-1, 2) == [3, -6, 14]


def test_eval_derivatives_against_sympy():
    p = GradedPoly({-2: Fraction(1, 3), 0: 2, 3: -1, 5: Fraction(7, 2)})
    expr = to_sympy(p)
    pt = sympy.Rational(-2, 3)
    got = p.eval_derivatives(Fraction(-2, 3), 3)
    for k, v in enumerate(got):
        want = sympy.diff(expr, Q, k).subs(Q, pt)
        assert sympy.Rational(v) == sympy.nsimplify(want)


def test_evaluate_at_one_any_grain():
    p = GradedPoly({1: 1, -3: Fraction(2, 5)}, 4)
    assert p.evaluate(1) == Fraction(7, 5)


def test_fractional_derivative_at_one():
    p = GradedPoly({1: 1}, 2)  # q^(1/2)
    assert p.eval_derivatives(1, 1) == [1, Fraction(1, 2)]


def test_evaluate_errors():
    p = GradedPoly({1: 1}, 2)
    with pytest.raises(FractionalExponentError):
        p.evaluate(4)
    with pytest.raises(FractionalExponentError):
        p.evaluate(-1)
    lau = GradedPoly({-1: 1})
    with pytest.raises(ZeroDivisionError):
        lau.evaluate(0)
    assert GradedPoly({0: 3, 2: 5}).evaluate(0) == 3


def test_laurent_evaluation():
    p = GradedPoly({-2: 1, 2: 1})
    assert p.evaluate(-1) == 2
    assert p.evaluate(Fraction(1, 2)) == Fraction(17, 4)


# ---------------------------------------------------------------------------
# rational functions: reduction
# ---------------------------------------------------------------------------

def test_reduce_frozen_example():
    # (1 - q^3)/(q^4 - 1) = -(1 + q + q^2)/(1 + q + q^2 + q^3), monic denominator
    f = RatFunc(GradedPoly({0: 1, 3: -1}), GradedPoly({4: 1, 0: -1}))
    r = f.reduced()
    assert r.num == GradedPoly({0: -1, 1: -1, 2: -1})
    assert r.den == GradedPoly({0: 1, 1: 1, 2: 1, 3: 1})
    # canonical form is a fixed point
    again = r.reduced()
    assert again.num == r.num and again.den == r.den


def test_reduce_against_sympy():
    f = RatFunc(
        GradedPoly({0: 2, 1: -2, 4: 6, 5: -6}),
        GradedPoly({0: -4, 2: 4}),
    )
    r = f.reduced()
    ours = to_sympy(r.num) / to_sympy(r.den)
    theirs = sympy.cancel(
        to_sympy(f.num) / to_sympy(f.den)
    )
    assert sympy.simplify(ours - theirs) == 0


def test_reduce_pushes_monomials_to_numerator():
    # q^3/(q^2) -> q / 1
    f = RatFunc(GradedPoly({3: 1}), GradedPoly({2: 1}))
    r = f.reduced()
    assert r.num == GradedPoly.variable()
    assert r.den == GradedPoly.one()
    # (q - 1)/q -> num has a negative exponent, den stays 1... actually
    # den = q: monomial goes to the numerator side as q^(-1)(q - 1)
    g = RatFunc(GradedPoly({1: 1, 0: -1}), GradedPoly({1: 1})).reduced()
    assert g.den == GradedPoly.one()
    assert g.num == GradedPoly({0: 1, -1: -1})


def test_reduce_fractional_grain():
    # (q - 1)/(q^(1/2) - 1) = q^(1/2) + 1
    f = RatFunc(GradedPoly({1: 1, 0: -1}), GradedPoly({1: 1, 0: -1}, 2))
    assert f.as_polynomial() == GradedPoly({1: 1, 0: 1}, 2)


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDenominatorError):
        RatFunc(GradedPoly.one(), GradedPoly.zero())


def test_zero_numerator_normalizes():
    f = RatFunc(GradedPoly.zero(), GradedPoly({3: 2, 1: -7}))
    assert f.den == GradedPoly.one()
    assert f.is_zero


# ---------------------------------------------------------------------------
# rational functions: equality and field laws
# ---------------------------------------------------------------------------

def test_equality_is_functional():
    a = RatFunc(GradedPoly({0: 1, 1: 1}), GradedPoly({0: 2}))
    b = RatFunc(GradedPoly({0: 2, 1: 3, 2: 1}), GradedPoly({0: 4, 1: 2}))
    assert a == b  # (1+q)/2 == (1+q)(2+q)/(2(2+q))


@st.composite
def ratfuncs(draw):
    num = draw(polys(min_exp=-3, max_exp=4, max_grain=2))
    den = draw(polys(min_exp=0, max_exp=3, max_grain=2).filter(lambda p: not p.is_zero))
    return RatFunc(num, den)


@given(ratfuncs(), ratfuncs(), ratfuncs())
@settings(max_examples=40, deadline=None)
def test_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a - a == RatFunc.zero()
    if not b.is_zero:
        assert (a / b) * b == a


@given(ratfuncs())
@settings(max_examples=40, deadline=None)
def test_reduced_preserves_value(f):
    r = f.reduced()
    assert r == f
    # idempotent canonical form
    rr = r.reduced()
    assert rr.num == r.num and rr.den == r.den
    # denominator is monic with nonzero constant term
    if not r.num.is_zero:
        assert r.den.terms[-1][1] == 1
        assert r.den.terms[0][0] == 0


@given(ratfuncs(), ratfuncs())
@settings(max_examples=40, deadline=None)
def test_equality_matches_canonical_form(a, b):
    ra, rb = a.reduced(), b.reduced()
    structurally = ra.num == rb.num and ra.den == rb.den
    assert (a == b) == structurally


# ---------------------------------------------------------------------------
# binomial-denominator fast paths
# ---------------------------------------------------------------------------

def test_cyclotomic_factorization():
    for e in range(1, 31):
        prod = [1]
        from sncbcov.exact import _mul_int_lists

        for d in range(1, e + 1):
            if e % d == 0:
                prod = _mul_int_lists(prod, list(cyclotomic(d)))
        want = [-1] + [0] * (e - 1) + [1]
        assert prod == want


def test_cyclotomic_against_sympy():
    for e in (1, 2, 6, 12, 15, 30):
        ours = sympy.Poly(list(reversed(cyclotomic(e))), Q).as_expr()
        theirs = sympy.cyclotomic_poly(e, Q)
        assert sympy.expand(ours - theirs) == 0


@st.composite
def binomial_ratfuncs(draw):
    exps = draw(st.lists(st.fractions(min_value=Fraction(1, 3), max_value=6,
                                      max_denominator=3), min_size=1, max_size=4))
    num = draw(polys(min_exp=-4, max_exp=8, max_grain=2).filter(lambda p: not p.is_zero))
    den = _binomial_product({v: list(exps).count(v) for v in set(exps)})
    return RatFunc(num, den, tuple(exps)), RatFunc(num, den)


@given(binomial_ratfuncs())
@settings(max_examples=50, deadline=None)
def test_hinted_reduce_matches_generic(pair):
    hinted, generic = pair
    rh, rg = hinted.reduced(), generic.reduced()
    assert rh.num == rg.num
    assert rh.den == rg.den


@given(binomial_ratfuncs(), binomial_ratfuncs())
@settings(max_examples=50, deadline=None)
def test_hinted_arithmetic_matches_generic(p1, p2):
    (ha, ga), (hb, gb) = p1, p2
    assert ha + hb == ga + gb
    assert ha * hb == ga * gb
    assert (ha + hb).reduced() == (ga + gb).reduced()


# ---------------------------------------------------------------------------
# limits at q = 1
# ---------------------------------------------------------------------------

def test_limit_frozen_examples():
    # (1 - q^3)/(q^4 - 1) -> -3/4 by l'Hopital
    f = RatFunc(GradedPoly({0: 1, 3: -1}), GradedPoly({4: 1, 0: -1}))
    assert f.limit_at_one() == Fraction(-3, 4)
    # weight factor with m = 2, d = 1: (1 - q^2)/(q^3 - 1) -> -2/3
    g = RatFunc(GradedPoly({0: 1, 2: -1}), GradedPoly({3: 1, 0: -1}))
    assert g.limit_at_one() == Fraction(-2, 3)


def test_limit_weight_identity():
    # (1 - q^(m/d))/(q^(1+m/d) - 1) -> -m/(m+d), fractional exponents exact
    for m in (-8, -3, -1, 1, 2, 5, 7):
        for d in (1, 2, 3, 4):
            if m + d == 0:
                continue
            num = GradedPoly({0: 1}) - GradedPoly({m: 1}, d)  # 1 - q^(m/d)
            den = GradedPoly({d + m: 1, 0: -1}, d)
            f = RatFunc(num, den)
            assert f.limit_at_one() == Fraction(-m, m + d), (m, d)


def test_limit_pole_detected():
    f = RatFunc(GradedPoly.one(), GradedPoly({1: 1, 0: -1}))
    with pytest.raises(PoleAtOneError):
        f.limit_at_one()


def test_limit_against_sympy():
    f = RatFunc(
        GradedPoly({0: 1, 1: -2, 2: 1}),  # (q-1)^2
        GradedPoly({2: 1, 1: -1, 0: -1, 3: -1}) + GradedPoly({3: 2, 1: -1}),
    )
    expr = to_sympy(f.num) / to_sympy(f.den)
    try:
        ours = f.limit_at_one()
    except PoleAtOneError:
        assert sympy.limit(expr, Q, 1) in (sympy.oo, -sympy.oo, sympy.zoo)
    else:
        assert sympy.Rational(ours) == sympy.limit(expr, Q, 1)
