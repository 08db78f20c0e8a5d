"""Exact arithmetic: graded Laurent polynomials and rational functions over Q.

A GradedPoly of grain k in the formal variable q is a finite rational linear
combination of monomials q^(e/k) with integer (possibly negative) exponent
keys e.  The grain makes fractional exponents exact: the polynomial
q^(1/2) - 3 is stored with grain 2 as {1: 1, 0: -3}.  Canonical form divides
the grain and all exponent keys by their common gcd, so two polynomials are
equal iff their stored data are equal, regardless of how they were built.

Coefficients are exact rationals.  Integral values are stored as plain int
(Fraction normalizes through a gcd on every operation, which is measurably
slow in the inner loops here); int and Fraction mix exactly in Python.

RatFunc is a quotient of two GradedPolys.  Equality is equality as rational
functions (cross multiplication), independent of representation.  reduced()
returns the canonical representative: numerator and denominator coprime in
the Laurent ring, denominator an ordinary monic polynomial in q^(1/k) with
nonzero constant term (all monomial units pushed into the numerator).

Denominators arising from the zeta-style sums in this package are products
of binomials q^v - 1.  RatFunc carries that factorization as an optional
internal hint; reduced() then cancels by trial division with cyclotomic
polynomials instead of a generic gcd, which is orders of magnitude faster at
the degrees the verification corpus produces.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Mapping, Union

from .errors import FractionalExponentError, PoleAtOneError, ZeroDenominatorError

Coeff = Union[int, Fraction]
TermsLike = Union[Mapping[int, Coeff], Iterable[tuple[int, Coeff]]]


def _coeff(c: Coeff) -> Coeff:
    """Normalize a coefficient: exact rational, stored as int when integral."""
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"coefficient must be int or Fraction, got {type(c).__name__}")


# ---------------------------------------------------------------------------
# graded Laurent polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GradedPoly:
    """Laurent polynomial in q^(1/grain) with exact rational coefficients."""

    terms: tuple[tuple[int, Coeff], ...] = ()
    grain: int = 1

    def __post_init__(self) -> None:
        if not isinstance(self.grain, int) or self.grain < 1:
            raise ValueError("grain must be a positive integer")
        raw = self.terms.items() if isinstance(self.terms, Mapping) else self.terms
        merged: dict[int, Coeff] = {}
        for e, c in raw:
            if not isinstance(e, int):
                raise TypeError("exponent keys must be integers")
            v = merged.get(e, 0) + c
            if v:
                merged[e] = v
            elif e in merged:
                del merged[e]
        g = self.grain
        for e in merged:
            g = gcd(g, e)
        if not merged:
            g = self.grain  # zero polynomial: grain collapses to 1
            object.__setattr__(self, "grain", 1)
            object.__setattr__(self, "terms", ())
            return
        if g > 1:
            merged = {e // g: c for e, c in merged.items()}
            object.__setattr__(self, "grain", self.grain // g)
        object.__setattr__(
            self, "terms", tuple((e, _coeff(c)) for e, c in sorted(merged.items()))
        )

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> GradedPoly:
        return cls((), 1)

    @classmethod
    def one(cls) -> GradedPoly:
        return cls(((0, 1),), 1)

    @classmethod
    def constant(cls, c: Coeff) -> GradedPoly:
        return cls(((0, c),), 1) if c else cls.zero()

    @classmethod
    def monomial(cls, exp: int, grain: int = 1, coeff: Coeff = 1) -> GradedPoly:
        """coeff * q^(exp/grain)."""
        return cls(((exp, coeff),), grain)

    @classmethod
    def variable(cls) -> GradedPoly:
        return cls.monomial(1)

    # -- inspection --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def as_dict(self) -> dict[int, Coeff]:
        return dict(self.terms)

    def coefficient(self, exp: Union[int, Fraction]) -> Coeff:
        """Coefficient of q^exp (exp a rational in lowest terms)."""
        e = Fraction(exp) * self.grain
        if e.denominator != 1:
            return 0
        return dict(self.terms).get(int(e), 0)

    def min_exponent(self) -> Fraction | None:
        return Fraction(self.terms[0][0], self.grain) if self.terms else None

    def max_exponent(self) -> Fraction | None:
        return Fraction(self.terms[-1][0], self.grain) if self.terms else None

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            ex = Fraction(e, self.grain)
            if ex == 0:
                parts.append(str(c))
            else:
                p = "q" if ex == 1 else f"q^{ex}" if ex.denominator == 1 else f"q^({ex})"
                parts.append(p if c == 1 else f"-{p}" if c == -1 else f"{c}*{p}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- arithmetic --------------------------------------------------------

    def _at_grain(self, k: int) -> dict[int, Coeff]:
        f = k // self.grain
        return {e * f: c for e, c in self.terms}

    def __add__(self, other: Union[GradedPoly, Coeff]) -> GradedPoly:
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        k = lcm(self.grain, other.grain)
        out = self._at_grain(k)
        for e, c in other._at_grain(k).items():
            out[e] = out.get(e, 0) + c
        return GradedPoly(out, k)

    __radd__ = __add__

    def __neg__(self) -> GradedPoly:
        return GradedPoly(tuple((e, -c) for e, c in self.terms), self.grain)

    def __sub__(self, other: Union[GradedPoly, Coeff]) -> GradedPoly:
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Coeff) -> GradedPoly:
        return (-self) + other

    def __mul__(self, other: Union[GradedPoly, Coeff]) -> GradedPoly:
        if isinstance(other, (int, Fraction)):
            if not other:
                return GradedPoly.zero()
            return GradedPoly(tuple((e, c * other) for e, c in self.terms), self.grain)
        if not isinstance(other, GradedPoly):
            return NotImplemented
        k = lcm(self.grain, other.grain)
        a = self._at_grain(k)
        b = other._at_grain(k)
        if len(a) > len(b):
            a, b = b, a
        out: dict[int, Coeff] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                out[e] = out.get(e, 0) + ca * cb
        return GradedPoly(out, k)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> GradedPoly:
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are supported")
        out = GradedPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- evaluation --------------------------------------------------------

    def evaluate(self, point: Union[int, Fraction]) -> Coeff:
        """Exact value at q = point.

        Any grain is allowed at point 1 (every monomial evaluates to 1).
        Elsewhere the exponents must be integers: fractional powers of a
        general rational are not rational.
        """
        pt = Fraction(point)
        if pt == 1:
            return _coeff(sum((Fraction(c) for _, c in self.terms), Fraction(0)))
        if self.grain != 1:
            raise FractionalExponentError(
                f"cannot evaluate grain-{self.grain} polynomial at {pt}"
            )
        total = Fraction(0)
        for e, c in self.terms:
            if pt == 0:
                if e < 0:
                    raise ZeroDivisionError("negative exponent evaluated at 0")
                if e == 0:
                    total += c
                continue
            total += c * pt ** e
        return _coeff(total)

    def derivative(self) -> GradedPoly:
        """Formal d/dq; q^(e/k) -> (e/k) q^(e/k - 1), staying in grain k."""
        k = self.grain
        return GradedPoly({e - k: c * Fraction(e, k) for e, c in self.terms if e}, k)

    def eval_derivatives(self, point: Union[int, Fraction], order: int) -> list[Coeff]:
        """[p(point), p'(point), ..., p^(order)(point)], all exact."""
        if not isinstance(order, int) or order < 0:
            raise ValueError("order must be a nonnegative integer")
        if self.grain == 1 and isinstance(point, int) and point * point == 1:
            # falling-factorial form avoids intermediate derivative polys
            out = []
            for r in range(order + 1):
                total = 0
                for e, c in self.terms:
                    ff = 1
                    for i in range(r):
                        ff *= e - i
                    if ff:
                        total += c * ff * (1 if (e - r) % 2 == 0 else point)
                out.append(_coeff(total))
            return out
        out = []
        p = self
        for _ in range(order + 1):
            out.append(p.evaluate(point))
            p = p.derivative()
        return out


def _as_poly(x: Union[GradedPoly, Coeff]) -> GradedPoly:
    if isinstance(x, GradedPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return GradedPoly.constant(x)
    return NotImplemented


# ---------------------------------------------------------------------------
# integer-polynomial helpers (ordinary coefficient lists, index = degree)
# ---------------------------------------------------------------------------

def _trimmed(a: list) -> list:
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return a[:n]


def _primitive(a: list[int]) -> list[int]:
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            return a
    if g <= 1:
        return a
    return [c // g for c in a]


def _int_poly_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd of two integer coefficient lists (fraction-free Euclid
    with gcd-balanced multipliers and per-step content trimming)."""
    a = _primitive(_trimmed(a))
    b = _primitive(_trimmed(b))
    if len(a) < len(b):
        a, b = b, a
    while True:
        if not b:
            break
        if len(b) == 1:
            a = [1]
            break
        db = len(b) - 1
        lb = b[db]
        r = list(a)
        while True:
            r = _trimmed(r)
            if len(r) - 1 < db:
                break
            lr = r[-1]
            g0 = gcd(lr, lb)
            mr, ml = lb // g0, lr // g0
            if mr != 1:
                r = [mr * c for c in r]
            sh = len(r) - 1 - db
            for i in range(db + 1):
                r[i + sh] -= ml * b[i]
            r = _primitive(r)
        a, b = b, r
    if a and a[-1] < 0:
        a = [-c for c in a]
    return a


def _exact_div_int(a: list[int], b: list[int]) -> list[int] | None:
    """Exact quotient of integer polynomials, or None when b does not divide a."""
    a = _trimmed(a)
    b = _trimmed(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return None
    r = list(a)
    lead = b[db]
    q = [0] * (da - db + 1)
    for i in range(da - db, -1, -1):
        c = r[i + db]
        if not c:
            continue
        if c % lead:
            return None
        f = c // lead
        q[i] = f
        for j in range(db + 1):
            r[i + j] -= f * b[j]
    if any(r[:db]):
        return None
    return q


def _mul_int_lists(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            if cb:
                out[i + j] += ca * cb
    return out


@lru_cache(maxsize=None)
def cyclotomic(e: int) -> tuple[int, ...]:
    """Coefficients of the e-th cyclotomic polynomial (index = degree)."""
    if e < 1:
        raise ValueError("cyclotomic index must be >= 1")
    p: list[int] = [-1] + [0] * (e - 1) + [1]
    for d in range(1, e):
        if e % d == 0:
            q = _exact_div_int(p, list(cyclotomic(d)))
            assert q is not None
            p = q
    return tuple(p)


def _cyclotomic_cancel(
    num: list[int], factor_exps: Iterable[int]
) -> tuple[list[int], list[int]]:
    """Cancel gcd(num, prod(u^f - 1)) knowing the denominator's factorization.

    Returns (num', den') with num' = num / g and den' = prod(u^f - 1) / g
    expanded, where g is the full common factor.  den' is monic with nonzero
    constant term.
    """
    mult: dict[int, int] = {}
    for f in factor_exps:
        for e in range(1, f + 1):
            if f % e == 0:
                mult[e] = mult.get(e, 0) + 1
    num = _trimmed(list(num))
    den = [1]
    for e in sorted(mult):
        phi = list(cyclotomic(e))
        remaining = mult[e]
        while remaining and num:
            q = _exact_div_int(num, phi)
            if q is None:
                break
            num = _trimmed(q)
            remaining -= 1
        for _ in range(remaining):
            den = _mul_int_lists(den, phi)
    return num, den


def _div_by_u_minus_one(a: list) -> list:
    """Exact quotient by (u - 1); callers guarantee the remainder a(1) = 0."""
    n = len(a) - 1
    if n < 0:
        return []
    out = [0] * n
    acc = a[n]
    for i in range(n - 1, -1, -1):
        out[i] = acc
        acc = a[i] + acc
    return out


def _dict_to_list(d: Mapping[int, Coeff]) -> tuple[int, list[Coeff]]:
    """(offset, coefficient list) with list[0] the coefficient of u^offset."""
    if not d:
        return 0, []
    lo = min(d)
    hi = max(d)
    out: list[Coeff] = [0] * (hi - lo + 1)
    for e, c in d.items():
        out[e - lo] = c
    return lo, out


def _clear_denominators(a: list[Coeff]) -> tuple[int, list[int]]:
    """(m, m*a) with m the positive lcm of coefficient denominators."""
    m = 1
    for c in a:
        if isinstance(c, Fraction):
            m = lcm(m, c.denominator)
    if m == 1:
        return 1, [int(c) for c in a]
    out = []
    for c in a:
        v = c * m
        out.append(int(v))
    return m, out


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RatFunc:
    """Quotient of GradedPolys; equality is as rational functions.

    den_binomials is an internal representation hint: when not None it lists
    exponents v (positive rationals, with multiplicity) such that
    den == prod(q^v - 1).  It changes no observable value, only which
    algorithm reduced() uses.
    """

    num: GradedPoly
    den: GradedPoly = field(default_factory=GradedPoly.one)
    den_binomials: tuple[Fraction, ...] | None = None

    def __post_init__(self) -> None:
        if self.den.is_zero:
            raise ZeroDenominatorError("rational function with zero denominator")
        if self.num.is_zero:
            object.__setattr__(self, "den", GradedPoly.one())
            object.__setattr__(self, "den_binomials", ())
            return
        if self.den_binomials is not None:
            object.__setattr__(
                self,
                "den_binomials",
                tuple(sorted(Fraction(v) for v in self.den_binomials)),
            )
        elif self.den == GradedPoly.one():
            object.__setattr__(self, "den_binomials", ())

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> RatFunc:
        return cls(GradedPoly.zero())

    @classmethod
    def one(cls) -> RatFunc:
        return cls(GradedPoly.one())

    @classmethod
    def from_poly(cls, p: GradedPoly) -> RatFunc:
        return cls(p)

    @classmethod
    def constant(cls, c: Coeff) -> RatFunc:
        return cls(GradedPoly.constant(c))

    # -- inspection --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __bool__(self) -> bool:
        return not self.num.is_zero

    def __str__(self) -> str:
        if self.den == GradedPoly.one():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    # -- arithmetic --------------------------------------------------------

    def __mul__(self, other) -> RatFunc:
        if isinstance(other, (int, Fraction, GradedPoly)):
            p = _as_poly(other)
            return RatFunc(self.num * p, self.den, self.den_binomials)
        if not isinstance(other, RatFunc):
            return NotImplemented
        hint = None
        if self.den_binomials is not None and other.den_binomials is not None:
            hint = self.den_binomials + other.den_binomials
        return RatFunc(self.num * other.num, self.den * other.den, hint)

    __rmul__ = __mul__

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den, self.den_binomials)

    def __add__(self, other) -> RatFunc:
        if isinstance(other, (int, Fraction, GradedPoly)):
            other = RatFunc(_as_poly(other))
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den, self.den_binomials)
        if self.den_binomials is not None and other.den_binomials is not None:
            ca = _multiset(self.den_binomials)
            cb = _multiset(other.den_binomials)
            union = {v: max(ca.get(v, 0), cb.get(v, 0)) for v in set(ca) | set(cb)}
            num = self.num * _binomial_product(_multiset_diff(union, ca)) + \
                other.num * _binomial_product(_multiset_diff(union, cb))
            den = self.den * _binomial_product(_multiset_diff(union, ca))
            flat = tuple(v for v, m in sorted(union.items()) for _ in range(m))
            return RatFunc(num, den, flat)
        num = self.num * other.den + other.num * self.den
        return RatFunc(num, self.den * other.den, None)

    __radd__ = __add__

    def __sub__(self, other) -> RatFunc:
        if isinstance(other, (int, Fraction, GradedPoly)):
            other = RatFunc(_as_poly(other))
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> RatFunc:
        return (-self) + other

    def reciprocal(self) -> RatFunc:
        if self.num.is_zero:
            raise ZeroDenominatorError("reciprocal of zero")
        return RatFunc(self.den, self.num, None)

    def __truediv__(self, other) -> RatFunc:
        if isinstance(other, (int, Fraction, GradedPoly)):
            other = RatFunc(_as_poly(other))
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self * other.reciprocal()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, GradedPoly)):
            other = RatFunc(_as_poly(other))
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.den_binomials is not None and other.den_binomials is not None:
            ca = _multiset(self.den_binomials)
            cb = _multiset(other.den_binomials)
            left = self.num * _binomial_product(_multiset_diff(cb, ca))
            right = other.num * _binomial_product(_multiset_diff(ca, cb))
            return left == right
        return self.num * other.den == other.num * self.den

    __hash__ = None  # function-equality semantics; not hashable

    # -- canonical form and limits ------------------------------------------

    def reduced(self) -> RatFunc:
        """Canonical representative: num/den coprime, den an ordinary monic
        polynomial in q^(1/grain) with nonzero constant term."""
        if self.num.is_zero:
            return RatFunc.zero()
        k = lcm(self.num.grain, self.den.grain)
        off_a, la = _dict_to_list(self.num._at_grain(k))
        off_b, lb = _dict_to_list(self.den._at_grain(k))
        shift = off_a - off_b
        sa, ia = _clear_denominators(la)
        sb, ib = _clear_denominators(lb)
        scale = Fraction(sb, sa)
        if self.den_binomials is not None:
            exps = []
            for v in self.den_binomials:
                f = v * k
                assert f.denominator == 1 and f > 0
                exps.append(int(f))
            # trust the hint: ib == prod(u^f - 1); offsets of such products are 0
            ia2, ib2 = _cyclotomic_cancel(ia, exps)
        else:
            g = _int_poly_gcd(ia, ib)
            if len(g) > 1:
                qa = _exact_div_int(ia, g)
                qb = _exact_div_int(ib, g)
                assert qa is not None and qb is not None
                ia2, ib2 = _trimmed(qa), _trimmed(qb)
            else:
                ia2, ib2 = _trimmed(ia), _trimmed(ib)
        # strip any residual monomial factor of the denominator into shift
        z = 0
        while not ib2[z]:
            z += 1
        if z:
            ib2 = ib2[z:]
            shift -= z
        lead = ib2[-1]
        num = GradedPoly(
            {shift + i: scale * Fraction(c, lead) for i, c in enumerate(ia2) if c}, k
        )
        den = GradedPoly({i: Fraction(c, lead) for i, c in enumerate(ib2) if c}, k)
        return RatFunc(num, den, None)

    def as_polynomial(self) -> GradedPoly | None:
        """The underlying Laurent polynomial, or None when the reduced
        denominator is not 1."""
        r = self.reduced()
        return r.num if r.den == GradedPoly.one() else None

    def limit_at_one(self) -> Fraction:
        """Exact limit as q -> 1, cancelling matching zeros of num and den.

        Raises PoleAtOneError when the reduced function has a genuine pole.
        """
        if self.num.is_zero:
            return Fraction(0)
        k = lcm(self.num.grain, self.den.grain)
        la = _trimmed(_dict_to_list(self.num._at_grain(k))[1])
        lb = _trimmed(_dict_to_list(self.den._at_grain(k))[1])
        while True:
            sb = sum(lb)
            if sb:
                break
            sa = sum(la)
            if sa:
                raise PoleAtOneError("pole at q = 1")
            la = _div_by_u_minus_one(la)
            lb = _div_by_u_minus_one(lb)
        return Fraction(sum(la)) / Fraction(sb)


def _multiset(items: Iterable[Fraction]) -> dict[Fraction, int]:
    out: dict[Fraction, int] = {}
    for v in items:
        out[v] = out.get(v, 0) + 1
    return out


def _multiset_diff(a: Mapping[Fraction, int], b: Mapping[Fraction, int]) -> dict[Fraction, int]:
    out = {}
    for v, m in a.items():
        r = m - b.get(v, 0)
        if r > 0:
            out[v] = r
    return out


def _binomial_product(factors: Mapping[Fraction, int]) -> GradedPoly:
    """prod (q^v - 1)^multiplicity as a GradedPoly."""
    out = GradedPoly.one()
    for v, m in sorted(factors.items()):
        k = v.denominator
        b = GradedPoly({v.numerator: 1, 0: -1}, k)
        for _ in range(m):
            out = out * b
    return out
