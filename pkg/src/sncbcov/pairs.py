"""Strata combinatorics of simple-normal-crossing pairs.

A pair of complex dimension n consists of labeled prime divisors
D_0, ..., D_{l-1} with nonzero integer multiplicities m_j (m_j != -d for the
fixed positive integer d, so the weights -m_j/(m_j + d) used downstream are
finite and nonzero), together with the classes of all closed strata

    D_J = intersection of D_j for j in J          (D_empty = the space X).

Each class is recorded through its Poincare polynomial in t: a GradedPoly of
grain 1 with nonnegative integer exponents and integer coefficients
(MotClass).  A missing key means the stratum is empty.  Every nonzero
stratum of codimension |J| must be palindromic for dimension n - |J|,
i.e. t^(2(n-|J|)) P(1/t) = P(t); constructors and transforms validate this.

Smooth centers for blow-ups are described combinatorially: the codimension
r, the set S of divisor indices containing the center Y, and the incidence
classes [Y ∩ D_J] for J disjoint from S (intersecting with divisors in S
changes nothing, so keys are stored modulo S).  The strata of the blow-up
along Y follow the projective-bundle structure of the exceptional divisor:

    [D'_J]       = [D_J] + [Y ∩ D_J] ([P^(c-1)] - 1),   c = r - |J ∩ S|
    [D'_J ∩ E]   = [Y ∩ D_J] [P^(r-1-|J∩S|)]

with [P^k] = 0 for k < 0, and the exceptional multiplicity

    m_E = sum_{j in S} m_j + (r - 1) d.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

from .errors import (
    CenterMultiplicityError,
    EmptyStratumError,
    InvalidCenterError,
    InvalidMultiplicityError,
    InvalidPairError,
    MismatchedFormDegreeError,
    NegativeMultiplicityError,
    NoCoordinateModelError,
)
from .exact import GradedPoly

Subset = frozenset[int]


# ---------------------------------------------------------------------------
# classes of smooth projective strata
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MotClass:
    """Poincare-polynomial realization of a Grothendieck-ring class."""

    poly: GradedPoly = field(default_factory=GradedPoly.zero)

    def __post_init__(self) -> None:
        p = self.poly
        if p.is_zero:
            return
        if p.grain != 1:
            raise InvalidPairError("stratum class must have integer exponents")
        for e, c in p.terms:
            if e < 0:
                raise InvalidPairError("stratum class must have nonnegative exponents")
            if not isinstance(c, int):
                raise InvalidPairError("stratum class must have integer coefficients")

    @classmethod
    def zero(cls) -> MotClass:
        return cls(GradedPoly.zero())

    @classmethod
    def point(cls) -> MotClass:
        return cls(GradedPoly.one())

    @classmethod
    def projective_space(cls, k: int) -> MotClass:
        """[P^k] = 1 + t^2 + ... + t^(2k); zero for k < 0."""
        return _projective_space_class(max(int(k), -1))

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    def __bool__(self) -> bool:
        return bool(self.poly)

    def __add__(self, other: Union[MotClass, int]) -> MotClass:
        other = _as_class(other)
        return MotClass(self.poly + other.poly)

    __radd__ = __add__

    def __sub__(self, other: Union[MotClass, int]) -> MotClass:
        other = _as_class(other)
        return MotClass(self.poly - other.poly)

    def __rsub__(self, other: int) -> MotClass:
        return _as_class(other) - self

    def __neg__(self) -> MotClass:
        return MotClass(-self.poly)

    def __mul__(self, other: Union[MotClass, int]) -> MotClass:
        if isinstance(other, int):
            return MotClass(self.poly * other)
        if not isinstance(other, MotClass):
            return NotImplemented
        return MotClass(self.poly * other.poly)

    __rmul__ = __mul__

    def euler(self) -> int:
        """Topological Euler characteristic P(-1)."""
        return int(self.poly.evaluate(-1))

    def palindromic_for_dim(self, dim: int) -> bool:
        """t^(2 dim) P(1/t) == P(t)."""
        if self.poly.is_zero:
            return True
        coeffs = self.poly.as_dict()
        return all(coeffs.get(2 * dim - e, 0) == c for e, c in coeffs.items())

    def __str__(self) -> str:
        return str(self.poly).replace("q", "t")


def _as_class(x: Union[MotClass, int]) -> MotClass:
    if isinstance(x, MotClass):
        return x
    if isinstance(x, int):
        return MotClass(GradedPoly.constant(x))
    return NotImplemented


@lru_cache(maxsize=None)
def _projective_space_class(k: int) -> MotClass:
    if k < 0:
        return MotClass(GradedPoly.zero())
    return MotClass(GradedPoly({2 * i: 1 for i in range(k + 1)}))


@lru_cache(maxsize=8192)
def _stratum_class_defect(cls: MotClass, dim: int) -> Union[str, None]:
    """Validation verdict for one stratum class at one dimension, memoized
    because the same small classes recur across pairs."""
    top = cls.poly.max_exponent()
    if top is not None and top > 2 * dim:
        return f"has degree {top} > 2*dim = {2*dim}"
    if not cls.palindromic_for_dim(dim):
        return f"is not palindromic for dimension {dim}"
    return None


def sorted_subsets(keys: Iterable[Subset]) -> list[Subset]:
    """Deterministic order: by cardinality, then lexicographically."""
    return sorted(keys, key=lambda J: (len(J), sorted(J)))


# ---------------------------------------------------------------------------
# SNC pairs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoordinateModel:
    """Tag recording that the pair is projective space with its divisors
    assigned to coordinate hyperplanes: pairs (coordinate index, divisor
    index)."""

    assigned: tuple[tuple[int, int], ...] = ()

    def coordinate_of(self, divisor_index: int) -> int | None:
        for coord, j in self.assigned:
            if j == divisor_index:
                return coord
        return None

    def divisor_at(self, coord: int) -> int | None:
        for c, j in self.assigned:
            if c == coord:
                return j
        return None


@dataclass(frozen=True)
class SncPair:
    n: int
    d: int
    divisors: tuple[tuple[str, int], ...]
    strata: dict[Subset, MotClass]
    d_canonical: bool = False
    model: CoordinateModel | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 0:
            raise InvalidPairError("dimension must be a nonnegative integer")
        if not isinstance(self.d, int) or self.d < 1:
            raise InvalidPairError("the degree d must be a positive integer")
        divisors = tuple((str(lab), int(m)) for lab, m in self.divisors)
        labels = [lab for lab, _ in divisors]
        if len(set(labels)) != len(labels) or any(not lab for lab in labels):
            raise InvalidPairError("divisor labels must be unique and nonempty")
        for lab, m in divisors:
            if m == 0:
                raise InvalidMultiplicityError(f"divisor {lab} has multiplicity 0")
            if m == -self.d:
                raise InvalidMultiplicityError(
                    f"divisor {lab} has multiplicity -d = {m}, weights undefined"
                )
        object.__setattr__(self, "divisors", divisors)
        cleaned: dict[Subset, MotClass] = {}
        for J, cls in self.strata.items():
            J = frozenset(J)
            if not all(isinstance(j, int) and 0 <= j < len(divisors) for j in J):
                raise InvalidPairError(f"stratum key {sorted(J)} out of range")
            if cls.is_zero:
                continue
            if len(J) > self.n:
                raise InvalidPairError(
                    f"nonzero stratum {sorted(J)} deeper than the dimension"
                )
            err = _stratum_class_defect(cls, self.n - len(J))
            if err is not None:
                raise InvalidPairError(f"stratum {sorted(J)} {err}")
            cleaned[J] = cls
        if frozenset() not in cleaned:
            raise EmptyStratumError("the ambient class (empty-subset stratum) is zero")
        ordered = {J: cleaned[J] for J in sorted_subsets(cleaned)}
        object.__setattr__(self, "strata", ordered)
        if self.model is not None:
            coords = [c for c, _ in self.model.assigned]
            idxs = [j for _, j in self.model.assigned]
            if len(set(coords)) != len(coords) or len(set(idxs)) != len(idxs):
                raise InvalidPairError("coordinate model assigns coordinates twice")
            if any(not (0 <= c <= self.n) for c in coords):
                raise InvalidPairError("coordinate index out of range")
            if sorted(idxs) != list(range(len(divisors))):
                raise InvalidPairError("coordinate model must assign every divisor")

    # -- accessors -----------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.divisors)

    def label(self, j: int) -> str:
        return self.divisors[j][0]

    def multiplicity(self, j: int) -> int:
        return self.divisors[j][1]

    def multiplicities(self, J: Iterable[int]) -> list[int]:
        return [self.divisors[j][1] for j in sorted(J)]

    def stratum(self, J: Iterable[int]) -> MotClass:
        return self.strata.get(frozenset(J), MotClass.zero())

    def nonzero_strata(self) -> list[tuple[Subset, MotClass]]:
        # construction already ordered the dict by (cardinality, indices)
        return list(self.strata.items())

    @property
    def is_effective(self) -> bool:
        return all(m > 0 for _, m in self.divisors)

    def multiplicity_sum(self) -> int:
        return sum(m for _, m in self.divisors)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def projective_space_pair(
    n: int, d: int, assignment: Sequence[tuple[int, int]] = ()
) -> SncPair:
    """P^n with divisors on distinct coordinate hyperplanes.

    assignment lists (coordinate index in 0..n, multiplicity).  Any k of the
    assigned hyperplanes meet in a P^(n-k), empty once k exceeds n.  The
    d-canonical certificate records whether the multiplicities sum to
    -(n+1)d.
    """
    if n < 1:
        raise InvalidPairError("projective space pair needs dimension >= 1")
    pairs = sorted((int(c), int(m)) for c, m in assignment)
    coords = [c for c, _ in pairs]
    if len(set(coords)) != len(coords):
        raise InvalidPairError("coordinates assigned twice")
    if any(not (0 <= c <= n) for c in coords):
        raise InvalidPairError("coordinate index out of range")
    divisors = tuple((f"H{c}", m) for c, m in pairs)
    nd = len(divisors)
    strata: dict[Subset, MotClass] = {}
    for mask in range(1 << nd):
        J = frozenset(j for j in range(nd) if mask >> j & 1)
        if len(J) <= n:
            strata[J] = MotClass.projective_space(n - len(J))
    return SncPair(
        n=n,
        d=d,
        divisors=divisors,
        strata=strata,
        d_canonical=sum(m for _, m in pairs) == -(n + 1) * d,
        model=CoordinateModel(tuple((c, i) for i, (c, _) in enumerate(pairs))),
    )


def d_canonical_projective_model(n: int, d: int, mults: Sequence[int]) -> SncPair:
    """The d-canonical pair on P^n with multiplicities m_1..m_s >= 0 on the
    coordinate hyperplanes 1..s and the forced balance -(sum m + (n+1)d) on
    coordinate 0.  Zero multiplicities are omitted from the divisor list."""
    mults = [int(m) for m in mults]
    if any(m < 0 for m in mults):
        raise NegativeMultiplicityError("model multiplicities must be >= 0")
    if len(mults) > n:
        raise InvalidPairError(f"at most {n} multiplicities fit in dimension {n}")
    assignment = [(i + 1, m) for i, m in enumerate(mults) if m]
    assignment.append((0, -(sum(mults) + (n + 1) * d)))
    return projective_space_pair(n, d, assignment)


def _unique_label(lab: str, used: set[str]) -> str:
    while lab in used:
        lab += "'"
    return lab


def fibration_pair(base: SncPair, fiber: SncPair) -> SncPair:
    """Product pair: strata multiply, divisors are pulled back from both
    factors.  The d-canonical certificate is the conjunction of the factor
    certificates (a convention; reports flag it)."""
    if base.d != fiber.d:
        raise MismatchedFormDegreeError(
            f"base has d = {base.d} but fiber has d = {fiber.d}"
        )
    used = {lab for lab, _ in base.divisors}
    divisors = list(base.divisors)
    for lab, m in fiber.divisors:
        lab = _unique_label(lab, used)
        used.add(lab)
        divisors.append((lab, m))
    lb = base.size
    strata: dict[Subset, MotClass] = {}
    for Jb, cb in base.nonzero_strata():
        for Jf, cf in fiber.nonzero_strata():
            strata[Jb | frozenset(lb + j for j in Jf)] = cb * cf
    return SncPair(
        n=base.n + fiber.n,
        d=base.d,
        divisors=tuple(divisors),
        strata=strata,
        d_canonical=base.d_canonical and fiber.d_canonical,
        model=None,
    )


# ---------------------------------------------------------------------------
# blow-up centers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CenterDescriptor:
    """Smooth irreducible center Y of codimension r.

    contains: indices of the divisors containing Y.
    incidence: [Y ∩ D_J] for J disjoint from `contains` (other keys reduce
    modulo `contains`); the empty key is [Y] itself.
    """

    r: int
    contains: Subset
    incidence: dict[Subset, MotClass]

    def __post_init__(self) -> None:
        if not isinstance(self.r, int) or self.r < 1:
            raise InvalidCenterError("codimension r must be a positive integer")
        contains = frozenset(self.contains)
        object.__setattr__(self, "contains", contains)
        cleaned: dict[Subset, MotClass] = {}
        for J, cls in self.incidence.items():
            J = frozenset(J) - contains
            if cls.is_zero:
                continue
            if J in cleaned and cleaned[J] != cls:
                raise InvalidCenterError(
                    f"incidence key {sorted(J)} assigned two different classes"
                )
            cleaned[J] = cls
        if frozenset() not in cleaned:
            raise InvalidCenterError("center has zero class (empty center)")
        ordered = {J: cleaned[J] for J in sorted_subsets(cleaned)}
        object.__setattr__(self, "incidence", ordered)

    def incidence_class(self, J: Iterable[int]) -> MotClass:
        return self.incidence.get(frozenset(J) - self.contains, MotClass.zero())


def stratum_center(pair: SncPair, J0: Iterable[int]) -> CenterDescriptor:
    """The closed stratum D_J0 as a blow-up center (codimension |J0|)."""
    J0 = frozenset(J0)
    if not J0:
        raise InvalidCenterError("stratum center needs a nonempty subset")
    if not all(0 <= j < pair.size for j in J0):
        raise InvalidCenterError("stratum center index out of range")
    if pair.stratum(J0).is_zero:
        raise EmptyStratumError(f"stratum {sorted(J0)} is empty")
    incidence = {
        J - J0: cls for J, cls in pair.nonzero_strata() if J >= J0
    }
    return CenterDescriptor(r=len(J0), contains=J0, incidence=incidence)


def coordinate_center(pair: SncPair, coords: Iterable[int]) -> CenterDescriptor:
    """The coordinate subspace {xi_c = 0 for c in coords} of a coordinate
    model pair.  Requires the model tag (transforms drop it)."""
    if pair.model is None:
        raise NoCoordinateModelError("pair carries no coordinate model tag")
    coords = frozenset(int(c) for c in coords)
    if not coords:
        raise InvalidCenterError("coordinate center needs at least one coordinate")
    if not all(0 <= c <= pair.n for c in coords):
        raise InvalidCenterError("coordinate index out of range")
    r = len(coords)
    if r > pair.n:
        raise InvalidCenterError("all coordinates vanish only on the empty set")
    S = frozenset(
        j for c in coords if (j := pair.model.divisor_at(c)) is not None
    )
    others = [j for j in range(pair.size) if j not in S]
    incidence: dict[Subset, MotClass] = {}
    for mask in range(1 << len(others)):
        K = frozenset(others[i] for i in range(len(others)) if mask >> i & 1)
        cls = MotClass.projective_space(pair.n - r - len(K))
        if not cls.is_zero:
            incidence[K] = cls
    return CenterDescriptor(r=r, contains=S, incidence=incidence)


# ---------------------------------------------------------------------------
# transforms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BlowupRecord:
    pair: SncPair
    center: CenterDescriptor
    new_pair: SncPair
    exceptional_index: int
    exceptional_multiplicity: int


def exceptional_multiplicity(mults: Sequence[int], r: int, d: int) -> int:
    """m_E = sum of the center's divisor multiplicities + (r-1)d."""
    return sum(mults) + (r - 1) * d


def blow_up(pair: SncPair, center: CenterDescriptor) -> BlowupRecord:
    """Blow up a smooth center, transforming all strata classes.

    Requires positive multiplicity on every divisor containing the center.
    The exceptional divisor is appended with multiplicity m_E; m_E equal to
    0 or -d would break the pair invariants and is refused.
    """
    S = center.contains
    if not all(0 <= j < pair.size for j in S):
        raise InvalidCenterError("center names a divisor index out of range")
    if any(not (0 <= j < pair.size) for K in center.incidence for j in K):
        raise InvalidCenterError("incidence key out of range")
    if center.r > pair.n:
        raise InvalidCenterError("center codimension exceeds the dimension")
    for j in sorted(S):
        if pair.multiplicity(j) <= 0:
            raise CenterMultiplicityError(
                f"center lies in divisor {pair.label(j)} of multiplicity "
                f"{pair.multiplicity(j)} <= 0"
            )
    r = center.r
    m_e = exceptional_multiplicity(pair.multiplicities(S), r, pair.d)
    if m_e == -pair.d:
        raise InvalidMultiplicityError(
            f"exceptional multiplicity would be -d = {m_e}"
        )
    if m_e == 0:
        raise InvalidMultiplicityError(
            "exceptional multiplicity would be 0 (codimension-1 center outside "
            "the divisor); the blow-up is the identity"
        )
    used = {lab for lab, _ in pair.divisors}
    k = 1
    while f"E{k}" in used:
        k += 1
    e_index = pair.size
    divisors = pair.divisors + ((f"E{k}", m_e),)

    candidates = set(pair.strata)
    s_list = sorted(S)
    for K in center.incidence:
        for mask in range(1 << len(s_list)):
            T = frozenset(s_list[i] for i in range(len(s_list)) if mask >> i & 1)
            candidates.add(K | T)
    strata: dict[Subset, MotClass] = {}
    for J in sorted_subsets(candidates):
        inc = center.incidence_class(J)
        c = r - len(J & S)
        transformed = pair.stratum(J) + inc * (MotClass.projective_space(c - 1) - 1)
        if not transformed.is_zero:
            strata[J] = transformed
        on_e = inc * MotClass.projective_space(r - 1 - len(J & S))
        if not on_e.is_zero:
            strata[J | {e_index}] = on_e
    new_pair = SncPair(
        n=pair.n,
        d=pair.d,
        divisors=divisors,
        strata=strata,
        d_canonical=pair.d_canonical,
        model=None,
    )
    return BlowupRecord(
        pair=pair,
        center=center,
        new_pair=new_pair,
        exceptional_index=e_index,
        exceptional_multiplicity=m_e,
    )


def restrict_to_divisor(pair: SncPair, j: int) -> SncPair:
    """The pair (D_j, other divisors restricted to D_j); dimension drops by
    one, strata re-key through J |-> J ∪ {j}.  No d-canonical claim is made
    for the restriction."""
    if not (0 <= j < pair.size):
        raise InvalidPairError(f"divisor index {j} out of range")
    if pair.stratum({j}).is_zero:
        raise EmptyStratumError(f"divisor {pair.label(j)} has empty class")
    keep = [i for i in range(pair.size) if i != j]
    reindex = {old: new for new, old in enumerate(keep)}
    strata = {
        frozenset(reindex[i] for i in J - {j}): cls
        for J, cls in pair.nonzero_strata()
        if j in J
    }
    return SncPair(
        n=pair.n - 1,
        d=pair.d,
        divisors=tuple(pair.divisors[i] for i in keep),
        strata=strata,
        d_canonical=False,
        model=None,
    )


def center_pair(pair: SncPair, center: CenterDescriptor) -> SncPair:
    """The pair (Y, divisors not containing Y restricted to Y) built from a
    center's incidence data."""
    S = center.contains
    if not all(0 <= j < pair.size for j in S):
        raise InvalidCenterError("center names a divisor index out of range")
    if center.r > pair.n:
        raise InvalidCenterError("center codimension exceeds the dimension")
    keep = [i for i in range(pair.size) if i not in S]
    reindex = {old: new for new, old in enumerate(keep)}
    strata = {
        frozenset(reindex[i] for i in K): cls
        for K, cls in center.incidence.items()
    }
    return SncPair(
        n=pair.n - center.r,
        d=pair.d,
        divisors=tuple(pair.divisors[i] for i in keep),
        strata=strata,
        d_canonical=False,
        model=None,
    )
