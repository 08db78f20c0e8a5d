"""Pair-spec files and exact serialization.

Input files are TOML with a `kind` discriminator:

    kind = "projective_space"   n, d, assignment = [[coord, mult], ...]
    kind = "balanced_model"     n, d, mults = [m1, ...]
    kind = "explicit"           n, d, divisors = [[label, mult], ...],
                                d_canonical (optional),
                                [[strata]] subset = [...], coeffs = [[exp, c], ...]
    kind = "fibration"          [base] and [fiber] sub-tables (each a pair spec)
    kind = "blowup_chain"       [base] sub-table, [[centers]] each either
                                divisors = [...] or coordinates = [...]
    kind = "discrepancy"        values = ["p/q", ...]

Pair kinds accept an optional top-level `discrepancies` list.  Exactness
survives serialization: rationals travel as "p/q" strings, polynomial
exponents as [numerator, grain] integer pairs; no floats anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence, Union

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .errors import SncBcovError, SpecFormatError
from .exact import GradedPoly, RatFunc
from .motivic import DiscrepancyData
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
from .tau import TauExpr

PAIR_KINDS = (
    "projective_space",
    "balanced_model",
    "explicit",
    "fibration",
    "blowup_chain",
)


@dataclass(frozen=True)
class LoadedSpec:
    kind: str
    pair: Optional[SncPair] = None
    records: tuple[BlowupRecord, ...] = ()
    discrepancies: Optional[DiscrepancyData] = None


# ---------------------------------------------------------------------------
# rational / polynomial serialization helpers
# ---------------------------------------------------------------------------

def parse_rational(text: Union[str, int], where: str = "value") -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise SpecFormatError(f"{where}: bad rational {text!r}: {e}") from None


def fraction_str(x: Union[int, Fraction]) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def poly_json(p: GradedPoly) -> list:
    """Sorted [[exponent numerator, grain], "p/q"] pairs."""
    return [[[e, p.grain], fraction_str(c)] for e, c in p.terms]


def ratfunc_json(r: RatFunc) -> dict:
    r = r.reduced()
    return {"num": poly_json(r.num), "den": poly_json(r.den)}


def tau_expr_json(e: TauExpr) -> dict:
    return {
        "atoms": [[a.kind, a.label, fraction_str(c)] for a, c in e.terms],
        "constant": fraction_str(e.constant),
    }


# ---------------------------------------------------------------------------
# loading
# ---------------------------------------------------------------------------

def _want(table: dict, key: str, types, where: str):
    if key not in table:
        raise SpecFormatError(f"{where}: missing required field '{key}'")
    v = table[key]
    if not isinstance(v, types):
        raise SpecFormatError(f"{where}: field '{key}' has the wrong type")
    return v


def _int_list(v: Any, where: str) -> list[int]:
    if not isinstance(v, list) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in v
    ):
        raise SpecFormatError(f"{where}: expected a list of integers")
    return list(v)


def _int_pairs(v: Any, where: str) -> list[tuple[int, int]]:
    out = []
    for i, item in enumerate(v if isinstance(v, list) else ()):
        pair = _int_list(item, f"{where}[{i}]")
        if len(pair) != 2:
            raise SpecFormatError(f"{where}[{i}]: expected [a, b]")
        out.append((pair[0], pair[1]))
    if not isinstance(v, list):
        raise SpecFormatError(f"{where}: expected a list")
    return out


def _build_pair(table: dict, where: str) -> tuple[SncPair, tuple[BlowupRecord, ...]]:
    kind = _want(table, "kind", str, where)
    if kind == "projective_space":
        n = _want(table, "n", int, where)
        d = _want(table, "d", int, where)
        assignment = _int_pairs(_want(table, "assignment", list, where), f"{where}.assignment")
        return projective_space_pair(n, d, assignment), ()
    if kind == "balanced_model":
        n = _want(table, "n", int, where)
        d = _want(table, "d", int, where)
        mults = _int_list(_want(table, "mults", list, where), f"{where}.mults")
        return d_canonical_projective_model(n, d, mults), ()
    if kind == "explicit":
        return _build_explicit(table, where), ()
    if kind == "fibration":
        base, _ = _build_pair(_want(table, "base", dict, where), f"{where}.base")
        fiber, _ = _build_pair(_want(table, "fiber", dict, where), f"{where}.fiber")
        return fibration_pair(base, fiber), ()
    if kind == "blowup_chain":
        return _build_chain(table, where)
    raise SpecFormatError(f"{where}: unknown kind {kind!r}")


def _build_explicit(table: dict, where: str) -> SncPair:
    n = _want(table, "n", int, where)
    d = _want(table, "d", int, where)
    divisors = []
    for i, item in enumerate(_want(table, "divisors", list, where)):
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not isinstance(item[0], str)
            or not isinstance(item[1], int)
        ):
            raise SpecFormatError(f"{where}.divisors[{i}]: expected [label, mult]")
        divisors.append((item[0], item[1]))
    strata: dict[frozenset[int], MotClass] = {}
    for i, entry in enumerate(table.get("strata", [])):
        w = f"{where}.strata[{i}]"
        if not isinstance(entry, dict):
            raise SpecFormatError(f"{w}: expected a table")
        subset = frozenset(_int_list(_want(entry, "subset", list, w), f"{w}.subset"))
        coeffs = _int_pairs(_want(entry, "coeffs", list, w), f"{w}.coeffs")
        if subset in strata:
            raise SpecFormatError(f"{w}: duplicate subset {sorted(subset)}")
        strata[subset] = MotClass(GradedPoly(dict(coeffs)))
    d_canonical = table.get("d_canonical", False)
    if not isinstance(d_canonical, bool):
        raise SpecFormatError(f"{where}: d_canonical must be a boolean")
    return SncPair(
        n=n, d=d, divisors=tuple(divisors), strata=strata, d_canonical=d_canonical
    )


def _build_chain(table: dict, where: str) -> tuple[SncPair, tuple[BlowupRecord, ...]]:
    pair, _ = _build_pair(_want(table, "base", dict, where), f"{where}.base")
    records = []
    for i, entry in enumerate(_want(table, "centers", list, where)):
        w = f"{where}.centers[{i}]"
        if not isinstance(entry, dict):
            raise SpecFormatError(f"{w}: expected a table")
        center = parse_center(pair, entry, w)
        rec = blow_up(pair, center)
        records.append(rec)
        pair = rec.new_pair
    return pair, tuple(records)


def parse_center(pair: SncPair, entry: dict, where: str = "center"):
    has_div = "divisors" in entry
    has_coord = "coordinates" in entry
    if has_div == has_coord:
        raise SpecFormatError(
            f"{where}: exactly one of 'divisors' or 'coordinates' is required"
        )
    if has_div:
        return stratum_center(pair, _int_list(entry["divisors"], f"{where}.divisors"))
    return coordinate_center(
        pair, _int_list(entry["coordinates"], f"{where}.coordinates")
    )


def load_pair_spec(path: str) -> LoadedSpec:
    """Parse and fully validate one spec file."""
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as e:
        raise SpecFormatError(f"{path}: {e}") from None
    except tomllib.TOMLDecodeError as e:
        raise SpecFormatError(f"{path}: TOML parse error: {e}") from None
    return interpret_spec(data, where=path)


def interpret_spec(data: dict, where: str = "spec") -> LoadedSpec:
    kind = _want(data, "kind", str, where)
    if kind == "discrepancy":
        values = _want(data, "values", list, where)
        return LoadedSpec(
            kind=kind,
            discrepancies=DiscrepancyData.of([parse_rational(v) for v in values]),
        )
    if kind not in PAIR_KINDS:
        raise SpecFormatError(f"{where}: unknown kind {kind!r}")
    pair, records = _build_pair(data, where)
    disc = None
    if "discrepancies" in data:
        disc = DiscrepancyData.of(
            [parse_rational(v) for v in _want(data, "discrepancies", list, where)]
        )
    return LoadedSpec(kind=kind, pair=pair, records=records, discrepancies=disc)


# ---------------------------------------------------------------------------
# emitting
# ---------------------------------------------------------------------------

def _toml_scalar(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, str):
        escaped = v.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_toml_scalar(x) for x in v) + "]"
    raise TypeError(f"cannot emit {type(v).__name__} as TOML")


def emit_pair_spec(
    pair: SncPair, discrepancies: Optional[DiscrepancyData] = None
) -> str:
    """Render a pair in explicit form; load(emit(p)) reproduces the strata."""
    lines = [
        'kind = "explicit"',
        f"n = {pair.n}",
        f"d = {pair.d}",
        f"d_canonical = {_toml_scalar(pair.d_canonical)}",
        f"divisors = {_toml_scalar([list(x) for x in pair.divisors])}",
    ]
    if discrepancies is not None:
        vals = [fraction_str(v) for v in discrepancies.values]
        lines.append(f"discrepancies = {_toml_scalar(vals)}")
    for J, cls in pair.nonzero_strata():
        lines.append("")
        lines.append("[[strata]]")
        lines.append(f"subset = {_toml_scalar(sorted(J))}")
        coeffs = [[e, c] for e, c in cls.poly.terms]
        lines.append(f"coeffs = {_toml_scalar(coeffs)}")
    return "\n".join(lines) + "\n"


def emit_spec_dict(data: dict) -> str:
    """Render a nested spec dict (the shape interpret_spec accepts) as TOML.

    Scalars and plain lists become key = value lines; dict values become
    [sub] tables and lists of dicts become [[sub]] array tables.  Covers
    exactly the shapes this package generates."""

    def walk(table: dict, prefix: str, out: list[str]) -> None:
        plain = {k: v for k, v in table.items() if not isinstance(v, dict)
                 and not (isinstance(v, list) and v and isinstance(v[0], dict))}
        for k, v in plain.items():
            out.append(f"{k} = {_toml_scalar(v)}")
        for k, v in table.items():
            if isinstance(v, dict):
                name = f"{prefix}{k}"
                out.append("")
                out.append(f"[{name}]")
                walk(v, f"{name}.", out)
        for k, v in table.items():
            if isinstance(v, list) and v and isinstance(v[0], dict):
                name = f"{prefix}{k}"
                for item in v:
                    out.append("")
                    out.append(f"[[{name}]]")
                    walk(item, f"{name}.", out)

    lines: list[str] = []
    walk(data, "", lines)
    return "\n".join(lines) + "\n"


def loads_pair_spec(text: str, where: str = "spec") -> LoadedSpec:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise SpecFormatError(f"{where}: TOML parse error: {e}") from None
    return interpret_spec(data, where)
