"""Randomized verification corpus and machine-readable reports.

Each phase generates small pairs deterministically from a seeded RNG, runs
one family of exact certificates, and records every case (pass or fail)
with enough data to reproduce it.  Failures never raise out of a phase:
they become report entries, and the suite's exit status is derived from the
summary.  With a fixed seed the rendered report is byte identical across
runs; nothing in it depends on time, paths, or hashing order.
"""
from __future__ import annotations

import json
import os
import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import __version__
from .errors import SncBcovError
from .invariants import chi_d
from .motivic import change_of_variables_check, specialization_limit
from .pairs import (
    SncPair,
    blow_up,
    coordinate_center,
    d_canonical_projective_model,
    projective_space_pair,
    stratum_center,
)
from .specio import (
    emit_spec_dict,
    fraction_str,
    ratfunc_json,
    tau_expr_json,
)
from .tau import (
    verify_blowup_record,
    verify_bundle_functional_equation,
    verify_taubir_vanishing,
)


@dataclass(frozen=True)
class SuiteLimits:
    n_max: int = 4
    d_max: int = 3
    m_max: int = 5
    chain_len: int = 3


PHASES = ("cov", "blowup", "bundle", "taubir")
DEFAULT_CASES = {"cov": 200, "blowup": 200, "bundle": 50, "taubir": 50}

CONVENTIONS = [
    "product pairs inherit the balanced certificate as the conjunction of "
    "the factors' certificates",
    "the SNC_SEED environment variable overrides any seed given on the "
    "command line",
]


# ---------------------------------------------------------------------------
# deterministic corpus generation
# ---------------------------------------------------------------------------

def _random_balanced_pair(rng: random.Random, lim: SuiteLimits):
    n = rng.randint(1, lim.n_max)
    d = rng.randint(1, lim.d_max)
    mults = [rng.randint(0, lim.m_max) for _ in range(rng.randint(0, n))]
    desc = {"kind": "balanced_model", "n": n, "d": d, "mults": mults}
    return d_canonical_projective_model(n, d, mults), desc


def _random_effective_pair(rng: random.Random, lim: SuiteLimits):
    n = rng.randint(1, lim.n_max)
    d = rng.randint(1, lim.d_max)
    coords = sorted(rng.sample(range(n + 1), rng.randint(0, n + 1)))
    assignment = [[c, rng.randint(1, lim.m_max)] for c in coords]
    desc = {"kind": "projective_space", "n": n, "d": d, "assignment": assignment}
    return projective_space_pair(n, d, assignment), desc


def _center_candidates(pair: SncPair) -> list[tuple[str, tuple[int, ...]]]:
    """Admissible centers, deterministically ordered: every nonempty stratum
    whose divisors all have positive multiplicity, plus (while a coordinate
    model is present) coordinate subspaces that do not force a zero
    exceptional multiplicity."""
    out: list[tuple[str, tuple[int, ...]]] = []
    for J, _ in pair.nonzero_strata():
        if J and all(pair.multiplicity(j) > 0 for j in J):
            out.append(("divisors", tuple(sorted(J))))
    if pair.model is not None:
        coords = list(range(pair.n + 1))
        carried = {
            c: j for c, j in pair.model.assigned
        }
        for mask in range(1, 1 << len(coords)):
            sub = tuple(c for c in coords if mask >> c & 1)
            if not 1 <= len(sub) <= pair.n:
                continue
            touched = [carried[c] for c in sub if c in carried]
            if len(sub) == 1 and not touched:
                continue  # free codimension-1 center is the identity
            if any(pair.multiplicity(j) <= 0 for j in touched):
                continue
            out.append(("coordinates", sub))
    return out


def _random_chain(rng, pair, pair_desc, lim: SuiteLimits, min_len: int = 1):
    """Blow up along 1..chain_len random admissible centers."""
    length = rng.randint(min_len, max(min_len, lim.chain_len))
    records = []
    centers_desc = []
    for _ in range(length):
        cands = _center_candidates(pair)
        if not cands:
            break
        key, idxs = cands[rng.randrange(len(cands))]
        center = (
            stratum_center(pair, idxs)
            if key == "divisors"
            else coordinate_center(pair, idxs)
        )
        rec = blow_up(pair, center)
        records.append(rec)
        centers_desc.append({key: list(idxs)})
        pair = rec.new_pair
    desc = {"kind": "blowup_chain", "base": pair_desc, "centers": centers_desc}
    return pair, records, desc


def _write_corpus_file(corpus_dir: Optional[str], name: str, desc: dict) -> None:
    if corpus_dir is None:
        return
    os.makedirs(corpus_dir, exist_ok=True)
    with open(os.path.join(corpus_dir, name), "w", encoding="utf-8") as fh:
        fh.write(emit_spec_dict(desc))


# ---------------------------------------------------------------------------
# phases
# ---------------------------------------------------------------------------

def _finish(name: str, entries: list[dict]) -> dict:
    failures = sum(1 for e in entries if not e["ok"])
    return {"cases": len(entries), "failures": failures, "entries": entries}


def _generation_failure(idx: int, desc: dict, exc: SncBcovError) -> dict:
    return {
        "id": idx,
        "case": desc,
        "ok": False,
        "error": f"generation: {type(exc).__name__}: {exc}",
    }


def _phase_cov(rng, lim, cases, corpus_dir):
    """Zeta invariance at 1/d plus the q -> 1 bridge, on effective chains."""
    entries: list[dict] = []
    while len(entries) < cases:
        pair, desc = _random_effective_pair(rng, lim)
        try:
            _, records, chain_desc = _random_chain(rng, pair, desc, lim)
        except SncBcovError as e:
            entries.append(_generation_failure(len(entries), desc, e))
            continue
        if not records:
            continue
        for step, rec in enumerate(records):
            if len(entries) >= cases:
                break
            entry = {"id": len(entries), "case": chain_desc, "step": step}
            try:
                cert = change_of_variables_check(rec)
                limit = specialization_limit(rec.new_pair, Fraction(1, rec.pair.d))
                chi = chi_d(rec.new_pair)
                entry["ok"] = cert.holds and limit == chi
                if not cert.holds:
                    entry["zeta_lhs"] = ratfunc_json(cert.lhs)
                    entry["zeta_rhs"] = ratfunc_json(cert.rhs)
                if limit != chi:
                    entry["bridge_limit"] = fraction_str(limit)
                    entry["bridge_chi_d"] = fraction_str(chi)
            except SncBcovError as e:
                entry["ok"] = False
                entry["error"] = f"{type(e).__name__}: {e}"
            if not entry["ok"] or corpus_dir is not None:
                _write_corpus_file(
                    corpus_dir, f"cov_{entry['id']:04d}.toml", chain_desc
                )
            entries.append(entry)
    return _finish("cov", entries)


def _phase_blowup(rng, lim, cases, corpus_dir):
    """chi_d invariance and the blow-up functional equation on balanced
    chains."""
    entries: list[dict] = []
    while len(entries) < cases:
        pair, desc = _random_balanced_pair(rng, lim)
        try:
            _, records, chain_desc = _random_chain(rng, pair, desc, lim)
        except SncBcovError as e:
            entries.append(_generation_failure(len(entries), desc, e))
            continue
        if not records:
            continue
        for step, rec in enumerate(records):
            if len(entries) >= cases:
                break
            entry = {"id": len(entries), "case": chain_desc, "step": step}
            try:
                chi_before = chi_d(rec.pair)
                chi_after = chi_d(rec.new_pair)
                cert = verify_blowup_record(rec)
                entry["ok"] = chi_before == chi_after and cert.ok
                if chi_before != chi_after:
                    entry["chi_before"] = fraction_str(chi_before)
                    entry["chi_after"] = fraction_str(chi_after)
                if not cert.ok:
                    entry["residual"] = tau_expr_json(cert.residual)
            except SncBcovError as e:
                entry["ok"] = False
                entry["error"] = f"{type(e).__name__}: {e}"
            if not entry["ok"] or corpus_dir is not None:
                _write_corpus_file(
                    corpus_dir, f"blowup_{entry['id']:04d}.toml", chain_desc
                )
            entries.append(entry)
    return _finish("blowup", entries)


def _phase_bundle(rng, lim, cases, corpus_dir):
    """Product functional equation: arbitrary base, model fiber."""
    entries: list[dict] = []
    while len(entries) < cases:
        which = rng.randrange(3)
        try:
            if which == 0:
                base, base_desc = _random_balanced_pair(rng, lim)
            elif which == 1:
                base, base_desc = _random_effective_pair(rng, lim)
            else:
                start, start_desc = _random_balanced_pair(rng, lim)
                base, records, base_desc = _random_chain(rng, start, start_desc, lim)
                if not records:
                    base_desc = start_desc
        except SncBcovError as e:
            entries.append(_generation_failure(len(entries), {"kind": "bundle"}, e))
            continue
        fdim = rng.randint(1, 2)
        fmults = [rng.randint(0, lim.m_max) for _ in range(rng.randint(0, fdim))]
        fiber = d_canonical_projective_model(fdim, base.d, fmults)
        case = {
            "base": base_desc,
            "fiber": {"kind": "balanced_model", "n": fdim, "d": base.d, "mults": fmults},
        }
        entry = {"id": len(entries), "case": case}
        try:
            cert = verify_bundle_functional_equation(base, fiber)
            entry["ok"] = cert.ok
            if not cert.ok:
                entry["residual"] = tau_expr_json(cert.residual)
        except SncBcovError as e:
            entry["ok"] = False
            entry["error"] = f"{type(e).__name__}: {e}"
        entries.append(entry)
    return _finish("bundle", entries)


def _phase_taubir(rng, lim, cases, corpus_dir):
    """Vanishing of the normalized value at the end of balanced chains,
    with the raw value propagated step by step."""
    entries: list[dict] = []
    while len(entries) < cases:
        pair, desc = _random_balanced_pair(rng, lim)
        try:
            _, records, chain_desc = _random_chain(rng, pair, desc, lim)
        except SncBcovError as e:
            entries.append(_generation_failure(len(entries), desc, e))
            continue
        if not records:
            continue
        entry = {"id": len(entries), "case": chain_desc, "length": len(records)}
        try:
            cert = verify_taubir_vanishing(records)
            entry["ok"] = cert.ok
            if not cert.ok:
                entry["residual"] = tau_expr_json(cert.residual)
        except SncBcovError as e:
            entry["ok"] = False
            entry["error"] = f"{type(e).__name__}: {e}"
        if not entry["ok"] or corpus_dir is not None:
            _write_corpus_file(
                corpus_dir, f"taubir_{entry['id']:04d}.toml", chain_desc
            )
        entries.append(entry)
    return _finish("taubir", entries)


_PHASE_RUNNERS = {
    "cov": _phase_cov,
    "blowup": _phase_blowup,
    "bundle": _phase_bundle,
    "taubir": _phase_taubir,
}


# ---------------------------------------------------------------------------
# suite entry points
# ---------------------------------------------------------------------------

def run_verification_suite(
    seed: int = 0,
    limits: SuiteLimits = SuiteLimits(),
    cases: Optional[dict[str, int]] = None,
    phases: Sequence[str] = PHASES,
    corpus_dir: Optional[str] = None,
) -> dict:
    counts = dict(DEFAULT_CASES)
    if cases:
        counts.update(cases)
    for name in phases:
        if name not in _PHASE_RUNNERS:
            raise ValueError(f"unknown phase {name!r}")
    results = {}
    for name in phases:
        rng = random.Random(f"{seed}:{name}")
        results[name] = _PHASE_RUNNERS[name](rng, limits, counts[name], corpus_dir)
    total = sum(r["cases"] for r in results.values())
    failed = sum(r["failures"] for r in results.values())
    return {
        "version": __version__,
        "seed": seed,
        "limits": asdict(limits),
        "counts": {name: counts[name] for name in phases},
        "conventions": CONVENTIONS,
        "phases": results,
        "summary": {"cases": total, "failures": failed, "ok": failed == 0},
    }


def render_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def summary_lines(report: dict) -> Iterable[str]:
    for name, phase in report["phases"].items():
        yield f"{name}: {phase['cases']} cases, {phase['failures']} failures"
    s = report["summary"]
    yield (
        f"total: {s['cases']} cases, {s['failures']} failures, "
        f"{'ok' if s['ok'] else 'FAILED'}"
    )
