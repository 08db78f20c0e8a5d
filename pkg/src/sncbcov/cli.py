"""Command line interface.

Results go to stdout as JSON (or TOML for `blowup`, whose output is itself
a loadable pair spec); diagnostics go to stderr.  Exit codes: 0 on success,
1 when a verification ran and found a counterexample, 2 on invalid input.
The SNC_SEED environment variable overrides any --seed flag.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional

from . import __version__
from .errors import SncBcovError, SpecFormatError
from .invariants import chi_d, invariant_vector
from .motivic import (
    DiscrepancyData,
    det_line_exponents,
    stringy_invariants,
    zeta_evaluate,
)
from .pairs import blow_up, coordinate_center, stratum_center
from .specio import (
    LoadedSpec,
    emit_pair_spec,
    fraction_str,
    load_pair_spec,
    parse_rational,
    poly_json,
    ratfunc_json,
    tau_expr_json,
)
from .suite import (
    PHASES,
    SuiteLimits,
    render_report,
    run_verification_suite,
    summary_lines,
)
from .tau import (
    TauExpr,
    normalization_term,
    opaque,
    tau_bir,
    tau_via_chain,
)


def _emit_json(data: dict) -> None:
    sys.stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")


def _load(path: str) -> LoadedSpec:
    spec = load_pair_spec(path)
    if spec.pair is None:
        raise SpecFormatError(f"{path}: spec does not describe a pair")
    return spec


def _parse_center_arg(pair, text: str):
    """Comma-separated divisor indices, or coordinates prefixed with 'c'."""
    items = [t.strip() for t in text.split(",") if t.strip()]
    if not items:
        raise SpecFormatError("empty --center argument")
    if all(t.startswith("c") for t in items):
        try:
            coords = [int(t[1:]) for t in items]
        except ValueError:
            raise SpecFormatError(f"bad coordinate center {text!r}") from None
        return coordinate_center(pair, coords)
    try:
        idxs = [int(t) for t in items]
    except ValueError:
        raise SpecFormatError(f"bad center {text!r}") from None
    return stratum_center(pair, idxs)


def _discrepancies_for(spec: LoadedSpec, override: Optional[str]) -> DiscrepancyData:
    if override is not None:
        values = [parse_rational(v, "--discrepancies") for v in override.split(",")]
        return DiscrepancyData.of(values)
    if spec.discrepancies is not None:
        return spec.discrepancies
    return DiscrepancyData.zeros(spec.pair.size)


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_pair_validate(args) -> int:
    spec = _load(args.spec)
    pair = spec.pair
    _emit_json(
        {
            "valid": True,
            "kind": spec.kind,
            "n": pair.n,
            "d": pair.d,
            "divisors": [[pair.label(j), pair.multiplicity(j)] for j in range(pair.size)],
            "nonzero_strata": len(pair.nonzero_strata()),
            "d_canonical": pair.d_canonical,
            "effective": pair.is_effective,
        }
    )
    return 0


def _cmd_invariants(args) -> int:
    spec = _load(args.spec)
    vec = invariant_vector(spec.pair)
    _emit_json(
        {
            "n": spec.pair.n,
            "d": spec.pair.d,
            "chi": fraction_str(vec.chi),
            "chi_prime": fraction_str(vec.chi_prime),
            "chi_double_prime": fraction_str(vec.chi_double_prime),
        }
    )
    return 0


def _cmd_zeta(args) -> int:
    spec = _load(args.spec)
    if args.at is None:
        a = Fraction(1, spec.pair.d)
    else:
        a = parse_rational(args.at, "--at")
    func = zeta_evaluate(spec.pair, a)
    _emit_json({"at": fraction_str(a), "function": ratfunc_json(func)})
    return 0


def _cmd_stringy(args) -> int:
    spec = _load(args.spec)
    disc = _discrepancies_for(spec, args.discrepancies)
    rep = stringy_invariants(spec.pair, disc)
    out = {
        "dim": rep.dim,
        "is_polynomial": rep.is_polynomial,
        "function": ratfunc_json(rep.function),
        "polynomial": None if rep.polynomial is None else poly_json(rep.polynomial),
        "chi": None if rep.chi is None else fraction_str(rep.chi),
        "chi_prime": None if rep.chi_prime is None else fraction_str(rep.chi_prime),
        "chi_double_prime": (
            None if rep.chi_double_prime is None else fraction_str(rep.chi_double_prime)
        ),
    }
    _emit_json(out)
    return 0


def _cmd_blowup(args) -> int:
    spec = _load(args.spec)
    center = _parse_center_arg(spec.pair, args.center)
    rec = blow_up(spec.pair, center)
    print(
        f"exceptional divisor {rec.new_pair.label(rec.exceptional_index)} has "
        f"multiplicity {rec.exceptional_multiplicity}",
        file=sys.stderr,
    )
    sys.stdout.write(emit_pair_spec(rec.new_pair))
    return 0


def _cmd_detline(args) -> int:
    spec = _load(args.spec)
    pair = spec.pair
    if args.stratum is not None:
        try:
            subsets = [tuple(int(t) for t in args.stratum.split(","))]
        except ValueError:
            raise SpecFormatError(f"bad --stratum {args.stratum!r}") from None
    else:
        subsets = [tuple(sorted(J)) for J, _ in pair.nonzero_strata()]
    rows = []
    for J in subsets:
        data = det_line_exponents(pair, J)
        rows.append(
            {
                "subset": list(J),
                "coefficient": fraction_str(data.coefficient),
                "eta_exponent": fraction_str(data.eta_exponent),
            }
        )
    _emit_json({"strata": rows})
    return 0


def _cmd_tau(args) -> int:
    spec = _load(args.spec)
    pair = spec.pair
    norm = normalization_term(pair)
    if spec.records:
        raw = tau_via_chain(spec.records)
        basis = "chain"
    elif pair.d_canonical and pair.model is not None:
        raw = -norm
        basis = "model"
    else:
        raw = TauExpr.of(opaque(args.label))
        basis = "opaque"
    _emit_json(
        {
            "basis": basis,
            "normalization": tau_expr_json(norm),
            "raw_value": tau_expr_json(raw),
            "tau_bir": tau_expr_json(tau_bir(pair, raw)),
        }
    )
    return 0


def _resolve_seed(args) -> int:
    env = os.environ.get("SNC_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise SpecFormatError(f"SNC_SEED must be an integer, got {env!r}") from None
    return args.seed


def _suite_kwargs(args, phases) -> dict:
    kwargs = {
        "seed": _resolve_seed(args),
        "limits": SuiteLimits(
            n_max=args.n_max,
            d_max=args.d_max,
            m_max=args.m_max,
            chain_len=args.chain_len,
        ),
        "phases": phases,
    }
    if args.cases is not None:
        kwargs["cases"] = {name: args.cases for name in phases}
    if args.corpus_dir is not None:
        kwargs["corpus_dir"] = args.corpus_dir
    return kwargs


def _cmd_verify(args) -> int:
    phases = PHASES if args.phase == "all" else (args.phase,)
    report = run_verification_suite(**_suite_kwargs(args, phases))
    for line in summary_lines(report):
        print(line)
    return 0 if report["summary"]["ok"] else 1


def _cmd_report(args) -> int:
    report = run_verification_suite(**_suite_kwargs(args, PHASES))
    text = render_report(report)
    if args.output is not None:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"report written to {args.output}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0 if report["summary"]["ok"] else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_suite_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="RNG seed (SNC_SEED wins)")
    p.add_argument("--cases", type=int, default=None, help="cases per phase")
    p.add_argument("--n-max", type=int, default=4, dest="n_max")
    p.add_argument("--d-max", type=int, default=3, dest="d_max")
    p.add_argument("--m-max", type=int, default=5, dest="m_max")
    p.add_argument("--chain-len", type=int, default=3, dest="chain_len")
    p.add_argument("--corpus-dir", default=None, help="write generated case specs here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sncbcov",
        description="exact invariants of normal-crossing pairs",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    pair = sub.add_parser("pair", help="pair spec operations")
    pair_sub = pair.add_subparsers(dest="pair_command", required=True)
    validate = pair_sub.add_parser("validate", help="load and validate a pair spec")
    validate.add_argument("spec")
    validate.set_defaults(func=_cmd_pair_validate)

    inv = sub.add_parser("invariants", help="weighted Euler characteristics")
    inv.add_argument("spec")
    inv.set_defaults(func=_cmd_invariants)

    zeta = sub.add_parser("zeta", help="motivic zeta specialization")
    zeta.add_argument("spec")
    zeta.add_argument("--at", default=None, help="parameter a (default 1/d)")
    zeta.set_defaults(func=_cmd_zeta)

    stringy = sub.add_parser("stringy", help="stringy volume and invariants")
    stringy.add_argument("spec")
    stringy.add_argument(
        "--discrepancies",
        default=None,
        help="comma-separated rationals, one per divisor (default: from spec, else 0)",
    )
    stringy.set_defaults(func=_cmd_stringy)

    blowup = sub.add_parser("blowup", help="blow up a pair, emit the new spec")
    blowup.add_argument("spec")
    blowup.add_argument(
        "--center",
        required=True,
        help="divisor indices '0,2' or model coordinates 'c0,c2'",
    )
    blowup.set_defaults(func=_cmd_blowup)

    detline = sub.add_parser("detline", help="determinant-line exponent data")
    detline.add_argument("spec")
    detline.add_argument("--stratum", default=None, help="divisor indices '0,2'")
    detline.set_defaults(func=_cmd_detline)

    tau = sub.add_parser("tau", help="normalized birational invariant")
    tau.add_argument("spec")
    tau.add_argument("--label", default="X", help="label for opaque base values")
    tau.set_defaults(func=_cmd_tau)

    verify = sub.add_parser("verify", help="run one verification phase")
    verify.add_argument("phase", choices=PHASES + ("all",))
    _add_suite_flags(verify)
    verify.set_defaults(func=_cmd_verify)

    report = sub.add_parser("report", help="run everything, emit a JSON report")
    report.add_argument("--output", default=None, help="write report to this file")
    _add_suite_flags(report)
    report.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SncBcovError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
