"""Command-line front end.

Subcommands cover the full pipeline: ``analyze-structured`` and
``sample-verify`` consume the labeled pattern-block file format, while
``analyze-numeric``, ``friend`` and ``simulate`` consume a JSON system
file {"A": [[...]], "L": [[...]], "C": [[...]]}.  Reports are JSON with
sorted keys; exit status is 0 on success, 1 on rejected input, and 2 on
internal numerical failure.  Every flag can also be set through an
environment variable with the ``STRUCTFDI_`` prefix (flags win).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .numeric import (FriendSynthesisError, NumericTriple, compute_friend,
                      is_solvable)
from .patterns import PatternFormatError
from .sampling import SamplerConfig, monte_carlo_solvability
from .simulation import (FaultScenario, decompose_residual, isolate,
                         simulate_error_system, write_trace_csv)
from .structured import analyze_structured, parse_structured_system
from .subspaces import ToleranceConfig

ENV_PREFIX = "STRUCTFDI_"

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_NUMERICAL = 2


def _env(name, cast, fallback):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return fallback
    try:
        return cast(raw)
    except ValueError:
        raise SystemExit(
            f"invalid value {raw!r} for environment variable {ENV_PREFIX}{name}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="structfdi",
        description="Fault detection and isolation solvability analysis "
                    "for concrete and structured LTI systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("input", help="input file path")
        sp.add_argument("--out", default=_env("OUT", str, None),
                        help="write the JSON report here (default: stdout)")
        sp.add_argument("--tol-rank", type=float,
                        default=_env("TOL_RANK", float, 1e-10),
                        help="relative singular value cutoff for rank decisions")
        sp.add_argument("--tol-zero", type=float,
                        default=_env("TOL_ZERO", float, 1e-8),
                        help="absolute threshold for treating vectors as zero")

    def add_sampler(sp, default_samples):
        sp.add_argument("--seed", type=int, default=_env("SEED", int, 0),
                        help="sampling seed")
        sp.add_argument("--samples", type=int,
                        default=_env("SAMPLES", int, default_samples),
                        help="number of sampled members")

    sp = sub.add_parser("analyze-structured",
                        help="three-valued verdict for a pattern triple")
    add_common(sp)
    add_sampler(sp, 0)

    sp = sub.add_parser("analyze-numeric",
                        help="solvability report for a concrete system")
    add_common(sp)

    sp = sub.add_parser("simulate",
                        help="integrate the observer error system and "
                             "attribute faults from the residual")
    add_common(sp)
    sp.add_argument("--scenario", required=True,
                    help="scenario JSON: duration, step, fault signals")
    sp.add_argument("--trace-out",
                    help="trace CSV path (default: --out with .csv suffix)")
    sp.add_argument("--threshold", type=float,
                    default=_env("THRESHOLD", float, None),
                    help="absolute isolation threshold "
                         "(default: 1e-6 of the peak residual)")

    sp = sub.add_parser("sample-verify",
                        help="Monte-Carlo per-member solvability tally "
                             "for a pattern triple")
    add_common(sp)
    add_sampler(sp, 100)

    sp = sub.add_parser("friend",
                        help="synthesize a common observer gain for the "
                             "per-fault invariant subspaces")
    add_common(sp)
    return parser


def _canonical(obj):
    if isinstance(obj, dict):
        return {k: _canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canonical(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(format(float(obj), ".17g"))
    return obj


def write_report(report: dict, out_path) -> None:
    text = json.dumps(_canonical(report), sort_keys=True, indent=2) + "\n"
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def load_numeric_system(path) -> NumericTriple:
    data = json.loads(Path(path).read_text())
    if not isinstance(data, dict):
        raise ValueError("numeric system file must be a JSON object")
    missing = [key for key in ("A", "L", "C") if key not in data]
    if missing:
        raise ValueError(f"numeric system file missing blocks: "
                         f"{', '.join(missing)}")
    blocks = {}
    for key in ("A", "L", "C"):
        try:
            blocks[key] = np.array(data[key], dtype=float)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"block {key}: not a numeric matrix ({exc})") from exc
        if blocks[key].ndim != 2:
            raise ValueError(f"block {key}: must be a 2-D matrix")
    return NumericTriple(A=blocks["A"], L=blocks["L"], C=blocks["C"])


def load_scenario(path) -> FaultScenario:
    data = json.loads(Path(path).read_text())
    if not isinstance(data, dict):
        raise ValueError("scenario file must be a JSON object")
    return FaultScenario.from_jsonable(data)


def _tolerances(args) -> ToleranceConfig:
    return ToleranceConfig(rank_rel_tol=args.tol_rank, zero_abs_tol=args.tol_zero)


def _run_analyze_structured(args) -> int:
    sys_pat = parse_structured_system(Path(args.input).read_text())
    summary = None
    if args.samples > 0:
        summary = monte_carlo_solvability(sys_pat, args.samples,
                                          SamplerConfig(seed=args.seed),
                                          _tolerances(args))
    report = analyze_structured(sys_pat, monte_carlo=summary)
    write_report(report.to_jsonable(), args.out)
    return EXIT_OK


def _run_analyze_numeric(args) -> int:
    system = load_numeric_system(args.input)
    report = is_solvable(system, _tolerances(args))
    write_report(report.to_jsonable(), args.out)
    return EXIT_OK


def _run_sample_verify(args) -> int:
    sys_pat = parse_structured_system(Path(args.input).read_text())
    summary = monte_carlo_solvability(sys_pat, args.samples,
                                      SamplerConfig(seed=args.seed),
                                      _tolerances(args))
    write_report(summary.to_jsonable(), args.out)
    return EXIT_OK


def _run_friend(args) -> int:
    system = load_numeric_system(args.input)
    tol = _tolerances(args)
    report = is_solvable(system, tol)
    gain = compute_friend(system, report.fault_subspaces, tol)
    write_report({"G": gain.G.tolist(),
                  "residual_norm": gain.residual_norm}, args.out)
    return EXIT_OK


def _run_simulate(args) -> int:
    system = load_numeric_system(args.input)
    scenario = load_scenario(args.scenario)
    tol = _tolerances(args)
    report = is_solvable(system, tol)
    if not report.solvable:
        missing = [i + 1 for i, d in enumerate(report.indices) if d is None]
        detail = (f"fault indices missing for channels {missing}" if missing
                  else "the fault signature matrix is column rank deficient")
        raise ValueError(f"system is not isolable ({detail}); "
                         "the residual decomposition is undefined")
    trace_path = args.trace_out
    if trace_path is None:
        if args.out is None:
            raise ValueError("simulate needs --trace-out or --out "
                             "to place the trace CSV")
        trace_path = str(Path(args.out).with_suffix(".csv"))

    gain = compute_friend(system, report.fault_subspaces, tol)
    trace = simulate_error_system(system, gain, scenario)
    trace = decompose_residual(trace, report.output_subspaces)
    isolation = isolate(trace, args.threshold)
    with open(trace_path, "w") as stream:
        write_trace_csv(trace, stream)
    body = isolation.to_jsonable()
    body["decomposition_defect"] = trace.decomposition_defect
    body["trace_csv"] = trace_path
    write_report(body, args.out)
    return EXIT_OK


_HANDLERS = {
    "analyze-structured": _run_analyze_structured,
    "analyze-numeric": _run_analyze_numeric,
    "sample-verify": _run_sample_verify,
    "friend": _run_friend,
    "simulate": _run_simulate,
}


def run(args) -> int:
    """Execute a parsed request; maps failures to the exit-code contract."""
    try:
        return _HANDLERS[args.command](args)
    except PatternFormatError as exc:
        print(f"{args.input}:{exc.line}:{exc.column}: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except json.JSONDecodeError as exc:
        print(f"{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}",
              file=sys.stderr)
        return EXIT_REJECTED
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except (FriendSynthesisError, np.linalg.LinAlgError,
            FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
