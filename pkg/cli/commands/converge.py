"""Estimate the temporal convergence rate against a fine-step reference."""

from __future__ import annotations

import argparse
from pathlib import Path

from oneleg.harness import alpha_sweep_study, convergence_study, load_problem_spec, write_convergence

from ._shared import add_config_arguments, float_list, positive_float, rate_range


def configure(parser: argparse.ArgumentParser) -> None:
    add_config_arguments(parser)
    parser.add_argument("--taus", type=float_list, required=True, help="Comma-separated step sizes")
    parser.add_argument("--tau-ref", type=positive_float, required=True, help="Reference step size")
    parser.add_argument("--tm", type=positive_float, required=True, help="Comparison time")
    parser.add_argument("--expect-rate", type=rate_range, default=None, metavar="LO,HI", help="Fail (exit 4) outside")
    parser.add_argument(
        "--alphas",
        type=float_list,
        default=None,
        help="Sweep these entropy exponents; one alpha_<a>/convergence.csv each",
    )


def handle(args: argparse.Namespace) -> int:
    spec = load_problem_spec(args.config, args.override)
    out = Path(args.out)
    if args.alphas is None:
        report = convergence_study(spec, args.taus, args.tau_ref, args.tm)
        write_convergence(report, out, spec.flat_dump())
        reports = [report]
    else:
        sweep = alpha_sweep_study(spec, args.alphas, args.taus, args.tau_ref, args.tm)
        for alpha, report in sweep.items():
            write_convergence(report, out / f"alpha_{alpha:g}", {**spec.flat_dump(), "alpha": alpha})
        reports = list(sweep.values())
    if args.expect_rate is not None:
        for report in reports:
            report.assert_rate(*args.expect_rate)
    return 0
