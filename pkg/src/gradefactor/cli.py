"""Command-line front end for factorizing graded matrices.

Subcommands cover the whole workflow: discretize raw measurements, run the
greedy decomposition or the exact small-instance oracle, dump coverage
curves, and rerun the synthetic factorizability and coverage experiments.
All artifacts are written deterministically, so identical configurations
produce byte-identical files; timings go to the console only.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .concepts import BudgetExceededError
from .data import (
    ColumnRange,
    discretize,
    random_factorizable,
    read_csv,
    read_fimi,
    read_ranges_csv,
    read_raw_csv,
    write_csv,
)
from .factorization import (
    DEFAULT_TIE_BREAK,
    TIE_BREAK_POLICIES,
    FactorSet,
    coverage_curve,
    factor_matrices,
    find_factors,
    optimal_factorization,
)
from .matrix import GradedMatrix, compose
from .scale import Scale, TNORM_KINDS


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs, assembled from parsed arguments."""

    command: str
    input: Path | None = None
    out_dir: Path | None = None
    out_file: Path | None = None
    ranges: Path | None = None
    data_format: str = "csv"
    num_items: int | None = None
    levels: int = 5
    tnorm: str = "lukasiewicz"
    rounded: bool = False
    mode: str = "strict"
    tie_break: str = DEFAULT_TIE_BREAK
    max_factors: int | None = None
    budget: int = 10**6
    seed: int = 0
    trials: int = 200
    ks: tuple[int, ...] = (5,)
    rows: int = 20
    cols: int = 20
    distribution: tuple[float, ...] | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        fields = {name: getattr(args, name) for name in cls.__dataclass_fields__ if hasattr(args, name)}
        return cls(**fields)

    def scale(self) -> Scale:
        return Scale(self.levels, self.tnorm, self.rounded)


@dataclass(frozen=True)
class ExperimentStats:
    """Factor-count statistics for one inner dimension k."""

    k: int
    mean_factors: float
    std_dev: float
    trials: int


def factorizability_stats(k: int, trials: int, rows: int, cols: int, scale: Scale,
                          distribution=None, seed: int = 0,
                          tie_break=DEFAULT_TIE_BREAK) -> ExperimentStats:
    """Decompose `trials` random rank-k products and summarize factor counts.

    Every trial draws from its own generator stream derived from
    (seed, k, trial index), so results do not depend on execution order.
    """
    counts = []
    for trial in range(trials):
        rng = np.random.default_rng([seed, k, trial])
        matrix = random_factorizable(rows, cols, k, scale, distribution, rng)
        counts.append(len(find_factors(matrix, tie_break).factors))
    return ExperimentStats(
        k=k,
        mean_factors=statistics.fmean(counts),
        std_dev=statistics.pstdev(counts),
        trials=trials,
    )


# ----------------------------------------------------------------------
# shared helpers
# ----------------------------------------------------------------------


def _load_matrix(cfg: RunConfig) -> GradedMatrix:
    scale = cfg.scale()
    if cfg.data_format == "fimi":
        if cfg.levels != 2:
            raise ValueError("transaction input is Boolean; pass --levels 2")
        return read_fimi(cfg.input, cfg.num_items, scale=scale)
    return read_csv(cfg.input, scale, mode=cfg.mode)


def _factor_report(cfg: RunConfig, factor_set: FactorSet, curve, *,
                   seed=None, optimal: bool = False) -> dict:
    report = {
        "command": cfg.command,
        "input": str(cfg.input),
        "scale": {
            "levels": cfg.levels,
            "tnorm": cfg.tnorm,
            "rounded": cfg.rounded,
        },
        "tie_break": cfg.tie_break,
        "seed": seed,
        "optimal": optimal,
        "shape": list(factor_set.context_shape),
        "complete": factor_set.complete,
        "factor_count": len(factor_set.factors),
        "factors": [
            {
                "extent": [int(v) for v in c.extent.membership],
                "intent": [int(v) for v in c.intent.membership],
            }
            for c in factor_set.factors
        ],
        "coverage_equal": [float(f) for f in curve],
        "coverage_equal_exact": [str(f) for f in curve],
    }
    if factor_set.uncovered_counts is not None:
        report["coverage_nonzero"] = [float(f) for f in factor_set.covered_nonzero_curve()]
    return report


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _write_coverage_tsv(path: Path, factor_set: FactorSet, curve) -> None:
    nonzero = (
        factor_set.covered_nonzero_curve()
        if factor_set.uncovered_counts is not None
        else [None] * len(curve)
    )
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("factor\tequal_fraction\tcovered_nonzero\n")
        for l, (eq, nz) in enumerate(zip(curve, nonzero), start=1):
            nz_text = "" if nz is None else f"{float(nz):.6f}"
            handle.write(f"{l}\t{float(eq):.6f}\t{nz_text}\n")


def _emit_factorization(cfg: RunConfig, matrix: GradedMatrix, factor_set: FactorSet,
                        *, optimal: bool = False) -> int:
    a, b = factor_matrices(factor_set)
    if factor_set.complete and compose(a, b) != matrix:
        print("error: factors do not reproduce the input exactly", file=sys.stderr)
        return 1
    curve = coverage_curve(factor_set, matrix)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    write_csv(a, cfg.out_dir / "A.csv")
    write_csv(b, cfg.out_dir / "B.csv")
    _write_json(cfg.out_dir / "factors.json", _factor_report(cfg, factor_set, curve, optimal=optimal))
    _write_coverage_tsv(cfg.out_dir / "coverage.tsv", factor_set, curve)
    return 0


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------


def cmd_factorize(cfg: RunConfig) -> int:
    matrix = _load_matrix(cfg)
    start = time.perf_counter()
    factor_set = find_factors(matrix, cfg.tie_break, max_factors=cfg.max_factors)
    elapsed = time.perf_counter() - start
    status = _emit_factorization(cfg, matrix, factor_set)
    if status:
        return status
    note = "" if factor_set.complete else " (truncated, not exact)"
    print(
        f"{len(factor_set.factors)} factors for the {matrix.n_rows}x{matrix.n_cols} input{note}; "
        f"artifacts in {cfg.out_dir} ({elapsed:.2f}s)"
    )
    return 0


def cmd_oracle(cfg: RunConfig) -> int:
    matrix = _load_matrix(cfg)
    start = time.perf_counter()
    factor_set = optimal_factorization(matrix, budget=cfg.budget)
    elapsed = time.perf_counter() - start
    status = _emit_factorization(cfg, matrix, factor_set, optimal=True)
    if status:
        return status
    print(
        f"optimal decomposition uses {len(factor_set.factors)} factors; "
        f"artifacts in {cfg.out_dir} ({elapsed:.2f}s)"
    )
    return 0


def cmd_coverage(cfg: RunConfig) -> int:
    matrix = _load_matrix(cfg)
    start = time.perf_counter()
    factor_set = find_factors(matrix, cfg.tie_break, max_factors=cfg.max_factors)
    elapsed = time.perf_counter() - start
    curve = coverage_curve(factor_set, matrix)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    _write_coverage_tsv(cfg.out_dir / "coverage.tsv", factor_set, curve)
    print(
        f"coverage curve over {len(factor_set.factors)} factors; "
        f"artifacts in {cfg.out_dir} ({elapsed:.2f}s)"
    )
    return 0


def cmd_discretize(cfg: RunConfig) -> int:
    table = read_raw_csv(cfg.input)
    ranges = read_ranges_csv(cfg.ranges) if cfg.ranges else ColumnRange.from_table(table)
    graded = discretize(table, ranges, cfg.scale(), mode=cfg.mode)
    cfg.out_file.parent.mkdir(parents=True, exist_ok=True)
    write_csv(graded, cfg.out_file)
    print(
        f"discretized {graded.n_rows}x{graded.n_cols} table onto {cfg.levels} grades "
        f"into {cfg.out_file}"
    )
    return 0


def cmd_experiment_factorizability(cfg: RunConfig) -> int:
    scale = cfg.scale()
    start = time.perf_counter()
    results = [
        factorizability_stats(
            k, cfg.trials, cfg.rows, cfg.cols, scale,
            distribution=cfg.distribution, seed=cfg.seed, tie_break=cfg.tie_break,
        )
        for k in cfg.ks
    ]
    elapsed = time.perf_counter() - start
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    dist_text = "uniform" if cfg.distribution is None else ",".join(f"{w:g}" for w in cfg.distribution)
    with open(cfg.out_dir / "stats.tsv", "w", encoding="utf-8") as handle:
        handle.write(
            f"# size={cfg.rows}x{cfg.cols} levels={cfg.levels} tnorm={cfg.tnorm} "
            f"tie_break={cfg.tie_break} seed={cfg.seed} dist={dist_text}\n"
        )
        handle.write("k\tmean_factors\tstd_dev\ttrials\n")
        for s in results:
            handle.write(f"{s.k}\t{s.mean_factors:.3f}\t{s.std_dev:.3f}\t{s.trials}\n")
    for s in results:
        print(f"k={s.k}: {s.mean_factors:.3f} +- {s.std_dev:.3f} factors over {s.trials} trials")
    print(f"artifacts in {cfg.out_dir} ({elapsed:.2f}s)")
    return 0


def cmd_experiment_coverage(cfg: RunConfig) -> int:
    matrix = _load_matrix(cfg)
    start = time.perf_counter()
    factor_set = find_factors(matrix, cfg.tie_break, max_factors=cfg.max_factors)
    elapsed = time.perf_counter() - start
    curve = coverage_curve(factor_set, matrix)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    _write_coverage_tsv(cfg.out_dir / "coverage.tsv", factor_set, curve)
    last = factor_set.covered_nonzero_curve()[-1] if len(factor_set.factors) else 1
    note = "run complete" if factor_set.complete else "run truncated, would continue"
    print(
        f"{len(factor_set.factors)} factors cover {float(last):.4f} of the nonzero cells "
        f"({note}); artifacts in {cfg.out_dir} ({elapsed:.2f}s)"
    )
    return 0


COMMANDS = {
    "factorize": cmd_factorize,
    "oracle": cmd_oracle,
    "coverage": cmd_coverage,
    "discretize": cmd_discretize,
    "experiment-factorizability": cmd_experiment_factorizability,
    "experiment-coverage": cmd_experiment_coverage,
}


# ----------------------------------------------------------------------
# argument parsing
# ----------------------------------------------------------------------


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _add_scale_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--levels", type=int, default=5,
                        help="grades on the chain, counting 0 and 1 (default 5)")
    parser.add_argument("--tnorm", choices=TNORM_KINDS, default="lukasiewicz")
    parser.add_argument("--rounded", action="store_true",
                        help="opt in to the rounded goguen t-norm")


def _add_mode_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--strict", dest="mode", action="store_const", const="strict",
                       default="strict", help="reject off-scale values (default)")
    group.add_argument("--lenient", dest="mode", action="store_const", const="lenient",
                       help="clamp and round off-scale values")


def _add_input_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", type=Path, required=True)
    parser.add_argument("--format", dest="data_format", choices=("csv", "fimi"),
                        default="csv", help="input layout (default csv)")
    parser.add_argument("--num-items", type=int, default=None,
                        help="column count for transaction files; inferred when omitted")


def _add_tie_break_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tie-break", dest="tie_break",
                        choices=tuple(TIE_BREAK_POLICIES), default=DEFAULT_TIE_BREAK)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradefactor",
        description="Decompose matrices of ordinal grades into concept factors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factorize", help="greedy exact decomposition")
    _add_input_args(p)
    _add_scale_args(p)
    _add_mode_args(p)
    _add_tie_break_arg(p)
    p.add_argument("--max-factors", dest="max_factors", type=int, default=None,
                   help="stop after this many factors (marks the run incomplete)")
    p.add_argument("--out-dir", dest="out_dir", type=Path, required=True)

    p = sub.add_parser("oracle", help="exact minimum decomposition for small inputs")
    _add_input_args(p)
    _add_scale_args(p)
    _add_mode_args(p)
    p.add_argument("--budget", type=int, default=10**6,
                   help="cap on closure computations and search nodes")
    p.add_argument("--out-dir", dest="out_dir", type=Path, required=True)

    p = sub.add_parser("coverage", help="coverage curve of the greedy factors")
    _add_input_args(p)
    _add_scale_args(p)
    _add_mode_args(p)
    _add_tie_break_arg(p)
    p.add_argument("--max-factors", dest="max_factors", type=int, default=None)
    p.add_argument("--out-dir", dest="out_dir", type=Path, required=True)

    p = sub.add_parser("discretize", help="snap a raw table onto a grade chain")
    p.add_argument("--input", type=Path, required=True, help="raw measurement CSV")
    p.add_argument("--ranges", type=Path, default=None,
                   help="two-row CSV of per-column lows and highs; observed when omitted")
    _add_scale_args(p)
    _add_mode_args(p)
    p.add_argument("--out", dest="out_file", type=Path, required=True,
                   help="where to write the graded CSV")

    p = sub.add_parser("experiment-factorizability",
                       help="factor counts of random rank-k products")
    _add_scale_args(p)
    _add_tie_break_arg(p)
    p.add_argument("--k", dest="ks", type=_int_list, default=(5,),
                   help="comma-separated inner dimensions (default 5)")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--rows", type=int, default=20)
    p.add_argument("--cols", type=int, default=20)
    p.add_argument("--dist", dest="distribution", type=_float_list, default=None,
                   help="comma-separated grade weights; uniform when omitted")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", dest="out_dir", type=Path, required=True)

    p = sub.add_parser("experiment-coverage",
                       help="coverage growth of a truncated greedy run")
    _add_input_args(p)
    _add_scale_args(p)
    _add_mode_args(p)
    _add_tie_break_arg(p)
    p.add_argument("--max-factors", dest="max_factors", type=int, default=50)
    p.add_argument("--out-dir", dest="out_dir", type=Path, required=True)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig.from_args(args)
    try:
        return COMMANDS[cfg.command](cfg)
    except (ValueError, OSError, BudgetExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
