"""Command-line front door.

Subcommands: ``verify`` (reproduction checks), ``surface`` (risk-surface
CSV), ``corrupt`` (dataset corruption), ``fit`` (least-squares fit),
``experiment`` (noise-injection harness).

Exit codes: 0 = success or expected outcome (the counter-example checks
PASS by confirming non-robustness), 1 = verification mismatch,
2 = usage or input error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core import NoiseSpec
from .ingest import (
    ParseError,
    parse_krkp,
    parse_spect,
    parse_vote,
    read_dataset_csv,
    write_dataset_csv,
)
from .noise import corrupt_population, corrupt_sample
from .risk import evaluate_sample
from .solvers import GridSpec, emit_risk_surface, fit_squared_sample, grid_minimize_zero_one
from .verify import (
    REFERENCE_RATES,
    VerificationOutcome,
    companion_example_population,
    example_syde_population,
    four_corner_population,
    verify_additional_example,
    verify_example_asy_in_sq,
    verify_example_sy_de_01,
    verify_theorem1,
    verify_theorem2,
    verify_theorem2_random,
)

#: Case labelings selectable by ``surface --case 1..4``, in sweep corner order.
SURFACE_CASES = {
    "1": (1, -1, 1, -1),
    "2": (1, -1, -1, 1),
    "3": (1, -1, -1, -1),
    "4": (-1, -1, -1, -1),
}


def _parse_rates(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad probability list {text!r}") from None


def _parse_grid(text: str) -> GridSpec:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be lo,hi,step")
    try:
        lo, hi, step = (float(v) for v in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from None
    return GridSpec(((lo, hi, step), (lo, hi, step)))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="attrnoise",
        description="Noise-robust linear classification over signed binary features.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run reproduction checks")
    p_verify.add_argument(
        "target",
        choices=["all", "example1", "example2", "theorem1", "theorem2", "additional"],
    )
    p_verify.add_argument("--populations", type=int, default=1000,
                          help="random populations for theorem1 (default 1000)")
    p_verify.add_argument("--max-n", type=int, default=10,
                          help="max dimension for theorem1 populations (default 10)")
    p_verify.add_argument("--draws", type=int, default=50,
                          help="random draws for theorem2 (default 50)")
    p_verify.add_argument("--seed", type=int, default=None,
                          help="override the default check seeds")

    p_surface = sub.add_parser("surface", help="emit a 0-1 risk surface as CSV")
    p_surface.add_argument("--case", required=True,
                           choices=[*SURFACE_CASES, "example1", "additional"])
    p_surface.add_argument("--which", required=True, choices=["clean", "noisy"])
    p_surface.add_argument("--grid", type=_parse_grid, default=None,
                           help="lo,hi,step applied to both parameters (default -5,5,0.1); "
                                "use --grid=-5,5,0.1 when lo is negative")
    p_surface.add_argument("--out", required=True)

    p_corrupt = sub.add_parser("corrupt", help="corrupt a dataset CSV")
    p_corrupt.add_argument("--in", dest="infile", required=True)
    p_corrupt.add_argument("--model", required=True, choices=["syde", "asyin"])
    p_corrupt.add_argument("--p", type=_parse_rates, required=True,
                           help="one probability (syde) or a comma list (asyin)")
    p_corrupt.add_argument("--seed", type=int, required=True)
    p_corrupt.add_argument("--out", required=True)

    p_fit = sub.add_parser("fit", help="least-squares fit of a dataset CSV")
    p_fit.add_argument("--in", dest="infile", required=True)
    p_fit.add_argument("--intercept", action="store_true")

    p_exp = sub.add_parser("experiment", help="noise-injection experiment")
    p_exp.add_argument("--dataset", required=True, choices=["vote", "spect", "krkp"])
    p_exp.add_argument("--data-dir", required=True)
    p_exp.add_argument("--p-list", type=_parse_rates, required=True)
    p_exp.add_argument("--trials", type=int, default=15)
    p_exp.add_argument("--seed", type=int, default=0)
    p_exp.add_argument("--train-fraction", type=float, default=0.8)
    p_exp.add_argument("--intercept", action="store_true")
    p_exp.add_argument("--out", required=True)
    p_exp.add_argument("--per-trial", default=None,
                       help="also write a long-format per-trial CSV here")
    return parser


def _cmd_verify(args) -> int:
    outcomes: list[VerificationOutcome] = []

    def want(name):
        return args.target in ("all", name)

    if want("example1"):
        outcomes.append(verify_example_sy_de_01())
    if want("example2"):
        outcomes.append(verify_example_asy_in_sq())
    if want("theorem1"):
        kwargs = {} if args.seed is None else {"seed": args.seed}
        outcomes.append(
            verify_theorem1(args.populations, args.max_n, **kwargs)
        )
    if want("theorem2"):
        outcomes.append(verify_theorem2())
        kwargs = {} if args.seed is None else {"seed": args.seed}
        outcomes.append(verify_theorem2_random(args.draws, **kwargs))
    if want("additional"):
        outcomes.append(verify_additional_example())

    failures = 0
    total = 0
    for outcome in outcomes:
        for check in outcome.checks:
            print(check.line())
            total += 1
            failures += 0 if check.passed else 1
    print(f"# {total - failures}/{total} checks passed", file=sys.stderr)
    return 0 if failures == 0 else 1


def _surface_inputs(case: str):
    if case == "example1":
        return example_syde_population(), NoiseSpec.syde(0.4), "affine1d"
    if case == "additional":
        return companion_example_population(), NoiseSpec.asyin(REFERENCE_RATES), "slope2d_pos"
    return (
        four_corner_population(SURFACE_CASES[case]),
        NoiseSpec.asyin(REFERENCE_RATES),
        "slope2d_pos",
    )


def _cmd_surface(args) -> int:
    population, spec, parameterization = _surface_inputs(args.case)
    if args.which == "noisy":
        population = corrupt_population(population, spec)
    surface = grid_minimize_zero_one(population, args.grid, parameterization)
    emit_risk_surface(surface, args.out)
    print(
        f"wrote {args.out}: min risk {surface.min_risk!r} over "
        f"{surface.risks.size} grid points, {surface.minimizers.shape[0]} minimizer(s)"
    )
    return 0


def _cmd_corrupt(args) -> int:
    dataset = read_dataset_csv(args.infile)
    if args.model == "syde":
        if len(args.p) != 1:
            print("syde takes exactly one probability", file=sys.stderr)
            return 2
        spec = NoiseSpec.syde(args.p[0])
    else:
        spec = NoiseSpec.asyin(args.p)
        if len(args.p) != dataset.n:
            print(
                f"asyin needs {dataset.n} probabilities for this dataset, got {len(args.p)}",
                file=sys.stderr,
            )
            return 2
    write_dataset_csv(corrupt_sample(dataset, spec, args.seed), args.out)
    print(f"wrote {args.out}: {dataset.size} points, model {args.model}")
    return 0


def _cmd_fit(args) -> int:
    dataset = read_dataset_csv(args.infile)
    classifier = fit_squared_sample(dataset, intercept=args.intercept)
    metrics = evaluate_sample(dataset, classifier)
    print(f"weights = {list(classifier.weights)!r}")
    print(f"intercept = {classifier.intercept!r}")
    if classifier.regularized:
        print("note: rank-deficient system, ridge fallback used")
    print(f"train_accuracy = {metrics.accuracy!r}")
    print(f"train_am = {metrics.am!r}")
    print(f"counts tp,tn,fp,fn = {metrics.counts}")
    return 0


def _load_experiment_dataset(name: str, data_dir: Path):
    if name == "vote":
        return parse_vote(data_dir / "house-votes-84.data")
    if name == "spect":
        return parse_spect(data_dir / "SPECT.train", data_dir / "SPECT.test")
    return parse_krkp(data_dir / "kr-vs-kp.data")


def _cmd_experiment(args) -> int:
    from .experiment import ExperimentConfig, aggregate_trials, emit_results, run_trials

    dataset = _load_experiment_dataset(args.dataset, Path(args.data_dir))
    cfg = ExperimentConfig(
        dataset=args.dataset,
        noise_rates=tuple(args.p_list),
        trials=args.trials,
        train_fraction=args.train_fraction,
        base_seed=args.seed,
        intercept=args.intercept,
    )
    records = run_trials(dataset, cfg)
    rows = aggregate_trials(records)
    emit_results(
        rows,
        args.out,
        per_trial=records if args.per_trial else None,
        per_trial_path=args.per_trial,
    )
    for row in rows:
        label = "clean" if row.p is None else repr(row.p)
        print(
            f"{row.dataset} p={label}: acc {row.mean_accuracy:.4f} (sd {row.sd_accuracy:.4f}), "
            f"am {row.mean_am:.4f} (sd {row.sd_am:.4f})"
        )
    print(f"wrote {args.out}")
    return 0


_HANDLERS = {
    "verify": _cmd_verify,
    "surface": _cmd_surface,
    "corrupt": _cmd_corrupt,
    "fit": _cmd_fit,
    "experiment": _cmd_experiment,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except (FileNotFoundError, ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
