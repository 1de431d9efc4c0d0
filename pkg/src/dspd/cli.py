"""Command-line front end.

Four subcommands: ``estimate`` (analytical distribution), ``empirical``
(BFS measurement protocol with accuracy statistics), ``compare`` (sampling
method recommendation), and ``bench`` (timing).  Reports are JSON (default)
or CSV and always embed the resolved configuration, so a report is enough
to rerun its experiment.
"""

from __future__ import annotations

import argparse
import json
import sys

from ._backend import BACKEND
from .distance import DistanceDistribution
from .experiment import (EstimatorSettings, ExperimentConfig, TrialCounts,
                         analytic_estimate, run_bench, run_empirical)
from .graphs import BinomialGraph, GraphSpec, PowerLawGraph, SbmGraph
from .metrics import compare_methods, mean_distance
from .presets import preset, preset_names
from .sampling import RANDOM, SNOWBALL, SampleSpec

# ---------------------------------------------------------------------------
# config (de)serialization


def graph_to_dict(spec: GraphSpec) -> dict:
    if isinstance(spec, BinomialGraph):
        return {"family": "binomial", "n": spec.n, "p": spec.p}
    if isinstance(spec, PowerLawGraph):
        return {"family": "powerlaw", "n": spec.n, "gamma": spec.gamma,
                "k_min": spec.k_min, "k_max": spec.k_max}
    if isinstance(spec, SbmGraph):
        return {"family": "sbm", "blocks": spec.blocks,
                "block_size": spec.block_size, "p_within": spec.p_within,
                "p_across": spec.p_across}
    raise TypeError(f"unknown graph spec {type(spec).__name__}")


def graph_from_dict(data: dict) -> GraphSpec:
    data = dict(data)
    family = data.pop("family", None)
    try:
        if family == "binomial":
            return BinomialGraph(int(data["n"]), float(data["p"]))
        if family == "powerlaw":
            return PowerLawGraph(int(data["n"]), float(data["gamma"]),
                                 int(data["k_min"]), int(data["k_max"]))
        if family == "sbm":
            return SbmGraph(int(data["blocks"]), int(data["block_size"]),
                            float(data["p_within"]), float(data["p_across"]))
    except KeyError as exc:
        raise ValueError(f"graph config is missing field {exc}")
    raise ValueError(f"unknown graph family {family!r}")


def config_to_dict(config: ExperimentConfig) -> dict:
    return {
        "graph": graph_to_dict(config.graph),
        "sample": {"method": config.sample.method,
                   "size": config.sample.size,
                   "retention": config.sample.retention},
        "trials": {"graphs": config.trials.graphs,
                   "samples_per_graph": config.trials.samples_per_graph},
        "seed": config.seed,
        "estimator": {"max_depth": config.estimator.max_depth,
                      "conv_eps": config.estimator.conv_eps,
                      "tail_eps": config.estimator.tail_eps},
        "output": {"path": config.output_path,
                   "format": config.output_format},
    }


def config_from_dict(data: dict) -> ExperimentConfig:
    if "graph" not in data or "sample" not in data:
        raise ValueError("config needs at least 'graph' and 'sample' entries")
    sample = data["sample"]
    trials = data.get("trials", {})
    est = data.get("estimator", {})
    output = data.get("output", {})
    return ExperimentConfig(
        graph=graph_from_dict(data["graph"]),
        sample=SampleSpec(sample["method"], int(sample["size"]),
                          float(sample.get("retention", 0.5))),
        trials=TrialCounts(int(trials.get("graphs", 5)),
                           int(trials.get("samples_per_graph", 20))),
        seed=int(data.get("seed", 0)),
        estimator=EstimatorSettings(
            int(est.get("max_depth", est.get("l_max", 64))),
            float(est.get("conv_eps", 1e-9)),
            float(est.get("tail_eps", 1e-12))),
        output_path=output.get("path"),
        output_format=output.get("format", "json"),
    )


# ---------------------------------------------------------------------------
# argument parsing


def _add_graph_flags(cmd: argparse.ArgumentParser) -> None:
    cmd.add_argument("--preset", metavar="NAME",
                     help="named setting string, e.g. 'bin 20000 rand 200'")
    cmd.add_argument("--config", metavar="PATH",
                     help="JSON config file; flags override its entries")
    cmd.add_argument("--graph", choices=["binomial", "powerlaw", "sbm"])
    cmd.add_argument("--n", type=int, help="node count (binomial/powerlaw)")
    cmd.add_argument("--p", type=float, help="edge probability (binomial)")
    cmd.add_argument("--gamma", type=float, help="power-law exponent")
    cmd.add_argument("--k-min", type=int, help="power-law minimum degree")
    cmd.add_argument("--k-max", type=int, help="power-law maximum degree")
    cmd.add_argument("--blocks", type=int, help="number of blocks (sbm)")
    cmd.add_argument("--block-size", type=int, help="nodes per block (sbm)")
    cmd.add_argument("--p1", type=float, help="within-block edge probability")
    cmd.add_argument("--p2", type=float, help="across-block edge probability")


def _add_common_flags(cmd: argparse.ArgumentParser) -> None:
    cmd.add_argument("--s", type=int, help="sample size")
    cmd.add_argument("--seed", type=int, help="root seed (default 0)")
    cmd.add_argument("--max-depth", type=int,
                     help="maximum distance level (default 64)")
    cmd.add_argument("--conv-eps", type=float,
                     help="survival convergence tolerance (default 1e-9)")
    cmd.add_argument("--tail-eps", type=float,
                     help="pmf tail truncation budget (default 1e-12)")
    cmd.add_argument("--format", choices=["json", "csv"], dest="out_format",
                     help="report format (default json)")
    cmd.add_argument("--out", metavar="PATH",
                     help="report path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dspd",
        description="Estimate distance-to-sample distributions in random "
                    "graphs analytically, and validate them against BFS "
                    "measurements.")
    parser.add_argument("--list-presets", action="store_true",
                        help="print all named settings and exit")
    sub = parser.add_subparsers(dest="command")

    est = sub.add_parser("estimate", help="analytical distribution only")
    _add_graph_flags(est)
    _add_common_flags(est)
    est.add_argument("--method", choices=[RANDOM, SNOWBALL])
    est.add_argument("--retention", type=float,
                     help="snowball acceptance probability (default 0.5)")
    est.set_defaults(func=cmd_estimate)

    emp = sub.add_parser("empirical",
                         help="BFS protocol with accuracy statistics")
    _add_graph_flags(emp)
    _add_common_flags(emp)
    emp.add_argument("--method", choices=[RANDOM, SNOWBALL])
    emp.add_argument("--retention", type=float)
    emp.add_argument("--graphs", type=int, help="graphs per setting")
    emp.add_argument("--samples-per-graph", type=int)
    emp.set_defaults(func=cmd_empirical)

    cmp_ = sub.add_parser("compare",
                          help="recommend the sampling method with the "
                               "smaller mean distance")
    _add_graph_flags(cmp_)
    _add_common_flags(cmp_)
    cmp_.add_argument("--method-a", choices=[RANDOM, SNOWBALL],
                      default=RANDOM)
    cmp_.add_argument("--method-b", choices=[RANDOM, SNOWBALL],
                      default=SNOWBALL)
    cmp_.add_argument("--retention", type=float)
    cmp_.add_argument("--validate", action="store_true",
                      help="also run the empirical protocol on both methods")
    cmp_.add_argument("--graphs", type=int)
    cmp_.add_argument("--samples-per-graph", type=int)
    cmp_.set_defaults(func=cmd_compare)

    ben = sub.add_parser("bench", help="time estimation vs a BFS trial")
    _add_graph_flags(ben)
    _add_common_flags(ben)
    ben.add_argument("--method", choices=[RANDOM, SNOWBALL])
    ben.add_argument("--retention", type=float)
    ben.add_argument("--repetitions", type=int, default=10)
    ben.set_defaults(func=cmd_bench)

    return parser


def _graph_from_args(args) -> GraphSpec:
    family = args.graph
    missing = lambda names: [n for n in names
                             if getattr(args, n.replace("-", "_")) is None]
    if family == "binomial":
        lacking = missing(["n", "p"])
        if lacking:
            raise ValueError(f"--graph binomial needs --{' --'.join(lacking)}")
        return BinomialGraph(args.n, args.p)
    if family == "powerlaw":
        lacking = missing(["n", "gamma", "k-min", "k-max"])
        if lacking:
            raise ValueError(f"--graph powerlaw needs --{' --'.join(lacking)}")
        return PowerLawGraph(args.n, args.gamma, args.k_min, args.k_max)
    if family == "sbm":
        lacking = missing(["blocks", "block-size", "p1", "p2"])
        if lacking:
            raise ValueError(f"--graph sbm needs --{' --'.join(lacking)}")
        return SbmGraph(args.blocks, args.block_size, args.p1, args.p2)
    raise ValueError(f"unknown graph family {family!r}")


def resolve_config(args, method_attr: str = "method") -> ExperimentConfig:
    """Merge config file, preset, and explicit flags (most specific wins)."""
    graph = None
    sample_method = None
    sample_size = None
    retention = None
    base = None

    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            base = config_from_dict(json.load(fh))
        graph = base.graph
        sample_method = base.sample.method
        sample_size = base.sample.size
        retention = base.sample.retention
    if args.preset:
        graph, preset_sample = preset(args.preset)
        sample_method = preset_sample.method
        sample_size = preset_sample.size
        retention = preset_sample.retention
    if args.graph:
        graph = _graph_from_args(args)
    if graph is None:
        raise ValueError("no graph given: use --graph, --preset, or --config")

    if getattr(args, method_attr, None):
        sample_method = getattr(args, method_attr)
    if args.s is not None:
        sample_size = args.s
    if getattr(args, "retention", None) is not None:
        retention = args.retention
    if sample_method is None:
        raise ValueError("no sampling method given: use --method or a preset")
    if sample_size is None:
        raise ValueError("no sample size given: use --s or a preset")
    sample = SampleSpec(sample_method, sample_size,
                        retention if retention is not None else 0.5)

    def pick(value, fallback):
        return value if value is not None else fallback

    defaults = base if base is not None else ExperimentConfig(graph, sample)
    trials = TrialCounts(
        pick(getattr(args, "graphs", None), defaults.trials.graphs),
        pick(getattr(args, "samples_per_graph", None),
             defaults.trials.samples_per_graph))
    estimator = EstimatorSettings(
        pick(args.max_depth, defaults.estimator.max_depth),
        pick(args.conv_eps, defaults.estimator.conv_eps),
        pick(args.tail_eps, defaults.estimator.tail_eps))
    return ExperimentConfig(
        graph=graph, sample=sample, trials=trials,
        seed=pick(args.seed, defaults.seed),
        estimator=estimator,
        output_path=pick(args.out, defaults.output_path),
        output_format=pick(args.out_format, defaults.output_format))


# ---------------------------------------------------------------------------
# report plumbing


def distribution_fields(dist: DistanceDistribution) -> dict:
    return {
        "survival": dist.survival.tolist(),
        "pmf": dist.pmf().tolist(),
        "residual": dist.residual,
        "mean_distance": mean_distance(dist),
    }


def _write_report(report: dict, config: ExperimentConfig) -> None:
    if config.output_format == "csv":
        if "pmf" not in report:
            raise ValueError("csv output is only available for distribution "
                             "reports; use --format json")
        lines = ["distance,probability"]
        lines += [f"{d},{p!r}" for d, p in enumerate(report["pmf"])]
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_estimate(args) -> int:
    config = resolve_config(args)
    dist = analytic_estimate(config.graph, config.sample, config.estimator)
    report = {"config": config_to_dict(config), **distribution_fields(dist)}
    _write_report(report, config)
    return 0


def cmd_empirical(args) -> int:
    config = resolve_config(args)
    result = run_empirical(config)
    report = {
        "config": config_to_dict(config),
        **distribution_fields(result.average),
        "estimate": distribution_fields(result.estimate),
        "per_trial": [
            {"graph_index": t.graph_index, "sample_index": t.sample_index,
             "w1_to_estimate": t.w1_to_estimate,
             **distribution_fields(t.distribution)}
            for t in result.trials],
        "w1": {"mean": result.w1_mean, "std": result.w1_std},
    }
    _write_report(report, config)
    return 0


def cmd_compare(args) -> int:
    if args.method_a == args.method_b:
        raise ValueError("compare needs two different sampling methods")
    config_a = resolve_config(args, method_attr="method_a")
    config_b = resolve_config(args, method_attr="method_b")

    def ordered(config_x, config_y):
        """Map the a/b pair onto (random, snowball) for the verdict."""
        if config_x.sample.method == RANDOM:
            return config_x, config_y
        return config_y, config_x

    config_rand, config_snow = ordered(config_a, config_b)
    est_rand = analytic_estimate(config_rand.graph, config_rand.sample,
                                 config_rand.estimator)
    est_snow = analytic_estimate(config_snow.graph, config_snow.sample,
                                 config_snow.estimator)
    verdict = compare_methods(est_rand, est_snow)
    report = {
        "config": {"a": config_to_dict(config_a),
                   "b": config_to_dict(config_b)},
        "estimates": {"random": distribution_fields(est_rand),
                      "snowball": distribution_fields(est_snow)},
        "verdict": {
            "smaller_method": verdict.smaller_method,
            "mean_random": verdict.mean_random,
            "mean_snowball": verdict.mean_snowball,
            "difference": verdict.difference,
        },
    }
    if args.validate:
        emp_rand = run_empirical(config_rand)
        emp_snow = run_empirical(config_snow)
        empirical = compare_methods(emp_rand.average, emp_snow.average)
        report["empirical_verdict"] = {
            "smaller_method": empirical.smaller_method,
            "mean_random": empirical.mean_random,
            "mean_snowball": empirical.mean_snowball,
            "difference": empirical.difference,
        }
        report["agreement"] = (
            empirical.smaller_method == verdict.smaller_method)
    _write_report(report, config_a)
    return 0


def cmd_bench(args) -> int:
    config = resolve_config(args)
    result = run_bench(config, args.repetitions)
    dist = analytic_estimate(config.graph, config.sample, config.estimator)
    report = {
        "config": config_to_dict(config),
        **distribution_fields(dist),
        "timing": {
            "backend": BACKEND,
            "repetitions": result.repetitions,
            "estimate": {"mean": result.estimate_mean,
                         "std": result.estimate_std},
            "empirical": {"mean": result.empirical_mean,
                          "std": result.empirical_std},
        },
    }
    _write_report(report, config)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "list_presets", False):
        for name in preset_names():
            print(name)
        return 0
    if not getattr(args, "command", None):
        parser.print_usage(sys.stderr)
        return 2
    try:
        return args.func(args)
    except (ValueError, TypeError, KeyError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # generation / sampling / runtime failures
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
