"""Command-line entry point: run one experiment, sweep network sizes, or
benchmark the numeric kernels."""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from . import experiment, kernels, metrics, overlay
from .config import STRATEGIES, ExperimentConfig, load_config_file


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="key=value config file")
    p.add_argument("--peers", type=int, dest="n_peers")
    p.add_argument("--docs-mean", type=float, dest="docs_mean")
    p.add_argument("--queries", type=int, dest="n_queries")
    p.add_argument("--seed", type=int, dest="seed")
    p.add_argument("--theta-match", type=float, dest="theta_match")
    p.add_argument("--theta-flood", type=float, dest="theta_flood")
    p.add_argument("--ttl", type=int, dest="ttl")
    p.add_argument("--flood-ttl", type=int, dest="flood_ttl")
    p.add_argument("--join-links", type=int, dest="join_links")
    p.add_argument("--topics", type=int, dest="n_topics")
    p.add_argument("--terms-per-topic", type=int, dest="terms_per_topic")
    p.add_argument("--snapshot-interval", type=int, dest="snapshot_interval")
    p.add_argument("--out-dir", type=Path, default=Path("out"))


def _build_config(args) -> ExperimentConfig:
    cfg = ExperimentConfig()
    if args.config:
        cfg = load_config_file(args.config, cfg)
    for f in dataclasses.fields(ExperimentConfig):
        val = getattr(args, f.name, None)
        if val is not None:
            setattr(cfg, f.name, val)
    cfg.validate()
    return cfg


def _cmd_run(args) -> int:
    cfg = _build_config(args)
    out: Path = args.out_dir
    out.mkdir(parents=True, exist_ok=True)
    repeats = args.repeats
    rows = []
    first = None
    stats_list = []
    for i in range(repeats):
        run_cfg = dataclasses.replace(cfg, seed=cfg.seed + i)
        res = experiment.run_experiment(run_cfg)
        if first is None:
            first = res
        rows.append(experiment.stats_row(res.snapshot, run_cfg.strategy, res.stats))
        stats_list.append(res.stats)
    experiment.write_traces_csv(first.traces, out / "traces.csv")
    experiment.write_stats_csv(rows, out / "stats.csv")
    overlay.write_edge_list(first.network, out / "graph.txt")
    if repeats > 1:
        mean = _mean_stats(stats_list)
        experiment.write_stats_csv(
            [experiment.stats_row(first.snapshot, cfg.strategy, mean)],
            out / "stats_mean.csv",
        )
    s = first.stats
    print(
        f"{cfg.strategy}: peers={cfg.n_peers} queries={cfg.n_queries} "
        f"success={s.success_rate:.3f} links={s.avg_links_visited:.2f} "
        f"docs={s.avg_docs_retrieved:.2f} deepness={s.avg_deepness:.2f} "
        f"cc={s.cc:.4f} cc_rnd={s.cc_rnd:.4f}"
    )
    return 0


def _mean_stats(stats_list) -> metrics.ExperimentStats:
    n = len(stats_list)
    fields = [f.name for f in dataclasses.fields(metrics.ExperimentStats) if f.name != "no_successes"]
    vals = {name: sum(getattr(s, name) for s in stats_list) / n for name in fields}
    return metrics.ExperimentStats(**vals)


def _cmd_sweep(args) -> int:
    cfg = _build_config(args)
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    if not sizes:
        raise ValueError("empty size list")
    out: Path = args.out_dir
    out.mkdir(parents=True, exist_ok=True)
    results = []
    rows = []
    for size in sizes:
        run_cfg = dataclasses.replace(cfg, n_peers=size)
        res = experiment.run_experiment(run_cfg)
        results.append(res)
        rows.append(experiment.stats_row(res.snapshot, run_cfg.strategy, res.stats))
        ratio = res.stats.cc / res.stats.cc_rnd if res.stats.cc_rnd > 0 else 0.0
        print(
            f"size={size}: edges={res.snapshot.n_edges} cc={res.stats.cc:.4f} "
            f"cc_rnd={res.stats.cc_rnd:.4f} ratio={ratio:.2f} apl={res.stats.apl:.2f}"
        )
    experiment.write_sweep_csv(results, out / "sweep.csv")
    experiment.write_stats_csv(rows, out / "stats.csv")
    return 0


def _cmd_bench(args) -> int:
    from .benchmark import print_benchmark, run_benchmark

    print(f"active backend: {kernels.BACKEND}")
    print_benchmark(run_benchmark(args.seed or 0))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prosa",
        description="Self-organizing semantic P2P overlay simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one experiment and write CSVs")
    _add_common_flags(p_run)
    p_run.add_argument("--strategy", choices=STRATEGIES, dest="strategy")
    p_run.add_argument("--repeats", type=int, default=1)
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="run the size sweep (prosa strategy)")
    _add_common_flags(p_sweep)
    p_sweep.add_argument("--sizes", default="400,600,800,1000,3000,5000")
    p_sweep.set_defaults(func=_cmd_sweep, strategy=None)

    p_bench = sub.add_parser("bench", help="compare numba and numpy kernels")
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
