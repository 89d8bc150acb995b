"""Command-line interface: detection, evaluation and the benchmark harness."""

from __future__ import annotations

import argparse
import math
import os
import sys
import time

from .cover import Cover, read_cover_file, write_cover_file
from .graph import Graph, GraphParseError, load_edge_list
from .metrics import cover_stats, modularity
from .pipeline import detect
from .traversal import RunConfig, run_traversal


class CliError(Exception):
    """Input or usage error; maps to exit code 2."""


def _load_graph(path: str) -> tuple[Graph, float]:
    start = time.perf_counter()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            g = load_edge_list(fh)
    except OSError as exc:
        raise CliError(f"cannot read input {path}: {exc}") from exc
    except GraphParseError as exc:
        raise CliError(f"cannot parse {path}: {exc}") from exc
    return g, (time.perf_counter() - start) * 1000.0


def _resolve_start(g: Graph, value: str) -> int | None:
    if value == "auto":
        return None
    try:
        return g.id_of(value)
    except KeyError:
        raise CliError(f"start node {value!r} not present in the graph") from None


def _config(args, start: int | None) -> RunConfig:
    try:
        return RunConfig(
            method=args.method,
            threshold=args.threshold,
            start=start,
            run_modmax=not getattr(args, "skip_modmax", False),
        )
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def cmd_detect(args) -> int:
    g, parse_ms = _load_graph(args.input)
    start = _resolve_start(g, args.start) if g.n else None
    cfg = _config(args, start)
    t0 = time.perf_counter()
    result = detect(g, cfg)
    elapsed_ms = (time.perf_counter() - t0) * 1000.0
    q = modularity(g, result.cover) if g.n else 0.0
    with open(args.output, "w", encoding="utf-8") as fh:
        write_cover_file(g, result.cover, fh)
    print(f"parse_ms={parse_ms:.1f}", file=sys.stderr)
    print(f"{g.n}\t{g.m}\t{result.cover.k if g.n else 0}\t{q:.3f}\t{elapsed_ms:.1f}")
    return 0


def cmd_eval(args) -> int:
    g, _ = _load_graph(args.input)
    try:
        with open(args.cover, "r", encoding="utf-8") as fh:
            cover = read_cover_file(g, fh)
    except OSError as exc:
        raise CliError(f"cannot read cover {args.cover}: {exc}") from exc
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    stats = cover_stats(g, cover)
    print(f"Q\t{stats.modularity:.3f}")
    print(f"k\t{stats.community_count}")
    print(
        "sizes\t"
        + "\t".join(f"{c}:{stats.sizes[c]}" for c in sorted(stats.sizes))
    )
    print(
        "conductance\t"
        + "\t".join(f"{c}:{stats.conductances[c]:.3f}" for c in sorted(stats.conductances))
    )
    return 0


def _linear_fit(xs: list[float], ys: list[float]) -> tuple[float, float, float]:
    """Least-squares slope, intercept and R^2."""
    import numpy as np

    slope, intercept = np.polyfit(xs, ys, 1)
    pred = np.polyval([slope, intercept], xs)
    resid = np.asarray(ys) - pred
    total = np.asarray(ys) - np.mean(ys)
    ss_tot = float(np.dot(total, total))
    r2 = 1.0 - float(np.dot(resid, resid)) / ss_tot if ss_tot > 0 else 1.0
    return float(slope), float(intercept), r2


def cmd_bench(args) -> int:
    g, _ = _load_graph(args.input)
    try:
        fractions = [float(tok) for tok in args.fractions.split(",") if tok]
    except ValueError as exc:
        raise CliError(f"bad fraction list {args.fractions!r}") from exc
    if not fractions or any(not 0.0 < f <= 1.0 for f in fractions):
        raise CliError("fractions must lie in (0, 1]")
    if len(set(fractions)) < 2:
        raise CliError("need at least two distinct fractions for a linearity fit")
    if args.repeats < 1:
        raise CliError("repeats must be >= 1")

    dataset = os.path.splitext(os.path.basename(args.input))[0]
    print("dataset,fraction,method,phase,run,time_ms,Q,k")
    medians: list[tuple[int, float]] = []
    for fraction in fractions:
        sample = g if fraction == 1.0 else g.sample_edges(fraction, args.seed)
        times = []
        for run in range(args.repeats):
            cfg = RunConfig(method=args.method, threshold=args.threshold)
            t0 = time.perf_counter()
            if args.phase == "traversal":
                run_traversal(sample, cfg)
                q, k = float("nan"), 0
            else:
                result = detect(sample, cfg)
                q, k = modularity(sample, result.cover), result.cover.k
            ms = (time.perf_counter() - t0) * 1000.0
            times.append(ms)
            q_text = "" if math.isnan(q) else f"{q:.6f}"
            print(
                f"{dataset},{fraction},{args.method},{args.phase},{run},{ms:.3f},{q_text},{k}"
            )
        times.sort()
        medians.append((sample.m, times[len(times) // 2]))
    xs = [float(m) for m, _ in medians]
    ys = [t for _, t in medians]
    slope, intercept, r2 = _linear_fit(xs, ys)
    print(f"fit slope_ms_per_edge={slope:.6g} intercept_ms={intercept:.6g} r2={r2:.4f}", file=sys.stderr)
    return 0


def cmd_sweep_threshold(args) -> int:
    g, _ = _load_graph(args.input)
    if args.step <= 0 or args.stop < args.start_r:
        raise CliError("need step > 0 and a non-empty threshold range")
    print("r,Q,k")
    r = args.start_r
    while r <= args.stop + 1e-9:
        result = detect(g, RunConfig(method="ins", threshold=round(r, 10)))
        q = modularity(g, result.cover)
        print(f"{r:.2f},{q:.6f},{result.cover.k}")
        r += args.step
    return 0


def cmd_sweep_start(args) -> int:
    g, _ = _load_graph(args.input)
    if g.n == 0:
        raise CliError("cannot sweep start nodes of an empty graph")
    if args.sample == "all":
        starts = list(range(g.n))
    else:
        try:
            count = int(args.sample)
        except ValueError:
            raise CliError(f"--sample must be 'all' or an integer, got {args.sample!r}") from None
        if count < 1:
            raise CliError("--sample must be >= 1")
        if count >= g.n:
            starts = list(range(g.n))
        else:
            import random

            starts = sorted(random.Random(args.seed).sample(range(g.n), count))
    print("start,degree,Q,k")
    qs = []
    for v in starts:
        result = detect(g, RunConfig(method="ins", threshold=args.threshold, start=v))
        q = modularity(g, result.cover)
        qs.append(q)
        print(f"{g.label_of(v)},{g.degree(v)},{q:.6f},{result.cover.k}")
    mean = sum(qs) / len(qs)
    stddev = math.sqrt(sum((q - mean) ** 2 for q in qs) / len(qs))
    rsd = stddev / mean if mean else float("inf")
    print(f"mean_Q={mean:.4f} stddev={stddev:.4f} rsd={rsd:.4f}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="commspread",
        description="Traversal-based community detection and benchmark harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="detect communities and write a cover file")
    p.add_argument("--input", required=True)
    p.add_argument("--method", choices=("ins", "cond"), required=True)
    p.add_argument("--threshold", type=float, default=0.75)
    p.add_argument("--start", default="auto", help="start node label or 'auto'")
    p.add_argument("--skip-modmax", action="store_true")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("eval", help="evaluate a cover file against a graph")
    p.add_argument("--input", required=True)
    p.add_argument("--cover", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bench", help="runtime benchmark over edge-sampled subgraphs")
    p.add_argument("--input", required=True)
    p.add_argument("--fractions", default="0.25,0.5,0.75,1.0")
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method", choices=("ins", "cond"), default="ins")
    p.add_argument("--threshold", type=float, default=0.75)
    p.add_argument("--phase", choices=("traversal", "full"), default="traversal")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("sweep-threshold", help="detection quality across thresholds")
    p.add_argument("--input", required=True)
    p.add_argument("--from", dest="start_r", type=float, default=0.4)
    p.add_argument("--to", dest="stop", type=float, default=0.85)
    p.add_argument("--step", type=float, default=0.05)
    p.set_defaults(func=cmd_sweep_threshold)

    p = sub.add_parser("sweep-start", help="detection quality across starting nodes")
    p.add_argument("--input", required=True)
    p.add_argument("--sample", default="all", help="'all' or a sample size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threshold", type=float, default=0.75)
    p.set_defaults(func=cmd_sweep_start)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
