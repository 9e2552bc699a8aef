"""Command-line front end: ``coprimenet {build,scan,verify,compare}``.

Exit codes: 0 success / all claims pass, 1 verification failure, 2 usage
error, 3 resource-cap refusal.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .config import RunConfig, default_out_dir
from .errors import CoprimeNetError, DisconnectedError, DomainError, ResourceCapError
from .export import (
    CLUSTERING_COLUMNS,
    CYCLE_COLUMNS,
    HISTOGRAM_COLUMNS,
    NODE_COLUMNS,
    SPECTRAL_COLUMNS,
    write_table,
)
from .export import header_lines
from .generators import generate_connected, match_parameters
from .metrics import (
    average_degree,
    average_local_clustering,
    clustering_table,
    cycle_record,
    degree_histogram,
    diameter,
    link_density,
)
from .network import DEFAULT_MAX_N, build_network, edge_count_asymptotic, node_table, write_edge_list
from .numtheory import build_sieve
from .pseudorandom import DEFAULT_MAX_PAIR_N, codegree_sums, cycle_length_threshold
from .spectral import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    DENSE_CUTOFF,
    adjacency_lambda1,
    dense_spectrum,
    laplacian_extremes,
)
from .verify import CLAIMS, run_claim

log = logging.getLogger("coprimenet")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

SCAN_METRICS = [
    "N", "E", "avg_degree", "link_density", "max_degree", "max_degree_ratio", "edge_asym_residual",
    "diameter", "avg_clustering", "lambda1_ratio", "lambda2", "lambdaN", "sync_ratio",
    "codeg_deviation", "r_threshold",
]
DEFAULT_SCAN_METRICS = ["N", "E", "avg_degree", "link_density", "max_degree", "max_degree_ratio", "avg_clustering"]
TABLES = ["nodes", "clustering", "cycles", "histogram"]


class UsageError(Exception):
    pass


def parse_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None
    return lo, hi


def scan_grid(lo: int, hi: int, points: int | None, stride: int | None) -> list[int]:
    if lo > hi or lo < 4:
        raise UsageError(f"empty or invalid range {lo}..{hi}")
    if stride:
        return list(range(lo, hi + 1, stride))
    points = points or 21
    if points == 1 or lo == hi:
        return [lo]
    grid = np.unique(np.round(np.logspace(math.log10(lo), math.log10(hi), points)).astype(int))
    return [int(g) for g in grid]


def _config(args, **extra) -> RunConfig:
    return RunConfig(
        command=args.command,
        seed=args.seed,
        tol=args.tol,
        max_iter=args.max_iter,
        out=args.out,
        format=args.format,
        max_n=args.max_n,
        max_pair_n=args.max_pair_n,
        timestamp=not args.no_timestamp,
        **extra,
    )


def _outdir(cfg: RunConfig) -> Path:
    path = Path(cfg.out)
    path.mkdir(parents=True, exist_ok=True)
    return path


# ---------------------------------------------------------------------------


def cmd_build(args) -> int:
    if args.n > args.max_n:
        raise ResourceCapError(f"n={args.n} exceeds --max-n {args.max_n}")
    cfg = _config(args, n=args.n, extra={"tables": args.tables})
    conf = cfg.to_dict()
    net = build_network(args.n, build_sieve(max(args.n, 2)), max_n=args.max_n)
    out = _outdir(cfg)
    edges = write_edge_list(out / f"edges_n{args.n}.txt", net.labels, net.adjacency, header_lines(conf))
    written = [out / f"edges_n{args.n}.txt"]
    tables = set(args.tables) | {"nodes"}
    if "nodes" in tables:
        written.append(write_table(out / f"nodes_n{args.n}", NODE_COLUMNS, node_table(net), conf, cfg.format))
    if "clustering" in tables:
        rows = [{"label": r.label, "degree": r.degree, "triangles": r.triangles, "cc": r.local_cc,
                 "asymptotic_cc": r.asymptotic_cc} for r in clustering_table(net)]
        written.append(write_table(out / f"clustering_n{args.n}", CLUSTERING_COLUMNS, rows, conf, cfg.format))
    if "cycles" in tables:
        rows = []
        for r in range(3, args.max_cycle + 1):
            rec = cycle_record(net, r)
            rows.append({"r": r, "exact": rec.exact_labeled, "walks": rec.closed_walks,
                         "bound": rec.upper_bound, "wpr_estimate": rec.wpr_estimate})
        written.append(write_table(out / f"cycles_n{args.n}", CYCLE_COLUMNS, rows, conf, cfg.format))
    if "histogram" in tables:
        rows = [{"degree": d, "count": c} for d, c in degree_histogram(net).items()]
        written.append(write_table(out / f"histogram_n{args.n}", HISTOGRAM_COLUMNS, rows, conf, cfg.format))
    print(f"n={args.n}: N={net.N} nodes, E={edges} edges")
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


def _metric(net, metric: str, cfg: RunConfig, cache: dict):
    m, sieve = net.n, net.sieve
    if metric == "N":
        return net.N
    if metric == "E":
        return net.edge_count
    if metric == "avg_degree":
        return average_degree(net)
    if metric == "link_density":
        return link_density(net).value
    if metric == "max_degree":
        return int(net.degrees.max())
    if metric == "max_degree_ratio":
        return int(net.degrees.max()) / (m - math.sqrt(m) - m / math.log(m))
    if metric == "edge_asym_residual":
        return abs(net.edge_count - edge_count_asymptotic(m, sieve)) / (m * math.log(m))
    if metric == "diameter":
        res = diameter(net, max_n=cfg.max_pair_n)
        return res.diameter if res.connected else f"disconnected({res.components})"
    if metric == "avg_clustering":
        return average_local_clustering(net)
    if metric == "lambda1_ratio":
        lam = adjacency_lambda1(net, tol=cfg.tol, max_iter=cfg.max_iter, seed=cfg.seed).value
        return lam / (net.N * 6 / math.pi**2)
    if metric in ("lambda2", "lambdaN", "sync_ratio"):
        if "lap" not in cache:
            cache["lap"] = laplacian_extremes(net, tol=cfg.tol, max_iter=cfg.max_iter, seed=cfg.seed)
        lap = cache["lap"]
        return {"lambda2": lap.lambda2, "lambdaN": lap.lambdaN, "sync_ratio": lap.ratio}[metric]
    if metric == "codeg_deviation":
        return codegree_sums(net, max_n=cfg.max_pair_n).normalized
    if metric == "r_threshold":
        return cycle_length_threshold(net.N)
    raise UsageError(f"unknown metric {metric!r}")


def scan_row(big, m: int, metrics: list[str], cfg: RunConfig) -> dict:
    """One sweep row; a failing metric is left blank and named in ``error``."""
    net = big.prefix(m)
    row: dict = {"n": m}
    errors: list[str] = []
    cache: dict = {}
    for metric in metrics:
        try:
            row[metric] = _metric(net, metric, cfg, cache)
        except CoprimeNetError as exc:
            if not any(e.startswith(type(exc).__name__) for e in errors):
                errors.append(f"{type(exc).__name__}: {exc}")
            row[metric] = None
    if errors:
        row["error"] = "; ".join(errors)
        log.warning("n=%d: %s", m, row["error"])
    return row


def cmd_scan(args) -> int:
    lo, hi = args.range
    grid = scan_grid(lo, hi, args.points, args.stride)
    if hi > args.max_n:
        raise ResourceCapError(f"n={hi} exceeds --max-n {args.max_n}")
    metrics = args.metric or DEFAULT_SCAN_METRICS
    cfg = _config(args, n_range=(lo, hi), stride=args.stride, points=args.points, extra={"metrics": metrics})
    big = build_network(hi, build_sieve(hi), max_n=args.max_n)
    rows = [scan_row(big, m, metrics, cfg) for m in grid]
    path = write_table(_outdir(cfg) / "scan", ["n", *metrics, "error"], rows, cfg.to_dict(), cfg.format)
    print(f"wrote {path} ({len(rows)} rows)")
    return EXIT_OK


def cmd_verify(args) -> int:
    claims = args.claims or sorted(CLAIMS)
    unknown = [c for c in claims if c not in CLAIMS]
    if unknown:
        raise UsageError(f"unknown claims {unknown}; choose from {sorted(CLAIMS)}")
    lo = hi = None
    if args.range:
        lo, hi = args.range
    elif args.t:
        lo, hi = args.t
    elif args.n:
        hi = args.n
    if hi is not None and hi > args.max_n:
        raise ResourceCapError(f"range top {hi} exceeds --max-n {args.max_n}")
    cfg = _config(args, n=args.n, n_range=args.range or args.t, extra={"claims": claims})
    reports = []
    for claim in claims:
        try:
            rep = run_claim(claim, lo, hi)
        except ResourceCapError as exc:
            rep = None
            reports.append({"claim": claim, "passed": False, "error": f"resource cap: {exc}"})
            print(f"[CAP ] {claim}: {exc}")
        if rep is not None:
            reports.append(rep.to_dict())
            print(rep.line())
    path = _outdir(cfg) / "verify.json"
    path.write_text(json.dumps({"version": __version__, "config": cfg.to_dict(), "reports": reports},
                               indent=2, default=str) + "\n")
    print(f"wrote {path}")
    return EXIT_OK if all(r["passed"] for r in reports) else EXIT_FAIL


def cmd_compare(args) -> int:
    if args.n > args.max_n:
        raise ResourceCapError(f"n={args.n} exceeds --max-n {args.max_n}")
    cfg = _config(args, n=args.n, extra={"retries": args.retries})
    net = build_network(args.n, build_sieve(max(args.n, 2)), max_n=args.max_n)
    er_p, ba_p = match_parameters(net)
    rows = []
    for family in ("coprime", "ER", "BA"):
        note = ""
        if family == "coprime":
            g = net
        else:
            params = er_p if family == "ER" else ba_p
            try:
                g = generate_connected(family, params, cfg.seed, args.retries)
            except DisconnectedError as exc:
                g = exc.graph
                note = f"{family}: {exc}"
        row = {"family": family, "n": args.n, "N": g.adjacency.shape[0], "E_target": net.edge_count,
               "E_actual": g.edge_count, "seed": g.seed if family != "coprime" else cfg.seed}
        try:
            lap = laplacian_extremes(g, tol=cfg.tol, max_iter=cfg.max_iter, seed=cfg.seed)
            row.update(lambda2=lap.lambda2, lambdaN=lap.lambdaN, ratio=lap.ratio, solver=lap.solver,
                       iterations=lap.iterations, residual=lap.residual)
        except DisconnectedError as exc:
            # lambda_2 = 0 exactly; report lambda_N from the dense spectrum when it is cheap
            if row["N"] > DENSE_CUTOFF:
                raise
            vals = dense_spectrum(g.adjacency)
            row.update(lambda2=0.0, lambdaN=float(vals[-1]), ratio=math.inf, solver="full",
                       iterations=0, residual=0.0, note=f"disconnected({exc.components})")
            log.warning("%s instance disconnected (%d components)", family, exc.components)
        if note:
            log.warning(note)
        rows.append(row)
    path = write_table(_outdir(cfg) / f"compare_n{args.n}", SPECTRAL_COLUMNS, rows, cfg.to_dict(), cfg.format)
    for r in rows:
        print(f"{r['family']:8s} N={r['N']} E={r['E_actual']} lambda2={r['lambda2']:.6g} "
              f"lambdaN={r['lambdaN']:.6g} ratio={r['ratio']:.6g} {r.get('note', '')}".rstrip())
    print(f"wrote {path}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=default_out_dir(), help="output directory (env COPRIMENET_OUT)")
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    common.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="refuse bounds above this")
    common.add_argument("--max-pair-n", type=int, default=DEFAULT_MAX_PAIR_N, help="cap on N for pair loops")
    common.add_argument("--no-timestamp", action="store_true", help="omit timestamps for byte-identical reruns")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="coprimenet", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"coprimenet {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="build one network and export it")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tables", nargs="*", choices=TABLES, default=[])
    p.add_argument("--max-cycle", type=int, default=5)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("scan", parents=[common], help="sweep n and tabulate metrics")
    p.add_argument("--range", type=parse_range, required=True, help="LO..HI")
    grid = p.add_mutually_exclusive_group()
    grid.add_argument("--points", type=int, help="log-spaced grid size (default 21)")
    grid.add_argument("--stride", type=int, help="linear grid step")
    p.add_argument("--metric", nargs="+", choices=SCAN_METRICS)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", parents=[common], help="check theorems and lemmas")
    p.add_argument("claims", nargs="*", help=f"claim ids: {' '.join(sorted(CLAIMS))} (default: all)")
    p.add_argument("--range", type=parse_range, help="LO..HI bound range")
    p.add_argument("--t", type=parse_range, help="LO..HI index range for L6-L8")
    p.add_argument("--n", type=int, help="single bound for T5/T8")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare", parents=[common], help="coprime vs ER vs BA spectral table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--retries", type=int, default=10)
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_CAP
    except DomainError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CoprimeNetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
