"""Sweep n on a log grid and tabulate the quantities behind the degree,
max-degree, clustering and spectral plots.

    python scripts/figure_sweeps.py --n-max 10000 --points 25 --out results/
"""

from __future__ import annotations

import argparse
import math
from pathlib import Path

import numpy as np

from coprimenet import build_network, build_sieve
from coprimenet.config import RunConfig, default_out_dir
from coprimenet.export import write_table
from coprimenet.metrics import P_COPRIME, average_degree, average_local_clustering, link_density, loglog_slope
from coprimenet.network import max_degree_closed_form
from coprimenet.spectral import adjacency_lambda1, laplacian_extremes

COLUMNS = ["n", "N", "E", "avg_degree", "avg_degree_over_n", "link_density", "max_degree", "max_degree_theory",
           "avg_clustering", "lambda1_ratio", "lambda2", "lambdaN"]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-min", type=int, default=100)
    ap.add_argument("--n-max", type=int, default=10_000)
    ap.add_argument("--points", type=int, default=21)
    ap.add_argument("--spectral-max", type=int, default=4000, help="skip lambda_2 above this n")
    ap.add_argument("--out", default=default_out_dir())
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    sieve = build_sieve(args.n_max)
    big = build_network(args.n_max, sieve)
    grid = sorted({int(round(x)) for x in np.logspace(math.log10(args.n_min), math.log10(args.n_max), args.points)})
    rows = []
    for n in grid:
        net = big.prefix(n)
        row = {"n": n, "N": net.N, "E": net.edge_count, "avg_degree": average_degree(net),
               "link_density": link_density(net).value, "max_degree": int(net.degrees.max()),
               "max_degree_theory": max_degree_closed_form(n, sieve)[1],
               "avg_clustering": average_local_clustering(net),
               "lambda1_ratio": adjacency_lambda1(net, seed=args.seed).value / (net.N * P_COPRIME)}
        row["avg_degree_over_n"] = row["avg_degree"] / n
        if n <= args.spectral_max and n >= 49:
            lap = laplacian_extremes(net, seed=args.seed)
            row.update(lambda2=lap.lambda2, lambdaN=lap.lambdaN)
        rows.append(row)
        print(f"n={n:6d} <d>/n={row['avg_degree_over_n']:.4f} density={row['link_density']:.4f} "
              f"C={row['avg_clustering']:.4f} l1/Np={row['lambda1_ratio']:.4f}")
    slope = loglog_slope([r["n"] for r in rows], [r["avg_degree"] for r in rows])
    print(f"log-log slope of average degree: {slope:.4f}")
    cfg = RunConfig("figure_sweeps", n_range=(args.n_min, args.n_max), points=args.points, seed=args.seed,
                    out=args.out, extra={"loglog_slope": slope}).to_dict()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    print("wrote", write_table(out / "figure_sweeps", COLUMNS, rows, cfg))


if __name__ == "__main__":
    main()
