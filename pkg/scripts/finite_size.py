"""Finite-size behaviour of the density, per-node clustering and lambda_1
ratios as n grows: each gap to its limit, and the gap times log n.

A gap that shrinks like 1/log n keeps gap * log n roughly flat; a faster
decay makes it fall.

    python scripts/finite_size.py --ns 100 1000 10000 30000
"""

from __future__ import annotations

import argparse
import math
from pathlib import Path

from coprimenet import build_network, build_sieve
from coprimenet.config import RunConfig, default_out_dir
from coprimenet.export import write_table
from coprimenet.metrics import P_COPRIME, asymptotic_clustering, link_density, local_clustering_values
from coprimenet.spectral import adjacency_lambda1

COLUMNS = ["n", "N", "density", "density_gap", "density_gap_x_log_n", "cc4_ratio", "cc4_gap_x_log_n",
           "lambda1_ratio", "lambda1_gap_x_log_n"]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ns", type=int, nargs="+", default=[100, 300, 1000, 3000, 10_000])
    ap.add_argument("--lambda-max", type=int, default=10_000, help="skip lambda_1 above this n")
    ap.add_argument("--out", default=default_out_dir())
    args = ap.parse_args()

    sieve = build_sieve(max(args.ns))
    big = build_network(max(args.ns), sieve)
    rows = []
    for n in args.ns:
        net = big.prefix(n)
        log_n = math.log(n)
        dens = link_density(net).value
        cc, _, _ = local_clustering_values(net)
        cc4 = cc[net.index(4)] / asymptotic_clustering(4, sieve)
        row = {"n": n, "N": net.N, "density": dens, "density_gap": P_COPRIME - dens,
               "density_gap_x_log_n": (P_COPRIME - dens) * log_n, "cc4_ratio": cc4,
               "cc4_gap_x_log_n": (1 - cc4) * log_n}
        if n <= args.lambda_max:
            lam = adjacency_lambda1(net).value / (net.N * P_COPRIME)
            row.update(lambda1_ratio=lam, lambda1_gap_x_log_n=(1 - lam) * log_n)
        rows.append(row)
        print("  ".join(f"{k}={v:.4g}" if isinstance(v, float) else f"{k}={v}" for k, v in row.items()))
    cfg = RunConfig("finite_size", extra={"ns": args.ns}, out=args.out).to_dict()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    print("wrote", write_table(out / "finite_size", COLUMNS, rows, cfg))


if __name__ == "__main__":
    main()
