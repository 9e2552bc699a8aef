"""Claim-by-claim verification runners.

Each runner checks one theorem or lemma over a finite range and returns a
:class:`VerificationReport`. Ranges default to the desk-scale ranges used by
the acceptance suite. Runners that sweep many bounds build the largest
network once and take prefixes, which are exactly the smaller networks.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

from .generators import generate_connected, match_parameters
from .metrics import (
    P_COPRIME,
    average_degree,
    closed_walks,
    diameter,
    labeled_cycles_exact,
    link_density,
    asymptotic_clustering,
    local_clustering_values,
    loglog_slope,
    triangle_count,
)
from .network import (
    NetworkBuilder,
    build_network,
    degree_formula,
    edge_count_asymptotic,
    edge_count_recurrence,
    edge_increment,
    isolated_sweep,
    max_degree_closed_form,
    popcount,
)
from .numtheory import (
    LEMMA5_CONVENTION,
    SieveTable,
    build_sieve,
    factor_signature,
    lemma5_sides,
    sum_omega,
    sum_omega_sq,
    sum_phi,
    verify_lemma,
)
from .pseudorandom import PAIR_CONVENTION, codegree_sums
from .report import VerificationReport, timed
from .spectral import lambda1_ratio, laplacian_extremes


def _sieve(limit: int, sieve: SieveTable | None) -> SieveTable:
    return sieve if sieve is not None and sieve.limit >= limit else build_sieve(limit)


def verify_t1(lo: int = 49, hi: int = 5000, sieve=None) -> VerificationReport:
    """No isolated node for every bound in [lo, hi]."""
    sieve = _sieve(hi, sieve)
    report = VerificationReport("T1", f"n in {lo}..{hi}")
    with timed(report):
        isolated = isolated_sweep(build_network(hi, sieve))
        for m in range(max(lo, 4), hi + 1):
            if m in isolated:
                report.fail({"n": m, "isolated": isolated[m][:5]})
        report.details["isolated_at_30"] = isolated.get(30, [])
        report.details["last_bound_with_isolated_node"] = max(isolated) if isolated else None
    return report


def verify_t2(lo: int = 4, hi: int = 1500, sieve=None) -> VerificationReport:
    sieve = _sieve(hi, sieve)
    report = VerificationReport("T2", f"n in {lo}..{hi}")
    with timed(report):
        comp = sieve.composites
        counts = np.searchsorted(comp, np.arange(hi + 1), side="right")
        for m in range(max(lo, 4), hi + 1):
            expected = m - sieve.pi(m) - 1
            report.check(int(counts[m]) == expected, {"n": m, "counted": int(counts[m]), "formula": expected})
    return report


def verify_t3(lo: int = 4, hi: int = 1500, sieve=None) -> VerificationReport:
    """Exact edge count at every bound: the growing builder's per-step edge gain
    must equal phi(k) - pi(k) + w(k) - 1, the batch build at ``hi`` must agree
    with the builder, and each prefix of the batch build with the telescoping sum."""
    sieve = _sieve(hi, sieve)
    report = VerificationReport("T3", f"n in {lo}..{hi}", conventions=["telescoping sum over composite k <= n"])
    with timed(report):
        builder = NetworkBuilder(sieve)
        running = 0
        for m in range(4, hi + 1):
            if sieve.is_prime(m):
                continue
            k, added = builder.add_next()
            running += edge_increment(k, sieve)
            if m >= lo:
                report.check(added == edge_increment(k, sieve) and builder.edge_count == running,
                             {"n": m, "built": builder.edge_count, "telescoping": running})
        batch = build_network(hi, sieve)
        report.check(batch.edge_count == builder.edge_count == edge_count_recurrence(hi, sieve),
                     {"n": hi, "batch": batch.edge_count, "builder": builder.edge_count})
        # every smaller bound, read off the batch build as a prefix network
        rows = np.cumsum(np.tril(batch.adjacency, -1).sum(axis=1, dtype=np.int64))
        for m in range(max(lo, 4), hi + 1):
            size = m - sieve.pi(m) - 1
            report.check(int(rows[size - 1]) == edge_count_recurrence(m, sieve),
                         {"n": m, "prefix_edges": int(rows[size - 1]), "telescoping": edge_count_recurrence(m, sieve)})
    return report


def verify_residual_trend(xs: Sequence[int] = (1000, 10_000), max_growth: float = 2.0, sieve=None) -> VerificationReport:
    """|E - E_asym|/(n ln n) and |sum phi - 3x^2/pi^2|/(x ln x) must not grow by
    more than ``max_growth`` between consecutive scales."""
    sieve = _sieve(max(xs), sieve)
    report = VerificationReport("T3.asym+L1", f"n in {list(xs)}", conventions=[f"growth factor <= {max_growth}"])
    with timed(report):
        edge_res, phi_res = [], []
        for x in xs:
            edge_res.append(abs(edge_count_recurrence(x, sieve) - edge_count_asymptotic(x, sieve)) / (x * math.log(x)))
            ps = sum_phi(x, sieve)
            phi_res.append(abs(ps.exact - ps.main_term) / (x * math.log(x)))
        report.details.update(edge_residuals=edge_res, phi_residuals=phi_res)
        for name, res in (("edges", edge_res), ("phi", phi_res)):
            for a, b, xa, xb in zip(res, res[1:], xs, xs[1:]):
                report.check(b <= max_growth * a, {"series": name, "from": xa, "to": xb, "growth": b / a})
    return report


def verify_sum_diagnostics(xs: Sequence[int] = (1000, 10_000, 100_000), sieve=None) -> VerificationReport:
    """Normalised residuals for the omega sums; reported, passes if finite."""
    sieve = _sieve(max(xs), sieve)
    report = VerificationReport("L2+L3", f"x in {list(xs)}",
                                conventions=["(sum w - x loglog x)/x and (sum w^2 - x (loglog x)^2)/(x loglog x)"])
    with timed(report):
        rows = []
        for x in xs:
            s1, s2 = sum_omega(x, sieve), sum_omega_sq(x, sieve)
            llx = math.log(math.log(x))
            row = {"x": x, "omega": (s1.exact - s1.main_term) / x, "omega_sq": (s2.exact - s2.main_term) / (x * llx)}
            rows.append(row)
            report.check(all(math.isfinite(v) for v in row.values()), row)
        report.details["rows"] = rows
    return report


def verify_t4(lo: int = 49, hi: int = 1500, pairs_per_n: int = 20, seed: int = 0, max_degree_from: int = 49,
              sieve=None) -> VerificationReport:
    """Degree formula for every node, codegree formula on sampled pairs, and the
    max-degree closed form (from ``max_degree_from`` on), for every bound in [lo, hi]."""
    sieve = _sieve(hi, sieve)
    report = VerificationReport("T4", f"n in {lo}..{hi}", conventions=[f"{pairs_per_n} sampled pairs per n"])
    rng = np.random.Generator(np.random.PCG64(seed))
    with timed(report):
        big = build_network(hi, sieve)
        sigs = [factor_signature(int(k), sieve) for k in big.labels]
        bits = big.bitsets
        for m in range(max(lo, 4), hi + 1):
            net = big.prefix(m)
            size = net.N
            deg = net.degrees
            cache: dict[int, int] = {}
            for i in range(size):
                rad = sigs[i].radical
                if rad not in cache:
                    cache[rad] = degree_formula(m, sigs[i], sieve)
                if int(deg[i]) != cache[rad]:
                    report.fail({"n": m, "node": int(net.labels[i]), "degree": int(deg[i]), "formula": cache[rad]})
            if size >= 2:
                width = -(-size // 64)
                tail = size % 64
                for _ in range(pairs_per_n):
                    i, j = rng.choice(size, 2, replace=False)
                    common = bits[i, :width] & bits[j, :width]
                    if tail:
                        common = common.copy()
                        common[-1] &= np.uint64((1 << tail) - 1)
                    got = popcount(common)
                    k, l = int(net.labels[i]), int(net.labels[j])
                    want = degree_formula(m, sigs[i] * sigs[j], sieve)
                    report.check(got == want, {"n": m, "pair": (k, l), "codeg": got, "formula": want})
            if m < max_degree_from:
                continue
            node, closed = max_degree_closed_form(m, sieve)
            top = int(np.argmax(deg))
            report.check(int(net.labels[top]) == node and int(deg[top]) == closed,
                         {"n": m, "argmax": int(net.labels[top]), "max": int(deg[top]), "closed_form": (node, closed)})
    return report


def verify_t5(n: int = 10_000, tol: float = 0.02, slope_range: tuple[int, int] = (100, 10_000),
              slope_tol: float = 0.02, points: int = 21, sieve=None) -> VerificationReport:
    sieve = _sieve(max(n, slope_range[1]), sieve)
    report = VerificationReport("T5", f"n = {n}; slope over {slope_range[0]}..{slope_range[1]}",
                                conventions=[f"target 6/pi^2 = {P_COPRIME:.6f} +- {tol}"])
    with timed(report):
        big = build_network(max(n, slope_range[1]), sieve)
        net = big.prefix(n)
        dens = link_density(net).value
        per_n = average_degree(net) / n
        grid = sorted({int(round(x)) for x in np.logspace(math.log10(slope_range[0]), math.log10(slope_range[1]), points)})
        slope = loglog_slope(grid, [average_degree(big.prefix(m)) for m in grid])
        report.details.update(link_density=dens, avg_degree_over_n=per_n, loglog_slope=slope)
        report.check(abs(dens - P_COPRIME) <= tol, {"link_density": dens, "excess": abs(dens - P_COPRIME) - tol})
        report.check(abs(per_n - P_COPRIME) <= tol, {"avg_degree_over_n": per_n, "excess": abs(per_n - P_COPRIME) - tol})
        report.check(abs(slope - 1) <= slope_tol, {"slope": slope, "excess": abs(slope - 1) - slope_tol})
    return report


def verify_t6(lo: int = 49, hi: int = 2000, sieve=None) -> VerificationReport:
    """Diameter <= 3 for 49 <= n < 289 and <= 2 for n >= 289, every n in range."""
    sieve = _sieve(hi, sieve)
    report = VerificationReport("T6", f"n in {lo}..{hi}", conventions=["all-pairs BFS on each prefix network"])
    with timed(report):
        big = build_network(hi, sieve)
        observed: dict[int, int] = {}
        last = None
        for m in range(max(lo, 4), hi + 1):
            # a prime bound adds no node, so the graph (and diameter) is unchanged
            if last is None or not sieve.is_prime(m):
                last = diameter(big.prefix(m))
            bound = 2 if m >= 289 else 3
            if not last.connected:
                report.fail({"n": m, "components": last.components})
                continue
            observed[last.diameter] = observed.get(last.diameter, 0) + 1
            report.check(last.diameter <= bound, {"n": m, "diameter": last.diameter, "bound": bound})
        report.details["diameter_histogram"] = observed
    return report


def verify_t7(lo: int = 4, hi: int = 300, cycles_up_to_n: int = 60, sieve=None) -> VerificationReport:
    sieve = _sieve(hi, sieve)
    report = VerificationReport(
        "T7", f"n in {lo}..{hi}",
        conventions=[PAIR_CONVENTION, f"labeled 3-cycles enumerated for n <= {cycles_up_to_n}"],
    )
    with timed(report):
        big = build_network(hi, sieve)
        for m in range(max(lo, 4), hi + 1):
            net = big.prefix(m)
            adj = net.adjacency
            tri = triangle_count(adj)
            deg = net.degrees
            sums = codegree_sums(adj)
            t2, t3, t4 = closed_walks(adj, 2), closed_walks(adj, 3), closed_walks(adj, 4)
            ok = (t2 == 2 * net.edge_count and t3 == 6 * tri and sums.sum_codeg_sq == t4
                  and sums.sum_codeg == int((deg * deg).sum()))
            report.check(ok, {"n": m, "tr2": t2, "2E": 2 * net.edge_count, "tr3": t3, "6T": 6 * tri,
                              "sum_codeg_sq": sums.sum_codeg_sq, "tr4": t4})
            if m <= cycles_up_to_n:
                lab = labeled_cycles_exact(adj, 3)
                report.check(lab == 6 * tri, {"n": m, "labeled_3_cycles": lab, "6T": 6 * tri})
    return report


def verify_t8(n: int = 10_000, tol: float = 0.05, avg_target: float = 0.61, avg_tol: float = 0.03,
              max_omega: int = 2, sieve=None) -> VerificationReport:
    sieve = _sieve(n, sieve)
    report = VerificationReport("T8", f"n = {n}, nodes with omega <= {max_omega}",
                                conventions=[f"c(k)/asymptote within 1 +- {tol}; average within {avg_target} +- {avg_tol}"])
    with timed(report):
        net = build_network(n, sieve)
        cc, _, _ = local_clustering_values(net)
        avg = math.fsum(cc.tolist()) / len(cc)
        report.details["avg_clustering"] = avg
        report.check(abs(avg - avg_target) <= avg_tol, {"avg_clustering": avg, "excess": abs(avg - avg_target) - avg_tol})
        ratios = []
        for k, c in zip(net.labels.tolist(), cc.tolist()):
            if sieve.omega[k] <= max_omega:
                ratio = c / asymptotic_clustering(k, sieve)
                ratios.append(ratio)
                report.check(abs(ratio - 1) <= tol, {"k": k, "cc": c, "ratio": ratio})
        ratios = np.array(ratios)
        report.details.update(nodes_checked=len(ratios), ratio_min=float(ratios.min()), ratio_max=float(ratios.max()),
                              nodes_outside=int(np.count_nonzero(np.abs(ratios - 1) > tol)))
    return report


def verify_l5(lo: int = 3, hi: int = 10_000, sieve=None) -> VerificationReport:
    sieve = _sieve(hi, sieve)
    report = VerificationReport("L5", f"x in {lo}..{hi}", conventions=[LEMMA5_CONVENTION])
    with timed(report):
        pi = sieve.pi_prefix.astype(np.int64)
        lhs_all = np.concatenate([[0], np.cumsum(pi[1:])])  # lhs_all[x] = sum_{k<=x} pi(k)
        is_prime = sieve.spf == np.arange(sieve.limit + 1)
        is_prime[:2] = False
        psum = np.cumsum(np.where(is_prime, np.arange(sieve.limit + 1), 0))
        for x in range(lo, hi + 1):
            lhs = int(lhs_all[x - 1])
            rhs = x * int(pi[x]) - int(psum[x])
            report.check(lhs == rhs, {"x": x, "lhs": lhs, "rhs": rhs})
        inclusive_gap = int(lhs_all[hi]) - (hi * int(pi[hi]) - int(psum[hi]))
        report.details["inclusive_sum_minus_rhs_at_hi"] = inclusive_gap
        report.details["pi_at_hi"] = int(pi[hi])
        report.details["spot_check"] = lemma5_sides(min(hi, 10), sieve)
    return report


def verify_wpr(ns: Sequence[int] = (500, 1000, 2000, 4000), lambda_n: int = 5000, tol: float = 0.05,
               seed: int = 0, sieve=None) -> VerificationReport:
    top = max(max(ns), lambda_n)
    sieve = _sieve(top, sieve)
    report = VerificationReport("WPR", f"deviation over n in {list(ns)}; lambda_1 at n = {lambda_n}",
                                conventions=[PAIR_CONVENTION, f"lambda_1/(N p) within 1 +- {tol}"])
    with timed(report):
        big = build_network(top, sieve)
        norms = [codegree_sums(big.prefix(m)).normalized for m in ns]
        report.details["normalized_deviation"] = dict(zip(ns, norms))
        for a, b, na, nb in zip(norms, norms[1:], ns, ns[1:]):
            report.check(b < a, {"from": na, "to": nb, "normalized": (a, b)})
        ratio = lambda1_ratio(big.prefix(lambda_n), seed=seed)
        report.details["lambda1_ratio"] = ratio
        report.check(abs(ratio - 1) <= tol, {"n": lambda_n, "lambda1_ratio": ratio, "excess": abs(ratio - 1) - tol})
    return report


def verify_sync(n: int = 2000, seeds: Sequence[int] = (1, 2, 3), trend: Sequence[int] = (500, 1000, 2000, 4000),
                sieve=None) -> VerificationReport:
    top = max(n, max(trend))
    sieve = _sieve(top, sieve)
    report = VerificationReport("SYNC", f"ordering at n = {n}, seeds {list(seeds)}; lambda_2 trend over {list(trend)}")
    with timed(report):
        big = build_network(top, sieve)
        net = big.prefix(n)
        cop = laplacian_extremes(net, method="iterative")
        er_p, ba_p = match_parameters(net)
        trials = []
        for s in seeds:
            er = laplacian_extremes(generate_connected("ER", er_p, s), method="iterative", seed=s)
            ba_graph = generate_connected("BA", ba_p, s)
            ba = laplacian_extremes(ba_graph, method="iterative", seed=s)
            row = {"seed": s, "coprime": cop.ratio, "ER": er.ratio, "BA": ba.ratio,
                   "BA_edges": ba_graph.achieved_edges, "target_edges": net.edge_count}
            trials.append(row)
            report.check(cop.ratio > er.ratio and cop.ratio > ba.ratio, row)
        report.details["trials"] = trials
        lam2 = [laplacian_extremes(big.prefix(m), method="iterative").lambda2 for m in trend]
        report.details["lambda2_trend"] = dict(zip(trend, lam2))
        for a, b, na, nb in zip(lam2, lam2[1:], trend, trend[1:]):
            report.check(b > a, {"from": na, "to": nb, "lambda2": (a, b)})
    return report


def _lemma(k: int) -> Callable[..., VerificationReport]:
    def run(lo=None, hi=None, sieve=None):
        t_range = (lo, hi) if lo is not None and hi is not None else None
        return verify_lemma(k, _sieve(5000, sieve), t_range=t_range)
    return run


CLAIMS: dict[str, Callable[..., VerificationReport]] = {
    "T1": verify_t1,
    "T2": verify_t2,
    "T3": verify_t3,
    "T4": verify_t4,
    "T5": verify_t5,
    "T6": verify_t6,
    "T7": verify_t7,
    "T8": verify_t8,
    "L1": verify_residual_trend,
    "L2": verify_sum_diagnostics,
    "L3": verify_sum_diagnostics,
    "L5": verify_l5,
    "L6": _lemma(6),
    "L7": _lemma(7),
    "L8": _lemma(8),
    "L9": _lemma(9),
    "WPR": verify_wpr,
    "SYNC": verify_sync,
}

RANGED = {"T1", "T2", "T3", "T4", "T6", "T7", "L5", "L6", "L7", "L8"}


def run_claim(claim: str, lo: int | None = None, hi: int | None = None, sieve=None) -> VerificationReport:
    try:
        runner = CLAIMS[claim]
    except KeyError:
        raise KeyError(f"unknown claim {claim!r}; choose from {sorted(CLAIMS)}") from None
    if claim in RANGED and lo is not None and hi is not None:
        return runner(lo, hi, sieve=sieve)
    if claim in ("T5", "T8") and hi is not None:
        return runner(hi, sieve=sieve)
    return runner(sieve=sieve)

