"""Exact integer number theory: sieve, factor signatures, totients, prime sums.

Everything here is integer arithmetic. Real-valued main terms (``3x^2/pi^2``
and friends) are returned next to the exact sums so callers can form
residuals; nothing in this module compares them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DomainError
from .report import VerificationReport, timed

MERTENS_B1 = 0.2614972128476428


@dataclass(frozen=True, eq=False)
class SieveTable:
    """Primes, smallest prime factors and prime-counting prefix up to ``limit``.

    ``spf[k]`` is the smallest prime factor of ``k`` for ``k >= 2`` (entries 0
    and 1 are 0), ``pi_prefix[x]`` is pi(x) for ``0 <= x <= limit`` and
    ``primes[i - 1]`` is the i-th prime.
    """

    limit: int
    spf: np.ndarray
    primes: np.ndarray
    pi_prefix: np.ndarray

    def pi(self, x: int) -> int:
        if x < 0 or x > self.limit:
            raise DomainError(f"pi({x}) outside sieve range [0, {self.limit}]")
        return int(self.pi_prefix[x])

    def is_prime(self, k: int) -> bool:
        return 2 <= k <= self.limit and int(self.spf[k]) == k

    def nth_prime(self, i: int) -> int:
        """The i-th prime, 1-indexed (``nth_prime(1) == 2``)."""
        if not 1 <= i <= len(self.primes):
            raise DomainError(f"p_{i} not covered by sieve up to {self.limit}")
        return int(self.primes[i - 1])

    @cached_property
    def phi(self) -> np.ndarray:
        """Euler totient table, ``phi[k]`` for ``0 <= k <= limit`` (phi[0] = 0)."""
        table = np.arange(self.limit + 1, dtype=np.int64)
        for p in self.primes.tolist():
            table[p::p] -= table[p::p] // p
        return table

    @cached_property
    def omega(self) -> np.ndarray:
        """Number of distinct prime factors, ``omega[k]``."""
        table = np.zeros(self.limit + 1, dtype=np.int64)
        for p in self.primes.tolist():
            table[p::p] += 1
        return table

    @cached_property
    def radical(self) -> np.ndarray:
        table = np.ones(self.limit + 1, dtype=np.int64)
        for p in self.primes.tolist():
            table[p::p] *= p
        table[0] = 0
        return table

    @cached_property
    def composites(self) -> np.ndarray:
        ks = np.arange(self.limit + 1)
        mask = (ks >= 4) & (self.spf != ks)
        return ks[mask].astype(np.int64)


def build_sieve(limit: int) -> SieveTable:
    if limit < 2:
        raise DomainError(f"sieve limit must be >= 2, got {limit}")
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    ks = np.arange(limit + 1, dtype=np.int64)
    unmarked = (spf == 0) & (ks >= 2)
    spf[unmarked] = ks[unmarked]
    primes = ks[unmarked]
    is_prime = np.zeros(limit + 1, dtype=np.int64)
    is_prime[primes] = 1
    pi_prefix = np.cumsum(is_prime)
    for arr in (spf, primes, pi_prefix):
        arr.setflags(write=False)
    return SieveTable(limit=limit, spf=spf, primes=primes, pi_prefix=pi_prefix)


@dataclass(frozen=True)
class FactorSignature:
    value: int
    distinct_primes: tuple[int, ...]

    @property
    def radical(self) -> int:
        return math.prod(self.distinct_primes)

    @property
    def omega(self) -> int:
        return len(self.distinct_primes)

    def __mul__(self, other: FactorSignature) -> FactorSignature:
        """Signature of the product; used for rad(kl) when kl exceeds the sieve."""
        primes = tuple(sorted(set(self.distinct_primes) | set(other.distinct_primes)))
        return FactorSignature(self.value * other.value, primes)


def factor_signature(k: int, sieve: SieveTable) -> FactorSignature:
    if not 1 <= k <= sieve.limit:
        raise DomainError(f"k={k} outside sieve range [1, {sieve.limit}]")
    primes = []
    m = k
    while m > 1:
        p = int(sieve.spf[m])
        primes.append(p)
        while m % p == 0:
            m //= p
    return FactorSignature(k, tuple(primes))


def euler_phi(k: int, sieve: SieveTable) -> int:
    sig = factor_signature(k, sieve)
    result = k
    for p in sig.distinct_primes:
        result = result // p * (p - 1)
    return result


def squarefree_divisors(primes: Sequence[int], bound: int | None = None) -> list[tuple[int, int]]:
    """All ``(d, mu(d))`` for squarefree d built from ``primes``.

    Divisors above ``bound`` are pruned (with their multiples), which is safe
    for floor sums since ``n // d == 0`` there.
    """
    divs = [(1, 1)]
    for p in primes:
        extra = []
        for d, mu in divs:
            dp = d * p
            if bound is None or dp <= bound:
                extra.append((dp, -mu))
        divs.extend(extra)
    return divs


def coprime_count(n: int, primes: Sequence[int]) -> int:
    """Number of ``1 <= i <= n`` divisible by none of ``primes``."""
    if n <= 0:
        return 0
    return sum(mu * (n // d) for d, mu in squarefree_divisors(primes, bound=n))


def partial_totient(n: int, k: int | FactorSignature, sieve: SieveTable | None = None) -> int:
    """phi(n, k): count of ``1 <= i <= n`` with ``gcd(i, k) = 1``.

    ``k`` may be given as a :class:`FactorSignature`, which is how radicals
    of products beyond the sieve limit are passed in.
    """
    if isinstance(k, FactorSignature):
        sig = k
    else:
        if k < 1:
            raise DomainError(f"k must be >= 1, got {k}")
        if sieve is None:
            raise DomainError("a sieve is required when k is given as an integer")
        sig = factor_signature(k, sieve)
    return coprime_count(n, sig.distinct_primes)


class PartialSum(NamedTuple):
    exact: int
    main_term: float


def _check_x(x: int, sieve: SieveTable) -> None:
    if not 1 <= x <= sieve.limit:
        raise DomainError(f"x={x} outside sieve range [1, {sieve.limit}]")


def sum_phi(x: int, sieve: SieveTable) -> PartialSum:
    """Sum of phi(k) for k <= x, with main term 3x^2/pi^2."""
    _check_x(x, sieve)
    exact = int(sieve.phi[1 : x + 1].sum())
    return PartialSum(exact, 3.0 * x * x / math.pi**2)


def sum_omega(x: int, sieve: SieveTable) -> PartialSum:
    """Sum of omega(k) for k <= x, with main term x log log x (B1 x not included)."""
    _check_x(x, sieve)
    main = x * math.log(math.log(x)) if x >= 3 else float("nan")
    return PartialSum(int(sieve.omega[1 : x + 1].sum()), main)


def sum_omega_sq(x: int, sieve: SieveTable) -> PartialSum:
    _check_x(x, sieve)
    main = x * math.log(math.log(x)) ** 2 if x >= 3 else float("nan")
    om = sieve.omega[1 : x + 1]
    return PartialSum(int((om * om).sum()), main)


def sum_pi(x: int, sieve: SieveTable) -> int:
    """Sum of pi(k) over 1 <= k <= x (inclusive)."""
    _check_x(x, sieve)
    return int(sieve.pi_prefix[1 : x + 1].sum())


def sum_primes(x: int, sieve: SieveTable) -> int:
    _check_x(x, sieve)
    return int(sieve.primes[: sieve.pi(x)].sum())


LEMMA5_CONVENTION = (
    "sum of pi(k) over 1 <= k <= floor(x) - 1; the inclusive sum up to floor(x) "
    "exceeds floor(x)*pi(x) - sum(p <= x) by exactly pi(x)"
)


def lemma5_sides(x: int, sieve: SieveTable) -> tuple[int, int]:
    """Both sides of the prime-sum identity under the pinned convention."""
    _check_x(x, sieve)
    lhs = sum_pi(x - 1, sieve) if x >= 2 else 0
    rhs = x * sieve.pi(x) - sum_primes(x, sieve)
    return lhs, rhs


# ---------------------------------------------------------------------------
# Prime-product inequalities


def _need_primes(sieve: SieveTable, count: int) -> None:
    if len(sieve.primes) < count:
        raise DomainError(
            f"sieve up to {sieve.limit} has {len(sieve.primes)} primes, need {count}"
        )


def verify_lemma(
    lemma: int,
    sieve: SieveTable,
    t_range: tuple[int, int] | None = None,
    s_max: int | None = None,
    x_grid: Sequence[Fraction] | None = None,
    r_range: tuple[int, int] = (4, 20),
) -> VerificationReport:
    """Check one of the prime-product inequalities (6, 7, 8) or the
    real-variable inequality (9) on a finite range.

    Products of primes are Python integers, so no overflow is possible.
    """
    if lemma == 6:
        return _lemma6(sieve, t_range or (2, 12), s_max or 30)
    if lemma == 7:
        return _lemma7(sieve, t_range or (3, 200))
    if lemma == 8:
        return _lemma8(sieve, t_range or (4, 20))
    if lemma == 9:
        grid = x_grid if x_grid is not None else [Fraction(k, 2) for k in range(4, 101)]
        return _lemma9(grid, r_range)
    raise DomainError(f"no checker for lemma {lemma}")


def _lemma6(sieve, t_range, s_max):
    t_lo, t_hi = t_range
    _need_primes(sieve, s_max + 2)
    p = [0] + sieve.primes[: s_max + 2].tolist()
    report = VerificationReport(
        "L6", f"t in {t_lo}..{t_hi}, s in max(2,t)..{s_max}",
        conventions=["conditional: premise p1*p_t*..*p_s > p_{s+1}^2 implies conclusion"],
    )
    with timed(report):
        premises = 0
        for t in range(max(t_lo, 2), t_hi + 1):
            for s in range(max(2, t), s_max + 1):
                prod = 2 * math.prod(p[t : s + 1])
                if prod > p[s + 1] ** 2:
                    premises += 1
                    report.check(prod * p[s + 1] > p[s + 2] ** 2, {"t": t, "s": s})
        report.details["premises_satisfied"] = premises
    return report


def _lemma7(sieve, t_range):
    t_lo, t_hi = t_range
    t_lo = max(t_lo, 3)
    _need_primes(sieve, t_hi + 2)
    p = [0] + sieve.primes[: t_hi + 2].tolist()
    report = VerificationReport("L7", f"t in {t_lo}..{t_hi}")
    with timed(report):
        for t in range(t_lo, t_hi + 1):
            lhs = 2 * p[t - 1] * p[t] * p[t + 1]
            report.check(lhs > p[t + 2] ** 2, {"t": t, "lhs": lhs, "rhs": p[t + 2] ** 2})
    return report


def _lemma8(sieve, t_range):
    t_lo, t_hi = t_range
    _need_primes(sieve, t_hi + 2)
    p = [0] + sieve.primes[: t_hi + 2].tolist()
    report = VerificationReport("L8", f"t in {t_lo}..{t_hi}", conventions=["claim asserted for t >= 6 only"])
    below = []
    with timed(report):
        for t in range(max(t_lo, 2), t_hi + 1):
            lhs = math.prod(p[1:t])
            holds = lhs > p[t + 2] ** 2
            if t >= 6:
                report.check(holds, {"t": t, "lhs": lhs, "rhs": p[t + 2] ** 2})
            else:
                below.append({"t": t, "lhs": lhs, "rhs": p[t + 2] ** 2, "holds": holds})
        report.details["below_threshold"] = below
        if any(row["t"] == 5 for row in below):
            report.details["t6_tight"] = not next(r for r in below if r["t"] == 5)["holds"]
    return report


def _lemma9(x_grid, r_range):
    r_lo, r_hi = r_range
    report = VerificationReport(
        "L9", f"x in [{float(min(x_grid))}, {float(max(x_grid))}] ({len(x_grid)} points), r in {r_lo}..{r_hi}",
        conventions=["exact rational arithmetic"],
    )
    with timed(report):
        worst = None
        for x in x_grid:
            x = Fraction(x)
            if x < 2:
                raise DomainError("lemma 9 requires x >= 2")
            for r in range(r_lo, r_hi + 1):
                lhs = (1 - 1 / x) ** (r - 1) * (1 + Fraction(r - 1) / x)
                rhs = (1 - 1 / x**2) ** r
                slack = rhs - lhs
                if worst is None or slack < worst[0]:
                    worst = (slack, float(x), r)
                report.check(lhs <= rhs, {"x": float(x), "r": r, "excess": float(lhs - rhs)})
        report.details["min_slack"] = {"slack": float(worst[0]), "x": worst[1], "r": worst[2]}
    return report
