import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from coprimenet.errors import DomainError
from coprimenet.numtheory import (
    FactorSignature,
    build_sieve,
    coprime_count,
    euler_phi,
    factor_signature,
    lemma5_sides,
    partial_totient,
    squarefree_divisors,
    sum_omega,
    sum_omega_sq,
    sum_phi,
    sum_pi,
    sum_primes,
    verify_lemma,
)


# ---------------------------------------------------------------------------
# sieve


def test_sieve_small():
    s = build_sieve(10)
    assert s.primes.tolist() == [2, 3, 5, 7]
    assert s.pi_prefix[10] == 4


def test_sieve_boundary():
    assert build_sieve(2).primes.tolist() == [2]
    with pytest.raises(DomainError):
        build_sieve(1)


def test_pi_25(sieve):
    assert sieve.pi_prefix[25] == 9 == oracles.prime_pi(25)


def test_sieve_matches_trial_division():
    s = build_sieve(2000)
    expected = [k for k in range(2, 2001) if oracles.is_prime(k)]
    assert s.primes.tolist() == expected
    for x in (2, 3, 100, 1000, 2000):
        assert s.pi(x) == oracles.prime_pi(x)


def test_sieve_is_read_only(sieve):
    with pytest.raises(ValueError):
        sieve.primes[0] = 4


def test_spf_divides(sieve):
    ks = np.arange(2, sieve.limit + 1)
    spf = sieve.spf[2:]
    assert np.all(ks % spf == 0)
    assert np.all(sieve.spf[spf] == spf)  # smallest prime factor is prime


# ---------------------------------------------------------------------------
# factor signatures and totients


def test_factor_signature_examples(sieve):
    s36 = factor_signature(36, sieve)
    assert s36.distinct_primes == (2, 3) and s36.radical == 6 and s36.omega == 2
    s49 = factor_signature(49, sieve)
    assert s49.distinct_primes == (7,) and s49.omega == 1
    s1 = factor_signature(1, sieve)
    assert s1.radical == 1 and s1.omega == 0


def test_factor_signature_out_of_range(sieve):
    with pytest.raises(DomainError):
        factor_signature(0, sieve)
    with pytest.raises(DomainError):
        factor_signature(sieve.limit + 1, sieve)


def test_signature_product_beyond_sieve():
    small = build_sieve(100)
    prod = factor_signature(97, small) * factor_signature(94, small)
    assert prod.distinct_primes == (2, 47, 97)
    assert partial_totient(100, prod) == oracles.partial_totient(100, 2 * 47 * 97)


def test_phi_examples(sieve):
    assert euler_phi(12, sieve) == 4
    assert euler_phi(1, sieve) == 1
    assert euler_phi(49, sieve) == 42 == oracles.phi(49)


def test_phi_table_matches_brute(sieve):
    assert [int(v) for v in sieve.phi[1:301]] == [oracles.phi(k) for k in range(1, 301)]


def test_partial_totient_examples(sieve):
    assert partial_totient(25, 4, sieve) == 13
    assert partial_totient(25, 6, sieve) == 9 == 25 - 12 - 8 + 4
    assert partial_totient(10, 1, sieve) == 10


def test_partial_totient_needs_sieve():
    with pytest.raises(DomainError):
        partial_totient(10, 6)
    with pytest.raises(DomainError):
        partial_totient(10, 0, build_sieve(10))


def test_squarefree_divisors_mobius():
    divs = dict(squarefree_divisors([2, 3, 5]))
    assert divs == {1: 1, 2: -1, 3: -1, 5: -1, 6: 1, 10: 1, 15: 1, 30: -1}
    assert dict(squarefree_divisors([2, 3, 5], bound=6)) == {1: 1, 2: -1, 3: -1, 5: -1, 6: 1}


def test_coprime_count_nonpositive():
    assert coprime_count(0, [2]) == 0


@settings(max_examples=200, deadline=None)
@given(n=st.integers(1, 500), k=st.integers(1, 500))
def test_partial_totient_brute(sieve, n, k):
    assert partial_totient(n, k, sieve) == oracles.partial_totient(n, k)


@settings(max_examples=200, deadline=None)
@given(k=st.integers(2, 5000))
def test_phi_is_partial_totient_at_k(sieve, k):
    assert partial_totient(k, k, sieve) == euler_phi(k, sieve) == sieve.phi[k]


@settings(max_examples=200, deadline=None)
@given(n=st.integers(1, 5000), k=st.integers(1, 5000))
def test_partial_totient_depends_on_radical_only(sieve, n, k):
    assert partial_totient(n, k, sieve) == partial_totient(n, int(sieve.radical[k]), sieve)


@settings(max_examples=200, deadline=None)
@given(a=st.integers(1, 140), b=st.integers(1, 140))
def test_phi_multiplicative(sieve, a, b):
    if math.gcd(a, b) == 1:
        assert sieve.phi[a * b] == sieve.phi[a] * sieve.phi[b]


@settings(max_examples=100, deadline=None)
@given(k=st.integers(2, 20_000))
def test_signature_reconstructs(sieve, k):
    sig = factor_signature(k, sieve)
    assert all(oracles.is_prime(p) for p in sig.distinct_primes)
    assert k % sig.radical == 0
    rest = k
    for p in sig.distinct_primes:
        while rest % p == 0:
            rest //= p
    assert rest == 1
    assert sig.omega == sieve.omega[k] and sig.radical == sieve.radical[k]


@settings(max_examples=50, deadline=None)
@given(st.lists(st.sampled_from([2, 3, 5, 7, 11, 13]), unique=True), st.lists(st.sampled_from([2, 3, 5, 7, 11, 13]), unique=True))
def test_signature_product_unions_primes(p, q):
    a = FactorSignature(math.prod(p), tuple(sorted(p)))
    b = FactorSignature(math.prod(q), tuple(sorted(q)))
    assert set((a * b).distinct_primes) == set(p) | set(q)


# ---------------------------------------------------------------------------
# partial sums


def test_sum_phi_examples(sieve):
    assert sum_phi(5, sieve).exact == 10
    assert sum_phi(100, sieve).exact == 3044 == sum(oracles.phi(k) for k in range(1, 101))


def test_sum_phi_residual_finite(sieve):
    ps = sum_phi(10_000, sieve)
    assert math.isfinite(abs(ps.exact - ps.main_term) / (1e4 * math.log(1e4)))


def test_sum_omega_examples(sieve):
    assert sum_omega(10, sieve).exact == 11
    assert sum_omega_sq(10, sieve).exact == 15  # seven 1s and two 4s


def test_sum_omega_brute(sieve):
    om = [len(oracles.distinct_primes(k)) for k in range(1, 201)]
    assert sum_omega(200, sieve).exact == sum(om)
    assert sum_omega_sq(200, sieve).exact == sum(w * w for w in om)


def test_sum_pi_and_primes(sieve):
    assert sum_pi(10, sieve) == 27
    assert sum_primes(2, sieve) == 2
    assert sum_primes(10, sieve) == 17


def test_lemma5_pinned_convention(sieve):
    # inclusive sum is 27, x*pi(x) - sum p is 23; they differ by pi(10) = 4
    assert lemma5_sides(10, sieve) == (23, 23)
    assert sum_pi(10, sieve) - 23 == sieve.pi(10)


@settings(max_examples=200, deadline=None)
@given(x=st.integers(2, 20_000))
def test_lemma5_identity(sieve, x):
    lhs, rhs = lemma5_sides(x, sieve)
    assert lhs == rhs
    assert sum_pi(x, sieve) - rhs == sieve.pi(x)


# ---------------------------------------------------------------------------
# prime-product inequalities


def test_lemma8_products():
    assert 2 * 3 * 5 * 7 * 11 == 2310 > 19**2
    assert 2 * 3 * 5 * 7 == 210 < 17**2


def test_lemma6_to_9_pass(sieve):
    for lemma in (6, 7, 8, 9):
        rep = verify_lemma(lemma, sieve)
        assert rep.passed, rep.line()


def test_lemma8_t6_tight(sieve):
    rep = verify_lemma(8, sieve, t_range=(4, 20))
    assert rep.passed and rep.details["t6_tight"] is True
    t5 = next(r for r in rep.details["below_threshold"] if r["t"] == 5)
    assert (t5["lhs"], t5["rhs"]) == (210, 289)


def test_lemma7_first_case(sieve):
    rep = verify_lemma(7, sieve, t_range=(3, 3))
    assert rep.passed
    assert 2 * 3 * 5 * 7 == 210 > 11**2


def test_lemma9_grid_exact():
    rep = verify_lemma(9, build_sieve(10), x_grid=[Fraction(2), Fraction(5, 2), Fraction(50)])
    assert rep.passed
    assert rep.details["min_slack"]["slack"] >= 0


def test_lemma9_rejects_small_x():
    with pytest.raises(DomainError):
        verify_lemma(9, build_sieve(10), x_grid=[Fraction(3, 2)])


def test_unknown_lemma(sieve):
    with pytest.raises(DomainError):
        verify_lemma(4, sieve)
