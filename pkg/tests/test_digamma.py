import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ahs.digamma import (
    ACCURACY,
    EULER_GAMMA,
    asymptotic_residual,
    digamma,
    harmonic_partial,
    multiplication_residual,
    recurrence_residual,
)
from ahs.errors import DomainError

mpmath.mp.dps = 40


def series_digamma(x: float, terms: int = 10**7) -> float:
    """-gamma + sum (1/(n+1) - 1/(n+x)), with the leading tail (x-1)/M added."""
    n = np.arange(terms, dtype=np.float64)
    body = math.fsum((x - 1.0) / ((n + 1.0) * (n + x)))
    return -EULER_GAMMA + body + (x - 1.0) / (terms + 0.5 * x)


def test_euler_gamma_constant():
    assert abs(EULER_GAMMA - float(mpmath.euler)) < 1e-17
    assert abs(digamma(1) + EULER_GAMMA) <= 1e-13


def test_known_values():
    assert digamma(1) == pytest.approx(-0.5772156649015329, abs=1e-15)
    assert digamma(2) == pytest.approx(1 - EULER_GAMMA, abs=1e-15)
    assert digamma(0.5) == pytest.approx(-1.9635100260214235, abs=1e-15)
    assert digamma(0.5) == pytest.approx(-EULER_GAMMA - 2 * math.log(2), abs=1e-15)


def test_half_against_series_formula():
    assert abs(series_digamma(0.5) - digamma(0.5)) < 1e-12


@pytest.mark.parametrize("x", np.logspace(-6, 12, 400))
def test_relative_accuracy_against_mpmath(x):
    exact = mpmath.digamma(mpmath.mpf(float(x)))
    err = abs(mpmath.mpf(digamma(float(x))) - exact)
    assert err <= ACCURACY * max(abs(exact), 1e-2)


def test_accuracy_near_the_zero():
    root = float(mpmath.findroot(mpmath.digamma, 1.46))
    for x in np.linspace(root - 1e-3, root + 1e-3, 51):
        assert abs(digamma(x) - float(mpmath.digamma(x))) <= 1e-15


@pytest.mark.parametrize("bad", [0, -1, -0.5, float("nan"), float("inf"), "x"])
def test_domain_errors(bad):
    with pytest.raises(DomainError):
        digamma(bad)


def test_accepts_fractions():
    assert digamma(Fraction(1, 3)) == digamma(1 / 3)


def test_recurrence_on_log_grid():
    for x in np.logspace(-1, 6, 500):
        lhs = digamma(x + 1) - digamma(x) - 1 / x
        assert abs(lhs) <= 1e-12 * max(1.0, abs(digamma(x)))


def test_strictly_increasing():
    xs = np.logspace(-6, 12, 3000)
    values = [digamma(x) for x in xs]
    assert all(v1 < v2 for v1, v2 in zip(values, values[1:]))


def _direct(a, b, N):
    return math.fsum(1.0 / (a * n + b) for n in range(N))


@pytest.mark.parametrize(
    "a,b,N,expected",
    [
        (1, 1, 10, 2.9289682539682538),
        (1, 1, 1, 1.0),
        (2, 1, 3, 23 / 15),
    ],
)
def test_harmonic_partial_examples(a, b, N, expected):
    assert expected == pytest.approx(_direct(a, b, N), rel=1e-15)
    assert harmonic_partial(a, b, N) == pytest.approx(expected, rel=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 100), st.integers(1, 100), st.integers(1, 10_000))
def test_harmonic_partial_matches_direct_sum(a, b, N):
    assert harmonic_partial(a, b, N) == pytest.approx(_direct(a, b, N), rel=1e-12)


def test_harmonic_partial_rejects_bad_input():
    with pytest.raises(DomainError):
        harmonic_partial(0, 1, 1)
    with pytest.raises(DomainError):
        harmonic_partial(1, 1, 0)


def test_asymptotic_residual_examples():
    assert abs(asymptotic_residual(1e8, 0.5)) <= 1e-8
    assert asymptotic_residual(1, 1) == pytest.approx(1 - EULER_GAMMA, abs=1e-15)
    exact = mpmath.digamma(10.25) - mpmath.log(10)
    assert asymptotic_residual(10, 0.25) == pytest.approx(float(exact), abs=1e-14)


def test_asymptotic_residual_bound():
    # 2s/x only dominates the leading term (s - 1/2)/x once s >= 1/6
    for x in np.logspace(1, 10, 60):
        for s in np.linspace(0.25, 1, 12):
            assert abs(asymptotic_residual(x, s)) <= 2 * s / x


def test_asymptotic_residual_leading_order():
    for x in np.logspace(1, 10, 60):
        for s in np.linspace(0.01, 1, 25):
            assert abs(asymptotic_residual(x, s)) <= (abs(s - 0.5) + 1 / x) / x + 1e-14


@pytest.mark.parametrize("q,m", [((1, 2), 2), ((1, 3), 3), (Fraction(7, 5), 11), ("3/4", 5)])
def test_multiplication_examples(q, m):
    assert abs(multiplication_residual(q, m)) <= 1e-11


def test_multiplication_trivial_case_is_exact():
    assert multiplication_residual((1, 1), 1) == 0.0


def test_multiplication_random(rng):
    for _ in range(1000):
        q = Fraction(rng.randint(1, 1000), rng.randint(1, 1000))
        m = rng.randint(1, 50)
        assert abs(multiplication_residual(q, m)) <= 1e-11


def test_multiplication_rejects_float_and_nonpositive():
    with pytest.raises(DomainError):
        multiplication_residual(0.5, 2)
    with pytest.raises(DomainError):
        multiplication_residual((-1, 2), 2)


def test_recurrence_residual():
    assert abs(recurrence_residual(1, 1)) <= 1e-14
    assert abs(recurrence_residual(0.3, 25)) <= 1e-13
