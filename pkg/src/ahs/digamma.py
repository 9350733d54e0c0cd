"""Digamma function on the positive reals and the identities built on it.

The kernel shifts the argument above ``SHIFT_THRESHOLD`` with the
recurrence psi(x + 1) = psi(x) + 1/x and then evaluates the asymptotic
expansion

    psi(y) ~ log(y) - 1/(2y) - sum_k B_{2k} / (2k y^{2k})

with Bernoulli numbers B_2 .. B_16.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from .errors import DomainError

EULER_GAMMA = 0.57721566490153286060651209
# Relative accuracy target of the kernel; downstream tolerances are built from it.
ACCURACY = 1e-13
SHIFT_THRESHOLD = 10.0

_BERNOULLI = (
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
    Fraction(-3617, 510),
)
# B_{2k} / (2k), highest order first for Horner evaluation in 1/y^2
_ASYMPTOTIC_COEFFS = tuple(
    float(b / (2 * k)) for k, b in reversed(list(enumerate(_BERNOULLI, start=1)))
)


def _check_positive(x) -> float:
    try:
        xf = float(x)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"argument {x!r} is not a real number") from exc
    if not math.isfinite(xf):
        raise DomainError(f"argument {x!r} is not finite")
    if xf <= 0.0:
        raise DomainError(f"digamma is only evaluated for x > 0, got {x!r}")
    return xf


def _asymptotic(y: float) -> float:
    r = 1.0 / (y * y)
    series = 0.0
    for coeff in _ASYMPTOTIC_COEFFS:
        series = series * r + coeff
    return math.log(y) - 0.5 / y - series * r


def digamma(x) -> float:
    """Return psi(x) for real ``x > 0``.

    Accepts floats, ints and :class:`fractions.Fraction`. Raises
    :class:`DomainError` for non-positive or non-finite input.
    """
    y = _check_positive(x)
    if y >= SHIFT_THRESHOLD:
        return _asymptotic(y)
    shift = []
    while y < SHIFT_THRESHOLD:
        shift.append(-1.0 / y)
        y += 1.0
    shift.append(_asymptotic(y))
    return math.fsum(shift)


def as_fraction(q) -> Fraction:
    """Coerce ``q`` into an exact reduced fraction.

    ``q`` may be a Fraction, an int, a ``(numerator, denominator)`` pair or
    a string such as ``"1/3"``. Floats are rejected so that decimal parsing
    never leaks into the identities.
    """
    if isinstance(q, bool):
        raise DomainError("booleans are not rationals")
    if isinstance(q, Rational):
        return Fraction(q)
    if isinstance(q, tuple) and len(q) == 2:
        num, den = q
        if den == 0:
            raise DomainError("zero denominator")
        return Fraction(int(num), int(den))
    if isinstance(q, str):
        try:
            return Fraction(q.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse rational {q!r}") from exc
    raise DomainError(f"expected an exact rational, got {type(q).__name__}")


def _positive_int(value, name: str) -> int:
    if isinstance(value, bool) or int(value) != value or value < 1:
        raise DomainError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def harmonic_partial(a: int, b: int, N: int) -> float:
    """sum_{n=0}^{N-1} 1/(a n + b) evaluated as (psi(b/a + N) - psi(b/a)) / a."""
    a = _positive_int(a, "a")
    b = _positive_int(b, "b")
    N = _positive_int(N, "N")
    x = Fraction(b, a)
    return (digamma(x + N) - digamma(x)) / a


def asymptotic_residual(x, s) -> float:
    """psi(x + s) - log(x); tends to 0 as x grows for fixed s > 0."""
    x = _check_positive(x)
    s = _check_positive(s)
    return digamma(x + s) - math.log(x)


def multiplication_residual(q, m: int) -> float:
    """Residual of the Gauss multiplication formula at rational ``q``.

    Returns sum_{j<m} psi(q + j/m) - m (psi(q m) - log m), which is zero in
    exact arithmetic.
    """
    q = as_fraction(q)
    if q <= 0:
        raise DomainError(f"q must be positive, got {q}")
    m = _positive_int(m, "m")
    if m == 1:
        return 0.0
    lhs = math.fsum(digamma(q + Fraction(j, m)) for j in range(m))
    rhs = m * (digamma(q * m) - math.log(m))
    return lhs - rhs


def recurrence_residual(x, n: int = 1) -> float:
    """psi(x + n) - psi(x) - sum_{k<n} 1/(x + k)."""
    x = _check_positive(x)
    n = _positive_int(n, "n")
    direct = math.fsum(1.0 / (x + k) for k in range(n))
    return digamma(x + n) - digamma(x) - direct
