"""Closed-form values of the rearranged alternating harmonic series.

Logs of integer ratios are always taken as ``log(p) - log(q)`` so that tiny
offsets survive cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .digamma import digamma
from .errors import SpecError
from .permutations import CycleSpec, InvolutionSpec

LOG2 = math.log(2.0)


@dataclass(frozen=True)
class BlockSpec:
    """Take ``p[i]`` consecutive terms from class ``i + 1 mod 2N``, in turn."""

    N: int
    p: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(self.p))
        if isinstance(self.N, bool) or not isinstance(self.N, int) or self.N < 1:
            raise SpecError(f"N must be a positive integer, got {self.N!r}")
        if len(self.p) != 2 * self.N:
            raise SpecError(f"expected {2 * self.N} block lengths for N={self.N}, got {len(self.p)}")
        for i, pi in enumerate(self.p, start=1):
            if isinstance(pi, bool) or not isinstance(pi, int) or pi < 1:
                raise SpecError(f"p{i} must be a positive integer, got {pi!r}")

    def __str__(self) -> str:
        return f"{self.N};" + ",".join(map(str, self.p))


@dataclass(frozen=True)
class RearrangementValue:
    total: float
    base: float
    offset: float
    terms: list[tuple[str, float]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "base": self.base,
            "offset": self.offset,
            "terms": [{"label": label, "value": value} for label, value in self.terms],
        }


def _log_ratio(p: int, q: int) -> float:
    return math.log(p) - math.log(q)


def _parity_weight(a: int, b: int) -> int:
    """(-1)^b + (-1)^(a+b): zero for odd a, 2(-1)^b for even a."""
    return (-1) ** (b % 2) + (-1) ** ((a + b) % 2)


def _value(terms: list[tuple[str, float]]) -> RearrangementValue:
    offset = math.fsum(v for _, v in terms)
    return RearrangementValue(LOG2 + offset, LOG2, offset, [("log 2", LOG2), *terms])


def _offset_terms(a: int, b: int, c: int, d: int) -> list[tuple[str, float]]:
    return [
        (f"log({c}/{a})*w({a},{b})/(2*{a})", _log_ratio(c, a) * _parity_weight(a, b) / (2 * a)),
        (f"log({a}/{c})*w({c},{d})/(2*{c})", _log_ratio(a, c) * _parity_weight(c, d) / (2 * c)),
    ]


def f_offset(a: int, b: int, c: int, d: int) -> float:
    """Offset from log 2 for the swap of ``b mod a`` with ``d mod c``.

    Defined for all positive integers; no validity check is made.
    """
    return math.fsum(v for _, v in _offset_terms(a, b, c, d))


def theorem1_sum(spec: InvolutionSpec) -> RearrangementValue:
    """Sum of the alternating harmonic series rearranged by the involution."""
    return _value(_offset_terms(spec.a, spec.b, spec.c, spec.d))


def cycle_sum(spec: CycleSpec) -> RearrangementValue:
    pairs = spec.pairs
    terms = []
    for i, (a, _) in enumerate(pairs):
        a_next, b_next = pairs[(i + 1) % len(pairs)]
        value = 0.5 * _log_ratio(a, a_next) * _parity_weight(a_next, b_next) / a_next
        terms.append((f"log({a}/{a_next})*w({a_next},{b_next})/(2*{a_next})", value))
    return _value(terms)


def block_sum(spec: BlockSpec) -> RearrangementValue:
    """log 2 + log(p1 p3 ... / p2 p4 ...) / 2N."""
    two_n = 2 * spec.N
    terms = [
        (f"{'+' if i % 2 else '-'}log(p{i})/{two_n}", (1 if i % 2 else -1) * math.log(pi) / two_n)
        for i, pi in enumerate(spec.p, start=1)
    ]
    return _value(terms)


def corollary1_lhs(N: int) -> float:
    """(1/2N) sum_{j=1}^{2N} (-1)^j psi(j/2N); equals log 2 for every N."""
    if isinstance(N, bool) or N < 1:
        raise ValueError(f"N must be a positive integer, got {N!r}")
    two_n = 2 * N
    return math.fsum((-1) ** j * digamma(j / two_n) for j in range(1, two_n + 1)) / two_n
