"""Residue-class permutations of the positive integers.

An :class:`InvolutionSpec` ``(a, b, c, d)`` swaps the class ``b mod a``
with the class ``d mod c`` term by term::

    phi(n) = c (n - b)/a + d   if n = b mod a
             a (n - d)/c + b   if n = d mod c
             n                 otherwise

A :class:`CycleSpec` ``[(a1, b1), ..., (am, bm)]`` moves class ``b_i mod a_i``
onto class ``b_{i+1} mod a_{i+1}`` with cyclic indices, giving a
permutation of order ``m``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Sequence, Union

import numpy as np

from .errors import SpecError, SummationOverflow

INT64_MAX = np.iinfo(np.int64).max
MAX_CYCLE_LENGTH = 16


def _check_positive_ints(**values) -> None:
    for name, value in values.items():
        if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
            raise SpecError(f"{name} must be an integer, got {value!r}", "INVALID_INPUT")
        if value < 1:
            raise SpecError(f"{name} must be >= 1, got {value}", "INVALID_INPUT")


def _check_pair(a: int, b: int, label: str) -> None:
    if b >= a:
        raise SpecError(f"residue {label} must be smaller than its modulus, got {b} >= {a}", "ORDER_VIOLATION")


def _check_disjoint(a1: int, b1: int, a2: int, b2: int) -> None:
    g = math.gcd(a1, a2)
    if (b2 - b1) % g == 0:
        raise SpecError(
            f"classes {b1} mod {a1} and {b2} mod {a2} intersect: gcd({a1}, {a2}) = {g} divides {b2 - b1}",
            "RESIDUE_OVERLAP",
        )


@dataclass(frozen=True)
class InvolutionSpec:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        _check_positive_ints(a=self.a, b=self.b, c=self.c, d=self.d)
        _check_pair(self.a, self.b, "b")
        _check_pair(self.c, self.d, "d")
        _check_disjoint(self.a, self.b, self.c, self.d)

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return ((self.a, self.b), (self.c, self.d))

    @property
    def order(self) -> int:
        return 2

    def __call__(self, n: int) -> int:
        return apply_involution(self, n)

    def __str__(self) -> str:
        return f"{self.a}:{self.b}:{self.c}:{self.d}"


@dataclass(frozen=True)
class CycleSpec:
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple((p[0], p[1]) for p in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if len(pairs) < 2:
            raise SpecError(f"a cycle needs at least 2 pairs, got {len(pairs)}", "INVALID_INPUT")
        for i, (a, b) in enumerate(pairs, start=1):
            _check_positive_ints(**{f"a{i}": a, f"b{i}": b})
            _check_pair(a, b, f"b{i}")
        for (a1, b1), (a2, b2) in combinations(pairs, 2):
            _check_disjoint(a1, b1, a2, b2)

    @property
    def order(self) -> int:
        return len(self.pairs)

    @property
    def moduli(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.pairs)

    def __call__(self, n: int) -> int:
        return apply_cycle(self, n)

    def __str__(self) -> str:
        return ",".join(f"{a}:{b}" for a, b in self.pairs)


PermutationSpec = Union[InvolutionSpec, CycleSpec]


def validate_involution(a: int, b: int, c: int, d: int) -> InvolutionSpec:
    """Build an :class:`InvolutionSpec`, raising :class:`SpecError` when invalid."""
    return InvolutionSpec(a, b, c, d)


def validate_cycle(pairs: Sequence[tuple[int, int]]) -> CycleSpec:
    return CycleSpec(tuple(pairs))


def rule_collision(a: int, b: int, c: int, d: int, limit: int | None = None) -> int | None:
    """Smallest ``n`` lying in both ``b mod a`` and ``d mod c``, by direct search.

    The search never uses the gcd criterion; if the classes meet at all they
    meet below ``a*c + max(b, d)``, which is the default limit.
    """
    if limit is None:
        limit = a * c + max(b, d)
    for n in range(1, limit + 1):
        if n % a == b % a and n % c == d % c:
            return n
    return None


def _check_n(n: int) -> None:
    if isinstance(n, bool) or n < 1:
        raise SpecError(f"permutations act on positive integers, got {n!r}", "INVALID_INPUT")


def apply_involution(spec: InvolutionSpec, n: int) -> int:
    _check_n(n)
    a, b, c, d = spec.a, spec.b, spec.c, spec.d
    if n % a == b:
        return c * ((n - b) // a) + d
    if n % c == d:
        return a * ((n - d) // c) + b
    return n


def apply_cycle(spec: CycleSpec, n: int) -> int:
    _check_n(n)
    pairs = spec.pairs
    for i, (a, b) in enumerate(pairs):
        if n % a == b:
            a_next, b_next = pairs[(i + 1) % len(pairs)]
            return a_next * ((n - b) // a) + b_next
    return n


def apply(spec: PermutationSpec, n: int) -> int:
    if isinstance(spec, InvolutionSpec):
        return apply_involution(spec, n)
    return apply_cycle(spec, n)


def class_index(spec: PermutationSpec, n: int) -> int | None:
    """Index (0-based) of the listed class containing ``n``, or None if fixed."""
    for i, (a, b) in enumerate(spec.pairs):
        if n % a == b:
            return i
    return None


def max_image(spec: PermutationSpec, n_max: int) -> int:
    """Upper bound on phi(n) over 1 <= n <= n_max."""
    pairs = spec.pairs
    bound = n_max
    for i, (a, b) in enumerate(pairs):
        a_next, b_next = pairs[(i + 1) % len(pairs)]
        bound = max(bound, a_next * (n_max // a) + b_next)
    return bound


def apply_array(spec: PermutationSpec, n: np.ndarray) -> np.ndarray:
    """Vectorised phi over an int64 array of positive integers.

    Raises :class:`SummationOverflow` if an image could exceed int64.
    """
    n = np.asarray(n, dtype=np.int64)
    if n.size == 0:
        return n.copy()
    if max_image(spec, int(n.max())) > INT64_MAX:
        raise SummationOverflow(f"images of n <= {int(n.max())} exceed the 64-bit range")
    out = n.copy()
    pairs = spec.pairs
    for i, (a, b) in enumerate(pairs):
        a_next, b_next = pairs[(i + 1) % len(pairs)]
        mask = n % a == b
        out[mask] = a_next * ((n[mask] - b) // a) + b_next
    return out


class WindowOrder(NamedTuple):
    order: int
    orbit_bound: int


def permutation_order_on_window(spec: PermutationSpec, N: int) -> WindowOrder:
    """Least k with phi^k(n) == n for every n <= N.

    Orbits are followed exactly (at most ``spec.order`` steps each); the
    largest integer visited is returned as ``orbit_bound``.
    """
    if N < 1:
        raise SpecError(f"window size must be >= 1, got {N}", "INVALID_INPUT")
    n = np.arange(1, N + 1, dtype=np.int64)
    current = n
    bound = N
    lengths = np.zeros(N, dtype=np.int64)
    for k in range(1, spec.order + 1):
        current = apply_array(spec, current)
        bound = max(bound, int(current.max()))
        closed = (lengths == 0) & (current == n)
        lengths[closed] = k
    if np.any(lengths == 0):
        raise AssertionError("orbit did not close within the spec order")
    order = 1
    for length in np.unique(lengths):
        order = math.lcm(order, int(length))
    return WindowOrder(order, bound)
