"""Numerical oracles for the closed forms.

Direct partial sums of the rearranged series are formed block by block:
every block is summed with numpy's pairwise reduction and the block sums
are combined with :func:`math.fsum`, so the totals are compensated and
independent of chunking. Reports extrapolate the tail with a single
Richardson step on the model ``S(K) = S - A/K``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

import numpy as np

from .closed_form import BlockSpec
from .digamma import digamma
from .errors import BalanceError
from .permutations import CycleSpec, InvolutionSpec, PermutationSpec, apply_array

log = logging.getLogger(__name__)

CHUNK_TERMS = 1 << 21
CYCLE_BLOCK_CAP = 1 << 31

Term = tuple[Fraction, int, int]


@dataclass(frozen=True)
class LinearCombination:
    """Blocks ``sum_i c_i / (a_i k + b_i)`` for k = 0, 1, 2, ...

    Coefficients are exact rationals. Balance (``sum c_i/a_i == 0``) is not
    enforced at construction, so unbalanced pieces of a decomposition can
    be represented; evaluation checks it.
    """

    terms: tuple[Term, ...]

    def __post_init__(self):
        terms = []
        for c, a, b in self.terms:
            if a < 1 or b < 1:
                raise ValueError(f"a and b must be positive integers, got a={a}, b={b}")
            terms.append((Fraction(c), int(a), int(b)))
        object.__setattr__(self, "terms", tuple(terms))

    def __add__(self, other: "LinearCombination") -> "LinearCombination":
        return LinearCombination(self.terms + other.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def imbalance(self) -> Fraction:
        return sum((c / a for c, a, _ in self.terms), Fraction(0))

    def is_balanced(self) -> bool:
        return self.imbalance() == 0

    def check_balance(self) -> None:
        imbalance = self.imbalance()
        if imbalance != 0:
            raise BalanceError(f"sum of c_i/a_i is {imbalance}, not 0; the block series diverges")


@dataclass(frozen=True)
class PartialSumReport:
    blocks: int
    raw_sum: float
    extrapolated: float
    error_estimate: float
    terms_summed: int

    def to_dict(self) -> dict:
        return {
            "blocks": self.blocks,
            "raw_sum": self.raw_sum,
            "extrapolated": self.extrapolated,
            "error_estimate": self.error_estimate,
            "terms_summed": self.terms_summed,
        }


def report_from_blocks(block_sums: np.ndarray, terms_summed: int) -> PartialSumReport:
    """Build a report from per-block sums, extrapolating with S(K) - S(K//2)."""
    block_sums = np.asarray(block_sums, dtype=np.float64)
    K = len(block_sums)
    if K == 0:
        raise ValueError("no blocks to sum")
    raw = math.fsum(block_sums)
    if K == 1:
        return PartialSumReport(1, raw, raw, abs(raw), terms_summed)
    half = K // 2
    earlier = math.fsum(block_sums[:half])
    # S(K) = S - A/K  =>  A = (S(K) - S(half)) / (1/half - 1/K)
    tail = (raw - earlier) * half / (K - half)
    return PartialSumReport(K, raw, raw + tail, abs(tail), terms_summed)


def blocked_partial(term_source: Union[Callable[[np.ndarray], np.ndarray], Sequence[float]], n: int, K: int) -> float:
    """Sum of the first ``n*K`` terms grouped into ``K`` blocks of length ``n``.

    ``term_source`` is either a vectorised callable taking an int64 array of
    1-based indices, or a sequence whose element ``i - 1`` is term ``i``.
    """
    if n < 1 or K < 1:
        raise ValueError("block length and block count must be >= 1")
    if callable(term_source):
        values = np.asarray(term_source(np.arange(1, n * K + 1, dtype=np.int64)), dtype=np.float64)
    else:
        values = np.asarray(term_source[: n * K], dtype=np.float64)
    if values.shape != (n * K,):
        raise ValueError(f"term source supplied {values.size} terms, need {n * K}")
    return math.fsum(values.reshape(K, n).sum(axis=1))


def alternating_harmonic_terms(idx: np.ndarray) -> np.ndarray:
    """(-1)^(i+1) / i for an array of positive integers."""
    idx = np.asarray(idx, dtype=np.int64)
    return np.where(idx % 2 == 1, 1.0, -1.0) / idx


def prop3_sum(comb: LinearCombination) -> float:
    """-sum_i (c_i/a_i) psi(b_i/a_i) for a balanced combination."""
    comb.check_balance()
    return -math.fsum(float(c / a) * digamma(Fraction(b, a)) for c, a, b in comb.terms)


def _combination_block_sums(comb: LinearCombination, k: np.ndarray) -> np.ndarray:
    coeff = np.array([float(c) for c, _, _ in comb.terms])
    a = np.array([a for _, a, _ in comb.terms], dtype=np.float64)
    b = np.array([b for _, _, b in comb.terms], dtype=np.float64)
    kk = k.astype(np.float64)[:, None]
    return (coeff / (a * kk + b)).sum(axis=1)


def prop3_partial(comb: LinearCombination, K: int) -> PartialSumReport:
    """Direct sum of the first ``K`` blocks of a balanced combination."""
    comb.check_balance()
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    step = max(1, CHUNK_TERMS // max(1, len(comb)))
    parts = [
        _combination_block_sums(comb, np.arange(start, min(K, start + step), dtype=np.int64))
        for start in range(0, K, step)
    ]
    return report_from_blocks(np.concatenate(parts), K * len(comb))


def default_block_len(spec: PermutationSpec) -> int:
    """2ac for involutions; 2 lcm(a_i) for cycles (capped)."""
    if isinstance(spec, InvolutionSpec):
        return 2 * spec.a * spec.c
    return 2 * math.lcm(*spec.moduli)


def rearranged_block_sums(spec: PermutationSpec, K: int, block_len: int) -> np.ndarray:
    """Per-block sums of (-1)^(phi(n)+1)/phi(n) for n = 1 .. block_len*K."""
    blocks_per_chunk = max(1, CHUNK_TERMS // block_len)
    out = np.empty(K, dtype=np.float64)
    for start in range(0, K, blocks_per_chunk):
        stop = min(K, start + blocks_per_chunk)
        n = np.arange(start * block_len + 1, stop * block_len + 1, dtype=np.int64)
        values = alternating_harmonic_terms(apply_array(spec, n))
        out[start:stop] = values.reshape(stop - start, block_len).sum(axis=1)
    return out


def rearranged_partial(spec: PermutationSpec, K: int, block_len: int | None = None) -> PartialSumReport:
    """Partial sums of the series rearranged by ``spec`` over ``K`` blocks.

    The default block length makes every block a balanced combination, so
    block sums decay like 1/k^2 and the tail like 1/K. For cycles whose
    default length would exceed ``CYCLE_BLOCK_CAP`` the sum falls back to
    pairs of terms, with a warning.
    """
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    if block_len is None:
        block_len = default_block_len(spec)
        if isinstance(spec, CycleSpec) and block_len > CYCLE_BLOCK_CAP:
            log.warning("block length %d exceeds cap; falling back to flat partial sums", block_len)
            block_len = 2
    if block_len < 1:
        raise ValueError(f"block_len must be >= 1, got {block_len}")
    return report_from_blocks(rearranged_block_sums(spec, K, block_len), block_len * K)


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def decompose_theorem1(spec: InvolutionSpec) -> dict[str, LinearCombination]:
    """Split each 2ac-block of the rearranged series into five combinations.

    Keys: ``S_cc`` and ``S_aa`` hold the terms brought in by the swap,
    ``S_ca`` and ``S_ac`` cancel the terms moved out, ``AH`` is the original
    block. ``S_aa + S_ca``, ``S_cc + S_ac`` and ``AH`` are each balanced.
    """
    a, b, c, d = spec.a, spec.b, spec.c, spec.d
    ac2 = 2 * a * c
    return {
        "S_cc": LinearCombination(tuple((_sign(n * c + d + 1), 2 * c * c, n * c + d) for n in range(2 * c))),
        "S_aa": LinearCombination(tuple((_sign(n * a + b + 1), 2 * a * a, n * a + b) for n in range(2 * a))),
        "S_ca": LinearCombination(tuple((_sign(n * a + b), ac2, n * a + b) for n in range(2 * c))),
        "S_ac": LinearCombination(tuple((_sign(n * c + d), ac2, n * c + d) for n in range(2 * a))),
        "AH": LinearCombination(tuple((_sign(n), ac2, n + 1) for n in range(ac2))),
    }


def balanced_groups(spec: InvolutionSpec) -> dict[str, LinearCombination]:
    parts = decompose_theorem1(spec)
    return {
        "I": parts["S_aa"] + parts["S_ca"],
        "II": parts["S_cc"] + parts["S_ac"],
        "III": parts["AH"],
    }


def balance_equations(spec: InvolutionSpec) -> dict[str, Fraction]:
    """Exact coefficient sums of the three balanced groups (all zero)."""
    return {name: comb.imbalance() for name, comb in balanced_groups(spec).items()}


def decomposition_sum(spec: InvolutionSpec) -> float:
    """Rearranged sum from the digamma evaluation of each balanced group."""
    return math.fsum(prop3_sum(comb) for comb in balanced_groups(spec).values())


def block_combination(spec: BlockSpec) -> LinearCombination:
    """Outer block n of the block rearrangement as a linear combination in n."""
    two_n = 2 * spec.N
    terms = []
    for i, p in enumerate(spec.p, start=1):
        sign = 1 if i % 2 else -1
        for j in range(p):
            terms.append((sign, two_n * p, two_n * j + i))
    return LinearCombination(tuple(terms))


def block_sequence(spec: BlockSpec, K: int, start: int = 0) -> np.ndarray:
    """The rearranged series itself: outer blocks ``start .. start+K-1``, flattened."""
    two_n = 2 * spec.N
    n = np.arange(start, start + K, dtype=np.int64)[:, None]
    pieces = []
    for i, p in enumerate(spec.p, start=1):
        j = np.arange(p, dtype=np.int64)[None, :]
        pieces.append(two_n * p * n + two_n * j + i)
    denominators = np.concatenate(pieces, axis=1).ravel()
    return alternating_harmonic_terms(denominators)


def block_partial(spec: BlockSpec, K: int) -> PartialSumReport:
    """Direct sum of ``K`` outer blocks of the block rearrangement."""
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    width = sum(spec.p)
    step = max(1, CHUNK_TERMS // width)
    parts = []
    for start in range(0, K, step):
        count = min(K, start + step) - start
        seq = block_sequence(spec, count, start)
        parts.append(seq.reshape(count, width).sum(axis=1))
    return report_from_blocks(np.concatenate(parts), K * width)
