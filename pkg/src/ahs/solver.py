"""Search for an involution whose rearranged sum lands near a target.

Candidates come from the two-parameter family

    a = 6m + 3, c = 6n, (b, d) = (1, 2)   offset  +log(a/c)/c
    a = 6m + 3, c = 6n, (b, d) = (2, 1)   offset  -log(a/c)/c

Every member is valid: 3 divides gcd(a, c) while |d - b| = 1. For each n the
real m solving offset == target - log 2 is computed and its two integer
neighbours are scored with the involution closed form.

Completeness (success for every target given unlimited budget) rests on
the density of the family's values, which is believed but not proven here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .closed_form import LOG2, theorem1_sum
from .errors import BudgetExhausted, InvalidRequest
from .permutations import InvolutionSpec

MAX_N = 32
DEFAULT_BUDGET = 100_000
# Largest a for which every image stays in int64 during verification.
_LOG_MAX_MODULUS = math.log(2.0**62)
# Candidate tried first: both moduli odd, so the sum is exactly log 2.
ODD_ODD_SPEC = InvolutionSpec(3, 1, 9, 2)


@dataclass(frozen=True)
class SolveRequest:
    target: float
    epsilon: float
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if not math.isfinite(self.target):
            raise InvalidRequest(f"target must be finite, got {self.target}")
        if not (self.epsilon > 0 and math.isfinite(self.epsilon)):
            raise InvalidRequest(f"epsilon must be a positive finite number, got {self.epsilon}")
        if isinstance(self.budget, bool) or int(self.budget) != self.budget or self.budget < 1:
            raise InvalidRequest(f"budget must be a positive integer, got {self.budget}")


@dataclass(frozen=True)
class SolveResult:
    spec: InvolutionSpec
    achieved: float
    error: float
    candidates_tried: int

    def to_dict(self) -> dict:
        return {
            "spec": str(self.spec),
            "achieved": self.achieved,
            "error": self.error,
            "candidates_tried": self.candidates_tried,
        }


def family_spec(m: int, n: int, positive_branch: bool) -> InvolutionSpec:
    if m < 0 or n < 1:
        raise ValueError(f"need m >= 0 and n >= 1, got m={m}, n={n}")
    b, d = (1, 2) if positive_branch else (2, 1)
    return InvolutionSpec(6 * m + 3, b, 6 * n, d)


def density_family_value(m: int, n: int, positive_branch: bool) -> float:
    """Rearranged sum for the family member (m, n) on the chosen branch."""
    return theorem1_sum(family_spec(m, n, positive_branch)).total


def _neighbours(n: int, gap: float) -> list[int]:
    """Integer m values bracketing the real solution of |offset| == gap."""
    log_a = math.log(6 * n) + 6 * n * gap
    if log_a > _LOG_MAX_MODULUS:
        return []
    m_star = (math.exp(log_a) - 3) / 6
    lo = max(0, math.floor(m_star))
    return [lo, lo + 1]


def solve_target(target: float, epsilon: float, budget: int = DEFAULT_BUDGET) -> SolveResult:
    """Find a valid involution whose closed-form sum is within ``epsilon`` of ``target``.

    Raises :class:`InvalidRequest` for bad arguments and
    :class:`BudgetExhausted` when ``budget`` candidate evaluations (or the
    cap n <= 32) pass without success; the exception carries the best
    candidate seen.
    """
    req = SolveRequest(target, epsilon, budget)
    tried = 0
    best: SolveResult | None = None

    def score(spec: InvolutionSpec) -> SolveResult:
        nonlocal tried, best
        tried += 1
        achieved = theorem1_sum(spec).total
        result = SolveResult(spec, achieved, abs(achieved - req.target), tried)
        if best is None or result.error < best.error:
            best = result
        return result

    first = score(ODD_ODD_SPEC)
    if first.error <= req.epsilon:
        return first

    gap = req.target - LOG2
    positive = gap > 0
    for n in range(1, MAX_N + 1):
        scored = []
        for m in _neighbours(n, abs(gap)):
            if tried >= req.budget:
                break
            scored.append((score(family_spec(m, n, positive)), m))
        if scored:
            result, _ = min(scored, key=lambda item: (item[0].error, item[1]))
            if result.error <= req.epsilon:
                return SolveResult(result.spec, result.achieved, result.error, tried)
        if tried >= req.budget:
            break
    raise BudgetExhausted(
        f"no candidate within {req.epsilon:g} of {req.target!r} after {tried} evaluations",
        best=best,
        candidates_tried=tried,
    )


def refinement_trace(target: float, n_max: int = MAX_N) -> list[tuple[int, float]]:
    """Best error seen after scanning n = 1 .. n_max, without stopping early."""
    gap = target - LOG2
    best = abs(theorem1_sum(ODD_ODD_SPEC).total - target)
    trace = []
    for n in range(1, n_max + 1):
        for m in _neighbours(n, abs(gap)):
            best = min(best, abs(density_family_value(m, n, gap > 0) - target))
        trace.append((n, best))
    return trace
