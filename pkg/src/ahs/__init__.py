"""Closed-form rearrangements of the alternating harmonic series."""

from .closed_form import (
    BlockSpec,
    RearrangementValue,
    block_sum,
    corollary1_lhs,
    cycle_sum,
    f_offset,
    theorem1_sum,
)
from .digamma import (
    EULER_GAMMA,
    asymptotic_residual,
    digamma,
    harmonic_partial,
    multiplication_residual,
)
from .errors import (
    AHSError,
    BalanceError,
    BudgetExhausted,
    DomainError,
    InvalidRequest,
    SpecError,
    SummationOverflow,
)
from .permutations import (
    CycleSpec,
    InvolutionSpec,
    apply_cycle,
    apply_involution,
    permutation_order_on_window,
    validate_cycle,
    validate_involution,
)
from .series import (
    LinearCombination,
    PartialSumReport,
    block_partial,
    blocked_partial,
    decompose_theorem1,
    prop3_partial,
    prop3_sum,
    rearranged_partial,
)
from .solver import SolveRequest, SolveResult, density_family_value, solve_target

__version__ = "0.1.0"
