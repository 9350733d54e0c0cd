"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` that the CLI prints
in its diagnostics.
"""

from __future__ import annotations


class AHSError(Exception):
    code = "ERROR"

    def __init__(self, message: str, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code

    def __str__(self) -> str:
        return f"{self.code}: {self.args[0]}"


class DomainError(AHSError, ValueError):
    """Argument outside the domain of a special function."""

    code = "DOMAIN_ERROR"


class SpecError(AHSError, ValueError):
    """A permutation or block spec failed validation.

    Codes: ``ORDER_VIOLATION``, ``RESIDUE_OVERLAP``, ``INVALID_INPUT``.
    """

    code = "INVALID_INPUT"


class BalanceError(AHSError, ValueError):
    """Coefficients of a linear combination do not satisfy sum(c/a) == 0."""

    code = "BALANCE_VIOLATION"


class SummationOverflow(AHSError, OverflowError):
    code = "OVERFLOW"


class InvalidRequest(AHSError, ValueError):
    code = "INVALID_REQUEST"


class BudgetExhausted(AHSError, RuntimeError):
    """No candidate met the tolerance before the evaluation budget ran out."""

    code = "BUDGET_EXHAUSTED"

    def __init__(self, message: str, best=None, candidates_tried: int = 0):
        super().__init__(message)
        self.best = best
        self.candidates_tried = candidates_tried
