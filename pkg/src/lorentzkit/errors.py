"""Exception types shared across the package.

Every error carries a stable machine-readable ``code`` so the service and
CLI layers can surface it without string matching on messages.
"""

from __future__ import annotations


class LorentzKitError(Exception):
    code = "ERROR"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)
        self.message = message or self.code


class InputError(LorentzKitError):
    """Malformed input document, string, or value; names the offending field."""

    code = "INPUT_ERROR"

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class FieldMismatchError(LorentzKitError):
    code = "FIELD_MISMATCH"


class DivisionByZeroError(LorentzKitError, ZeroDivisionError):
    code = "DIVISION_BY_ZERO"


class NoConjugateForQError(LorentzKitError):
    code = "NO_CONJUGATE_FOR_Q"


class ZeroCoefficientError(LorentzKitError):
    code = "ZERO_COEFFICIENT"


class DimTooSmallError(LorentzKitError):
    code = "DIM_TOO_SMALL"


class DimMismatchError(LorentzKitError):
    code = "DIM_MISMATCH"


class SingularFormError(LorentzKitError):
    code = "SINGULAR_FORM"


class FormMismatchError(LorentzKitError):
    code = "FORM_MISMATCH"


class PointNotInModelError(LorentzKitError):
    code = "POINT_NOT_IN_MODEL"


class NormalNotSpacelikeError(LorentzKitError):
    code = "NORMAL_NOT_SPACELIKE"


class NotUltraparallelError(LorentzKitError):
    code = "NOT_ULTRAPARALLEL"


class NotFOrthogonalError(LorentzKitError):
    """Matrix fails M^T F M = F; records the first violated entry."""

    code = "NOT_F_ORTHOGONAL"

    def __init__(self, message: str, position: tuple[int, int] | None = None):
        super().__init__(message)
        self.position = position


class NotAReflectionError(LorentzKitError):
    code = "NOT_A_REFLECTION"


class WordBudgetExceededError(LorentzKitError):
    code = "WORD_BUDGET_EXCEEDED"
