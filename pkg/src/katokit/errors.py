"""Exception hierarchy.

Input problems derive from :class:`KatoError` and map to CLI exit code 1.
:class:`InternalConsistencyError` marks checks that must never fire on valid
input; the CLI maps it to exit code 2.
"""

from __future__ import annotations


class KatoError(ValueError):
    """Base class for rejected input."""

    code = "invalid_input"


class SequenceSyntaxError(KatoError):
    code = "syntax_error"


class NotIntermediate(KatoError):
    """The input describes a Kato surface that is not of intermediate type."""

    code = "not_intermediate"

    def __init__(self, hint: str, detail: str | None = None) -> None:
        self.hint = hint
        msg = hint if detail is None else f"{hint}: {detail}"
        super().__init__(msg)


class ZeroLength(KatoError):
    code = "zero_length"


class MalformedCycle(KatoError):
    code = "malformed_cycle"


class DeltaInconsistent(KatoError):
    code = "delta_inconsistent"


class InternalConsistencyError(AssertionError):
    code = "internal_consistency"


class SingularMatrix(InternalConsistencyError):
    code = "singular_matrix"


class GcdViolation(InternalConsistencyError):
    code = "gcd_violation"
