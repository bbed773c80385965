"""
Errors

Every failure raised by the library is a DcjPermError. Each class carries the
process exit code the CLI maps it to, the same way the service layer used to
carry an HTTP status code on its exceptions.
"""

from typing import Optional

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_PARSE = 2
EXIT_ORACLE_DISAGREEMENT = 3
EXIT_INPUT_MISMATCH = 4
EXIT_GUARD_EXCEEDED = 5


class DcjPermError(Exception):
    """Base error with a human-readable detail and a CLI exit code."""

    exit_code: int = EXIT_PARSE

    def __init__(self, detail: str, exit_code: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


# -------------------------
# Input / parse family (exit 2)
# -------------------------
class ParseError(DcjPermError):
    """Malformed text input, located by 1-based line and column."""

    def __init__(self, detail: str, line: Optional[int] = None, column: Optional[int] = None):
        location = ""
        if line is not None:
            location = f"line {line}"
            if column is not None:
                location += f", column {column}"
            location += ": "
        super().__init__(f"{location}{detail}")
        self.line = line
        self.column = column


class SpecError(DcjPermError):
    """A chromosome-level genome description violates the gene-id rules."""


class RangeError(DcjPermError):
    """A point or gene id lies outside the permitted range."""


class OverlapError(DcjPermError):
    """Two cycles share a point."""


class DegreeMismatch(DcjPermError):
    """Permutations of different degrees were combined."""


class NotInvolution(DcjPermError):
    """A permutation has a cycle longer than two."""


class OddDegree(DcjPermError):
    """A genomic permutation must act on an even number of points."""


class SamePoint(DcjPermError):
    """A transposition or DCJ operation was requested on i = j."""


class NotConjugate(DcjPermError):
    """No conjugating element exists (different cycle types)."""


class OutOfTheoremScope(DcjPermError):
    """The closed-form scenario count does not apply to this genome pair."""


class ScenarioError(DcjPermError):
    """A recorded scenario does not replay to its own steps."""


# -------------------------
# Other families
# -------------------------
class OracleDisagreement(DcjPermError):
    exit_code = EXIT_ORACLE_DISAGREEMENT


class SizeMismatch(DcjPermError):
    exit_code = EXIT_INPUT_MISMATCH


class TooLarge(DcjPermError):
    """An exhaustive computation was requested beyond its configured guard."""

    exit_code = EXIT_GUARD_EXCEEDED
