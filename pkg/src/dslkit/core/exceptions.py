"""Define the canonical exception hierarchy and error utilities for dslkit.

Every failure raised by the package derives from `DslkitError`, which carries a
machine-readable code, a flat string context for structured logs and the
process exit code the CLI should use when the error escapes a command.
"""

from typing import Dict, Optional, TypedDict
from pathlib import Path


class ErrorContext(TypedDict, total=False):
    """Represent structured error context fields for logging and diagnostics.

    Values are stringified before they are stored.
    """
    operation: str
    error_type: str
    path: str
    value_name: str
    value: str
    measured: str
    threshold: str


__all__ = [
    "ErrorContext",
    "DslkitError",
    # Configuration
    "ConfigError",
    "ConfigNotFoundError",
    "ConfigValidationError",
    "ConfigMergeError",
    # Input documents
    "InputError",
    "MatrixFormatError",
    "ProblemFormatError",
    "GridFormatError",
    # File system
    "FileSystemError",
    "PathNotFoundError",
    "FilePermissionError",
    # Numerical
    "NumericalError",
    "NonConvergence",
    "BranchCutViolation",
    "SingularSystem",
    "SingularClassInput",
    "CrossCheckMismatch",
    "BisectionFailure",
    # Domain preconditions
    "HypothesisViolation",
    "NoSlice",
    "CornerMismatch",
    "UnknownSuiteError",
    # Utility functions
    "validate_path_exists",
    "validate_file_readable",
]


class DslkitError(Exception):
    """Wrap an error message with a machine-readable code and structured context.

    Use this base for all domain-specific exceptions so callers can reliably
    extract `error_code` and `context` for structured logs.
    """

    # Exit code to use when this exception translates to a process exit
    exit_code = 1

    def __init__(
        self,
        message: str,
        error_code: Optional[str] = None,
        context: Optional[ErrorContext] = None,
        cause: Optional[Exception] = None,
    ):
        super().__init__(message)
        self.message = message
        self.error_code = error_code or self.__class__.__name__
        self.context: ErrorContext = {k: str(v) for k, v in (context or {}).items()}  # type: ignore[misc]
        self.cause = cause

    def __str__(self) -> str:
        """Return a single-line, human-readable representation suitable for logs."""
        parts = [f"[{self.error_code}] {self.message}"]
        if self.context:
            parts.append(f"Context: {self.context}")
        if self.cause:
            parts.append(f"Cause: {self.cause}")
        return " | ".join(parts)

    def to_dict(self) -> Dict[str, str]:
        """Serialize the exception into a flat mapping of strings for logs and reports."""
        result: Dict[str, str] = {
            "error_code": str(self.error_code),
            "error_message": str(self.message),
            "exception_type": self.__class__.__name__,
        }
        for k, v in self.context.items():
            result[k] = str(v)
        if self.cause:
            result["cause"] = str(self.cause)
        return result


# Configuration Errors
class ConfigError(DslkitError):
    """Represent configuration errors during load or merge of the layer cascade."""
    exit_code = 2


class ConfigNotFoundError(ConfigError):
    """Indicate that an explicitly requested configuration file was not found."""


class ConfigValidationError(ConfigError):
    """Indicate a configuration layer failed pydantic or schema validation."""


class ConfigMergeError(ConfigError):
    """Indicate an error occurred while merging layered configurations."""


# Input documents
class InputError(DslkitError):
    """Represent malformed user input documents (matrices, problems, grids)."""
    exit_code = 2


class MatrixFormatError(InputError):
    """Indicate a matrix JSON document is malformed or not exactly symmetric."""


class ProblemFormatError(InputError):
    """Indicate a problem JSON document failed schema or invariant checks."""


class GridFormatError(InputError):
    """Indicate a grid CSV is malformed or its grid is not uniform."""


# File System Errors
class FileSystemError(DslkitError):
    """Represent file system errors such as missing files or permissions."""
    exit_code = 2


class PathNotFoundError(FileSystemError):
    """Indicate a required filesystem path was not found."""


class FilePermissionError(FileSystemError):
    """Indicate a permission error when accessing a filesystem resource."""


# Numerical Errors
class NumericalError(DslkitError):
    """Represent numerical faults; operations report them instead of perturbing input."""


class NonConvergence(NumericalError):
    """Indicate an iterative method exhausted its iteration budget."""


class BranchCutViolation(NumericalError):
    """Indicate an argument was requested on (-inf, 0] or below the underflow threshold."""


class SingularSystem(NumericalError):
    """Indicate a linear system is too ill-conditioned to solve reliably."""


class SingularClassInput(NumericalError):
    """Indicate a singular-class matrix diag(0, A+) was given to the Schur path."""


class CrossCheckMismatch(NumericalError):
    """Indicate the spectral and Schur angle paths disagree beyond tolerance."""


class BisectionFailure(NumericalError):
    """Indicate a bisection bracket could not be established."""


# Domain preconditions
class HypothesisViolation(DslkitError):
    """Indicate a predicate was evaluated outside the hypothesis it assumes."""


class NoSlice(DslkitError):
    """Indicate a 2-plane contains a time-like line and lies in no affine slice."""


class CornerMismatch(ProblemFormatError):
    """Indicate boundary traces disagree at a corner of the space-time rectangle."""


class UnknownSuiteError(InputError):
    """Indicate a verification suite name is not registered."""


def validate_path_exists(path: Path, operation: str) -> None:
    """Check that `path` exists and raise `PathNotFoundError` when missing."""
    if not path.exists():
        raise PathNotFoundError(
            f"Path does not exist: {path}",
            error_code="PATH_NOT_FOUND",
            context={"operation": operation, "path": str(path)},
        )


def validate_file_readable(path: Path, operation: str) -> None:
    """Verify that `path` exists, is a file, and is readable."""
    validate_path_exists(path, operation)

    if not path.is_file():
        raise FileSystemError(
            f"Path is not a file: {path}",
            error_code="NOT_A_FILE",
            context={"operation": operation, "path": str(path)},
        )

    try:
        with open(path, "r", encoding="utf-8") as f:
            f.read(1)
    except (PermissionError, OSError) as e:
        raise FilePermissionError(
            f"File is not readable: {path}",
            error_code="FILE_NOT_READABLE",
            context={"operation": operation, "path": str(path)},
            cause=e,
        )

