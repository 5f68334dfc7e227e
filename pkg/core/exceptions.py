"""
DisorderWalk Exceptions
=======================
Custom exception classes for the application.
"""


class DisorderWalkError(Exception):
    """Base exception for DisorderWalk."""

    def __init__(self, message: str, details: dict = None):
        self.message = message
        self.details = details or {}
        super().__init__(self.message)

    def __reduce__(self):
        # subclasses take structured constructor args; rebuild from message/details
        # so errors raised inside worker processes cross the pool intact
        return (_restore_error, (type(self), self.message, self.details))


def _restore_error(cls, message: str, details: dict) -> DisorderWalkError:
    error = cls.__new__(cls)
    DisorderWalkError.__init__(error, message, details)
    return error


# ============================================================================
# Configuration Exceptions
# ============================================================================

class ConfigurationError(DisorderWalkError):
    """Raised when configuration is invalid or missing."""
    pass


class ScenarioConfigError(ConfigurationError):
    """Raised when a scenario file or flag set fails validation."""

    def __init__(self, field: str, message: str, line: int = None):
        location = f"{field} (line {line})" if line is not None else field
        super().__init__(
            f"Invalid scenario configuration at {location}: {message}",
            {"field": field, "line": line, "validation_message": message}
        )


# ============================================================================
# Argument Exceptions
# ============================================================================

class InvalidArgumentError(DisorderWalkError, ValueError):
    """Raised when an operation receives an argument outside its domain."""

    def __init__(self, argument: str, message: str):
        super().__init__(
            f"Invalid argument '{argument}': {message}",
            {"argument": argument, "reason": message}
        )


# ============================================================================
# Lattice Exceptions
# ============================================================================

class LatticeError(DisorderWalkError):
    """Base exception for lattice sizing problems."""
    pass


class LatticeBoundsError(LatticeError):
    """Raised when a position lies outside the lattice."""

    def __init__(self, position: int, half_width: int):
        super().__init__(
            f"Position {position} outside lattice [-{half_width}, {half_width}]",
            {"position": position, "half_width": half_width}
        )


class LatticeOverflowError(LatticeError):
    """Raised when a shift would push amplitude past the lattice edge."""

    def __init__(self, step: int, direction: str):
        super().__init__(
            f"Lattice overflow at step {step}: nonzero {direction} amplitude on the edge "
            "(lattice half width too small for the requested steps)",
            {"step": step, "direction": direction}
        )


# ============================================================================
# Analysis Exceptions
# ============================================================================

class AnalysisError(DisorderWalkError):
    """Base exception for analysis failures."""
    pass


class InsufficientDataError(AnalysisError):
    """Raised when a fit has too few usable points."""

    def __init__(self, operation: str, required: int, available: int):
        super().__init__(
            f"{operation} needs at least {required} usable points, got {available}",
            {"operation": operation, "required": required, "available": available}
        )


# ============================================================================
# Data Exceptions
# ============================================================================

class DataError(DisorderWalkError):
    """Base exception for data-file errors."""
    pass


class MalformedTableError(DataError):
    """Raised when a result file cannot be parsed."""

    def __init__(self, path: str, reason: str):
        super().__init__(
            f"Malformed file '{path}': {reason}",
            {"path": path, "reason": reason}
        )


class FormatVersionError(DataError):
    """Raised when a result file declares an unsupported format major."""

    def __init__(self, path: str, found: str, supported: str):
        super().__init__(
            f"Unsupported format version {found} in '{path}' (supported: {supported})",
            {"path": path, "found": found, "supported": supported}
        )


# ============================================================================
# Ensemble Exceptions
# ============================================================================

class EnsembleError(DisorderWalkError):
    """Raised when an ensemble run fails inside the worker pool."""

    def __init__(self, reason: str):
        super().__init__(
            f"Ensemble execution failed: {reason}",
            {"reason": reason}
        )
