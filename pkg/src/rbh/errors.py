"""Exception types raised across the package."""


class RbhError(Exception):
    """Base class for all package errors."""


class InvalidEdge(RbhError, ValueError):
    pass


class SamePartEdge(RbhError, ValueError):
    pass


class InvalidParameter(RbhError, ValueError):
    pass


class EnumerationTooLarge(RbhError, ValueError):
    pass


class ParseError(RbhError, ValueError):
    """Malformed BGF/BFAM text. ``line`` is 1-based."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ConvergenceFailure(RbhError, ArithmeticError):
    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class InvalidPartition(RbhError, ValueError):
    pass


class SamePartViolation(RbhError, ValueError):
    pass


class InvalidPair(RbhError, ValueError):
    pass


class FamilySizeMismatch(RbhError, ValueError):
    pass
