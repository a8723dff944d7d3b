class MengerError(Exception):
    """
    Base exception of the package.

    Carries a human readable message, exactly like every error raised by the
    library, so the CLI can report it without inspecting the type.
    """

    def __init__(self, message: str):
        """
        Initialize the error with a message.

        Args:
            message (str): The error message describing the issue.
        """
        super().__init__(message)
        self.message = message


class ArgumentError(MengerError, ValueError):
    """Raised when an operation's precondition does not hold."""


class UnsupportedOperationError(MengerError):
    """Raised when a model cannot provide what an operation needs."""


class InternalGeometryError(MengerError):
    """Raised when a Gram determinant is negative beyond rounding tolerance."""


class DiagnosticError(MengerError):
    """Raised when a sampler diagnostic makes the estimate meaningless."""


class ConfigError(MengerError):
    """
    Raised for malformed run configurations.

    Args:
        message (str): What is wrong.
        field (str, optional): The offending configuration key.
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field
