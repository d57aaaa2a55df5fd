"""Exception types shared across the package.

Everything raised on purpose derives from PermGateError so callers (the CLI
in particular) can distinguish domain failures from bugs.
"""


class PermGateError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(PermGateError, ValueError):
    """Invalid dimension, or an operation mixing incompatible dimensions."""


class NotationError(PermGateError, ValueError):
    """Malformed one-line notation; the message names the offending token."""


class CapExceeded(PermGateError):
    """A size guard was hit; the message states the cap and the override."""


class ClosureError(PermGateError):
    """A gate library declared group-closed is not; names the bad product."""


class WiringError(PermGateError, ValueError):
    """Gate instance wiring is invalid (collision, range, or arity)."""


class FileFormatError(PermGateError, ValueError):
    """A circuit or template file failed to parse or verify.

    Carries the 1-based line number of the offending line.
    """

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
