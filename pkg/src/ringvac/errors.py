"""Exception hierarchy shared by the library and the command line tool.

The three leaf classes map onto the CLI exit codes: invalid input (2),
failed numerics (3), and violated model assumptions (4).
"""


class RingvacError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(RingvacError):
    """An input lies outside the physical or numerical domain."""


class NumericalError(RingvacError):
    """A numerical routine failed to converge or met NaN/Inf."""


class ModelViolationError(RingvacError):
    """A structural assumption of the model failed at run time.

    Example: the total angular momentum is expected to be monotone in the
    rotation rate; if a computed profile is not, inverting it would silently
    produce garbage, so we raise this instead.
    """
