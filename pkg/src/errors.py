"""
Error types for the deformed combinatorics library.
Every failure the library raises on purpose derives from RPQError, so the
command line front end can report it with a clean exit status.
"""


class RPQError(Exception):
    """Base class for library errors."""


class ParameterOrdering(RPQError):
    """Built-in deformation parameters violate 0 < q < p <= 1."""


class DegenerateDeformation(RPQError):
    """Structure functions coincide or a field is zero."""


class NegativeArgument(RPQError):
    """A nonnegative integer argument was negative."""


class DivisionByZeroFactor(RPQError):
    """A negative-order factorial hit a vanishing deformed number."""


class DomainViolation(RPQError):
    """A grid cell or sample point lies outside an identity's validity domain."""


class NonTerminatingSeries(RPQError):
    """Exact evaluation was requested for an infinite series."""


class NonInvertibleSeries(RPQError):
    """Power series reciprocal with zero constant term."""


class InconsistentMoments(RPQError):
    """Reconstructed probabilities are negative or do not sum to one."""


class InvalidLiteral(RPQError):
    """A rational literal does not match [-]digits[/digits]."""


class InvalidGraph(RPQError):
    """Graph input has self-loops or vertices outside 1..n."""


class UsageError(RPQError):
    """Command line arguments failed validation."""
