"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input violates a mathematical precondition (branch cut, ordering,
    parameter range).  The CLI maps this to exit code 2."""


class SeriesDivergenceError(RuntimeError):
    """A truncated series did not reach its stagnation criterion.  Most
    series routines flag this in their result instead of raising."""
