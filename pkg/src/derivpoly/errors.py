"""Exception hierarchy shared by the library and the CLI."""


class DerivPolyError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(DerivPolyError, ValueError):
    """A precondition on the inputs does not hold (CLI exit code 2)."""


class PoleError(DomainError):
    """The evaluation point lies at (or too close to) a pole of the function."""


class DivergenceError(DomainError):
    """Series division lost more precision than the guard bits can absorb."""


class InvariantError(DerivPolyError, AssertionError):
    """An internal mathematical invariant failed (CLI exit code 3).

    Raised for things that cannot happen with correct triangles: an inexact
    division by ``k`` or a sign exponent landing on a half integer.
    """


class NonRealResult(InvariantError):
    """A formula that must be real produced a nonzero imaginary part."""
