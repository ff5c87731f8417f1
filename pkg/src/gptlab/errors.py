"""Exception hierarchy shared by every gptlab module."""

from __future__ import annotations


class GptlabError(Exception):
    """Base class for all gptlab errors."""


# polyhedral kernel
class Infeasible(GptlabError):
    """The constraint system has no feasible point."""


class Empty(Infeasible):
    """A polyhedron handed to vertex enumeration is empty."""


class Unbounded(GptlabError):
    """An LP objective or a polyhedron is unbounded."""


class NotPointed(GptlabError):
    """A cone contains a line."""


# model
class BadDimension(GptlabError, ValueError):
    pass


class EmptyInput(GptlabError, ValueError):
    pass


class SpaceMismatch(GptlabError, ValueError):
    """Objects living on different state spaces were combined."""


class NotAChannel(GptlabError, ValueError):
    """An affine map sends some source vertex outside the target space."""


class ParseError(GptlabError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class InvariantViolation(GptlabError, ValueError):
    def __init__(self, invariant: str, message: str = ""):
        self.invariant = invariant
        super().__init__(f"{invariant}: {message}" if message else invariant)


# effects / measures
class DegenerateSpace(GptlabError):
    """The operation needs a state space with at least two states."""


class ZeroEffect(GptlabError, ValueError):
    pass


class NotInCone(GptlabError):
    """Internal error: a nonnegative functional failed to decompose into rays."""


class LengthMismatch(GptlabError, ValueError):
    pass


class OutOfRange(GptlabError, ValueError):
    pass


class TooLarge(GptlabError):
    """Exhaustive search refused because the input exceeds the size bound."""


class InvalidState(GptlabError, ValueError):
    pass
