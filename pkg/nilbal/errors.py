"""Exception hierarchy for nilbal.

Library code raises these; only the CLI maps them to exit codes.
"""


class NilbalError(Exception):
    """Base class for every error raised by nilbal."""


class PresentationSyntaxError(NilbalError, ValueError):
    """The presentation DSL source could not be parsed."""

    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnknownGeneratorError(NilbalError, ValueError):
    """A word mentions a generator that was not declared."""

    def __init__(self, name: str, line: int | None = None, column: int | None = None) -> None:
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"Unknown generator {name!r}{where}")
        self.name = name
        self.line = line
        self.column = column


class EmptyGeneratorListError(NilbalError, ValueError):
    """A presentation declared no generators."""


class NotAutomorphismError(NilbalError, ValueError):
    """An endomorphism was required to be invertible but is not."""


class NotUnipotentError(NilbalError, ValueError):
    """A map or action was required to be unipotent but is not."""


class CosetLimitExceededError(NilbalError):
    """Coset enumeration defined more cosets than allowed.

    The presented group may be infinite, or the limit must be raised.
    """

    def __init__(self, limit: int) -> None:
        super().__init__(f"Coset enumeration exceeded {limit} cosets")
        self.limit = limit


class SizeLimitError(NilbalError):
    """A computation was refused because its input exceeds a size bound."""

    def __init__(self, what: str, size: int, limit: int) -> None:
        super().__init__(f"{what}: size {size} exceeds limit {limit}")
        self.size = size
        self.limit = limit


class LiftFailureError(NilbalError):
    """A chain-map lift or preimage did not exist where exactness requires one."""


class NonCommutingError(NilbalError, ValueError):
    """Two actions that must commute do not."""


class ParameterInvalidError(NilbalError, ValueError):
    """Family parameters violate the family's preconditions."""


class NotCoprimeError(NilbalError, ValueError):
    """Two integers were required to be coprime."""


class IdentityFailureError(NilbalError):
    """A symbolic identity that must hold failed to hold."""

    def __init__(self, equation: str) -> None:
        super().__init__(f"Identity failed: {equation}")
        self.equation = equation


class TowerValidationError(NilbalError, ValueError):
    """Tower conjugation data does not define an automorphism of the partial tower."""
