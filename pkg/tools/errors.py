"""Exceptions and value-style failure markers shared by the whole package."""

from dataclasses import dataclass, field
from typing import Any


class CleftError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(CleftError, ValueError):
    pass


class InstanceParseError(CleftError):
    pass


class AxiomFailure(CleftError):
    """A named check failed while building or loading a structure.

    Attributes:
        check (str): name of the failed check, e.g. "propiedad de epsilon".
        witness: first failing basis tuple (0-based), when one exists.
    """

    def __init__(self, check: str, witness: Any = None, detail: str = ""):
        self.check = check
        self.witness = witness
        self.detail = detail
        message = f"check '{check}' failed"
        if witness is not None:
            message += f" at witness {witness}"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class UnsupportedCocycle(CleftError):
    pass


class NotStable(CleftError):
    pass


class DegreeUnderflow(CleftError, ValueError):
    pass


class IllDefinedMap(CleftError):
    def __init__(self, ill_defined: "IllDefined", label: str = ""):
        self.ill_defined = ill_defined
        prefix = f"{label}: " if label else ""
        super().__init__(
            f"{prefix}map is not well defined on the quotient, "
            f"witness {ill_defined.witness}"
        )


class _NoSolutionType:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self):
        return False

    def __repr__(self):
        return "NoSolution"

    def __reduce__(self):
        return (_NoSolutionType, ())


NoSolution = _NoSolutionType()


@dataclass(frozen=True)
class IllDefined:
    """A relation of the source whose image is not a relation of the target."""

    witness: Any
    image: dict = field(default_factory=dict, compare=False)

    def __bool__(self):
        return False


@dataclass(frozen=True)
class NotInvertible:
    reason: str

    def __bool__(self):
        return False
