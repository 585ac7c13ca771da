"""Exception hierarchy.

Every error carries a stable machine-readable ``code`` (the class name),
which the CLI surfaces in its JSON error records.
"""


class StablatError(Exception):
    """Base class for all library errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


class ParseError(StablatError):
    """Malformed input: bad rational string, bad JSON shape, bad flag value."""


class InvalidSpace(StablatError):
    """A product space constraint is violated (empty genera, wrong n)."""


class SpaceMismatch(StablatError):
    """Operands live on different product spaces."""


class NonNilpotentExponent(StablatError):
    """coh_exp was called on a class with a nonzero constant term."""


class InvalidIndex(StablatError):
    """A curve or generator index is out of range."""


class NotARealClass(StablatError):
    """A lattice-valued operation received a class with complex coefficients."""


class InvalidParameter(StablatError):
    """A charge parameter violates its sign constraint (omega, s, t > 0)."""


class ZeroCharge(StablatError):
    """Phase of a zero central-charge value is undefined."""


class DimensionMismatch(StablatError):
    """Matrix/vector dimensions disagree."""


class DegenerateBasis(StablatError):
    """Vectors passed as a basis are linearly dependent."""


class ZeroVector(StablatError):
    """A class with zero norm was passed where a nonzero one is required."""


class PositiveGenusRequired(StablatError):
    """The Hilbert-scheme construction requires both genera to be >= 1."""


class InvalidKummer(StablatError):
    """The Kummer flag requires both curve factors to be elliptic (genus 1)."""


class NotSymmetricSpace(StablatError):
    """The genus pattern is not invariant under the requested permutation."""
