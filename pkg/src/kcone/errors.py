"""Exception types raised by kcone."""


class KConeError(Exception):
    """Base class for all kcone errors."""


class InvalidArgument(KConeError, ValueError):
    """An argument lies outside the domain of the operation."""


class InfeasibleTriangle(InvalidArgument):
    """Three lengths cannot be realized as a triangle in the model plane."""


class UnsupportedMeasure(KConeError, TypeError):
    """The direction space carries no canonical measure (e.g. a finite net)."""


class UnsupportedVariant(KConeError, TypeError):
    """The operation is not defined for this kind of space or point."""


class StepViolation(InvalidArgument):
    """A recurrence step is too large and produced a non-positive term."""


class ExpansionDomainError(InvalidArgument):
    """A gap exceeds the validity range of the first-order tube expansion."""


class SchemaError(KConeError, ValueError):
    """A JSON space specification does not match the expected schema."""
