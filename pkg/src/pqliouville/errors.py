"""Exceptions shared across the package."""


class UndefinedThresholdError(ValueError):
    """A derived threshold has no value for the given parameters."""


class AdmissibilityError(ValueError):
    """An input violates a stated admissibility precondition."""


class FieldError(ValueError):
    """A grid field is unusable for the requested check."""
