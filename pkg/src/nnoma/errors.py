"""Exception types shared across the package."""


class ConfigurationError(Exception):
    """A required key is missing or a config entry cannot be parsed."""


class ValidationError(ValueError):
    """A parameter violates a model invariant."""


class ComplexityBudgetError(Exception):
    """Composition enumeration would exceed the configured budget."""


class DegeneratePoleError(ValueError):
    """Partial fractions requested for a mixture with coincident rates."""


class GeometryError(ValueError):
    """An angular/geometric argument left its valid range beyond rounding."""


class NumericsError(Exception):
    """A quadrature or series failed to reach the requested tolerance."""
