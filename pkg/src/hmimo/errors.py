"""Exception types shared across the package."""


class DegenerateGeometryError(ValueError):
    """Raised when a TX/RX pair geometry leaves the model's validity region."""


class CoincidentPointsError(DegenerateGeometryError):
    """Raised when a field point coincides with a source point (singular kernel)."""


class ConfigError(ValueError):
    """Raised by the benchmark layer when a sweep config is invalid.

    The message lists every violation found, one per line.
    """

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("invalid sweep config:\n" + "\n".join(f"  - {v}" for v in self.violations))
