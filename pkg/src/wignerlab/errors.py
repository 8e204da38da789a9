"""Exception types raised across the package."""


class WignerLabError(Exception):
    """Base class for all package errors."""


class DomainError(WignerLabError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DegenerateAxisError(DomainError):
    """Rotation axis is undefined (parallel or zero velocities)."""


class InvariantError(WignerLabError):
    """A computed object violates an invariant it is required to satisfy."""


class ConfigError(WignerLabError, ValueError):
    """Invalid scenario or run configuration."""


class UnsupportedScenarioError(ConfigError):
    """No closed-form expression is known for the requested scenario."""
