"""Exception types shared across the package."""


class MagnvError(Exception):
    """Base class for all package errors."""


class PhysicsError(MagnvError):
    """A physical precondition or regime constraint is violated.

    Examples: wavenumber outside the Brillouin zone, electric field tuned
    past the band edge (L_z <= L_E), a trajectory that never settles.
    """


class ConfigError(MagnvError):
    """A configuration document is malformed or inconsistent.

    Carries the offending field path so callers can report it precisely.
    """

    def __init__(self, field, message):
        self.field = field
        self.message = message
        super().__init__(f"{field}: {message}")
