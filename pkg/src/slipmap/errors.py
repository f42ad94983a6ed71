"""Exception hierarchy. Domain violations are ValueErrors, integration failures RuntimeErrors."""


class SlipError(Exception):
    """Base class for every error raised by slipmap."""


class DomainError(SlipError, ValueError):
    """An argument lies outside the domain of the operation."""


class NonForwardError(DomainError):
    """Angular velocity at touchdown is not positive."""


class InfeasibleEnergyError(DomainError):
    """The energy is too low for the requested state."""


class DegenerateContactError(DomainError):
    """Oscillation amplitude B vanishes, so C = A/B is undefined."""


class SingularityError(DomainError):
    """A formula is evaluated at its singular point (typically L_d = 0)."""


class NoPhysicalRootError(DomainError):
    """A discriminant is negative; no real stiffness exists."""


class ExistenceError(DomainError):
    """The fixed-point existence condition fails."""


class StumbleError(SlipError):
    """The next apex lies below the landing height."""

    def __init__(self, height, landing_height):
        super().__init__(f"apex {height:.6g} below landing height {landing_height:.6g}")
        self.height = height
        self.landing_height = landing_height


class BracketError(DomainError):
    """A root-finding bracket does not enclose a sign change."""


class NoCollisionError(SlipError):
    """Tracked branches never meet."""


class IntegrationError(SlipError, RuntimeError):
    """Base for failures of the stance integrator."""


class LegCollapseError(IntegrationError):
    """Leg length reached zero."""


class NoTakeoffError(IntegrationError):
    """No takeoff event before the time limit."""
