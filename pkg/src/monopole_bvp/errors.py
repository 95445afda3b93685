"""Exception hierarchy shared by all solver modules."""


class MonopoleError(Exception):
    """Base class; the CLI maps any subclass to exit code 2."""


# integrator
class StepCountExceeded(MonopoleError):
    pass


class StepUnderflow(MonopoleError):
    pass


class NonFiniteState(MonopoleError):
    """Raised on NaN/Inf or blow-up (|y| above the configured limit).

    ``trajectory`` holds the accepted steps up to the offending one and
    ``state`` the rejected state, so callers can use the event as a signal.
    """

    def __init__(self, msg, state=None, trajectory=None):
        super().__init__(msg)
        self.state = state
        self.trajectory = trajectory


class NoSignChange(MonopoleError):
    pass


# shooting
class IndeterminateShot(MonopoleError):
    pass


class InvalidBracket(MonopoleError):
    pass


# picard
class DomainViolation(MonopoleError):
    pass


class NoConvergence(MonopoleError):
    pass


# connection constants
class InsufficientDomain(MonopoleError):
    pass


class PhaseQuadrant(MonopoleError):
    pass


# phase function
class SingularP(MonopoleError):
    pass


class DomainMismatch(MonopoleError):
    pass


# profile
class InconsistentInputs(MonopoleError):
    pass


class CoverageExceeded(MonopoleError):
    pass


class NoZeroFound(MonopoleError):
    pass


class RepresentationMismatch(MonopoleError):
    """A candidate's largest-zero translate does not reproduce y*."""


class NonpositiveRadius(MonopoleError):
    pass
