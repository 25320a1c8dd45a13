"""Exception taxonomy shared by all modules.

Three classes of failure map onto the CLI exit codes: validation errors
(bad input, exit 2), size-guard refusals (exit 3), and cross-route
disagreements (exit 4, always a bug somewhere).
"""


class LcsError(Exception):
    """Base class for everything raised on purpose by this package."""


class ValidationError(LcsError):
    """Input fails a documented precondition."""


class SizeGuardExceeded(LcsError):
    """Computation refused: instance exceeds the configured desk-scale guard."""


class InternalDisagreement(LcsError):
    """Two independent routes to the same value disagree; never acceptable."""


class InvalidOrder(ValidationError):
    pass


class OrderOverflow(ValidationError):
    pass


class GroupMismatch(ValidationError):
    pass


class ShapeMismatch(ValidationError):
    pass


class ImageNotInKernel(ValidationError):
    pass


class NotCyclic(ValidationError):
    """The multiplicative group of H is not cyclic (p=2 with (nu,eta)=(1,2))."""


class NotABrace(ValidationError):
    pass


class NotCommuting(ValidationError):
    pass


class WrongParams(ValidationError):
    pass


class DegreeOutOfRange(ValidationError):
    pass


class IndexOutOfRange(ValidationError):
    pass


class NotVerticalCocycle(ValidationError):
    pass


class NotPeriodic(ValidationError):
    pass


class ParamsNotAdmissible(ValidationError):
    pass


class NotACocycle(ValidationError):
    pass


class ActionMismatch(ValidationError):
    pass


class HypothesisViolated(ValidationError):
    pass
