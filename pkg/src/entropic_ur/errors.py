"""Exception hierarchy.

Two families matter to callers: ``InvalidArgument`` (bad user input, CLI exit 2)
and ``ComputationError`` (dimension or numerical failures, CLI exit 3).
"""


class EntropicURError(Exception):
    """Base class for every error raised by this package."""


class InvalidArgument(EntropicURError, ValueError):
    pass


class ComputationError(EntropicURError):
    pass


# -- invalid input ----------------------------------------------------------

class InvalidState(InvalidArgument):
    """Matrix does not describe a density operator."""


class NotHermitian(InvalidState):
    pass


class NotPositive(InvalidState):
    pass


class NotUnitTrace(InvalidState):
    pass


class NotAProbabilityVector(InvalidArgument):
    pass


class ParamOutOfRange(InvalidArgument):
    pass


class UnknownBoundName(InvalidArgument):
    pass


class NeedAtLeastTwoBases(InvalidArgument):
    pass


class InvalidSubsystem(InvalidArgument):
    pass


class InvalidBasis(InvalidArgument):
    pass


class InvalidStateSpec(InvalidArgument):
    pass


# -- computation ------------------------------------------------------------

class DimensionMismatch(ComputationError, ValueError):
    pass


class NotBipartite(DimensionMismatch):
    pass


class UnsupportedDimension(ComputationError):
    pass


class SupportViolation(ComputationError):
    """Relative entropy is infinite: supp(rho) is not inside supp(sigma)."""


class InternalConsistencyError(ComputationError):
    pass


class BoundViolation(InternalConsistencyError):
    pass
