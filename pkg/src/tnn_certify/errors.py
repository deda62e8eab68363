"""Exception hierarchy shared by all modules."""


class TnnCertifyError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(TnnCertifyError, ValueError):
    pass


class OverlapError(ValidationError):
    pass


class BalanceError(ValidationError):
    pass


class EmptyYError(ValidationError):
    pass


class RangeError(ValidationError):
    pass


class NotProperError(ValidationError):
    pass


class NotSubsetError(ValidationError):
    pass


class SizeMismatchError(ValidationError):
    pass


class DimensionError(ValidationError):
    pass


class NegativeWeightError(ValidationError):
    pass


class InvalidNetworkError(ValidationError):
    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class StructureError(TnnCertifyError):
    """The host network does not have the split-vertex structure of a hat network."""


class InfeasibleMatchingError(ValidationError):
    pass


class ConstructionFailure(TnnCertifyError):
    """Bounded witness search ran out of candidates without a verified network."""


class IsUniversalError(TnnCertifyError):
    pass
