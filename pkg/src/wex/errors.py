"""Exception types shared across the package.

Every error carries the CLI exit code it maps to: 1 for parse errors,
2 for validation/precondition errors, 3 for cap overruns, 4 for internal
consistency failures.
"""


class WexError(Exception):
    exit_code = 2


class ParseError(WexError):
    exit_code = 1

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ValidationError(WexError):
    exit_code = 2


class CapExceeded(WexError):
    exit_code = 3


class InternalInconsistency(WexError):
    exit_code = 4


class NotCoprime(ValidationError):
    pass


class NotAMultiple(ValidationError):
    pass


class NotInvertible(ValidationError):
    pass


class InfiniteOrderSuspected(CapExceeded):
    pass


class KTooSmall(ValidationError):
    pass


class WrongDimension(ValidationError):
    pass


class GroupMismatch(ValidationError):
    pass


class MissingPowerMap(ValidationError):
    pass


class MissingLinearFlags(ValidationError):
    pass


class NonIntegralMultiplicity(ValidationError):
    pass


class OrthogonalityFailure(InternalInconsistency):
    pass


class NotOddPrime(ValidationError):
    pass


class NotLogFano(ValidationError):
    pass


class DegreeTooLarge(ValidationError):
    pass


class OutOfRange(ValidationError):
    pass
