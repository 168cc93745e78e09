"""Exception hierarchy shared by every module."""


class OpHardyError(Exception):
    """Base class for all errors raised by ophardy."""


class InvalidArgumentError(OpHardyError, ValueError):
    pass


class InvalidValueError(OpHardyError, ValueError):
    """Non-finite matrix entries where finite ones are required."""


class DomainError(OpHardyError, ValueError):
    """A point outside the open disk (or off the circle) was supplied."""


class NotRepresentableError(OpHardyError, ValueError):
    """A sampled function was asked for a value it does not store."""


class PreconditionError(OpHardyError, ValueError):
    pass


class ConvergenceError(OpHardyError, RuntimeError):
    pass


class SchemaError(OpHardyError, ValueError):
    """Spec document failed schema validation.

    ``path`` holds the JSON path of the offending field.
    """

    def __init__(self, message, path=""):
        super().__init__(f"{path or '<root>'}: {message}")
        self.path = path


class ValidationError(OpHardyError, ValueError):
    pass
