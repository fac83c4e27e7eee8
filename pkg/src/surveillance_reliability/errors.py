"""Exception hierarchy.

Every error raised for bad input derives from :class:`ValidationError`, which
the command line maps to exit status 1.
"""


class ValidationError(ValueError):
    """Input failed validation.

    ``where`` is a locator such as ``edges[3].quality`` or ``line 12`` used to
    anchor diagnostics.
    """

    def __init__(self, message, where=None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


class DuplicateNode(ValidationError):
    pass


class UnknownEndpoint(ValidationError):
    pass


class UnknownNode(ValidationError):
    pass


class InvalidAttribute(ValidationError):
    pass


class SelfLoop(ValidationError):
    pass


class InvalidSize(ValidationError):
    pass


class ZeroTotalDemand(ValidationError):
    pass


class SchemaError(ValidationError):
    pass


class DanglingReference(ValidationError):
    pass


class RangeError(ValidationError):
    pass
