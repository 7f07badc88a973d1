"""Exception hierarchy shared across the package."""


class LinwidthError(Exception):
    """Base class for all errors raised by this package."""


class SizeLimitExceeded(LinwidthError):
    """An exhaustive operation was asked to run above its documented cap."""


class SystemNotValidated(LinwidthError):
    """An operation requiring a validated system got an unvalidated one."""


class UnknownVertex(LinwidthError):
    pass


class UnknownElement(LinwidthError):
    pass


class DuplicateEdgeLabel(LinwidthError):
    pass


class NegativeWeight(LinwidthError):
    pass


class GroundSetMismatch(LinwidthError):
    """A family was paired with a system over a different ground set."""


class NonEfficientSeed(LinwidthError):
    """A closure seed exceeded the efficiency bound of the requested order."""


class FileSyntaxError(LinwidthError):
    """A system or family file failed to parse.  Carries the 1-based line."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class MissingValueLine(LinwidthError):
    """A table-mode system file did not supply all 2^n values."""


class DuplicateLabel(LinwidthError):
    pass


class UnknownLabel(LinwidthError):
    pass


class SystemNameMismatch(LinwidthError):
    pass


class ValidationFailed(LinwidthError):
    """A parsed system failed validation.  Carries the report."""

    def __init__(self, report):
        super().__init__(f"system failed validation: {report.summary()}")
        self.report = report


class UnknownSystem(LinwidthError):
    """A certificate referenced a system that cannot be resolved."""


class MalformedCertificate(LinwidthError):
    pass
