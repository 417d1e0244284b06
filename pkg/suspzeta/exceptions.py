from enum import IntEnum


class ExitStatus(IntEnum):
    OK = 0
    DOMAIN_ERROR = 1
    USAGE_ERROR = 2


class ZetaError(Exception):
    """Base class for every domain error; carries the CLI exit status."""

    exit_status: ExitStatus = ExitStatus.DOMAIN_ERROR

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class ParseError(ZetaError):
    pass


class MissingTwistError(ZetaError):
    def __init__(self, twist: int, detail: str | None = None):
        super().__init__(detail or f"bundle has no entry for twist order {twist}")
        self.twist = twist


class NotExpandableError(ZetaError):
    pass


class DivergentSpecializationError(ZetaError):
    pass


class HypothesisError(ZetaError):
    pass


class ArithmeticDomainError(ZetaError):
    pass


class UsageError(ZetaError):
    exit_status = ExitStatus.USAGE_ERROR
