"""Exception hierarchy shared by every module.

The CLI maps these onto exit statuses: domain errors are bad input (1),
verification errors mean a proved identity failed to hold (2), and limit
errors mean a configured resource bound was hit (3).
"""


class FreeseError(Exception):
    pass


class DomainError(FreeseError, ValueError):
    pass


class ParseError(DomainError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class VerificationError(FreeseError):
    pass


class LimitExceeded(FreeseError):
    pass
