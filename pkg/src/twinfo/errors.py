class TwinfoError(Exception):
    """Base class for errors raised by this package."""


class ParseError(TwinfoError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(TwinfoError):
    def __init__(self, message: str, time: int | None = None, pair: tuple[int, int] | None = None):
        self.time = time
        self.pair = pair
        super().__init__(message)


class RankCapError(TwinfoError):
    pass


class PreconditionError(TwinfoError):
    pass


class ContractViolation(TwinfoError):
    pass
