from nate.errors import NateError


class HarnessError(NateError):
    pass


class TooFewPrograms(HarnessError):
    """Not enough usable programs to train, split or evaluate."""

    def __init__(self, needed: int, available: int, what: str = "programs"):
        super().__init__(f"need at least {needed} {what}, have {available}")
        self.needed = needed
        self.available = available


class CorpusFormatError(HarnessError):
    """A corpus line is not a valid `{"bad", "fix", "meta"}` record."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        where = ":".join(str(part) for part in (source, line) if part is not None)
        super().__init__(f"{where}: {message}" if where else message)
        self.line = line
        self.source = source


class AbstractionMismatch(HarnessError):
    """Features were requested under a different type abstraction than the model was trained with."""

    def __init__(self, trained: str, requested: str):
        super().__init__(f"model was trained with {trained} type blocks, not {requested}")
        self.trained = trained
        self.requested = requested
