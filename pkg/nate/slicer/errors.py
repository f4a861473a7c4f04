from nate.errors import NateError


class SlicerError(NateError):
    pass


class NotIllTyped(SlicerError):
    """Slicing or blaming was requested for a well-typed program."""

    def __init__(self, message: str = "program is well-typed"):
        super().__init__(message)
