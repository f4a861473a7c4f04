from nate.errors import NateError


class LearnError(NateError):
    pass


class EmptyDataset(LearnError):
    """Training was requested on zero samples."""

    def __init__(self, message: str = "no training samples"):
        super().__init__(message)


class DimensionMismatch(LearnError):
    """A vector or matrix does not have the width the model was trained on."""

    def __init__(self, expected: int, actual: int):
        super().__init__(f"expected width {expected}, got {actual}")
        self.expected = expected
        self.actual = actual


class ModelFileError(LearnError):
    pass


class CorruptModel(ModelFileError):
    """Model bytes are truncated, have a bad checksum, or do not decode."""

    pass


class VersionMismatch(ModelFileError):
    """Model file was written with an incompatible format or feature schema."""

    pass
