from nate.errors import NateError


class FeatureError(NateError):
    pass


class UnknownFeatureSet(FeatureError, ValueError):
    """A feature-set expression names a group that does not exist."""

    pass


class SchemaMismatch(FeatureError):
    """An extracted vector does not have the schema's width."""

    def __init__(self, expected: int, actual: int):
        super().__init__(f"feature vector has {actual} entries, schema has {expected}")
        self.expected = expected
        self.actual = actual
