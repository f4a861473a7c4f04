from nate.errors import NateError


class LabelerError(NateError):
    pass


class EmptyCorpus(LabelerError):
    """A corpus-level statistic was requested over no pairs."""

    pass


class InvalidPair(LabelerError):
    """The bad side is well-typed or the fixed side is not."""

    pass
