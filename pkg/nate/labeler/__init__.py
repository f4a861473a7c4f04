from .diff import BlameLabels, ProgramPair, subtree_hashes, tree_diff
from .errors import EmptyCorpus, InvalidPair, LabelerError
from .outlier import PolicyKind, ThresholdPolicy, filter_outliers

__all__ = [
    "BlameLabels",
    "EmptyCorpus",
    "InvalidPair",
    "LabelerError",
    "PolicyKind",
    "ProgramPair",
    "ThresholdPolicy",
    "filter_outliers",
    "subtree_hashes",
    "tree_diff",
]
