"""
CART decision trees over Gini impurity.

Trees are stored as flat arrays in pre-order: `feature[i] < 0` marks a
leaf, otherwise samples with `v[feature[i]] <= threshold[i]` go to
`left[i]` and the rest to `right[i]`. Every node keeps the (not blamed,
blamed) counts of the training samples that reached it.
"""

from __future__ import annotations

import dataclasses
import logging
import typing as t

import numpy as np

from nate.model.enum import ModelKind

from .base import Arrays, Classifier, check_dataset
from .config import TrainConfig

logger = logging.getLogger(__name__)

LEAF = -1
# split scores closer than this are treated as equal so ties resolve by feature
_TIE = 1e-12


@dataclasses.dataclass(frozen=True, slots=True)
class PathStep:
    node: int
    feature: int  # LEAF at the final step
    threshold: float
    went_left: bool
    negative: float
    positive: float

    @property
    def confidence(self) -> float:
        return self.positive / (self.negative + self.positive)


class DecisionTreeModel(Classifier):
    kind = ModelKind.Tree

    def __init__(
        self,
        feature: np.ndarray,
        threshold: np.ndarray,
        left: np.ndarray,
        right: np.ndarray,
        counts: np.ndarray,
        width: int,
        meta: dict[str, t.Any] | None = None,
    ):
        self.feature = np.asarray(feature, dtype=np.int64)
        self.threshold = np.asarray(threshold, dtype=np.float64)
        self.left = np.asarray(left, dtype=np.int64)
        self.right = np.asarray(right, dtype=np.int64)
        self.counts = np.asarray(counts, dtype=np.float64).reshape(-1, 2)
        self.width = int(width)
        self.meta = dict(meta or {})

    def __len__(self) -> int:
        return self.feature.shape[0]

    @property
    def leaf_confidence(self) -> np.ndarray:
        return self.counts[:, 1] / self.counts.sum(axis=1)

    @property
    def depth(self) -> int:
        depths = np.zeros(len(self), dtype=np.int64)
        # pre-order: a parent always precedes its children
        for i in range(len(self)):
            if self.feature[i] != LEAF:
                depths[self.left[i]] = depths[self.right[i]] = depths[i] + 1
        return int(depths.max())

    def apply(self, X: np.ndarray) -> np.ndarray:
        """leaf reached by each row"""
        node = np.zeros(X.shape[0], dtype=np.int64)
        while True:
            rows = np.flatnonzero(self.feature[node] != LEAF)
            if not rows.size:
                return node
            at = node[rows]
            go_left = X[rows, self.feature[at]] <= self.threshold[at]
            node[rows] = np.where(go_left, self.left[at], self.right[at])

    def _predict(self, X: np.ndarray) -> np.ndarray:
        return self.leaf_confidence[self.apply(X)]

    def decision_path(self, v: t.Any) -> list[PathStep]:
        v = np.asarray(v, dtype=np.float64).reshape(-1)
        steps: list[PathStep] = []
        i = 0
        while True:
            neg, pos = self.counts[i]
            f = int(self.feature[i])
            if f == LEAF:
                steps.append(PathStep(i, LEAF, float("nan"), False, neg, pos))
                return steps
            went_left = bool(v[f] <= self.threshold[i])
            steps.append(PathStep(i, f, float(self.threshold[i]), went_left, neg, pos))
            i = int(self.left[i] if went_left else self.right[i])

    def arrays(self) -> Arrays:
        return {
            "feature": self.feature,
            "threshold": self.threshold,
            "left": self.left,
            "right": self.right,
            "counts": self.counts,
        }

    def header(self) -> dict[str, t.Any]:
        return {"width": self.width}

    @classmethod
    def from_parts(cls, kind: ModelKind, header: dict[str, t.Any], arrays: Arrays) -> DecisionTreeModel:
        return cls(
            arrays["feature"], arrays["threshold"], arrays["left"], arrays["right"], arrays["counts"], header["width"]
        )


def gini(pos: np.ndarray | float, n: np.ndarray | float) -> np.ndarray | float:
    p = pos / n
    return 2.0 * p * (1.0 - p)


def best_split(X: np.ndarray, y: np.ndarray, features: np.ndarray) -> tuple[int, float, float] | None:
    """
    `(feature, threshold, weighted impurity)` of the best split of `X` over
    the candidate `features`, or None when every candidate is constant.
    Thresholds are midpoints between consecutive distinct values; ties go
    to the lowest feature, then the lowest threshold.
    """
    m = X.shape[0]
    if m < 2 or not features.size:
        return None
    Xc = X[:, features]
    order = np.argsort(Xc, axis=0, kind="stable")
    xs = np.take_along_axis(Xc, order, axis=0)
    ys = y[order]

    n_left = np.arange(1, m, dtype=np.float64)[:, None]
    n_right = m - n_left
    pos_left = np.cumsum(ys, axis=0)[:-1]
    pos_right = y.sum() - pos_left
    score = (n_left * gini(pos_left, n_left) + n_right * gini(pos_right, n_right)) / m
    score[xs[1:] <= xs[:-1]] = np.inf

    lowest = score.min()
    if not np.isfinite(lowest):
        return None
    column, row = np.argwhere((score <= lowest + _TIE).T)[0]
    threshold = 0.5 * (xs[row, column] + xs[row + 1, column])
    return int(features[column]), float(threshold), float(score[row, column])


def grow_tree(
    X: np.ndarray,
    y: np.ndarray,
    impurity_threshold: float,
    rng: np.random.Generator | None = None,
    max_features: int | None = None,
) -> DecisionTreeModel:
    """
    Greedy top-down induction. A node is split while its impurity exceeds
    `impurity_threshold` and some candidate feature separates its samples.
    With `rng` and `max_features`, each node draws its own feature subset.
    """
    width = X.shape[1]
    all_features = np.arange(width)
    feature: list[int] = []
    threshold: list[float] = []
    left: list[int] = []
    right: list[int] = []
    counts: list[tuple[float, float]] = []

    # (sample indices, parent node, is left child)
    stack: list[tuple[np.ndarray, int, bool]] = [(np.arange(X.shape[0]), -1, True)]
    while stack:
        idx, parent, is_left = stack.pop()
        i = len(feature)
        if parent >= 0:
            (left if is_left else right)[parent] = i

        pos = float(y[idx].sum())
        counts.append((idx.size - pos, pos))
        feature.append(LEAF)
        threshold.append(0.0)
        left.append(LEAF)
        right.append(LEAF)

        if gini(pos, idx.size) <= impurity_threshold:
            continue
        candidates = all_features
        if rng is not None and max_features is not None and max_features < width:
            candidates = np.sort(rng.choice(width, size=max_features, replace=False))
        split = best_split(X[idx], y[idx], candidates)
        if split is None:
            continue

        j, th, _ = split
        feature[i] = j
        threshold[i] = th
        goes_left = X[idx, j] <= th
        # right pushed first so the left subtree is numbered next
        stack.append((idx[~goes_left], i, False))
        stack.append((idx[goes_left], i, True))

    return DecisionTreeModel(
        np.array(feature), np.array(threshold), np.array(left), np.array(right), np.array(counts), width
    )


def eval_tree(m: DecisionTreeModel, v: t.Any) -> float:
    return m.eval(v)


def train_tree(X: t.Any, y: t.Any, cf: TrainConfig) -> DecisionTreeModel:
    X, y = check_dataset(X, y)
    tree = grow_tree(X, y, cf.impurity_threshold)
    logger.debug("trained decision tree", extra={"samples": X.shape[0], "nodes": len(tree), "depth": tree.depth})
    return tree
