from __future__ import annotations

import logging
import math
import typing as t

import numpy as np

from nate.lib.util import derive_seed
from nate.model.enum import ModelKind

from .base import Arrays, Classifier, check_dataset
from .config import TrainConfig
from .errors import CorruptModel
from .tree import DecisionTreeModel, grow_tree

logger = logging.getLogger(__name__)


class RandomForestModel(Classifier):
    """Bagged CART trees; confidence is the fraction of trees voting to blame."""

    kind = ModelKind.Forest

    def __init__(
        self,
        trees: t.Sequence[DecisionTreeModel],
        seeds: t.Sequence[int] = (),
        meta: dict[str, t.Any] | None = None,
    ):
        if not trees:
            raise ValueError("a forest needs at least one tree")
        self.trees = list(trees)
        self.seeds = list(seeds)
        self.width = self.trees[0].width
        self.meta = dict(meta or {})

    def __len__(self) -> int:
        return len(self.trees)

    def votes(self, X: np.ndarray) -> np.ndarray:
        """(trees, rows) matrix of 0/1 votes"""
        return np.stack([tree.predict(X) > 0.5 for tree in self.trees]).astype(np.float64)

    def _predict(self, X: np.ndarray) -> np.ndarray:
        return self.votes(X).mean(axis=0)

    def arrays(self) -> Arrays:
        out: Arrays = {}
        for i, tree in enumerate(self.trees):
            for name, a in tree.arrays().items():
                out[f"tree{i}.{name}"] = a
        return out

    def header(self) -> dict[str, t.Any]:
        return {"width": self.width, "trees": len(self.trees), "seeds": [str(s) for s in self.seeds]}

    @classmethod
    def from_parts(cls, kind: ModelKind, header: dict[str, t.Any], arrays: Arrays) -> RandomForestModel:
        trees: list[DecisionTreeModel] = []
        for i in range(header["trees"]):
            prefix = f"tree{i}."
            parts = {k.removeprefix(prefix): a for k, a in arrays.items() if k.startswith(prefix)}
            try:
                trees.append(DecisionTreeModel.from_parts(ModelKind.Tree, {"width": header["width"]}, parts))
            except KeyError as exc:
                raise CorruptModel(f"forest is missing array {prefix}{exc.args[0]}") from exc
        return cls(trees, [int(s) for s in header.get("seeds", [])])


def eval_forest(m: RandomForestModel, v: t.Any) -> float:
    return m.eval(v)


def train_forest(X: t.Any, y: t.Any, cf: TrainConfig) -> RandomForestModel:
    """
    `cf.n_estimators` trees, each grown on a bootstrap resample of the data
    with its own generator derived from `cf.seed` and the tree's index.
    """
    X, y = check_dataset(X, y)
    n, width = X.shape
    max_features = math.ceil(math.sqrt(width)) if cf.feature_subsampling else None

    trees: list[DecisionTreeModel] = []
    seeds: list[int] = []
    for i in range(cf.n_estimators):
        seed = derive_seed(cf.seed, "tree", i)
        g = np.random.default_rng(seed)
        sample = g.integers(0, n, size=n)
        trees.append(grow_tree(X[sample], y[sample], cf.impurity_threshold, g, max_features))
        seeds.append(seed)

    logger.debug(
        "trained random forest",
        extra={"samples": n, "trees": len(trees), "max_features": max_features, "nodes": sum(len(tr) for tr in trees)},
    )
    return RandomForestModel(trees, seeds)
