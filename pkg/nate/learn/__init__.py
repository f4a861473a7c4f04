__all__ = [
    "AdamConfig",
    "Classifier",
    "CorruptModel",
    "DecisionTreeModel",
    "DimensionMismatch",
    "EmptyDataset",
    "LearnError",
    "LogisticModel",
    "MlpModel",
    "ModelFileError",
    "PathStep",
    "RandomForestModel",
    "TrainConfig",
    "VersionMismatch",
    "eval_forest",
    "eval_logistic",
    "eval_mlp",
    "eval_tree",
    "gradient_logistic",
    "gradient_mlp",
    "load",
    "load_file",
    "save",
    "save_file",
    "train",
    "train_forest",
    "train_logistic",
    "train_mlp",
    "train_tree",
]

import typing as t

from nate.model.enum import ModelKind

from .base import Classifier
from .config import AdamConfig, TrainConfig
from .errors import CorruptModel, DimensionMismatch, EmptyDataset, LearnError, ModelFileError, VersionMismatch
from .forest import RandomForestModel, eval_forest, train_forest
from .logistic import LogisticModel, eval_logistic, gradient_logistic, train_logistic
from .mlp import MlpModel, eval_mlp, gradient_mlp, train_mlp
from .persist import load, load_file, save, save_file
from .tree import DecisionTreeModel, PathStep, eval_tree, train_tree


def train(kind: ModelKind, X: t.Any, y: t.Any, cf: TrainConfig, epochs: int | None = None) -> Classifier:
    """Train a classifier of `kind`; `epochs` overrides `cf.epochs` for the gradient-trained models."""
    match kind:
        case ModelKind.Linear:
            return train_logistic(X, y, cf, epochs=epochs)
        case ModelKind.Tree:
            return train_tree(X, y, cf)
        case ModelKind.Forest:
            return train_forest(X, y, cf)
        case ModelKind.Mlp10 | ModelKind.Mlp500:
            return train_mlp(X, y, cf, hidden_units=kind.hidden_units, epochs=epochs)
