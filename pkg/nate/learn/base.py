from __future__ import annotations

import abc
import logging
import typing as t

import numpy as np

from nate.lib.logging import TRACE
from nate.model.enum import ModelKind

from .adam import Adam
from .config import TrainConfig
from .errors import DimensionMismatch, EmptyDataset

logger = logging.getLogger(__name__)

Arrays = dict[str, np.ndarray]


def as_matrix(X: t.Any, width: int | None = None) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {X.shape}")
    if width is not None and X.shape[1] != width:
        raise DimensionMismatch(width, X.shape[1])
    return X


def check_dataset(X: t.Any, y: t.Any) -> tuple[np.ndarray, np.ndarray]:
    X = as_matrix(X)
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    if X.shape[0] == 0:
        raise EmptyDataset()
    if X.shape[0] != y.shape[0]:
        raise ValueError(f"{X.shape[0]} samples but {y.shape[0]} labels")
    return X, y


def sigmoid(z: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + np.tanh(0.5 * z))


def relu(z: np.ndarray) -> np.ndarray:
    return np.maximum(z, 0.0)


def cross_entropy(z: np.ndarray, y: np.ndarray) -> float:
    """mean binary cross-entropy of logits `z` against 0/1 labels"""
    if z.size == 0:
        return 0.0
    return float(np.mean(np.logaddexp(0.0, z) - y * z))


class Standardizer(object):
    """
    Affine rescaling of the columns that are not 0/1 indicators, using
    statistics of the training matrix.
    """

    def __init__(self, shift: np.ndarray, scale: np.ndarray):
        self.shift = np.asarray(shift, dtype=np.float64)
        self.scale = np.asarray(scale, dtype=np.float64)

    @classmethod
    def fit(cls, X: np.ndarray) -> Standardizer:
        width = X.shape[1]
        shift = np.zeros(width)
        scale = np.ones(width)
        binary = np.all((X == 0.0) | (X == 1.0), axis=0)
        for j in np.flatnonzero(~binary):
            shift[j] = X[:, j].mean()
            std = X[:, j].std()
            scale[j] = std if std > 0.0 else 1.0
        return cls(shift, scale)

    @classmethod
    def identity(cls, width: int) -> Standardizer:
        return cls(np.zeros(width), np.ones(width))

    def __call__(self, X: np.ndarray) -> np.ndarray:
        return (X - self.shift) / self.scale


class Classifier(abc.ABC):
    """
    A trained blame classifier. `predict` maps each row to a confidence in
    [0, 1] that the node should be blamed.
    """

    kind: ModelKind
    width: int
    # free-form provenance stored in model files (feature set, schema version)
    meta: dict[str, t.Any]

    @abc.abstractmethod
    def _predict(self, X: np.ndarray) -> np.ndarray: ...

    @abc.abstractmethod
    def arrays(self) -> Arrays:
        """parameters, for persistence"""
        ...

    @abc.abstractmethod
    def header(self) -> dict[str, t.Any]:
        """JSON-safe scalar parameters, for persistence"""
        ...

    @classmethod
    @abc.abstractmethod
    def from_parts(cls, kind: ModelKind, header: dict[str, t.Any], arrays: Arrays) -> t.Self: ...

    def predict(self, X: t.Any) -> np.ndarray:
        return self._predict(as_matrix(X, self.width))

    def eval(self, v: t.Any) -> float:
        v = np.asarray(v, dtype=np.float64)
        if v.ndim != 1:
            raise ValueError(f"expected a vector, got shape {v.shape}")
        return float(self.predict(v)[0])


class Objective(t.Protocol):
    def loss(self, X: np.ndarray, y: np.ndarray) -> float: ...

    def gradient(self, X: np.ndarray, y: np.ndarray) -> list[np.ndarray]: ...


def fit_minibatch(
    params: t.Sequence[np.ndarray],
    objective: Objective,
    X: np.ndarray,
    y: np.ndarray,
    cf: TrainConfig,
    rng: np.random.Generator,
    epochs: int | None = None,
) -> list[float]:
    """
    Mini-batch Adam over `params` (updated in place), reshuffling every
    epoch. Returns the full-training-set loss after each epoch.
    """
    opt = Adam(params, cf.learning_rate, cf.adam)
    n = X.shape[0]
    history: list[float] = []
    for epoch in range(epochs or cf.epochs):
        order = rng.permutation(n)
        for start in range(0, n, cf.batch_size):
            idx = order[start : start + cf.batch_size]
            opt.step(objective.gradient(X[idx], y[idx]))
        history.append(objective.loss(X, y))
        logger.log(TRACE, f"epoch {epoch + 1} loss {history[-1]:.6f}", extra={"epoch": epoch + 1, "loss": history[-1]})
    return history
