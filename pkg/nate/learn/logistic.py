"""L2-regularized logistic regression trained with mini-batch Adam."""

from __future__ import annotations

import logging
import typing as t

import numpy as np

from nate.lib.util import rng
from nate.model.enum import ModelKind

from .base import Arrays, Classifier, Standardizer, check_dataset, cross_entropy, fit_minibatch, sigmoid
from .config import TrainConfig

logger = logging.getLogger(__name__)


class LogisticModel(Classifier):
    kind = ModelKind.Linear

    def __init__(
        self,
        weights: np.ndarray,
        bias: float = 0.0,
        scaler: Standardizer | None = None,
        meta: dict[str, t.Any] | None = None,
        history: t.Sequence[float] = (),
    ):
        self.weights = np.asarray(weights, dtype=np.float64)
        self.bias = float(bias)
        self.width = self.weights.shape[0]
        self.scaler = scaler or Standardizer.identity(self.width)
        self.meta = dict(meta or {})
        self.history = list(history)

    def decision(self, X: np.ndarray) -> np.ndarray:
        return self.scaler(X) @ self.weights + self.bias

    def _predict(self, X: np.ndarray) -> np.ndarray:
        return sigmoid(self.decision(X))

    def arrays(self) -> Arrays:
        return {"weights": self.weights, "shift": self.scaler.shift, "scale": self.scaler.scale}

    def header(self) -> dict[str, t.Any]:
        return {"bias": self.bias, "history": self.history}

    @classmethod
    def from_parts(cls, kind: ModelKind, header: dict[str, t.Any], arrays: Arrays) -> LogisticModel:
        return cls(
            arrays["weights"],
            header["bias"],
            Standardizer(arrays["shift"], arrays["scale"]),
            history=header.get("history", ()),
        )


class LogisticObjective(object):
    """
    Mean cross-entropy plus (l2/2)·‖W‖² over standardized inputs; the bias
    is not regularized. Parameters are held by reference so Adam's in-place
    updates are visible.
    """

    def __init__(self, weights: np.ndarray, bias: np.ndarray, l2: float):
        self.weights = weights
        self.bias = bias
        self.l2 = l2

    def loss(self, X: np.ndarray, y: np.ndarray) -> float:
        z = X @ self.weights + self.bias[0]
        return cross_entropy(z, y) + 0.5 * self.l2 * float(self.weights @ self.weights)

    def gradient(self, X: np.ndarray, y: np.ndarray) -> list[np.ndarray]:
        gw = self.l2 * self.weights
        gb = np.zeros(1)
        if X.shape[0]:
            residual = (sigmoid(X @ self.weights + self.bias[0]) - y) / X.shape[0]
            gw = gw + X.T @ residual
            gb[0] = residual.sum()
        return [gw, gb]


def eval_logistic(m: LogisticModel, v: t.Any) -> float:
    """Pr(blame | v) = 1 / (1 + exp(-(W·v + b)))"""
    return m.eval(v)


def gradient_logistic(m: LogisticModel, X: t.Any, y: t.Any, l2: float) -> np.ndarray:
    """
    Analytic gradient of the regularized loss at `m`'s parameters, as one
    vector `[dW..., db]`. Inputs are standardized with `m`'s scaler first.
    """
    X = np.asarray(X, dtype=np.float64).reshape(-1, m.width)
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    objective = LogisticObjective(m.weights.copy(), np.array([m.bias]), l2)
    gw, gb = objective.gradient(m.scaler(X), y)
    return np.concatenate([gw, gb])


def loss_logistic(m: LogisticModel, X: t.Any, y: t.Any, l2: float) -> float:
    X = np.asarray(X, dtype=np.float64).reshape(-1, m.width)
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    return LogisticObjective(m.weights.copy(), np.array([m.bias]), l2).loss(m.scaler(X), y)


def train_logistic(X: t.Any, y: t.Any, cf: TrainConfig, epochs: int | None = None) -> LogisticModel:
    X, y = check_dataset(X, y)
    scaler = Standardizer.fit(X)
    Xs = scaler(X)
    weights = np.zeros(X.shape[1])
    bias = np.zeros(1)
    objective = LogisticObjective(weights, bias, cf.l2)
    history = fit_minibatch([weights, bias], objective, Xs, y, cf, rng(cf.seed, "linear"), epochs=epochs)
    logger.debug(
        "trained logistic model",
        extra={"samples": X.shape[0], "width": X.shape[1], "loss": history[-1] if history else None},
    )
    return LogisticModel(weights, float(bias[0]), scaler, history=history)
