"""One-hidden-layer perceptron: input -> ReLU hidden layer -> sigmoid output."""

from __future__ import annotations

import logging
import typing as t

import numpy as np

from nate.lib.util import rng
from nate.model.enum import ModelKind

from .base import Arrays, Classifier, Standardizer, check_dataset, cross_entropy, fit_minibatch, relu, sigmoid
from .config import TrainConfig

logger = logging.getLogger(__name__)


class MlpModel(Classifier):
    def __init__(
        self,
        W1: np.ndarray,
        b1: np.ndarray,
        W2: np.ndarray,
        b2: float = 0.0,
        scaler: Standardizer | None = None,
        meta: dict[str, t.Any] | None = None,
        history: t.Sequence[float] = (),
    ):
        self.W1 = np.asarray(W1, dtype=np.float64)
        self.b1 = np.asarray(b1, dtype=np.float64)
        self.W2 = np.asarray(W2, dtype=np.float64)
        self.b2 = float(b2)
        self.width, self.hidden_units = self.W1.shape
        self.scaler = scaler or Standardizer.identity(self.width)
        self.meta = dict(meta or {})
        self.history = list(history)

    @property
    def kind(self) -> ModelKind:  # type: ignore[override]
        return ModelKind.Mlp500 if self.hidden_units == ModelKind.Mlp500.hidden_units else ModelKind.Mlp10

    def logits(self, X: np.ndarray) -> np.ndarray:
        return relu(self.scaler(X) @ self.W1 + self.b1) @ self.W2 + self.b2

    def _predict(self, X: np.ndarray) -> np.ndarray:
        return sigmoid(self.logits(X))

    def arrays(self) -> Arrays:
        return {
            "W1": self.W1,
            "b1": self.b1,
            "W2": self.W2,
            "shift": self.scaler.shift,
            "scale": self.scaler.scale,
        }

    def header(self) -> dict[str, t.Any]:
        return {"b2": self.b2, "history": self.history}

    @classmethod
    def from_parts(cls, kind: ModelKind, header: dict[str, t.Any], arrays: Arrays) -> MlpModel:
        return cls(
            arrays["W1"],
            arrays["b1"],
            arrays["W2"],
            header["b2"],
            Standardizer(arrays["shift"], arrays["scale"]),
            history=header.get("history", ()),
        )


class MlpObjective(object):
    """Mean cross-entropy plus (l2/2)·(‖W1‖² + ‖W2‖²); biases are not regularized."""

    def __init__(self, W1: np.ndarray, b1: np.ndarray, W2: np.ndarray, b2: np.ndarray, l2: float):
        self.W1, self.b1, self.W2, self.b2 = W1, b1, W2, b2
        self.l2 = l2

    def penalty(self) -> float:
        return 0.5 * self.l2 * float(np.sum(self.W1 * self.W1) + self.W2 @ self.W2)

    def loss(self, X: np.ndarray, y: np.ndarray) -> float:
        z = relu(X @ self.W1 + self.b1) @ self.W2 + self.b2[0]
        return cross_entropy(z, y) + self.penalty()

    def gradient(self, X: np.ndarray, y: np.ndarray) -> list[np.ndarray]:
        n = X.shape[0]
        if not n:
            return [self.l2 * self.W1, np.zeros_like(self.b1), self.l2 * self.W2, np.zeros(1)]
        z1 = X @ self.W1 + self.b1
        a1 = relu(z1)
        p = sigmoid(a1 @ self.W2 + self.b2[0])

        dz2 = (p - y) / n
        dW2 = a1.T @ dz2 + self.l2 * self.W2
        db2 = np.array([dz2.sum()])
        dz1 = np.outer(dz2, self.W2) * (z1 > 0.0)
        dW1 = X.T @ dz1 + self.l2 * self.W1
        db1 = dz1.sum(axis=0)
        return [dW1, db1, dW2, db2]


def _objective(m: MlpModel, l2: float) -> MlpObjective:
    return MlpObjective(m.W1.copy(), m.b1.copy(), m.W2.copy(), np.array([m.b2]), l2)


def _batch(m: MlpModel, X: t.Any, y: t.Any) -> tuple[np.ndarray, np.ndarray]:
    X = np.asarray(X, dtype=np.float64).reshape(-1, m.width)
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    return m.scaler(X), y


def flatten(m: MlpModel) -> np.ndarray:
    """parameters in the order `gradient_mlp` reports them"""
    return np.concatenate([m.W1.ravel(), m.b1, m.W2, [m.b2]])


def unflatten(m: MlpModel, theta: np.ndarray) -> MlpModel:
    d, h = m.W1.shape
    W1 = theta[: d * h].reshape(d, h)
    b1 = theta[d * h : d * h + h]
    W2 = theta[d * h + h : d * h + 2 * h]
    return MlpModel(W1, b1, W2, float(theta[-1]), m.scaler)


def eval_mlp(m: MlpModel, v: t.Any) -> float:
    return m.eval(v)


def gradient_mlp(m: MlpModel, X: t.Any, y: t.Any, l2: float) -> np.ndarray:
    """backpropagated gradient of the regularized loss, flattened like `flatten`"""
    Xs, y = _batch(m, X, y)
    dW1, db1, dW2, db2 = _objective(m, l2).gradient(Xs, y)
    return np.concatenate([dW1.ravel(), db1, dW2, db2])


def loss_mlp(m: MlpModel, X: t.Any, y: t.Any, l2: float) -> float:
    Xs, y = _batch(m, X, y)
    return _objective(m, l2).loss(Xs, y)


def init_mlp(width: int, hidden_units: int, g: np.random.Generator) -> MlpModel:
    """He initialization for the ReLU layer, Glorot for the output unit"""
    W1 = g.normal(0.0, np.sqrt(2.0 / width), size=(width, hidden_units))
    W2 = g.normal(0.0, np.sqrt(1.0 / hidden_units), size=hidden_units)
    return MlpModel(W1, np.zeros(hidden_units), W2, 0.0)


def train_mlp(
    X: t.Any, y: t.Any, cf: TrainConfig, hidden_units: int | None = None, epochs: int | None = None
) -> MlpModel:
    X, y = check_dataset(X, y)
    hidden_units = hidden_units or cf.hidden_units
    g = rng(cf.seed, "mlp", hidden_units)
    init = init_mlp(X.shape[1], hidden_units, g)

    scaler = Standardizer.fit(X)
    W1, b1, W2, b2 = init.W1, init.b1, init.W2, np.zeros(1)
    objective = MlpObjective(W1, b1, W2, b2, cf.l2)
    history = fit_minibatch([W1, b1, W2, b2], objective, scaler(X), y, cf, g, epochs=epochs)
    logger.debug(
        "trained multilayer perceptron",
        extra={"samples": X.shape[0], "hidden_units": hidden_units, "loss": history[-1] if history else None},
    )
    return MlpModel(W1, b1, W2, float(b2[0]), scaler, history=history)
