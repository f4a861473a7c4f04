from __future__ import annotations

import typing as t

import numpy as np

from .config import AdamConfig


class Adam(object):
    """In-place Adam updates for a fixed list of parameter arrays."""

    def __init__(self, params: t.Sequence[np.ndarray], learning_rate: float, cf: AdamConfig):
        self.params = list(params)
        self.learning_rate = learning_rate
        self.beta1 = cf.beta1
        self.beta2 = cf.beta2
        self.eps = cf.eps
        self.m = [np.zeros_like(w) for w in self.params]
        self.v = [np.zeros_like(w) for w in self.params]
        self.steps = 0

    def step(self, grads: t.Sequence[np.ndarray]) -> None:
        self.steps += 1
        c1 = 1.0 - self.beta1**self.steps
        c2 = 1.0 - self.beta2**self.steps
        for w, g, m, v in zip(self.params, grads, self.m, self.v, strict=True):
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * (g * g)
            w -= self.learning_rate * (m / c1) / (np.sqrt(v / c2) + self.eps)
