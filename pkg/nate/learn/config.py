"""Hyperparameters shared by every classifier."""

from __future__ import annotations

import pydantic as p

from nate.model.base import BaseModel


class AdamConfig(BaseModel):
    beta1: float = p.Field(default=0.9, ge=0.0, lt=1.0)
    beta2: float = p.Field(default=0.999, ge=0.0, lt=1.0)
    eps: float = p.Field(default=1e-8, gt=0.0)


class TrainConfig(BaseModel):
    learning_rate: float = p.Field(default=0.001, gt=0.0)
    l2: float = p.Field(default=0.001, ge=0.0)
    batch_size: int = p.Field(default=200, ge=1)
    epochs: int = p.Field(default=20, ge=1)
    seed: int = p.Field(default=42, ge=0, lt=2**64)
    adam: AdamConfig = AdamConfig()

    # trees
    impurity_threshold: float = p.Field(default=1e-7, ge=0.0)
    n_estimators: int = p.Field(default=30, ge=1)
    feature_subsampling: bool = True

    # mlp
    hidden_units: int = p.Field(default=10, ge=1)
