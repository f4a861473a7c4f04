from __future__ import annotations

import pydantic as p

from nate.features import FeatureSet, TypeAbstraction
from nate.harness import PipelineConfig, Scoring
from nate.labeler import ThresholdPolicy
from nate.learn import TrainConfig
from nate.model import BaselineKind, ModelKind

from .base import BaseSettings
from .slicer import SlicerSettings


class HarnessSettings(BaseSettings):
    """Evaluation defaults; CLI flags take precedence over these."""

    k: int = p.Field(default=3, ge=1, le=3)
    folds: int = p.Field(default=10, ge=2)
    threshold: str = "fixed:0.4"
    features: str = "all"
    slice_filter: bool = True
    abstraction: TypeAbstraction = TypeAbstraction.Head
    workers: int = p.Field(default=1, ge=1)
    span_overlap: bool = False
    balance_samples: bool = False
    test_fraction: float = p.Field(default=0.2, gt=0.0, lt=1.0)
    models: tuple[ModelKind, ...] = tuple(ModelKind)
    baselines: tuple[BaselineKind, ...] = tuple(BaselineKind)

    @p.field_validator("threshold")
    @classmethod
    def validate_threshold(cls, v: str) -> str:
        ThresholdPolicy.parse(v)
        return v

    @p.field_validator("features")
    @classmethod
    def validate_features(cls, v: str) -> str:
        FeatureSet.parse(v)
        return v

    def pipeline(self, train: TrainConfig, slicer: SlicerSettings) -> PipelineConfig:
        return PipelineConfig(
            models=self.models,
            baselines=self.baselines,
            features=FeatureSet.parse(self.features),
            filter_slice=self.slice_filter,
            threshold=ThresholdPolicy.parse(self.threshold),
            abstraction=self.abstraction,
            k=self.k,
            folds=self.folds,
            test_fraction=self.test_fraction,
            seed=train.seed,
            balance_samples=self.balance_samples,
            scoring=Scoring.SpanOverlap if self.span_overlap else Scoring.Exact,
            slice_budget=slicer.budget,
            workers=self.workers,
            train=train,
        )
