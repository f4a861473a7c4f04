"""Ranking a program's nodes by a classifier's confidence that they are to blame."""

from __future__ import annotations

import typing as t

import numpy as np
import pydantic as p

from nate.features import FeatureSet, Sample, TypeAbstraction, extract_program, to_matrix
from nate.lang.ast import Program
from nate.learn import Classifier
from nate.model.base import BaseModel
from nate.slicer import ErrorSlice, minimal_slices

from .errors import AbstractionMismatch

DEFAULT_K: t.Final[int] = 3


class BlameEntry(BaseModel):
    node: int
    start: int
    end: int
    confidence: float


class BlameReport(BaseModel):
    entries: tuple[BlameEntry, ...] = ()
    k: int = p.Field(default=DEFAULT_K, ge=1)

    @property
    def nodes(self) -> list[int]:
        return [e.node for e in self.entries]

    def top(self, k: int) -> list[int]:
        return self.nodes[:k]

    def __len__(self) -> int:
        return len(self.entries)


def rank(
    program: Program, node_ids: t.Sequence[int], confidences: t.Sequence[float], k: int = DEFAULT_K
) -> BlameReport:
    """descending confidence, ties broken by the lower pre-order id; truncated to `k`"""
    order = sorted(range(len(node_ids)), key=lambda i: (-confidences[i], node_ids[i]))[:k]
    entries: list[BlameEntry] = []
    for i in order:
        span = program.node(node_ids[i]).span
        entries.append(BlameEntry(node=node_ids[i], start=span.start, end=span.end, confidence=float(confidences[i])))
    return BlameReport(entries=tuple(entries), k=k)


def score_samples(model: Classifier, samples: t.Sequence[Sample], feature_set: FeatureSet) -> np.ndarray:
    X, _ = to_matrix(samples, feature_set)
    if not X.shape[0]:
        return np.zeros(0)
    return model.predict(X)


def model_abstraction(model: Classifier, requested: TypeAbstraction | None = None) -> TypeAbstraction:
    """
    The type abstraction recorded in the model. Models saved before it was
    recorded were trained with head blocks. Raises `AbstractionMismatch` when
    `requested` disagrees.
    """
    trained = TypeAbstraction(model.meta.get("abstraction", TypeAbstraction.Head.value))
    if requested is not None and requested is not trained:
        raise AbstractionMismatch(trained.value, requested.value)
    return trained


def blame(
    model: Classifier,
    program: Program,
    k: int = DEFAULT_K,
    feature_set: FeatureSet | None = None,
    filter_slice: bool = True,
    slices: t.Sequence[ErrorSlice] | None = None,
    abstraction: TypeAbstraction | None = None,
    budget: float | None = 1.0,
) -> BlameReport:
    """
    The `k` nodes of an ill-typed `program` the model is most confident
    about. Raises `NotIllTyped` for a well-typed program. `feature_set` and
    `abstraction` default to the ones recorded in the model.
    """
    abstraction = model_abstraction(model, abstraction)
    if slices is None:
        slices = minimal_slices(program, budget)
    if feature_set is None:
        feature_set = FeatureSet.parse(model.meta.get("features", "all"))
    samples = extract_program(program, slices, filter_slice=filter_slice, abstraction=abstraction)
    confidences = score_samples(model, samples, feature_set)
    return rank(program, [s.node for s in samples], confidences.tolist(), k)
