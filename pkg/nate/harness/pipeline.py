"""
End-to-end evaluation: filter outliers, slice, label, extract, train and
score every configured classifier and baseline on held-out programs.
"""

from __future__ import annotations

import dataclasses
import logging
import math
import typing as t

import numpy as np
import pydantic as p

from nate.errors import NateError
from nate.features import SCHEMA_VERSION, FeatureSet, Sample, TypeAbstraction, extract, to_matrix
from nate.labeler import BlameLabels, ProgramPair, ThresholdPolicy, filter_outliers, tree_diff
from nate.learn import Classifier, TrainConfig, train
from nate.lib.util import derive_seed, rng
from nate.model.base import BaseModel
from nate.model.enum import BaselineKind, ModelKind
from nate.slicer import ErrorSlice, minimal_slices

from .baseline import run_baseline
from .blame import BlameReport, rank
from .errors import TooFewPrograms
from .metrics import Scoring, recall_stats, top_k_accuracy
from .report import EvalReport, FoldReport, ScoreRow

logger = logging.getLogger(__name__)


class PipelineConfig(BaseModel):
    models: tuple[ModelKind, ...] = (ModelKind.Tree,)
    baselines: tuple[BaselineKind, ...] = (BaselineKind.Random, BaselineKind.FirstError)
    features: FeatureSet = p.Field(default_factory=FeatureSet)
    filter_slice: bool = True
    threshold: ThresholdPolicy = p.Field(default_factory=ThresholdPolicy)
    abstraction: TypeAbstraction = TypeAbstraction.Head
    k: int = p.Field(default=3, ge=1, le=3)
    folds: int = p.Field(default=10, ge=2)
    # held-out share when no test corpus or folds are used
    test_fraction: float = p.Field(default=0.2, gt=0.0, lt=1.0)
    seed: int = p.Field(default=42, ge=0, lt=2**64)
    balance_samples: bool = False
    scoring: Scoring = Scoring.Exact
    slice_budget: float | None = 1.0
    workers: int = p.Field(default=1, ge=1)
    train: TrainConfig = p.Field(default_factory=TrainConfig)


@dataclasses.dataclass(frozen=True, slots=True)
class Prepared:
    """One usable pair with everything derived from its ill-typed side."""

    index: int
    pair: ProgramPair
    slices: tuple[ErrorSlice, ...]
    labels: BlameLabels
    samples: tuple[Sample, ...]
    # sample count the program would contribute without slice filtering
    unfiltered: int


@dataclasses.dataclass(frozen=True, slots=True)
class PreparedCorpus:
    programs: list[Prepared]
    read: int
    discarded: int
    skipped: int


def prepare_pair(pair: ProgramPair, index: int, cf: PipelineConfig) -> Prepared:
    pair.check()
    slices = tuple(minimal_slices(pair.bad, cf.slice_budget))
    labels = tree_diff(pair)
    samples = tuple(extract(pair, slices, labels, cf.filter_slice, cf.abstraction, program=index))
    return Prepared(index, pair, slices, labels, samples, len(pair.bad))


def prepare(corpus: t.Sequence[ProgramPair], cf: PipelineConfig) -> PreparedCorpus:
    kept, discarded = filter_outliers(corpus, cf.threshold)
    programs: list[Prepared] = []
    skipped = 0
    for index, pair in enumerate(kept):
        try:
            programs.append(prepare_pair(pair, index, cf))
        except NateError as exc:
            skipped += 1
            logger.warning(f"skipping pair: {exc}", extra={"meta": pair.meta, "error": type(exc).__name__})
    logger.info(
        f"prepared {len(programs)} programs",
        extra={
            "read": len(corpus),
            "discarded": len(discarded),
            "skipped": skipped,
            "samples": sum(len(pr.samples) for pr in programs),
            "positives": sum(sum(s.label for s in pr.samples) for pr in programs),
        },
    )
    return PreparedCorpus(programs, len(corpus), len(discarded), skipped)


def training_matrix(programs: t.Sequence[Prepared], feature_set: FeatureSet) -> tuple[np.ndarray, np.ndarray]:
    return to_matrix([s for pr in programs for s in pr.samples], feature_set)


def balanced_epochs(programs: t.Sequence[Prepared], cf: PipelineConfig) -> int:
    """
    Epochs scaled so a slice-filtered run sees about as many samples as an
    unfiltered one.
    """
    if not (cf.balance_samples and cf.filter_slice):
        return cf.train.epochs
    filtered = sum(len(pr.samples) for pr in programs)
    unfiltered = sum(pr.unfiltered for pr in programs)
    if not filtered:
        return cf.train.epochs
    return max(1, round(cf.train.epochs * unfiltered / filtered))


def train_models(
    programs: t.Sequence[Prepared], cf: PipelineConfig, train_cf: TrainConfig, epochs: int
) -> dict[ModelKind, Classifier]:
    X, y = training_matrix(programs, cf.features)
    if not X.shape[0]:
        raise TooFewPrograms(1, 0, "training samples")
    models: dict[ModelKind, Classifier] = {}
    for kind in cf.models:
        model = train(kind, X, y, train_cf, epochs=epochs)
        model.meta = {
            "features": str(cf.features),
            "abstraction": cf.abstraction.value,
            "schema_version": SCHEMA_VERSION,
        }
        models[kind] = model
        logger.info(f"trained {kind.value}", extra={"samples": X.shape[0], "width": X.shape[1], "epochs": epochs})
    return models


def model_report(model: Classifier, pr: Prepared, cf: PipelineConfig) -> BlameReport:
    X, _ = to_matrix(pr.samples, cf.features)
    confidences = model.predict(X).tolist() if X.shape[0] else []
    return rank(pr.pair.bad, [s.node for s in pr.samples], confidences, cf.k)


def score(
    name: str,
    reports: t.Sequence[BlameReport],
    test: t.Sequence[Prepared],
    cf: PipelineConfig,
    baseline: bool = False,
) -> ScoreRow:
    labels = [pr.labels.changed for pr in test]
    programs = [pr.pair.bad for pr in test]
    top = [top_k_accuracy(reports, labels, k, programs, cf.scoring) for k in (1, 2, 3)]
    rs = recall_stats(reports, labels, [pr.slices for pr in test], cf.k)
    return ScoreRow(
        name=name,
        baseline=baseline,
        top1=top[0],
        top2=top[1],
        top3=top[2],
        recall=rs.value,
        evaluated=len(test),
        recall_skipped=rs.skipped,
    )


def evaluate_split(
    train_set: t.Sequence[Prepared], test_set: t.Sequence[Prepared], cf: PipelineConfig, fold: int = 0
) -> FoldReport:
    if not train_set or not test_set:
        raise TooFewPrograms(2, len(train_set) + len(test_set))
    train_cf = cf.train.model_copy(update={"seed": derive_seed(cf.seed, "fold", fold)})
    epochs = balanced_epochs(train_set, cf)
    models = train_models(train_set, cf, train_cf, epochs) if cf.models else {}

    rows: list[ScoreRow] = []
    for kind, model in models.items():
        rows.append(score(kind.value, [model_report(model, pr, cf) for pr in test_set], test_set, cf))
    for kind in cf.baselines:
        reports = [
            run_baseline(kind, pr.pair.bad, rng(cf.seed, "baseline", fold, pr.index), cf.k, pr.slices)
            for pr in test_set
        ]
        rows.append(score(kind.value, reports, test_set, cf, baseline=True))

    _, y = training_matrix(train_set, cf.features)
    report = FoldReport(
        fold=fold,
        train_programs=len(train_set),
        test_programs=len(test_set),
        train_samples=int(y.shape[0]),
        positive_fraction=float(y.mean()) if y.shape[0] else 0.0,
        epochs=epochs,
        rows=tuple(rows),
    )
    logger.info(
        f"evaluated fold {fold}",
        extra={"fold": fold, "test_programs": len(test_set), **{r.name: round(r.top1, 4) for r in rows}},
    )
    return report


def mean_rows(folds: t.Sequence[FoldReport]) -> tuple[ScoreRow, ...]:
    """unweighted mean over folds; counts are summed"""
    rows: list[ScoreRow] = []
    for i, first in enumerate(folds[0].rows):
        column = [f.rows[i] for f in folds]
        rows.append(
            ScoreRow(
                name=first.name,
                baseline=first.baseline,
                top1=float(np.mean([r.top1 for r in column])),
                top2=float(np.mean([r.top2 for r in column])),
                top3=float(np.mean([r.top3 for r in column])),
                recall=float(np.mean([r.recall for r in column])),
                evaluated=sum(r.evaluated for r in column),
                recall_skipped=sum(r.recall_skipped for r in column),
            )
        )
    return tuple(rows)


def build_report(
    cf: PipelineConfig, corpus: PreparedCorpus, folds: t.Sequence[FoldReport], evaluated: int
) -> EvalReport:
    return EvalReport(
        features=str(cf.features),
        slice_filter=cf.filter_slice,
        threshold=str(cf.threshold),
        seed=str(cf.seed),
        programs=corpus.read,
        discarded=corpus.discarded,
        skipped=corpus.skipped,
        evaluated=evaluated,
        rows=mean_rows(folds),
        folds=tuple(folds) if len(folds) > 1 else (),
    )


def run_pipeline(
    corpus: t.Sequence[ProgramPair], cf: PipelineConfig, test_corpus: t.Sequence[ProgramPair] | None = None
) -> EvalReport:
    """
    Train on `corpus` and evaluate on `test_corpus`, or on a seeded held-out
    share of `corpus` when no test corpus is given.
    """
    if not corpus:
        raise TooFewPrograms(2, 0)
    prepared = prepare(corpus, cf)
    if test_corpus is not None:
        held_out = prepare(test_corpus, cf)
        fold = evaluate_split(prepared.programs, held_out.programs, cf)
        return build_report(cf, held_out, [fold], fold.test_programs)

    n = len(prepared.programs)
    if n < 2:
        raise TooFewPrograms(2, n)
    order = rng(cf.seed, "split").permutation(n)
    n_test = min(n - 1, max(1, math.ceil(cf.test_fraction * n)))
    test_set = [prepared.programs[i] for i in sorted(order[:n_test])]
    train_set = [prepared.programs[i] for i in sorted(order[n_test:])]
    fold = evaluate_split(train_set, test_set, cf)
    return build_report(cf, prepared, [fold], fold.test_programs)
