from __future__ import annotations

import concurrent.futures
import logging
import typing as t

from nate.labeler import ProgramPair
from nate.lib.util import rng

from .errors import TooFewPrograms
from .pipeline import PipelineConfig, Prepared, build_report, evaluate_split, prepare
from .report import EvalReport, FoldReport

logger = logging.getLogger(__name__)


def assign_folds(n: int, folds: int, seed: int) -> list[int]:
    """fold of each of `n` programs; fold sizes differ by at most one"""
    order = rng(seed, "folds").permutation(n)
    assignment = [0] * n
    for position, i in enumerate(order):
        assignment[int(i)] = position % folds
    return assignment


def cross_validate(
    corpus: t.Sequence[ProgramPair], cf: PipelineConfig, folds: int | None = None
) -> EvalReport:
    """
    k-fold cross-validation: every usable program is tested exactly once,
    by models trained on the other folds. Folds run on `cf.workers` threads;
    each fold's randomness derives from the seed and the fold number alone.
    """
    folds = folds or cf.folds
    if folds < 2:
        raise ValueError(f"cross-validation needs at least two folds, got {folds}")
    if len(corpus) < folds:
        raise TooFewPrograms(folds, len(corpus))
    prepared = prepare(corpus, cf)
    n = len(prepared.programs)
    if n < folds:
        raise TooFewPrograms(folds, n)

    assignment = assign_folds(n, folds, cf.seed)
    splits: list[tuple[list[Prepared], list[Prepared]]] = []
    for fold in range(folds):
        train_set = [pr for pr, f in zip(prepared.programs, assignment) if f != fold]
        test_set = [pr for pr, f in zip(prepared.programs, assignment) if f == fold]
        splits.append((train_set, test_set))

    def run(fold: int) -> FoldReport:
        train_set, test_set = splits[fold]
        return evaluate_split(train_set, test_set, cf, fold)

    if cf.workers > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=cf.workers) as pool:
            reports = list(pool.map(run, range(folds)))
    else:
        reports = [run(fold) for fold in range(folds)]

    evaluated = sum(r.test_programs for r in reports)
    logger.info(
        f"cross-validated {folds} folds",
        extra={"folds": folds, "evaluated": evaluated, "skipped": prepared.skipped},
    )
    return build_report(cf, prepared, reports, evaluated)
