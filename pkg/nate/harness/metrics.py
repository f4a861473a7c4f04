"""Localization metrics over per-program blame reports."""

from __future__ import annotations

import enum
import typing as t

from nate.lang.ast import Program
from nate.model.base import BaseModel
from nate.slicer import ErrorSlice, slice_union

from .blame import BlameReport


class Scoring(enum.Enum):
    # a prediction is correct when it is one of the changed nodes
    Exact = "exact"
    # a prediction is correct when its source span overlaps a changed node's
    SpanOverlap = "span-overlap"


def _correct(node: int, changed: t.AbstractSet[int], program: Program | None, scoring: Scoring) -> bool:
    if scoring is Scoring.Exact:
        return node in changed
    if program is None:
        raise ValueError("span-overlap scoring needs the programs")
    span = program.node(node).span
    return any(span.overlaps(program.node(c).span) for c in changed)


def hit_rank(
    report: BlameReport,
    changed: t.AbstractSet[int],
    program: Program | None = None,
    scoring: Scoring = Scoring.Exact,
) -> int | None:
    """1-based rank of the first correct prediction, None when there is none"""
    for i, node in enumerate(report.nodes, start=1):
        if _correct(node, changed, program, scoring):
            return i
    return None


def top_k_accuracy(
    reports: t.Sequence[BlameReport],
    labels: t.Sequence[t.AbstractSet[int]],
    k: int,
    programs: t.Sequence[Program] | None = None,
    scoring: Scoring = Scoring.Exact,
) -> float:
    """fraction of programs with a correct prediction among their top `k`"""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if len(reports) != len(labels):
        raise ValueError(f"{len(reports)} reports but {len(labels)} label sets")
    if not reports:
        return 0.0
    hits = 0
    for i, (report, changed) in enumerate(zip(reports, labels)):
        r = hit_rank(report, changed, programs[i] if programs else None, scoring)
        if r is not None and r <= k:
            hits += 1
    return hits / len(reports)


class RecallStats(BaseModel):
    hits: int = 0
    oracle: int = 0
    # programs whose oracle is empty once restricted to the slices
    skipped: int = 0

    @property
    def value(self) -> float:
        return self.hits / self.oracle if self.oracle else 0.0


def recall_stats(
    reports: t.Sequence[BlameReport],
    labels: t.Sequence[t.AbstractSet[int]],
    slices: t.Sequence[t.Sequence[ErrorSlice]],
    k: int = 3,
) -> RecallStats:
    hits = oracle_total = skipped = 0
    for report, changed, program_slices in zip(reports, labels, slices, strict=True):
        oracle = set(changed) & slice_union(program_slices)
        if not oracle:
            skipped += 1
            continue
        hits += len(oracle & set(report.top(k)))
        oracle_total += len(oracle)
    return RecallStats(hits=hits, oracle=oracle_total, skipped=skipped)


def recall(
    reports: t.Sequence[BlameReport],
    labels: t.Sequence[t.AbstractSet[int]],
    slices: t.Sequence[t.Sequence[ErrorSlice]],
) -> float:
    """
    |top-3 predictions ∩ oracle| / |oracle|, summed over programs, where the
    oracle is the changed nodes that lie in some error slice.
    """
    return recall_stats(reports, labels, slices).value
