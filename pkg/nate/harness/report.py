from __future__ import annotations

import typing as t

import pydantic as p

from nate.lib import json
from nate.model.base import BaseModel


class ScoreRow(BaseModel):
    """Scores of one classifier or baseline over a set of test programs."""

    name: str
    baseline: bool = False
    top1: float
    top2: float
    top3: float
    recall: float
    evaluated: int
    # programs left out of recall because no changed node is in a slice
    recall_skipped: int = 0

    @p.model_validator(mode="after")
    def _monotone(self) -> t.Self:
        if not self.top1 <= self.top2 + 1e-12 or not self.top2 <= self.top3 + 1e-12:
            raise ValueError(f"top-k accuracies of {self.name} are not monotone")
        return self


class FoldReport(BaseModel):
    fold: int
    train_programs: int
    test_programs: int
    train_samples: int
    # share of training samples labeled as blamed
    positive_fraction: float
    epochs: int
    rows: tuple[ScoreRow, ...]


class EvalReport(BaseModel):
    features: str
    slice_filter: bool
    threshold: str
    seed: str
    # pairs read, and pairs discarded as rewrites by the outlier filter
    programs: int
    discarded: int
    # pairs that could not be sliced, labeled or extracted
    skipped: int
    evaluated: int
    rows: tuple[ScoreRow, ...]
    folds: tuple[FoldReport, ...] = ()

    def row(self, name: str) -> ScoreRow:
        for r in self.rows:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.model_dump(mode="json"), indent=indent, sort_keys=True)

    def render_table(self) -> str:
        headers = ("model", "top-1", "top-2", "top-3", "recall", "evaluated")
        body = [
            (
                f"{r.name}{' *' if r.baseline else ''}",
                f"{r.top1:.3f}",
                f"{r.top2:.3f}",
                f"{r.top3:.3f}",
                f"{r.recall:.3f}",
                str(r.evaluated),
            )
            for r in self.rows
        ]
        widths = [max(len(row[i]) for row in (headers, *body)) for i in range(len(headers))]

        def line(cells: t.Sequence[str]) -> str:
            first = cells[0].ljust(widths[0])
            rest = (c.rjust(w) for c, w in zip(cells[1:], widths[1:]))
            return "  ".join((first, *rest))

        out = [line(headers), line(["-" * w for w in widths]), *(line(row) for row in body)]
        out.append("")
        out.append(
            f"features={self.features} slice-filter={'on' if self.slice_filter else 'off'} "
            f"threshold={self.threshold} seed={self.seed}"
        )
        out.append(
            f"programs={self.programs} discarded={self.discarded} skipped={self.skipped} "
            f"evaluated={self.evaluated} folds={len(self.folds) or 1}"
        )
        if any(r.baseline for r in self.rows):
            out.append("* baseline")
        return "\n".join(out)
