from __future__ import annotations

import enum
import logging
import typing as t

import numpy as np
import pydantic as p

from nate.model.base import BaseModel

from .diff import ProgramPair, tree_diff
from .errors import EmptyCorpus

logger = logging.getLogger(__name__)


class PolicyKind(enum.Enum):
    Fixed = "fixed"
    Sigma = "sigma"


class ThresholdPolicy(BaseModel):
    """
    How large a fix may be before the pair is treated as a rewrite.
    `fixed:<θ>` keeps pairs with diff fraction at most θ; `sigma` uses one
    standard deviation above the corpus mean.
    """

    kind: PolicyKind = PolicyKind.Fixed
    theta: float = p.Field(default=0.4, ge=0.0, le=1.0)

    @classmethod
    def parse(cls, text: str) -> ThresholdPolicy:
        text = text.strip()
        if text == PolicyKind.Sigma.value:
            return cls(kind=PolicyKind.Sigma)
        prefix, _, value = text.partition(":")
        if prefix != PolicyKind.Fixed.value or not value:
            raise ValueError(f"expected 'fixed:<fraction>' or 'sigma', got {text!r}")
        try:
            theta = float(value)
        except ValueError as exc:
            raise ValueError(f"not a fraction: {value!r}") from exc
        if not 0.0 <= theta <= 1.0:
            raise ValueError(f"threshold must be in [0, 1], got {theta}")
        return cls(kind=PolicyKind.Fixed, theta=theta)

    def __str__(self) -> str:
        if self.kind is PolicyKind.Sigma:
            return self.kind.value
        return f"{self.kind.value}:{self.theta:g}"

    def threshold(self, fractions: t.Sequence[float]) -> float:
        if self.kind is PolicyKind.Fixed:
            return self.theta
        if not fractions:
            raise EmptyCorpus("sigma threshold over an empty corpus")
        values = np.asarray(fractions, dtype=np.float64)
        return float(values.mean() + values.std())


def filter_outliers(
    corpus: t.Sequence[ProgramPair],
    policy: ThresholdPolicy,
    fractions: t.Sequence[float] | None = None,
) -> tuple[list[ProgramPair], list[ProgramPair]]:
    """
    Split `corpus` into (kept, discarded). Diff fractions are computed with
    `tree_diff` unless supplied in corpus order.
    """
    if fractions is None:
        fractions = [tree_diff(pair).diff_fraction for pair in corpus]
    theta = policy.threshold(fractions)
    kept: list[ProgramPair] = []
    discarded: list[ProgramPair] = []
    for pair, fraction in zip(corpus, fractions, strict=True):
        # absorbs rounding in mean + std
        (kept if fraction <= theta + 1e-12 else discarded).append(pair)
    logger.info(
        f"kept {len(kept)} of {len(corpus)} pairs",
        extra={"policy": str(policy), "threshold": theta, "discarded": len(discarded)},
    )
    return kept, discarded
