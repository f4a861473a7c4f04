from __future__ import annotations

import typing as t

import numpy as np

from nate.lang.ast import Program
from nate.model.enum import BaselineKind
from nate.slicer import ErrorSlice, NotIllTyped, minimal_slices, slice_union
from nate.typecheck import infer_partial

from .blame import DEFAULT_K, BlameReport, rank


def baseline_random(
    program: Program,
    seed: int | np.random.Generator,
    k: int = DEFAULT_K,
    slices: t.Sequence[ErrorSlice] | None = None,
) -> BlameReport:
    """`k` distinct nodes drawn uniformly from the union of the error slices"""
    if slices is None:
        slices = minimal_slices(program)
    members = sorted(slice_union(slices))
    g = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    drawn = g.permutation(len(members))[:k]
    # rank order is draw order
    confidences = [1.0 - i / len(members) for i in range(len(drawn))]
    return rank(program, [members[i] for i in drawn], confidences, k)


def baseline_first_error(program: Program, k: int = DEFAULT_K) -> BlameReport:
    """the origin of the first failing equation, as a compiler would report it"""
    d = infer_partial(program)
    if d.well_typed:
        raise NotIllTyped()
    return rank(program, [d.errors[0].origin], [1.0], k)


def run_baseline(
    kind: BaselineKind,
    program: Program,
    seed: int | np.random.Generator,
    k: int = DEFAULT_K,
    slices: t.Sequence[ErrorSlice] | None = None,
) -> BlameReport:
    match kind:
        case BaselineKind.Random:
            return baseline_random(program, seed, k, slices)
        case BaselineKind.FirstError:
            return baseline_first_error(program, k)
