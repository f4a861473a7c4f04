"""
Bag-of-abstracted-terms extraction: one fixed-width vector per node of an
ill-typed program.
"""

from __future__ import annotations

import dataclasses
import logging
import typing as t

import numpy as np

from nate.labeler import BlameLabels, ProgramPair
from nate.lang.ast import Expr, Kind, Program
from nate.slicer import ErrorSlice, slice_union
from nate.typecheck import PartialDerivation, TyCon, head, infer_partial, type_mentions

from .errors import SchemaMismatch
from .schema import CONTEXTS, FeatureSet, TypeAbstraction, schema

logger = logging.getLogger(__name__)

_KINDS: t.Final[list[Kind]] = list(Kind)
_TYCONS: t.Final[list[TyCon]] = list(TyCon)
N_KINDS: t.Final[int] = len(_KINDS)
N_TYCONS: t.Final[int] = len(_TYCONS)


@dataclasses.dataclass(frozen=True, slots=True)
class Sample:
    program: int
    node: int
    vector: np.ndarray
    label: bool


def local_syntactic(node: Expr) -> np.ndarray:
    bits = np.zeros(N_KINDS)
    bits[_KINDS.index(node.kind)] = 1.0
    return bits


def relatives(p: Program, node_id: int) -> list[int | None]:
    """parent and first three children; None where there is no such node"""
    children: list[int | None] = list(p.children(node_id)[: len(CONTEXTS) - 1])
    children += [None] * (len(CONTEXTS) - 1 - len(children))
    return [p.parent(node_id), *children]


def contextual_syntactic(p: Program, node_id: int) -> np.ndarray:
    blocks = np.zeros((len(CONTEXTS), N_KINDS))
    for slot, rel in enumerate(relatives(p, node_id)):
        if rel is not None:
            blocks[slot, _KINDS.index(p.node(rel).kind)] = 1.0
    return blocks.ravel()


def size_feature(p: Program, node_id: int) -> int:
    return p.size(node_id)


def _type_bits(cons: t.Iterable[TyCon | None]) -> np.ndarray:
    bits = np.zeros(N_TYCONS)
    for c in cons:
        if c is not None:
            bits[_TYCONS.index(c)] = 1.0
    return bits


def typing_features(
    p: Program, node_id: int, d: PartialDerivation, abstraction: TypeAbstraction = TypeAbstraction.Head
) -> np.ndarray:
    """
    Constructors mentioned by the node's inferred type, then one block per
    relative abstracted by `abstraction`.
    """
    blocks = [_type_bits(type_mentions(d.type_of(node_id)))]
    for rel in relatives(p, node_id):
        if rel is None:
            blocks.append(np.zeros(N_TYCONS))
        elif abstraction is TypeAbstraction.Head:
            blocks.append(_type_bits([head(d.type_of(rel))]))
        else:
            blocks.append(_type_bits(type_mentions(d.type_of(rel))))
    return np.concatenate(blocks)


def node_vector(
    p: Program,
    node_id: int,
    d: PartialDerivation,
    in_slice: bool,
    abstraction: TypeAbstraction = TypeAbstraction.Head,
) -> np.ndarray:
    v = np.concatenate(
        [
            local_syntactic(p.node(node_id)),
            contextual_syntactic(p, node_id),
            typing_features(p, node_id, d, abstraction),
            [float(size_feature(p, node_id)), 1.0 if in_slice else 0.0],
        ]
    )
    width = schema().width
    if v.shape[0] != width:
        raise SchemaMismatch(width, v.shape[0])
    return v


def extract_program(
    p: Program,
    slices: t.Sequence[ErrorSlice],
    labels: BlameLabels | None = None,
    filter_slice: bool = True,
    derivation: PartialDerivation | None = None,
    abstraction: TypeAbstraction = TypeAbstraction.Head,
    program: int = 0,
) -> list[Sample]:
    """
    Samples for every node of `p` in pre-order, or only for slice members
    when `filter_slice` is set. Without `labels` every sample is labeled
    False.
    """
    d = derivation or infer_partial(p)
    members = slice_union(slices)
    changed = labels.changed if labels is not None else frozenset()
    samples: list[Sample] = []
    for node_id in range(len(p)):
        in_slice = node_id in members
        if filter_slice and not in_slice:
            continue
        samples.append(
            Sample(program, node_id, node_vector(p, node_id, d, in_slice, abstraction), node_id in changed)
        )
    return samples


def extract(
    pair: ProgramPair,
    slices: t.Sequence[ErrorSlice],
    labels: BlameLabels,
    filter_slice: bool = True,
    abstraction: TypeAbstraction = TypeAbstraction.Head,
    program: int = 0,
) -> list[Sample]:
    return extract_program(
        pair.bad, slices, labels, filter_slice=filter_slice, abstraction=abstraction, program=program
    )


def to_matrix(samples: t.Sequence[Sample], feature_set: FeatureSet | None = None) -> tuple[np.ndarray, np.ndarray]:
    """`(X, y)` restricted to the columns of `feature_set`"""
    s = schema()
    columns = s.columns(feature_set or FeatureSet())
    if not samples:
        return np.zeros((0, columns.shape[0])), np.zeros(0)
    X = np.stack([sample.vector for sample in samples])[:, columns]
    y = np.array([1.0 if sample.label else 0.0 for sample in samples])
    return X, y
