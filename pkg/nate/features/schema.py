"""
Feature naming and layout.

Columns are laid out as: one local syntax bit per node kind; the same bits
for the parent and the first three children (`-P`, `-C1`, `-C2`, `-C3`);
type-constructor bits for the node itself and for the same four relatives;
the subtree size; and the In-Slice bit.
"""

from __future__ import annotations

import enum
import functools
import typing as t

import numpy as np
import pydantic as p

from nate.lang.ast import Kind
from nate.model.base import BaseModel
from nate.typecheck.types import TyCon

from .errors import UnknownFeatureSet

SCHEMA_VERSION: t.Final[str] = "nate-features-1"
CONTEXTS: t.Final[tuple[str, ...]] = ("P", "C1", "C2", "C3")


class FeatureGroup(enum.Enum):
    """Column groups; the value is the spelling used in feature-set expressions."""

    LocalSyn = "local"
    CtxSyn = "context"
    Type = "type"
    Size = "size"
    Slice = "slice"


class TypeAbstraction(enum.Enum):
    """How a relative's type is abstracted into its context block."""

    # outermost constructor only
    Head = "head"
    # every constructor the type mentions
    Mentions = "mentions"


class Feature(BaseModel):
    name: str
    group: FeatureGroup


class FeatureSchema(BaseModel):
    version: str
    features: tuple[Feature, ...]

    @property
    def width(self) -> int:
        return len(self.features)

    @property
    def names(self) -> list[str]:
        return [f.name for f in self.features]

    def index(self, name: str) -> int:
        return self.positions[name]

    @functools.cached_property
    def positions(self) -> dict[str, int]:
        return {f.name: i for i, f in enumerate(self.features)}

    def counts(self) -> dict[FeatureGroup, int]:
        out = {g: 0 for g in FeatureGroup}
        for f in self.features:
            out[f.group] += 1
        return out

    def columns(self, feature_set: FeatureSet) -> np.ndarray:
        """indices of the columns selected by `feature_set`, in schema order"""
        return np.array([i for i, f in enumerate(self.features) if f.group in feature_set.groups], dtype=np.int64)

    def select(self, feature_set: FeatureSet) -> list[str]:
        return [self.features[i].name for i in self.columns(feature_set)]


class FeatureSet(BaseModel):
    """A selection of column groups, written `local+context+type` or `all`."""

    groups: frozenset[FeatureGroup] = p.Field(default_factory=lambda: frozenset(FeatureGroup))

    @classmethod
    def parse(cls, expr: str) -> FeatureSet:
        expr = expr.strip()
        if expr == "all":
            return cls()
        tokens = [tok.strip() for tok in expr.split("+")]
        if expr.startswith("+"):
            # `+context` extends the local syntax features
            tokens[0] = FeatureGroup.LocalSyn.value
        groups: set[FeatureGroup] = set()
        for tok in tokens:
            try:
                groups.add(FeatureGroup(tok))
            except ValueError:
                known = ", ".join(g.value for g in FeatureGroup)
                raise UnknownFeatureSet(f"unknown feature group {tok!r} in {expr!r} (known: {known}, all)") from None
        return cls(groups=frozenset(groups))

    def __str__(self) -> str:
        if self.groups == frozenset(FeatureGroup):
            return "all"
        return "+".join(g.value for g in FeatureGroup if g in self.groups)

    def __contains__(self, group: object) -> bool:
        return group in self.groups


def kind_feature(kind: Kind, context: str | None = None) -> str:
    name = f"Is-{kind.label}"
    return f"{name}-{context}" if context else name


def type_feature(con: TyCon, context: str | None = None) -> str:
    name = f"Has-Type-{con.value}"
    return f"{name}-{context}" if context else name


@functools.cache
def schema() -> FeatureSchema:
    features: list[Feature] = [Feature(name=kind_feature(k), group=FeatureGroup.LocalSyn) for k in Kind]
    for ctx in CONTEXTS:
        features.extend(Feature(name=kind_feature(k, ctx), group=FeatureGroup.CtxSyn) for k in Kind)
    for ctx in (None, *CONTEXTS):
        features.extend(Feature(name=type_feature(c, ctx), group=FeatureGroup.Type) for c in TyCon)
    features.append(Feature(name="Size", group=FeatureGroup.Size))
    features.append(Feature(name="In-Slice", group=FeatureGroup.Slice))
    return FeatureSchema(version=SCHEMA_VERSION, features=tuple(features))
