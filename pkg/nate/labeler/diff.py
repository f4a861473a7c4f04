"""
Expression-level tree diff between an ill-typed program and its fix.

Both trees are descended top-down together. Subtrees with equal hashes are
skipped. A fix node that has the bad node as one of its children is a wrap,
and a bad node that has the fix node as a child is an unwrap; either way the
bad node is marked, whatever the kinds. Otherwise nodes of the same kind
recurse into their children, and the bad node is marked when its own
payload (name, literal, binders) differs. Nodes of different kinds were
replaced wholesale and the bad node is marked.
"""

from __future__ import annotations

import hashlib
import typing as t

import pydantic as p

from nate.lang.ast import Expr, Program
from nate.model.base import BaseModel
from nate.typecheck import infer_partial

from .errors import InvalidPair


class ProgramPair(BaseModel):
    model_config = p.ConfigDict(arbitrary_types_allowed=True)

    bad: Program
    fix: Program
    meta: dict[str, t.Any] = p.Field(default_factory=dict)

    def check(self) -> ProgramPair:
        """raise `InvalidPair` unless bad is ill-typed and fix is well-typed"""
        if infer_partial(self.bad).well_typed:
            raise InvalidPair("bad program is well-typed")
        if not infer_partial(self.fix).well_typed:
            raise InvalidPair("fixed program is ill-typed")
        return self


class BlameLabels(BaseModel):
    changed: frozenset[int]
    diff_fraction: float
    # node-level edit count behind diff_fraction
    edits: int = 0


def subtree_hashes(program: Program) -> list[bytes]:
    """blake2b digest of every subtree, indexed by node id"""
    digests: list[bytes] = [b""] * len(program)
    # children have larger pre-order ids than their parents
    for e in reversed(program.nodes):
        h = hashlib.blake2b(digest_size=16)
        h.update(f"{e.kind.value}|{e.name}|{e.value!r}|{e.rec}|{','.join(e.binders)}".encode("utf8"))
        for c in e.children:
            h.update(digests[c.node_id])
        digests[e.node_id] = h.digest()
    return digests


def tree_diff(pair: ProgramPair) -> BlameLabels:
    bad, fix = pair.bad, pair.fix
    hb, hf = subtree_hashes(bad), subtree_hashes(fix)
    changed: set[int] = set()
    edits = 0

    def go(b: Expr, f: Expr) -> None:
        nonlocal edits
        if hb[b.node_id] == hf[f.node_id]:
            return
        # wraps and unwraps are checked before same-kind descent: `f x` -> `g (f x)` marks `f x`
        if any(hf[c.node_id] == hb[b.node_id] for c in f.children):
            # wrap: the fix placed a new operator around b
            changed.add(b.node_id)
            edits += fix.size(f.node_id) - bad.size(b.node_id)
            return
        if any(hb[c.node_id] == hf[f.node_id] for c in b.children):
            # unwrap: the operator at b was removed
            changed.add(b.node_id)
            edits += bad.size(b.node_id) - fix.size(f.node_id)
            return
        if b.kind is f.kind:
            if b.payload != f.payload:
                changed.add(b.node_id)
                edits += 1
            for cb, cf in zip(b.children, f.children):
                go(cb, cf)
            return

        changed.add(b.node_id)
        edits += max(bad.size(b.node_id), fix.size(f.node_id))

    go(bad.root, fix.root)
    fraction = min(1.0, edits / len(bad))
    return BlameLabels(changed=frozenset(changed), diff_fraction=fraction, edits=edits)
