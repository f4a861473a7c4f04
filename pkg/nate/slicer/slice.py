"""
Minimal type-error slices.

A slice for an error is a set of nodes such that holing everything outside
it keeps that error, while holing any one of its members (in the sliced
program) removes it. Errors are identified by the node that induced the
failing equation in the original program together with the equation's
role, so an error can be recognized again after other subtrees have been
holed.

The search starts from an over-approximation (the nodes whose constraints
share type variables with the failing one, closed under binding sites and
ancestors) and then deletes nodes one at a time in pre-order until no
further node can be holed without losing the error.
"""

from __future__ import annotations

import logging
import time
import typing as t

import pydantic as p

from nate.lang import ast
from nate.lang.ast import Kind, Program
from nate.model.base import BaseModel
from nate.typecheck import PartialDerivation, Role, TypeErrorRecord, infer_partial
from nate.typecheck.types import TFun, TList, TProd, TVar, Type

from .errors import NotIllTyped

logger = logging.getLogger(__name__)

ErrorKey = tuple[int, Role]


class ErrorSlice(BaseModel):
    error_index: int
    nodes: frozenset[int]
    # False when the time budget ran out and `nodes` is the over-approximation
    minimal: bool = True

    def __contains__(self, node_id: object) -> bool:
        return node_id in self.nodes


class SliceCheck(BaseModel):
    """Result of re-running the hole oracle over a set of slices."""

    error_index: int
    sufficient: bool
    # slice members whose holing did not remove the error
    redundant: frozenset[int] = p.Field(default_factory=frozenset)

    @property
    def passed(self) -> bool:
        return self.sufficient and not self.redundant


def in_any_slice(slices: t.Iterable[ErrorSlice], node_id: int) -> bool:
    return any(node_id in s.nodes for s in slices)


def slice_union(slices: t.Iterable[ErrorSlice]) -> frozenset[int]:
    out: set[int] = set()
    for s in slices:
        out |= s.nodes
    return frozenset(out)


def error_key(err: TypeErrorRecord) -> ErrorKey:
    return err.origin, err.role


class _Holed(object):
    """A program with some maximal subtrees replaced by holes, tracked by original ids."""

    def __init__(self, original: Program, roots: frozenset[int]):
        self.original = original
        self.roots = roots
        self.program = ast.replace_many(original, {r: ast.hole() for r in roots})
        # id in the holed program -> id in the original
        self.back: list[int] = []
        i = 0
        while i < len(original):
            self.back.append(i)
            i += original.size(i) if i in roots else 1

    def derivation(self) -> PartialDerivation:
        return infer_partial(self.program)

    def error_keys(self) -> set[ErrorKey]:
        return {(self.back[e.origin], e.role) for e in self.derivation().errors}

    def has(self, key: ErrorKey) -> bool:
        return key in self.error_keys()

    def kept(self) -> frozenset[int]:
        """original ids that are not holed"""
        return frozenset(i for i in self.back if i not in self.roots)

    def hole(self, node_id: int) -> _Holed:
        sub = self.original.subtree(node_id)
        roots = frozenset(r for r in self.roots if r not in sub) | {node_id}
        return _Holed(self.original, roots)


def hole_outside(p: Program, keep: t.Collection[int]) -> Program:
    """Hole every maximal subtree of `p` that contains no node of `keep`."""
    return _Holed(p, _outside_roots(p, keep)).program


def _outside_roots(p: Program, keep: t.Collection[int]) -> frozenset[int]:
    keep = set(keep)
    roots: set[int] = set()
    i = 0
    while i < len(p):
        sub = p.subtree(i)
        if any(j in keep for j in sub):
            i += 1
        else:
            roots.add(i)
            i = sub.stop
    return frozenset(roots)


def _type_vars(ty: Type, out: set[int]) -> None:
    match ty:
        case TVar(i):
            out.add(i)
        case TFun(a, b) | TProd(a, b):
            _type_vars(a, out)
            _type_vars(b, out)
        case TList(e):
            _type_vars(e, out)


def _binding_sites(p: Program) -> dict[int, int]:
    """Var node id -> id of the node that binds it"""
    sites: dict[int, int] = {}

    def go(e: ast.Expr, scope: dict[str, int]) -> None:
        match e.kind:
            case Kind.Var:
                if e.name in scope:
                    sites[e.node_id] = scope[t.cast(str, e.name)]
            case Kind.Fun:
                go(e.children[0], {**scope, t.cast(str, e.name): e.node_id})
            case Kind.Let:
                bound, body = e.children
                inner = {**scope, t.cast(str, e.name): e.node_id}
                go(bound, inner if e.rec else scope)
                go(body, inner)
            case Kind.ListCase:
                scrutinee, on_nil, on_cons = e.children
                go(scrutinee, scope)
                go(on_nil, scope)
                go(on_cons, {**scope, **{b: e.node_id for b in e.binders}})
            case Kind.PairCase:
                scrutinee, body = e.children
                go(scrutinee, scope)
                go(body, {**scope, **{b: e.node_id for b in e.binders}})
            case _:
                for c in e.children:
                    go(c, scope)

    go(p.root, {})
    return sites


def over_approximation(p: Program, d: PartialDerivation, err: TypeErrorRecord) -> frozenset[int]:
    """
    Nodes connected to the failing equation through shared type variables,
    binding sites and binder-to-bound-expression links, closed upward.
    """
    parent: dict[tuple[str, int], tuple[str, int]] = {}

    def find(x: tuple[str, int]) -> tuple[str, int]:
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: tuple[str, int], b: tuple[str, int]) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for c in d.constraints:
        tvs: set[int] = set()
        _type_vars(c.lhs, tvs)
        _type_vars(c.rhs, tvs)
        for v in tvs:
            union(("n", c.origin), ("v", v))
    for var_id, binder in _binding_sites(p).items():
        union(("n", var_id), ("n", binder))
    for e in p.nodes:
        if e.kind in (Kind.Let, Kind.ListCase, Kind.PairCase):
            union(("n", e.node_id), ("n", e.children[0].node_id))

    target = find(("n", err.origin))
    connected = {i for i in range(len(p)) if find(("n", i)) == target}
    closed = set(connected)
    for i in connected:
        closed.update(p.ancestors(i))
    return frozenset(closed)


def minimal_slices(p: Program, budget: float | None = 1.0) -> list[ErrorSlice]:
    """
    One slice per type error of `p`, in error order. `budget` caps the
    wall-clock seconds spent on the whole program; when it runs out, the
    remaining slices are the over-approximation flagged `minimal=False`.

    Raises `NotIllTyped` for a well-typed program.
    """
    d = infer_partial(p)
    if d.well_typed:
        raise NotIllTyped()
    deadline = None if budget is None else time.monotonic() + budget

    slices: list[ErrorSlice] = []
    for index, err in enumerate(d.errors):
        slices.append(_slice_one(p, d, index, err, deadline))

    logger.debug(
        "sliced program",
        extra={
            "nodes": len(p),
            "errors": len(d.errors),
            "slice_sizes": [len(s.nodes) for s in slices],
            "minimal": all(s.minimal for s in slices),
        },
    )
    return slices


def _slice_one(
    p: Program, d: PartialDerivation, index: int, err: TypeErrorRecord, deadline: float | None
) -> ErrorSlice:
    key = error_key(err)
    candidates = over_approximation(p, d, err)
    current = _Holed(p, _outside_roots(p, candidates))
    if not current.has(key):
        candidates = frozenset(range(len(p)))
        current = _Holed(p, frozenset())

    changed = True
    while changed:
        changed = False
        for node_id in sorted(current.kept()):
            if deadline is not None and time.monotonic() > deadline:
                logger.warning(
                    "slicing budget exhausted, using over-approximation",
                    extra={"error_index": index, "nodes": len(p), "candidates": len(candidates)},
                )
                return ErrorSlice(error_index=index, nodes=candidates, minimal=False)
            if node_id in current.roots or any(a in current.roots for a in p.ancestors(node_id)):
                continue
            trial = current.hole(node_id)
            if trial.has(key):
                current = trial
                changed = True

    return ErrorSlice(error_index=index, nodes=current.kept())


def verify(p: Program, slices: t.Sequence[ErrorSlice]) -> list[SliceCheck]:
    """
    Re-run the hole oracle: each slice must keep its error when everything
    outside it is holed, and each member must be necessary in that sliced
    program.
    """
    d = infer_partial(p)
    checks: list[SliceCheck] = []
    for s in slices:
        key = error_key(d.errors[s.error_index])
        sliced = _Holed(p, _outside_roots(p, s.nodes))
        sufficient = sliced.has(key)
        redundant = frozenset(n for n in sorted(s.nodes) if sliced.hole(n).has(key))
        checks.append(SliceCheck(error_index=s.error_index, sufficient=sufficient, redundant=redundant))
    return checks


def union_sufficient(p: Program, slices: t.Sequence[ErrorSlice]) -> bool:
    """holing every node outside all slices leaves the program ill-typed"""
    return not infer_partial(hole_outside(p, slice_union(slices))).well_typed
