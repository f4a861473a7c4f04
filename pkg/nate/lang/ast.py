"""Abstract syntax of the core language.

Programs are immutable trees of `Expr`. Node ids are dense pre-order indices
assigned when a `Program` is built; they are recomputed whenever a subtree is
replaced. Spans are byte offsets into the original source and survive
replacement, so callers that need a stable reference hold spans, not ids.
"""

from __future__ import annotations

import dataclasses
import enum
import typing as t

from .errors import UnknownNode


class Kind(enum.Enum):
    Var = "Var"
    Fun = "Fun"
    App = "App"
    Let = "Let"
    IntLit = "IntLit"
    Plus = "Plus"
    BoolLit = "BoolLit"
    If = "If"
    Pair = "Pair"
    PairCase = "PairCase"
    Nil = "Nil"
    Cons = "Cons"
    ListCase = "ListCase"
    Hole = "Hole"

    @property
    def label(self) -> str:
        """surface spelling used in feature names"""
        return _Labels[self]

    @property
    def arity(self) -> int:
        return _Arity[self]


_Labels: dict[Kind, str] = {
    Kind.Var: "Var",
    Kind.Fun: "Fun",
    Kind.App: "App",
    Kind.Let: "Let",
    Kind.IntLit: "Int",
    Kind.Plus: "+",
    Kind.BoolLit: "Bool",
    Kind.If: "If",
    Kind.Pair: "Pair",
    Kind.PairCase: "Case(Pair)",
    Kind.Nil: "[]",
    Kind.Cons: "::",
    Kind.ListCase: "Case(List)",
    Kind.Hole: "Hole",
}

# ListCase children are [scrutinee, nil-branch, cons-branch]; PairCase are
# [scrutinee, body]. Bound names live in `binders`, not in children.
_Arity: dict[Kind, int] = {
    Kind.Var: 0,
    Kind.Fun: 1,
    Kind.App: 2,
    Kind.Let: 2,
    Kind.IntLit: 0,
    Kind.Plus: 2,
    Kind.BoolLit: 0,
    Kind.If: 3,
    Kind.Pair: 2,
    Kind.PairCase: 2,
    Kind.Nil: 0,
    Kind.Cons: 2,
    Kind.ListCase: 3,
    Kind.Hole: 0,
}


@dataclasses.dataclass(frozen=True, slots=True)
class Span:
    start: int
    end: int

    def contains(self, other: Span) -> bool:
        return self.start <= other.start and other.end <= self.end

    def overlaps(self, other: Span) -> bool:
        return self.start < other.end and other.start < self.end

    def __str__(self) -> str:
        return f"{self.start}-{self.end}"


NoSpan = Span(0, 0)


@dataclasses.dataclass(frozen=True, slots=True)
class Expr:
    """
    One AST node. Equality and hashing are structural: spans and node ids do
    not participate, so two parses of differently formatted sources compare
    equal when their trees agree.

    Payload by kind:

        - Var: `name`
        - Fun: `name` is the parameter
        - Let: `name` is the binder, `rec` the recursion flag
        - IntLit, BoolLit: `value`
        - PairCase: `binders` = (x, y)
        - ListCase: `binders` = (head, tail)
    """

    kind: Kind
    children: tuple[Expr, ...] = ()
    name: str | None = None
    value: int | bool | None = None
    rec: bool = False
    binders: tuple[str, ...] = ()
    span: Span = dataclasses.field(default=NoSpan, compare=False)
    node_id: int = dataclasses.field(default=-1, compare=False)

    def __post_init__(self) -> None:
        if len(self.children) != self.kind.arity:
            raise ValueError(f"{self.kind.value} takes {self.kind.arity} children, got {len(self.children)}")

    @property
    def payload(self) -> tuple[t.Any, ...]:
        return (self.name, self.value, self.rec, self.binders)

    def walk(self) -> t.Iterator[Expr]:
        """pre-order traversal"""
        stack: list[Expr] = [self]
        while stack:
            e = stack.pop()
            yield e
            stack.extend(reversed(e.children))

    def size(self) -> int:
        return sum(1 for _ in self.walk())

    def with_children(self, children: t.Sequence[Expr]) -> Expr:
        return dataclasses.replace(self, children=tuple(children))

    def with_span(self, span: Span) -> Expr:
        return dataclasses.replace(self, span=span)


# constructors; spans default to empty and are filled in by the parser


def var(name: str, span: Span = NoSpan) -> Expr:
    return Expr(Kind.Var, name=name, span=span)


def fun(param: str, body: Expr, span: Span = NoSpan) -> Expr:
    return Expr(Kind.Fun, (body,), name=param, span=span)


def app(f: Expr, x: Expr, span: Span = NoSpan) -> Expr:
    return Expr(Kind.App, (f, x), span=span)


def let(name: str, bound: Expr, body: Expr, rec: bool = False, span: Span = NoSpan) -> Expr:
    return Expr(Kind.Let, (bound, body), name=name, rec=rec, span=span)


def int_lit(n: int, span: Span = NoSpan) -> Expr:
    return Expr(Kind.IntLit, value=n, span=span)


def bool_lit(b: bool, span: Span = NoSpan) -> Expr:
    return Expr(Kind.BoolLit, value=b, span=span)


def plus(a: Expr, b: Expr, span: Span = NoSpan) -> Expr:
    return Expr(Kind.Plus, (a, b), span=span)


def if_(c: Expr, a: Expr, b: Expr, span: Span = NoSpan) -> Expr:
    return Expr(Kind.If, (c, a, b), span=span)


def pair(a: Expr, b: Expr, span: Span = NoSpan) -> Expr:
    return Expr(Kind.Pair, (a, b), span=span)


def pair_case(scrutinee: Expr, x: str, y: str, body: Expr, span: Span = NoSpan) -> Expr:
    return Expr(Kind.PairCase, (scrutinee, body), binders=(x, y), span=span)


def nil(span: Span = NoSpan) -> Expr:
    return Expr(Kind.Nil, span=span)


def cons(h: Expr, tl: Expr, span: Span = NoSpan) -> Expr:
    return Expr(Kind.Cons, (h, tl), span=span)


def list_case(scrutinee: Expr, on_nil: Expr, h: str, tl: str, on_cons: Expr, span: Span = NoSpan) -> Expr:
    return Expr(Kind.ListCase, (scrutinee, on_nil, on_cons), binders=(h, tl), span=span)


def hole(span: Span = NoSpan) -> Expr:
    return Expr(Kind.Hole, span=span)


def _renumber(root: Expr) -> tuple[Expr, list[Expr], list[int | None], list[int]]:
    """rebuild `root` with pre-order ids; returns (root, nodes, parents, subtree sizes) by id"""
    nodes: list[Expr] = []
    parents: list[int | None] = []
    sizes: list[int] = []
    counter = 0

    def go(e: Expr, parent: int | None) -> Expr:
        nonlocal counter
        nid = counter
        counter += 1
        nodes.append(e)  # placeholder, replaced below
        parents.append(parent)
        sizes.append(1)
        children = tuple(go(c, nid) for c in e.children)
        same = e.node_id == nid and all(a is b for a, b in zip(children, e.children))
        out = e if same else dataclasses.replace(e, children=children, node_id=nid)
        nodes[nid] = out
        sizes[nid] = counter - nid
        return out

    return go(root, None), nodes, parents, sizes


class Program(object):
    """
    A root expression plus the source it was parsed from. Construction
    assigns pre-order node ids and builds the parent index.
    """

    __slots__ = ("root", "source", "_nodes", "_parents", "_sizes")

    root: Expr
    source: str
    _nodes: list[Expr]
    _parents: list[int | None]
    _sizes: list[int]

    def __init__(self, root: Expr, source: str = ""):
        self.root, self._nodes, self._parents, self._sizes = _renumber(root)
        self.source = source

    def __len__(self) -> int:
        return len(self._nodes)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Program):
            return NotImplemented
        return self.root == other.root

    def __hash__(self) -> int:
        return hash(self.root)

    def __repr__(self) -> str:
        return f"<Program nodes={len(self)}>"

    @property
    def nodes(self) -> t.Sequence[Expr]:
        return self._nodes

    def node(self, node_id: int) -> Expr:
        if not 0 <= node_id < len(self._nodes):
            raise UnknownNode(node_id)
        return self._nodes[node_id]

    def parent(self, node_id: int) -> int | None:
        self.node(node_id)
        return self._parents[node_id]

    def children(self, node_id: int) -> list[int]:
        return [c.node_id for c in self.node(node_id).children]

    def ancestors(self, node_id: int) -> t.Iterator[int]:
        p = self.parent(node_id)
        while p is not None:
            yield p
            p = self._parents[p]

    def subtree(self, node_id: int) -> range:
        """ids of the subtree rooted at `node_id` (contiguous in pre-order)"""
        self.node(node_id)
        return range(node_id, node_id + self._sizes[node_id])

    def size(self, node_id: int) -> int:
        """number of nodes in the subtree rooted at `node_id`, itself included"""
        self.node(node_id)
        return self._sizes[node_id]

    def text(self, node_id: int) -> str:
        """the source covered by a node; spans are UTF-8 byte offsets"""
        span = self.node(node_id).span
        return self.source.encode("utf8")[span.start : span.end].decode("utf8")

    def find(self, span: Span, kind: Kind | None = None) -> Expr | None:
        """the outermost node with exactly this span (and kind, if given)"""
        for e in self._nodes:
            if e.span == span and (kind is None or e.kind is kind):
                return e
        return None


def navigate(p: Program, node_id: int) -> tuple[int | None, list[int]]:
    """(parent, children in left-to-right source order) of a node"""
    return p.parent(node_id), p.children(node_id)


def replace_subtree(p: Program, node_id: int, replacement: Expr) -> Program:
    """
    Replace the subtree at `node_id`. A replacement without a span inherits
    the replaced node's span, so holes stay addressable by source location.
    Ids of the result are recomputed.
    """
    target = p.node(node_id)
    if replacement.span == NoSpan:
        replacement = replacement.with_span(target.span)
    return Program(_replace(p, p.root, node_id, replacement), p.source)


def replace_many(p: Program, replacements: t.Mapping[int, Expr]) -> Program:
    """replace several disjoint subtrees at once"""
    if not replacements:
        return p
    for nid in replacements:
        p.node(nid)

    def go(e: Expr) -> Expr:
        if e.node_id in replacements:
            r = replacements[e.node_id]
            return r.with_span(e.span) if r.span == NoSpan else r
        if not e.children:
            return e
        return e.with_children([go(c) for c in e.children])

    return Program(go(p.root), p.source)


def _replace(p: Program, e: Expr, node_id: int, replacement: Expr) -> Expr:
    if e.node_id == node_id:
        return replacement
    # ids are pre-order, so only one child's range can contain the target
    for i, c in enumerate(e.children):
        if node_id in p.subtree(c.node_id):
            children = list(e.children)
            children[i] = _replace(p, c, node_id, replacement)
            return e.with_children(children)
    raise UnknownNode(node_id)
