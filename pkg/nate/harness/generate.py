"""
Seeded synthetic corpora.

Well-typed programs are drawn from a type-directed generator: a few
function definitions (list folds, list maps, arithmetic helpers) followed
by a use of the last one. One type-breaking mutation is then applied, and
the pair (mutated, original) is kept when the mutation really breaks the
program. Both sides are printed and re-parsed so that every pair carries
source text and spans.
"""

from __future__ import annotations

import enum
import logging
import typing as t

import numpy as np
import pydantic as p

from nate.labeler import ProgramPair
from nate.lang import ast, parse, pretty
from nate.lang.ast import Expr, Kind, Program
from nate.lib.util import derive_seed
from nate.model.base import BaseModel
from nate.typecheck import infer_partial

logger = logging.getLogger(__name__)


class Mutation(enum.Enum):
    WrongLiteral = "wrong-literal"
    ZeroToNil = "zero-to-nil"
    SwapPlusCons = "swap-plus-cons"
    DropArgument = "drop-argument"
    WrapInList = "wrap-in-list"
    # the fix is an unrelated program; exercises outlier filtering
    Rewrite = "rewrite"


CATALOG: t.Final[tuple[Mutation, ...]] = (
    Mutation.WrongLiteral,
    Mutation.ZeroToNil,
    Mutation.SwapPlusCons,
    Mutation.DropArgument,
    Mutation.WrapInList,
)


class CorpusSpec(BaseModel):
    size: int = p.Field(default=2000, ge=0)
    max_depth: int = p.Field(default=3, ge=1)
    # share of pairs whose fix is a rewrite rather than the original program
    rewrite_fraction: float = p.Field(default=0.0, ge=0.0, le=1.0)
    mutations: tuple[Mutation, ...] = CATALOG


class Shape(enum.Enum):
    Int = "int"
    Bool = "bool"
    IntList = "int list"
    IntPair = "int * int"
    IntToInt = "int -> int"
    ListToInt = "int list -> int"
    ListToList = "int list -> int list"


_Signatures: dict[Shape, tuple[Shape, Shape]] = {
    Shape.IntToInt: (Shape.Int, Shape.Int),
    Shape.ListToInt: (Shape.IntList, Shape.Int),
    Shape.ListToList: (Shape.IntList, Shape.IntList),
}

_FunctionNames = ("sumList", "total", "count", "double", "scale", "walk", "step", "go", "acc", "fold")
_LocalNames = ("n", "m", "k", "v", "w")

Env = tuple[tuple[str, Shape], ...]
T = t.TypeVar("T")


class ProgramGenerator(object):
    def __init__(self, g: np.random.Generator, max_depth: int = 3):
        self.g = g
        self.max_depth = max_depth
        self.counter = 0

    def choice(self, options: t.Sequence[T]) -> T:
        return options[int(self.g.integers(len(options)))]

    def chance(self, probability: float) -> bool:
        return bool(self.g.random() < probability)

    def fresh(self, pool: t.Sequence[str]) -> str:
        self.counter += 1
        base = self.choice(pool)
        return f"{base}{self.counter}" if self.counter > 1 else base

    def literal(self) -> Expr:
        # zero is over-represented so fold base cases look like sums
        return ast.int_lit(0 if self.chance(0.4) else int(self.g.integers(1, 10)))

    def variables(self, env: Env, shape: Shape) -> list[str]:
        shadowed: set[str] = set()
        found: list[str] = []
        for name, s in reversed(env):
            if name in shadowed:
                continue
            shadowed.add(name)
            if s is shape:
                found.append(name)
        return found

    def expr(self, shape: Shape, env: Env, depth: int) -> Expr:
        leaf = depth <= 0 or self.chance(0.3)
        names = self.variables(env, shape)
        options: list[t.Callable[[], Expr]] = []
        if names:
            options.append(lambda: ast.var(self.choice(names)))

        def sub(s: Shape) -> Expr:
            return self.expr(s, env, depth - 1)

        match shape:
            case Shape.Int:
                options.append(self.literal)
                if not leaf:
                    options.append(lambda: ast.plus(sub(Shape.Int), sub(Shape.Int)))
                    for fshape in (Shape.IntToInt, Shape.ListToInt):
                        if fns := self.variables(env, fshape):
                            arg = _Signatures[fshape][0]
                            options.append(lambda fns=fns, arg=arg: ast.app(ast.var(self.choice(fns)), sub(arg)))
                    options.append(lambda: self.conditional(Shape.Int, env, depth))
                    options.append(lambda: self.destructure(env, depth))
                    options.append(lambda: self.local(Shape.Int, env, depth))
            case Shape.Bool:
                options.append(lambda: ast.bool_lit(self.chance(0.5)))
            case Shape.IntList:
                options.append(ast.nil)
                if depth > 0:
                    options.append(lambda: ast.cons(sub(Shape.Int), sub(Shape.IntList)))
                if not leaf:
                    if fns := self.variables(env, Shape.ListToList):
                        options.append(lambda: ast.app(ast.var(self.choice(fns)), sub(Shape.IntList)))
                    options.append(lambda: self.conditional(Shape.IntList, env, depth))
            case Shape.IntPair:
                options.append(lambda: ast.pair(sub(Shape.Int), sub(Shape.Int)))
            case _:
                raise ValueError(f"no expression generator for {shape.value}")
        return self.choice(options)()

    def conditional(self, shape: Shape, env: Env, depth: int) -> Expr:
        return ast.if_(
            self.expr(Shape.Bool, env, depth - 1), self.expr(shape, env, depth - 1), self.expr(shape, env, depth - 1)
        )

    def destructure(self, env: Env, depth: int) -> Expr:
        x, y = self.fresh(_LocalNames), self.fresh(_LocalNames)
        inner = (*env, (x, Shape.Int), (y, Shape.Int))
        return ast.pair_case(self.expr(Shape.IntPair, env, depth - 1), x, y, self.expr(Shape.Int, inner, depth - 1))

    def local(self, shape: Shape, env: Env, depth: int) -> Expr:
        name = self.fresh(_LocalNames)
        bound_shape = self.choice((Shape.Int, Shape.Bool, Shape.IntList))
        bound = self.expr(bound_shape, env, depth - 1)
        return ast.let(name, bound, self.expr(shape, (*env, (name, bound_shape)), depth - 1))

    def definition(self, shape: Shape, name: str, env: Env) -> tuple[Expr, bool]:
        depth = self.max_depth
        if shape is Shape.IntToInt:
            x = self.fresh(("x", "y", "z"))
            return ast.fun(x, self.expr(Shape.Int, (*env, (x, Shape.Int)), depth)), False

        xs, h, tl = self.fresh(("xs", "l", "items")), self.fresh(("h", "hd", "x")), self.fresh(("t", "tl", "rest"))
        inner = (*env, (name, shape), (xs, Shape.IntList), (h, Shape.Int), (tl, Shape.IntList))
        recurse = ast.app(ast.var(name), ast.var(tl))
        if shape is Shape.ListToInt:
            on_nil = self.literal() if self.chance(0.7) else self.expr(Shape.Int, env, 1)
            on_cons = self.choice(
                (
                    lambda: ast.plus(ast.var(h), recurse),
                    lambda: ast.plus(self.expr(Shape.Int, inner, depth - 1), recurse),
                    lambda: ast.plus(recurse, self.expr(Shape.Int, inner, depth - 1)),
                )
            )()
        else:
            on_nil = ast.nil()
            on_cons = self.choice(
                (
                    lambda: ast.cons(self.expr(Shape.Int, inner, depth - 1), recurse),
                    lambda: ast.cons(ast.var(h), recurse),
                    lambda: recurse,
                )
            )()
        return ast.fun(xs, ast.list_case(ast.var(xs), on_nil, h, tl, on_cons)), True

    def program(self) -> Expr:
        env: Env = ()
        defs: list[tuple[str, Expr, bool]] = []
        for _ in range(int(self.g.integers(1, 4))):
            shape = self.choice((Shape.IntToInt, Shape.ListToInt, Shape.ListToInt, Shape.ListToList))
            name = self.fresh(_FunctionNames)
            bound, rec = self.definition(shape, name, env)
            defs.append((name, bound, rec))
            env = (*env, (name, shape))

        last, shape = env[-1]
        body = ast.app(ast.var(last), self.expr(_Signatures[shape][0], env, self.max_depth - 1))
        for name, bound, rec in reversed(defs):
            body = ast.let(name, bound, body, rec=rec)
        return body


def _candidates(p: Program, mutation: Mutation) -> list[int]:
    match mutation:
        case Mutation.WrongLiteral:
            kinds = {Kind.IntLit, Kind.BoolLit}
            return [e.node_id for e in p.nodes if e.kind in kinds]
        case Mutation.ZeroToNil:
            return [e.node_id for e in p.nodes if e.kind is Kind.IntLit and e.value == 0]
        case Mutation.SwapPlusCons:
            return [e.node_id for e in p.nodes if e.kind in (Kind.Plus, Kind.Cons)]
        case Mutation.DropArgument:
            return [e.node_id for e in p.nodes if e.kind is Kind.App]
        case Mutation.WrapInList:
            kinds = {Kind.App, Kind.Var, Kind.IntLit, Kind.Plus}
            return [e.node_id for e in p.nodes if e.kind in kinds]
    return []


def mutate(p: Program, mutation: Mutation, node_id: int) -> Program:
    e = p.node(node_id)
    match mutation, e.kind:
        case Mutation.WrongLiteral, Kind.IntLit:
            replacement = ast.bool_lit(bool(t.cast(int, e.value) % 2))
        case Mutation.WrongLiteral, Kind.BoolLit:
            replacement = ast.int_lit(1 if e.value else 0)
        case Mutation.ZeroToNil, Kind.IntLit:
            replacement = ast.nil()
        case Mutation.SwapPlusCons, Kind.Plus:
            replacement = ast.cons(*e.children)
        case Mutation.SwapPlusCons, Kind.Cons:
            replacement = ast.plus(*e.children)
        case Mutation.DropArgument, Kind.App:
            replacement = e.children[0]
        case Mutation.WrapInList, _:
            replacement = ast.cons(e, ast.nil())
        case _:
            raise ValueError(f"{mutation.value} does not apply to {e.kind.value}")
    return ast.replace_subtree(p, node_id, replacement)


def _reparse(e: Expr) -> Program:
    return parse(pretty(e))


def generate_pair(spec: CorpusSpec, seed: int, index: int, attempts: int = 20) -> ProgramPair | None:
    """
    The `index`th pair of the corpus for `seed`, or None when no mutation of
    the drawn program breaks it within `attempts` tries.
    """
    g = np.random.default_rng(derive_seed(seed, "program", index))
    gen = ProgramGenerator(g, spec.max_depth)
    fix = _reparse(gen.program())
    if not infer_partial(fix).well_typed:
        raise AssertionError(f"generator produced an ill-typed program: {pretty(fix)}")

    for _ in range(attempts):
        mutation = gen.choice(spec.mutations)
        candidates = _candidates(fix, mutation)
        if not candidates:
            continue
        node_id = gen.choice(candidates)
        bad = _reparse(mutate(fix, mutation, node_id).root)
        if infer_partial(bad).well_typed:
            continue
        meta: dict[str, t.Any] = {"index": index, "mutation": mutation.value, "node": node_id}
        if gen.chance(spec.rewrite_fraction):
            fix = _reparse(gen.program())
            meta["mutation"] = Mutation.Rewrite.value
            meta.pop("node")
        return ProgramPair(bad=bad, fix=fix, meta=meta)
    return None


def generate_corpus(spec: CorpusSpec, seed: int) -> list[ProgramPair]:
    """`spec.size` pairs; the same (spec, seed) always yields the same corpus"""
    pairs: list[ProgramPair] = []
    index = 0
    skipped = 0
    while len(pairs) < spec.size:
        pair = generate_pair(spec, seed, index)
        index += 1
        if pair is None:
            skipped += 1
            continue
        pairs.append(pair)
    logger.info(
        f"generated {len(pairs)} pairs",
        extra={"seed": str(seed), "drawn": index, "skipped": skipped, "max_depth": spec.max_depth},
    )
    return pairs
