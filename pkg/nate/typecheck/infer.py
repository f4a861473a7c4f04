"""
Constraint-based Hindley-Milner inference that keeps going past errors.

Each node is checked against an expected type. Constraints are emitted as
`expected = actual` equations and unified immediately, strictly left to
right; an equation that fails to unify is recorded as a `TypeErrorRecord`
and dropped, and inference continues with the substitution built so far.
The node types of the resulting derivation are the nodes' actual types
under the final substitution, so they exhibit the usual traversal bias.
"""

from __future__ import annotations

import collections
import dataclasses
import enum
import logging
import typing as t

from nate.lang.ast import Expr, Kind, Program

from .errors import OccursCheck, UnificationError
from .types import Bool, Int, Scheme, TFun, TList, TProd, TVar, Type, free_vars, render, substitute
from .unify import Substitution, unify_in_place

logger = logging.getLogger(__name__)

Env = collections.ChainMap[str, Scheme]


class Role(enum.Enum):
    """What an equation says about its origin node."""

    # the node's expected type equals the type it actually has
    Node = "node"
    # the function position of an application: `f = arg -> result`
    Callee = "callee"
    # a variable with no binding in scope
    Unbound = "unbound"


class ErrorKind(enum.Enum):
    Mismatch = "mismatch"
    Occurs = "occurs"
    Unbound = "unbound"


@dataclasses.dataclass(frozen=True, slots=True)
class Constraint:
    lhs: Type  # expected
    rhs: Type  # actual
    origin: int
    role: Role = Role.Node


@dataclasses.dataclass(frozen=True, slots=True)
class TypeErrorRecord:
    """
    The first equation that failed to unify, with both sides resolved under
    the substitution current when the failure was detected.
    """

    kind: ErrorKind
    conflicting: Constraint
    expected: Type
    actual: Type

    @property
    def origin(self) -> int:
        return self.conflicting.origin

    @property
    def role(self) -> Role:
        return self.conflicting.role

    def describe(self) -> str:
        if self.kind is ErrorKind.Unbound:
            return f"node {self.origin}: unbound variable"
        names: dict[int, str] = {}
        return f"node {self.origin}: expected {render(self.expected, names)}, actual {render(self.actual, names)}"


@dataclasses.dataclass(frozen=True, slots=True)
class PartialDerivation:
    node_types: tuple[Type, ...]
    errors: tuple[TypeErrorRecord, ...]
    constraints: tuple[Constraint, ...]

    @property
    def well_typed(self) -> bool:
        return not self.errors

    @property
    def root_type(self) -> Type:
        return self.node_types[0]

    def type_of(self, node_id: int) -> Type:
        return self.node_types[node_id]


class _Inference(object):
    def __init__(self, program: Program):
        self.program = program
        self.subst = Substitution()
        self.counter = 0
        self.constraints: list[Constraint] = []
        self.errors: list[TypeErrorRecord] = []
        self.actual: list[Type | None] = [None] * len(program)

    def fresh(self) -> TVar:
        self.counter += 1
        return TVar(self.counter - 1)

    def emit(self, expected: Type, actual: Type, origin: int, role: Role = Role.Node) -> None:
        c = Constraint(expected, actual, origin, role)
        self.constraints.append(c)
        try:
            unify_in_place(expected, actual, self.subst)
        except UnificationError as exc:
            kind = ErrorKind.Occurs if isinstance(exc, OccursCheck) else ErrorKind.Mismatch
            self.errors.append(
                TypeErrorRecord(kind, c, self.subst.apply(expected), self.subst.apply(actual))
            )

    def instantiate(self, scheme: Scheme) -> Type:
        if not scheme.quantified:
            return scheme.body
        return substitute(scheme.body, {i: self.fresh() for i in scheme.quantified})

    def generalize(self, ty: Type, env: Env) -> Scheme:
        ty = self.subst.apply(ty)
        bound: set[int] = set()
        for scheme in env.values():
            body = self.subst.apply(scheme.body)
            bound |= free_vars(body) - set(scheme.quantified)
        return Scheme(tuple(sorted(free_vars(ty) - bound)), ty)

    def run(self) -> PartialDerivation:
        root = self.program.root
        self.check(root, self.fresh(), Env())
        node_types = tuple(self.subst.apply(ty) if ty is not None else self.fresh() for ty in self.actual)
        return PartialDerivation(node_types, tuple(self.errors), tuple(self.constraints))

    def check(self, e: Expr, expected: Type, env: Env) -> None:
        nid = e.node_id
        match e.kind:
            case Kind.IntLit:
                actual: Type = Int
                self.emit(expected, actual, nid)
            case Kind.BoolLit:
                actual = Bool
                self.emit(expected, actual, nid)
            case Kind.Nil:
                actual = TList(self.fresh())
                self.emit(expected, actual, nid)
            case Kind.Hole:
                actual = self.fresh()
                self.emit(expected, actual, nid)
            case Kind.Var:
                name = t.cast(str, e.name)
                if name in env:
                    actual = self.instantiate(env[name])
                    self.emit(expected, actual, nid)
                else:
                    actual = self.fresh()
                    unbound = Constraint(expected, actual, nid, Role.Unbound)
                    self.constraints.append(unbound)
                    self.errors.append(TypeErrorRecord(ErrorKind.Unbound, unbound, self.subst.apply(expected), actual))
            case Kind.Plus:
                a, b = e.children
                self.check(a, Int, env)
                self.check(b, Int, env)
                actual = Int
                self.emit(expected, actual, nid)
            case Kind.App:
                f, x = e.children
                fty, xty, result = self.fresh(), self.fresh(), self.fresh()
                self.check(f, fty, env)
                self.check(x, xty, env)
                self.emit(fty, TFun(xty, result), nid, Role.Callee)
                actual = result
                self.emit(expected, actual, nid)
            case Kind.Fun:
                # split the expected type before the body so a recursive
                # function's result type is known while its body is checked
                (body,) = e.children
                param, result = self.fresh(), self.fresh()
                actual = TFun(param, result)
                self.emit(expected, actual, nid)
                self.check(body, result, env.new_child({t.cast(str, e.name): Scheme.mono(param)}))
            case Kind.Let:
                bound, body = e.children
                name = t.cast(str, e.name)
                alpha = self.fresh()
                if e.rec:
                    self.check(bound, alpha, env.new_child({name: Scheme.mono(alpha)}))
                else:
                    self.check(bound, alpha, env)
                scheme = self.generalize(alpha, env)
                self.check(body, expected, env.new_child({name: scheme}))
                actual = expected
            case Kind.If:
                cond, a, b = e.children
                self.check(cond, Bool, env)
                self.check(a, expected, env)
                self.check(b, expected, env)
                actual = expected
            case Kind.Pair:
                a, b = e.children
                left, right = self.fresh(), self.fresh()
                self.check(a, left, env)
                self.check(b, right, env)
                actual = TProd(left, right)
                self.emit(expected, actual, nid)
            case Kind.Cons:
                a, b = e.children
                elem = self.fresh()
                self.check(a, elem, env)
                self.check(b, TList(elem), env)
                actual = TList(elem)
                self.emit(expected, actual, nid)
            case Kind.PairCase:
                scrutinee, body = e.children
                x, y = e.binders
                left, right = self.fresh(), self.fresh()
                self.check(scrutinee, TProd(left, right), env)
                self.check(body, expected, env.new_child({x: Scheme.mono(left), y: Scheme.mono(right)}))
                actual = expected
            case Kind.ListCase:
                scrutinee, on_nil, on_cons = e.children
                h, tl = e.binders
                elem = self.fresh()
                self.check(scrutinee, TList(elem), env)
                self.check(on_nil, expected, env)
                self.check(on_cons, expected, env.new_child({h: Scheme.mono(elem), tl: Scheme.mono(TList(elem))}))
                actual = expected
            case _:
                raise ValueError(f"unknown node kind {e.kind}")
        self.actual[nid] = actual


def infer_partial(p: Program) -> PartialDerivation:
    """
    Infer types for every node of `p`. Never raises on ill-typed input: type
    errors are returned as data, in detection order.
    """
    d = _Inference(p).run()
    logger.debug(
        "inferred program types",
        extra={"nodes": len(p), "constraints": len(d.constraints), "errors": len(d.errors)},
    )
    return d


def generate_constraints(p: Program) -> list[Constraint]:
    """
    The equations inference emits for `p`, in traversal order. Generation
    and solving are interleaved (let-generalization needs the current
    substitution), so this runs a full inference and returns its log.
    """
    return list(_Inference(p).run().constraints)
