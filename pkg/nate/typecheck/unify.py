"""Robinson unification with an occurs check over idempotent-on-demand substitutions."""

from __future__ import annotations

import typing as t

from .errors import ConstructorClash, OccursCheck
from .types import TBool, TFun, TInt, TList, TProd, TVar, Type


class Substitution(object):
    """
    Triangular substitution: a variable may map to a type that still
    contains bound variables, so lookups chase bindings. `apply` resolves
    fully.
    """

    __slots__ = ("_map",)

    def __init__(self, bindings: t.Mapping[int, Type] | None = None):
        self._map: dict[int, Type] = dict(bindings or {})

    def __len__(self) -> int:
        return len(self._map)

    def __contains__(self, index: object) -> bool:
        return index in self._map

    def __repr__(self) -> str:
        return f"<Substitution {self.apply_all()}>"

    def copy(self) -> Substitution:
        return Substitution(self._map)

    def bind(self, index: int, ty: Type) -> None:
        self._map[index] = ty

    def walk(self, ty: Type) -> Type:
        """resolve the head of `ty` only"""
        while isinstance(ty, TVar) and ty.index in self._map:
            ty = self._map[ty.index]
        return ty

    def apply(self, ty: Type) -> Type:
        ty = self.walk(ty)
        match ty:
            case TFun(a, b):
                return TFun(self.apply(a), self.apply(b))
            case TProd(a, b):
                return TProd(self.apply(a), self.apply(b))
            case TList(e):
                return TList(self.apply(e))
        return ty

    def apply_all(self) -> dict[int, Type]:
        return {i: self.apply(TVar(i)) for i in sorted(self._map)}


class _Overlay(Substitution):
    """tentative bindings over a base substitution, committed only on success"""

    __slots__ = ("_base",)

    def __init__(self, base: Substitution):
        super().__init__()
        self._base = base

    def walk(self, ty: Type) -> Type:
        while isinstance(ty, TVar):
            if ty.index in self._map:
                ty = self._map[ty.index]
            elif ty.index in self._base._map:
                ty = self._base._map[ty.index]
            else:
                break
        return ty

    def commit(self) -> None:
        self._base._map.update(self._map)


def _occurs(index: int, ty: Type, s: Substitution) -> bool:
    ty = s.walk(ty)
    match ty:
        case TVar(i):
            return i == index
        case TFun(a, b) | TProd(a, b):
            return _occurs(index, a, s) or _occurs(index, b, s)
        case TList(e):
            return _occurs(index, e, s)
    return False


def _unify(a: Type, b: Type, s: Substitution) -> None:
    a = s.walk(a)
    b = s.walk(b)
    if a == b:
        return
    if isinstance(a, TVar) or isinstance(b, TVar):
        var, other = (a, b) if isinstance(a, TVar) else (b, a)
        assert isinstance(var, TVar)
        if _occurs(var.index, other, s):
            raise OccursCheck(s.apply(var), s.apply(other))
        s.bind(var.index, other)
        return
    match a, b:
        case TInt(), TInt():
            return
        case TBool(), TBool():
            return
        case TFun(a1, a2), TFun(b1, b2):
            _unify(a1, b1, s)
            _unify(a2, b2, s)
            return
        case TProd(a1, a2), TProd(b1, b2):
            _unify(a1, b1, s)
            _unify(a2, b2, s)
            return
        case TList(ae), TList(be):
            _unify(ae, be, s)
            return
    raise ConstructorClash(s.apply(a), s.apply(b))


def unify_in_place(a: Type, b: Type, s: Substitution) -> None:
    """Extend `s` with a unifier of `a` and `b`; on failure `s` is untouched."""
    overlay = _Overlay(s)
    _unify(a, b, overlay)
    overlay.commit()


def unify(a: Type, b: Type, s: Substitution | None = None) -> Substitution:
    """
    Most general unifier of `a` and `b` extending `s`. The input
    substitution is not modified.

    Raises `OccursCheck` for cyclic equations such as `'a = 'a list`, and
    `ConstructorClash` when different constructors meet.
    """
    out = s.copy() if s is not None else Substitution()
    unify_in_place(a, b, out)
    return out
