"""
Monomorphic types and type schemes. Types are immutable; type variables
are identified by an integer index that is fresh within one inference run.
"""

from __future__ import annotations

import dataclasses
import enum
import string
import typing as t


class TyCon(enum.Enum):
    """Type constructors, in feature order."""

    Int = "Int"
    Bool = "Bool"
    Fun = "Fun"
    Prod = "Prod"
    List = "List"


@dataclasses.dataclass(frozen=True, slots=True)
class TVar:
    index: int

    def __str__(self) -> str:
        return render(self)


@dataclasses.dataclass(frozen=True, slots=True)
class TInt:
    def __str__(self) -> str:
        return "int"


@dataclasses.dataclass(frozen=True, slots=True)
class TBool:
    def __str__(self) -> str:
        return "bool"


@dataclasses.dataclass(frozen=True, slots=True)
class TFun:
    arg: Type
    ret: Type

    def __str__(self) -> str:
        return render(self)


@dataclasses.dataclass(frozen=True, slots=True)
class TProd:
    left: Type
    right: Type

    def __str__(self) -> str:
        return render(self)


@dataclasses.dataclass(frozen=True, slots=True)
class TList:
    elem: Type

    def __str__(self) -> str:
        return render(self)


Type = TVar | TInt | TBool | TFun | TProd | TList

Int = TInt()
Bool = TBool()


def head(ty: Type) -> TyCon | None:
    """outermost constructor; None for a variable"""
    match ty:
        case TInt():
            return TyCon.Int
        case TBool():
            return TyCon.Bool
        case TFun():
            return TyCon.Fun
        case TProd():
            return TyCon.Prod
        case TList():
            return TyCon.List
    return None


def type_mentions(ty: Type) -> frozenset[TyCon]:
    """every constructor occurring anywhere in `ty`"""
    found: set[TyCon] = set()
    stack: list[Type] = [ty]
    while stack:
        cur = stack.pop()
        tag = head(cur)
        if tag is not None:
            found.add(tag)
        match cur:
            case TFun(a, b) | TProd(a, b):
                stack.extend((a, b))
            case TList(e):
                stack.append(e)
    return frozenset(found)


def free_vars(ty: Type) -> set[int]:
    match ty:
        case TVar(i):
            return {i}
        case TFun(a, b) | TProd(a, b):
            return free_vars(a) | free_vars(b)
        case TList(e):
            return free_vars(e)
    return set()


def substitute(ty: Type, mapping: t.Mapping[int, Type]) -> Type:
    """single-pass replacement of variables (no chasing)"""
    match ty:
        case TVar(i):
            return mapping.get(i, ty)
        case TFun(a, b):
            return TFun(substitute(a, mapping), substitute(b, mapping))
        case TProd(a, b):
            return TProd(substitute(a, mapping), substitute(b, mapping))
        case TList(e):
            return TList(substitute(e, mapping))
    return ty


@dataclasses.dataclass(frozen=True, slots=True)
class Scheme:
    """`forall quantified. body`"""

    quantified: tuple[int, ...]
    body: Type

    @classmethod
    def mono(cls, ty: Type) -> Scheme:
        return cls((), ty)

    def __str__(self) -> str:
        return render(self.body)


def _var_name(n: int) -> str:
    letters = string.ascii_lowercase
    name = letters[n % 26]
    if n >= 26:
        name += str(n // 26)
    return f"'{name}"


def render(ty: Type, names: dict[int, str] | None = None) -> str:
    """
    OCaml-style rendering. Variables are named 'a, 'b, ... in order of first
    occurrence; pass a shared `names` dict to keep naming consistent across
    several types.
    """
    if names is None:
        names = {}

    def go(ty: Type, prec: int) -> str:
        # prec: 0 arrow, 1 product, 2 list argument
        match ty:
            case TVar(i):
                if i not in names:
                    names[i] = _var_name(len(names))
                return names[i]
            case TInt():
                return "int"
            case TBool():
                return "bool"
            case TList(e):
                return f"{go(e, 2)} list"
            case TProd(a, b):
                out = f"{go(a, 2)} * {go(b, 2)}"
                return f"({out})" if prec > 1 else out
            case TFun(a, b):
                out = f"{go(a, 1)} -> {go(b, 0)}"
                return f"({out})" if prec > 0 else out
        raise TypeError(f"not a type: {ty!r}")

    return go(ty, 0)
