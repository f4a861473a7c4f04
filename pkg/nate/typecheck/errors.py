from __future__ import annotations

import typing as t

from nate.errors import NateError

if t.TYPE_CHECKING:
    from .types import Type


class TypecheckError(NateError):
    pass


class UnificationError(TypecheckError):
    """Two types have no unifier."""

    def __init__(self, left: Type, right: Type):
        super().__init__(f"cannot unify {left} with {right}")
        self.left = left
        self.right = right


class OccursCheck(UnificationError):
    """A type variable would have to contain itself."""

    pass


class ConstructorClash(UnificationError):
    """Different type constructors meet, e.g. `int` against `'a list`."""

    pass
