from .errors import ConstructorClash, OccursCheck, TypecheckError, UnificationError
from .infer import (
    Constraint,
    ErrorKind,
    PartialDerivation,
    Role,
    TypeErrorRecord,
    generate_constraints,
    infer_partial,
)
from .types import Bool, Int, Scheme, TBool, TFun, TInt, TList, TProd, TVar, TyCon, Type, head, render, type_mentions
from .unify import Substitution, unify

__all__ = [
    "Bool",
    "Constraint",
    "ConstructorClash",
    "ErrorKind",
    "Int",
    "OccursCheck",
    "PartialDerivation",
    "Role",
    "Scheme",
    "Substitution",
    "TBool",
    "TFun",
    "TInt",
    "TList",
    "TProd",
    "TVar",
    "TyCon",
    "Type",
    "TypeErrorRecord",
    "TypecheckError",
    "UnificationError",
    "generate_constraints",
    "head",
    "infer_partial",
    "render",
    "type_mentions",
    "unify",
]
