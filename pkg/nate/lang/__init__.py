from .ast import Expr, Kind, NoSpan, Program, Span, navigate, replace_many, replace_subtree
from .errors import LangError, ParseError, UnknownNode
from .parser import parse, parse_expr
from .printer import pretty, sexp

__all__ = [
    "Expr",
    "Kind",
    "LangError",
    "NoSpan",
    "ParseError",
    "Program",
    "Span",
    "UnknownNode",
    "navigate",
    "parse",
    "parse_expr",
    "pretty",
    "replace_many",
    "replace_subtree",
    "sexp",
]
