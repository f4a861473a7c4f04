from __future__ import annotations

from .ast import Expr, Kind, Program

# precedence levels: 0 expression, 1 cons operand, 2 plus operand,
# 3 application head, 4 application argument
_Open = frozenset({Kind.Let, Kind.Fun, Kind.If, Kind.ListCase, Kind.PairCase})


def pretty(p: Program | Expr) -> str:
    """Render a program in surface syntax; `parse(pretty(p)) == p` modulo spans."""
    root = p.root if isinstance(p, Program) else p
    return _pr(root, 0, False)


def _pr(e: Expr, level: int, bar_follows: bool) -> str:
    """`bar_follows`: a `|` match arm comes after this expression"""
    if e.kind in _Open:
        # a nested list match would swallow the enclosing match's next arm
        if level > 0 or (bar_follows and e.kind is Kind.ListCase):
            return f"({_open(e, False)})"
        return _open(e, bar_follows)

    match e.kind:
        case Kind.Var:
            return str(e.name)
        case Kind.IntLit:
            return str(e.value)
        case Kind.BoolLit:
            return "true" if e.value else "false"
        case Kind.Nil:
            return "[]"
        case Kind.Hole:
            return "??"
        case Kind.Pair:
            a, b = e.children
            return f"({_pr(a, 0, False)}, {_pr(b, 0, False)})"
        case Kind.App:
            f, x = e.children
            out = f"{_pr(f, 3, False)} {_pr(x, 4, False)}"
            return f"({out})" if level > 3 else out
        case Kind.Plus:
            a, b = e.children
            out = f"{_pr(a, 2, False)} + {_pr(b, 3, False)}"
            return f"({out})" if level > 2 else out
        case Kind.Cons:
            a, b = e.children
            out = f"{_pr(a, 2, False)} :: {_pr(b, 1, False)}"
            return f"({out})" if level > 1 else out
    raise ValueError(f"cannot print {e.kind}")


def _open(e: Expr, bar_follows: bool) -> str:
    match e.kind:
        case Kind.Let:
            bound, body = e.children
            params: list[str] = []
            while bound.kind is Kind.Fun:
                params.append(str(bound.name))
                (bound,) = bound.children
            head = " ".join(["let", *(["rec"] if e.rec else []), str(e.name), *params])
            return f"{head} = {_pr(bound, 0, False)} in {_pr(body, 0, bar_follows)}"
        case Kind.Fun:
            params = [str(e.name)]
            (body,) = e.children
            while body.kind is Kind.Fun:
                params.append(str(body.name))
                (body,) = body.children
            return f"fun {' '.join(params)} -> {_pr(body, 0, bar_follows)}"
        case Kind.If:
            c, a, b = e.children
            return f"if {_pr(c, 0, False)} then {_pr(a, 0, False)} else {_pr(b, 0, bar_follows)}"
        case Kind.PairCase:
            scrutinee, body = e.children
            x, y = e.binders
            return f"match {_pr(scrutinee, 0, False)} with ({x}, {y}) -> {_pr(body, 0, bar_follows)}"
        case Kind.ListCase:
            scrutinee, on_nil, on_cons = e.children
            h, tl = e.binders
            return (
                f"match {_pr(scrutinee, 0, False)} with [] -> {_pr(on_nil, 0, True)}"
                f" | {h} :: {tl} -> {_pr(on_cons, 0, bar_follows)}"
            )
    raise ValueError(f"not an open form: {e.kind}")


def sexp(p: Program) -> list[str]:
    """
    The tree as an S-expression, one node per line: `(id Kind span payload`
    indented by depth, with each node's closing parens on its last line.
    """
    lines: list[str] = []

    def go(e: Expr, depth: int) -> None:
        head = f"{'  ' * depth}({e.node_id} {e.kind.value} {e.span}"
        if e.name is not None:
            head += f" {e.name}"
        elif e.value is not None:
            head += f" {str(e.value).lower()}"
        if e.binders:
            head += f" {' '.join(e.binders)}"
        if e.rec:
            head += " rec"
        lines.append(head)
        for c in e.children:
            go(c, depth + 1)
        lines[-1] += ")"

    go(p.root, 0)
    return lines
