"""
Recursive-descent parser for the surface syntax documented in
`docs/grammar.md`. Spans are byte offsets into the UTF-8 encoding of the
source.
"""

from __future__ import annotations

import bisect
import re
import typing as t

from . import ast
from .ast import Expr, Program, Span
from .errors import ParseError

Keywords = frozenset({"let", "rec", "in", "fun", "if", "then", "else", "match", "with", "true", "false"})

_Token = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>\(\*.*?\*\))
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>->|::|\?\?|[()\[\],;|=+])
    """,
    re.VERBOSE | re.DOTALL,
)


class Token(t.NamedTuple):
    kind: str  # int, ident, kw, punct, eof
    text: str
    start: int
    end: int


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(source):
        m = _Token.match(source, pos)
        if m is None:
            line, col = _position(source, pos)
            raise ParseError(f"unexpected character {source[pos]!r}", line, col)
        kind = m.lastgroup
        assert kind is not None
        if kind == "ident" and m.group() in Keywords:
            kind = "kw"
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), m.start(), m.end()))
        pos = m.end()
    tokens.append(Token("eof", "", len(source), len(source)))
    return tokens


def _position(source: str, offset: int) -> tuple[int, int]:
    line = source.count("\n", 0, offset) + 1
    column = offset - (source.rfind("\n", 0, offset) + 1) + 1
    return line, column


class Parser(object):
    # tokens that may start an application argument
    _AtomStart = frozenset({"(", "[", "??"})

    def __init__(self, source: str, allow_holes: bool = False):
        self.source = source
        self.allow_holes = allow_holes
        self.tokens = tokenize(source)
        self.pos = 0
        if source.isascii():
            self._offsets: list[int] | None = None
        else:
            # char index -> byte offset
            self._offsets = [0]
            for ch in source:
                self._offsets.append(self._offsets[-1] + len(ch.encode("utf-8")))

    def parse(self) -> Program:
        e = self.expr()
        self.expect("eof")
        return Program(e, self.source)

    # token plumbing

    @property
    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at(self, kind: str, text: str | None = None) -> bool:
        tok = self.peek
        return tok.kind == kind and (text is None or tok.text == text)

    def accept(self, kind: str, text: str | None = None) -> Token | None:
        if self.at(kind, text):
            return self.advance()
        return None

    def expect(self, kind: str, text: str | None = None) -> Token:
        tok = self.accept(kind, text)
        if tok is None:
            want = text or kind
            got = self.peek.text or "end of input"
            self.fail(f"expected {want!r}, found {got!r}", self.peek)
        return tok  # type: ignore[return-value]

    def fail(self, message: str, tok: Token) -> t.NoReturn:
        line, col = _position(self.source, tok.start)
        raise ParseError(message, line, col)

    def span(self, start: int, end: int) -> Span:
        if self._offsets is None:
            return Span(start, end)
        return Span(self._offsets[start], self._offsets[end])

    def _char_start(self, e: Expr) -> int:
        if self._offsets is None:
            return e.span.start
        return bisect.bisect_left(self._offsets, e.span.start)

    def _char_end(self, e: Expr) -> int:
        if self._offsets is None:
            return e.span.end
        return bisect.bisect_left(self._offsets, e.span.end)

    def ident(self) -> Token:
        tok = self.peek
        if tok.kind != "ident":
            self.fail(f"expected identifier, found {tok.text or 'end of input'!r}", tok)
        return self.advance()

    # grammar

    def expr(self) -> Expr:
        tok = self.peek
        if tok.kind == "kw":
            match tok.text:
                case "let":
                    return self.let()
                case "fun":
                    return self.fun()
                case "if":
                    return self.if_()
                case "match":
                    return self.match()
        return self.cons()

    def let(self) -> Expr:
        start = self.expect("kw", "let").start
        rec = self.accept("kw", "rec") is not None
        name = self.ident().text
        params: list[Token] = []
        while self.at("ident"):
            params.append(self.advance())
        self.expect("punct", "=")
        bound = self.expr()
        bound = self._curry(params, bound)
        self.expect("kw", "in")
        body = self.expr()
        return ast.let(name, bound, body, rec=rec, span=self.span(start, self._char_end(body)))

    def fun(self) -> Expr:
        start = self.expect("kw", "fun").start
        params = [self.ident()]
        while self.at("ident"):
            params.append(self.advance())
        self.expect("punct", "->")
        body = self.expr()
        inner = self._curry(params[1:], body)
        return ast.fun(params[0].text, inner, span=self.span(start, self._char_end(body)))

    def _curry(self, params: t.Sequence[Token], body: Expr) -> Expr:
        end = self._char_end(body)
        for p in reversed(params):
            body = ast.fun(p.text, body, span=self.span(p.start, end))
        return body

    def if_(self) -> Expr:
        start = self.expect("kw", "if").start
        c = self.expr()
        self.expect("kw", "then")
        a = self.expr()
        self.expect("kw", "else")
        b = self.expr()
        return ast.if_(c, a, b, span=self.span(start, self._char_end(b)))

    def match(self) -> Expr:
        start = self.expect("kw", "match").start
        scrutinee = self.expr()
        self.expect("kw", "with")
        self.accept("punct", "|")

        if self.at("punct", "("):
            self.advance()
            x = self.ident().text
            self.expect("punct", ",")
            y = self.ident().text
            self.expect("punct", ")")
            self.expect("punct", "->")
            body = self.expr()
            return ast.pair_case(scrutinee, x, y, body, span=self.span(start, self._char_end(body)))

        on_nil: Expr | None = None
        on_cons: tuple[str, str, Expr] | None = None
        last: Expr | None = None
        for i in range(2):
            if i:
                self.expect("punct", "|")
            if self.at("punct", "["):
                tok = self.advance()
                self.expect("punct", "]")
                if on_nil is not None:
                    self.fail("duplicate [] arm", tok)
                self.expect("punct", "->")
                on_nil = last = self.expr()
            else:
                tok = self.peek
                h = self.ident().text
                self.expect("punct", "::")
                tl = self.ident().text
                if on_cons is not None:
                    self.fail("duplicate :: arm", tok)
                self.expect("punct", "->")
                last = self.expr()
                on_cons = (h, tl, last)
        assert on_nil is not None and on_cons is not None and last is not None
        h, tl, cons_body = on_cons
        return ast.list_case(scrutinee, on_nil, h, tl, cons_body, span=self.span(start, self._char_end(last)))

    def cons(self) -> Expr:
        head = self.plus()
        if self.accept("punct", "::"):
            tail = self.cons()
            return ast.cons(head, tail, span=self.span(self._char_start(head), self._char_end(tail)))
        return head

    def plus(self) -> Expr:
        lhs = self.app()
        while self.accept("punct", "+"):
            rhs = self.app()
            lhs = ast.plus(lhs, rhs, span=self.span(self._char_start(lhs), self._char_end(rhs)))
        return lhs

    def app(self) -> Expr:
        f = self.atom()
        while self._starts_atom(self.peek):
            x = self.atom()
            f = ast.app(f, x, span=self.span(self._char_start(f), self._char_end(x)))
        return f

    def _starts_atom(self, tok: Token) -> bool:
        match tok.kind:
            case "int" | "ident":
                return True
            case "kw":
                return tok.text in ("true", "false")
            case "punct":
                return tok.text in self._AtomStart
        return False

    def atom(self) -> Expr:
        tok = self.advance()
        match tok.kind, tok.text:
            case "int", _:
                return ast.int_lit(int(tok.text), span=self.span(tok.start, tok.end))
            case "kw", "true" | "false":
                return ast.bool_lit(tok.text == "true", span=self.span(tok.start, tok.end))
            case "ident", _:
                return ast.var(tok.text, span=self.span(tok.start, tok.end))
            case "punct", "??":
                if not self.allow_holes:
                    self.fail("holes are not allowed in source programs", tok)
                return ast.hole(span=self.span(tok.start, tok.end))
            case "punct", "[":
                return self.list_literal(tok)
            case "punct", "(":
                inner = self.expr()
                if self.accept("punct", ","):
                    second = self.expr()
                    close = self.expect("punct", ")")
                    return ast.pair(inner, second, span=self.span(tok.start, close.end))
                self.expect("punct", ")")
                return inner
        self.fail(f"unexpected {tok.text or 'end of input'!r}", tok)

    def list_literal(self, opening: Token) -> Expr:
        items: list[Expr] = []
        if not self.at("punct", "]"):
            items.append(self.expr())
            while self.accept("punct", ";"):
                items.append(self.expr())
        close = self.expect("punct", "]")
        # `[a; b]` is sugar for `a :: b :: []`; the Nil takes the closing bracket
        out = ast.nil(span=self.span(close.start if items else opening.start, close.end))
        for item in reversed(items):
            out = ast.cons(item, out, span=self.span(self._char_start(item), close.end))
        return out


def parse(source: str, allow_holes: bool = False) -> Program:
    """
    Parse a complete program. `??` is rejected unless `allow_holes` is set,
    which is only used to read back programs printed after hole
    substitution.
    """
    return Parser(source, allow_holes=allow_holes).parse()


def parse_expr(source: str, allow_holes: bool = False) -> Expr:
    return parse(source, allow_holes=allow_holes).root
