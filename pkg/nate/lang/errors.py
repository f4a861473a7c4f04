"""Exceptions for parsing and navigating programs."""

from nate.errors import NateError


class LangError(NateError):
    """Error in a language-level operation."""

    pass


class ParseError(LangError):
    """Malformed source text; carries 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class UnknownNode(LangError, KeyError):
    """A node id does not exist in the program."""

    def __init__(self, node_id: int):
        super().__init__(node_id)
        self.node_id = node_id

    def __str__(self) -> str:
        return f"no node with id {self.node_id}"
