"""
Program-pair corpora, stored as JSON lines:

    {"bad": "<source>", "fix": "<source>", "meta": {...}}
"""

from __future__ import annotations

import logging
import pathlib
import typing as t

import pydantic as p

from nate.labeler import ProgramPair
from nate.lang import ParseError, parse, pretty
from nate.lib import json
from nate.model.base import BaseModel

from .errors import CorpusFormatError

logger = logging.getLogger(__name__)


class CorpusRecord(BaseModel):
    bad: str
    fix: str
    meta: dict[str, t.Any] = p.Field(default_factory=dict)


def decode_line(line: str, lineno: int | None = None, source: str | None = None) -> ProgramPair:
    try:
        record = CorpusRecord.model_validate_json(line)
    except p.ValidationError as exc:
        raise CorpusFormatError(f"invalid record: {exc.errors()[0]['msg']}", lineno, source) from exc
    try:
        bad = parse(record.bad)
        fix = parse(record.fix)
    except ParseError as exc:
        raise CorpusFormatError(f"cannot parse program: {exc}", lineno, source) from exc
    meta = dict(record.meta)
    if lineno is not None:
        meta.setdefault("line", lineno)
    return ProgramPair(bad=bad, fix=fix, meta=meta)


def encode_pair(pair: ProgramPair) -> str:
    bad = pair.bad.source or pretty(pair.bad)
    fix = pair.fix.source or pretty(pair.fix)
    meta = {k: v for k, v in pair.meta.items() if k != "line"}
    return json.dumps({"bad": bad, "fix": fix, "meta": meta}, sort_keys=True)


def iter_corpus(lines: t.Iterable[str], source: str | None = None) -> t.Iterator[ProgramPair]:
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        yield decode_line(line, lineno, source)


def read_corpus(path: pathlib.Path) -> list[ProgramPair]:
    with path.open("r", encoding="utf8") as f:
        pairs = list(iter_corpus(f, str(path)))
    logger.info(f"read {len(pairs)} pairs from {path}", extra={"pairs": len(pairs)})
    return pairs


def write_corpus(pairs: t.Iterable[ProgramPair], path: pathlib.Path) -> int:
    count = 0
    with path.open("w", encoding="utf8") as f:
        for pair in pairs:
            f.write(encode_pair(pair))
            f.write("\n")
            count += 1
    logger.info(f"wrote {count} pairs to {path}", extra={"pairs": count})
    return count
