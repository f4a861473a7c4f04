"""
Shared fixtures: a container booted in the test environment, the sumList
program used throughout as the worked example, and small corpora.
"""

from __future__ import annotations

import os
import typing as t
from pathlib import Path

import pydantic as p
import pytest

import nate
from nate.core import NateContainer
from nate.harness import CorpusSpec, generate_corpus
from nate.labeler import ProgramPair
from nate.lang import Program, parse
from nate.model import DeploymentEnvironment

SUM_LIST = """\
let rec sumList xs =
  match xs with
  | [] -> []
  | hd :: tl -> hd + sumList tl
in sumList
"""

SUM_LIST_FIXED = """\
let rec sumList xs =
  match xs with
  | [] -> 0
  | hd :: tl -> hd + sumList tl
in sumList
"""

# pre-order ids of the sumList nodes named in the worked example
SumListNodes: t.Final[dict[str, int]] = {
    "let": 0,
    "fun": 1,
    "match": 2,
    "xs": 3,
    "nil": 4,
    "plus": 5,
    "hd": 6,
    "call": 7,
    "callee": 8,
    "tl": 9,
    "body": 10,
}


@pytest.fixture(scope="session")
def config_root() -> Path:
    return Path(os.path.dirname(nate.__file__)).parent / "config"


@pytest.fixture(scope="session")
def container(config_root: Path) -> t.Generator[NateContainer]:
    """Boot the DI container once per session in the test environment."""
    ct = NateContainer()
    NateContainer.boot(
        ct,
        debug=True,
        env=DeploymentEnvironment.Test,
        config_root=p.FileUrl(f"file://{config_root}"),
        override=(),
    )

    yield ct

    ct.shutdown_resources()


@pytest.fixture
def sum_list() -> Program:
    return parse(SUM_LIST)


@pytest.fixture
def sum_list_pair() -> ProgramPair:
    return ProgramPair(bad=parse(SUM_LIST), fix=parse(SUM_LIST_FIXED), meta={"name": "sumList"})


@pytest.fixture(scope="session")
def small_corpus() -> list[ProgramPair]:
    return generate_corpus(CorpusSpec(size=40, max_depth=3), seed=7)
