from __future__ import annotations

import pathlib

import nate.lib.cli as click
from nate.core import di
from nate.core.config import CorpusSettings
from nate.harness import Mutation, generate_corpus, write_corpus

from .common import seed_option


@click.command("gen")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False, path_type=pathlib.Path))
@click.option("--size", type=click.IntRange(min=0), default=None, help="number of pairs")
@seed_option
@click.option("--max-depth", type=click.IntRange(min=1), default=None)
@click.option("--rewrite-fraction", type=click.FloatRange(0.0, 1.0), default=None)
@click.option("--mutation", "mutations", multiple=True, type=click.EnumType(Mutation), help="repeatable")
@di.inject
def gen(
    out_path: pathlib.Path,
    size: int | None,
    seed: int | None,
    max_depth: int | None,
    rewrite_fraction: float | None,
    mutations: tuple[Mutation, ...],
    settings: CorpusSettings = di.Provide["corpus"],
):
    """Generate a synthetic corpus of (ill-typed, fixed) program pairs."""
    changes = {
        "size": size,
        "max_depth": max_depth,
        "rewrite_fraction": rewrite_fraction,
        "mutations": mutations or None,
    }
    spec = settings.spec().model_copy(update={k: v for k, v in changes.items() if v is not None})
    pairs = generate_corpus(spec, settings.seed if seed is None else seed)
    count = write_corpus(pairs, out_path)
    click.echo(f"wrote {count} pairs to {out_path}")
