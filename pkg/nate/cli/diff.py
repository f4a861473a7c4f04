from __future__ import annotations

import pathlib

import nate.lib.cli as click
from nate.labeler import ProgramPair, tree_diff

from .common import read_program


@click.command("diff")
@click.argument("bad_path", metavar="BAD", type=click.Path(exists=True, dir_okay=False, path_type=pathlib.Path))
@click.argument("fix_path", metavar="FIX", type=click.Path(exists=True, dir_okay=False, path_type=pathlib.Path))
def diff(bad_path: pathlib.Path, fix_path: pathlib.Path):
    """Print the nodes of BAD that FIX changed, and the diff fraction."""
    pair = ProgramPair(bad=read_program(bad_path), fix=read_program(fix_path), meta={"bad": str(bad_path)}).check()
    labels = tree_diff(pair)
    click.echo(f"changed: {' '.join(map(str, sorted(labels.changed)))}")
    click.echo(f"diff_fraction: {labels.diff_fraction:.4f}")
