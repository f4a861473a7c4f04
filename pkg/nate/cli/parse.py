from __future__ import annotations

import pathlib

import nate.lib.cli as click
from nate.lang import sexp

from .common import program_argument, read_program


@click.command("parse")
@program_argument
def parse(program_path: pathlib.Path):
    """Print the syntax tree of PROGRAM as an S-expression, one `(id kind span` node per line."""
    for line in sexp(read_program(program_path)):
        click.echo(line)
