from __future__ import annotations

import pathlib

import nate.lib.cli as click
from nate.core import di, LoggingProvider
from nate.typecheck import infer_partial, render

from .common import program_argument, read_program


@click.command("check")
@program_argument
@di.inject
def check(program_path: pathlib.Path, logging: LoggingProvider = di.Provide["logging"]) -> int:
    """Type-check PROGRAM; exits 1 when it is ill-typed."""
    logger = logging.get_logger()
    p = read_program(program_path)
    d = infer_partial(p)
    logger.debug(f"checked {program_path}", extra={"nodes": len(p), "errors": len(d.errors)})
    if d.well_typed:
        click.echo(f"well-typed: {render(d.root_type)}")
        return 0
    for err in d.errors:
        click.echo(err.describe())
    return 1
