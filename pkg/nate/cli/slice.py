from __future__ import annotations

import pathlib

import nate.lib.cli as click
from nate.core import di
from nate.core.config import SlicerSettings
from nate.slicer import minimal_slices, verify

from .common import program_argument, read_program


@click.command("slice")
@program_argument
@click.option("--budget", type=click.FloatRange(min=0.0, min_open=True), default=None, help="seconds per program")
@click.option("--verify", "check", is_flag=True, default=False, help="re-run the hole oracle over each slice")
@di.inject
def slice(  # noqa: A001
    program_path: pathlib.Path,
    budget: float | None,
    check: bool,
    settings: SlicerSettings = di.Provide["slicer"],
) -> int:
    """Print a minimal error slice of PROGRAM for each type error."""
    p = read_program(program_path)
    slices = minimal_slices(p, budget if budget is not None else settings.budget)
    for s in slices:
        members = sorted(s.nodes)
        note = "" if s.minimal else " (not minimized: budget exhausted)"
        click.echo(f"error {s.error_index}: {' '.join(map(str, members))}{note}")
        for n in members:
            e = p.node(n)
            click.echo(f"  {n} {e.kind.value} {e.span} {p.text(n)!r}")

    if not check:
        return 0
    failed = 0
    for c in verify(p, slices):
        if c.passed:
            click.echo(f"error {c.error_index}: pass")
            continue
        failed += 1
        reasons = []
        if not c.sufficient:
            reasons.append("error lost when holing outside the slice")
        if c.redundant:
            reasons.append(f"redundant nodes {' '.join(map(str, sorted(c.redundant)))}")
        click.echo(click.style(f"error {c.error_index}: fail ({'; '.join(reasons)})", fg="red"))
    return 1 if failed else 0
