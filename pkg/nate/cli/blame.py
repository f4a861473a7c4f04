from __future__ import annotations

import pathlib

import nate.lib.cli as click
from nate.core import di
from nate.core.config import HarnessSettings, SlicerSettings
from nate.harness import blame as rank_blame
from nate.lib import json

from .common import k_option, load_model, model_file_option, program_argument, read_program


@click.command("blame")
@program_argument
@model_file_option
@k_option
@click.option("--slice-filter/--no-slice-filter", "slice_filter", default=None)
@click.option("--json", "as_json", is_flag=True, default=False, help="print the report as JSON")
@di.inject
def blame(
    program_path: pathlib.Path,
    model_path: pathlib.Path,
    k: int | None,
    slice_filter: bool | None,
    as_json: bool,
    harness: HarnessSettings = di.Provide["harness"],
    slicer: SlicerSettings = di.Provide["slicer"],
):
    """Rank the nodes of the ill-typed PROGRAM by the model's confidence that they are to blame."""
    p = read_program(program_path)
    model = load_model(model_path)
    report = rank_blame(
        model,
        p,
        k=k or harness.k,
        filter_slice=harness.slice_filter if slice_filter is None else slice_filter,
        budget=slicer.budget,
    )
    if as_json:
        click.echo(json.dumps(report.model_dump(mode="json"), indent=2, sort_keys=True))
        return
    for rank, e in enumerate(report.entries, start=1):
        text = " ".join(p.text(e.node).split())
        click.echo(f"{rank}. node {e.node} [{e.start}-{e.end}] {e.confidence:.4f}  {text}")
