from __future__ import annotations

import pathlib

import nate.lib.cli as click
from nate.core import di
from nate.core.config import SlicerSettings
from nate.features import FeatureSet, node_vector, schema
from nate.harness import model_abstraction
from nate.learn import DecisionTreeModel, RandomForestModel
from nate.slicer import in_any_slice, minimal_slices
from nate.typecheck import infer_partial

from .common import load_model, model_file_option, program_argument, read_program


@click.command("explain")
@program_argument
@model_file_option
@click.option("--node", "node_id", required=True, type=click.IntRange(min=0), help="pre-order node id")
@click.option("--tree", "tree_index", type=click.IntRange(min=0), default=0, help="tree of a forest model")
@di.inject
def explain(
    program_path: pathlib.Path,
    model_path: pathlib.Path,
    node_id: int,
    tree_index: int,
    slicer: SlicerSettings = di.Provide["slicer"],
):
    """Print the predicates NODE of PROGRAM satisfies on its way through a tree model."""
    p = read_program(program_path)
    model = load_model(model_path)
    match model:
        case DecisionTreeModel():
            tree = model
        case RandomForestModel():
            if tree_index >= len(model.trees):
                raise click.BadParameter(f"forest has {len(model.trees)} trees", param_hint="--tree")
            tree = model.trees[tree_index]
        case _:
            raise click.UsageError(f"{model.kind.value} models have no decision paths")

    fs = FeatureSet.parse(model.meta.get("features", "all"))
    s = schema()
    names = s.select(fs)
    d = infer_partial(p)
    slices = minimal_slices(p, slicer.budget) if not d.well_typed else []
    e = p.node(node_id)
    v = node_vector(p, node_id, d, in_any_slice(slices, node_id), model_abstraction(model))[s.columns(fs)]

    click.echo(f"node {node_id} {e.kind.value} {e.span} {' '.join(p.text(node_id).split())!r}")
    for step in tree.decision_path(v):
        ratio = f"blamed {step.positive:g} / not blamed {step.negative:g}"
        if step.feature < 0:
            click.echo(f"  leaf {step.node}: confidence {step.confidence:.4f} ({ratio})")
            break
        op = "<=" if step.went_left else ">"
        value = v[step.feature]
        click.echo(f"  {names[step.feature]} = {value:g} {op} {step.threshold:g} ({ratio})")
