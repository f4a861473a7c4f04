"""Arguments and options shared by several commands."""

from __future__ import annotations

import pathlib
import typing as t

import nate.lib.cli as click
from nate.core.config import HarnessSettings, SlicerSettings
from nate.features import SCHEMA_VERSION, FeatureSet
from nate.harness import PipelineConfig
from nate.labeler import ThresholdPolicy
from nate.lang import Program, parse
from nate.learn import Classifier, TrainConfig, load_file

F = t.TypeVar("F", bound=t.Callable[..., t.Any])


def read_program(path: pathlib.Path) -> Program:
    return parse(path.read_text(encoding="utf8"))


def load_model(path: pathlib.Path) -> Classifier:
    return load_file(path, schema_version=SCHEMA_VERSION)


program_argument = click.argument(
    "program_path", metavar="PROGRAM", type=click.Path(exists=True, dir_okay=False, path_type=pathlib.Path)
)
corpus_option = click.option(
    "--corpus",
    "corpus_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False, path_type=pathlib.Path),
    help="JSON Lines corpus of (bad, fix) pairs",
)
model_file_option = click.option(
    "--model",
    "model_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False, path_type=pathlib.Path),
    help="model file written by `nate train`",
)
k_option = click.option("--k", type=click.IntRange(1, 3), default=None, help="number of ranked predictions")
seed_option = click.option("--seed", type=click.U64ParamType(), default=None)


def selection_options(fn: F) -> F:
    """`--features`, `--no-slice-filter` and `--threshold`; each defaults to the harness settings"""
    fn = click.option(
        "--threshold",
        type=click.ParsedParamType(ThresholdPolicy, "fixed:<f>|sigma"),
        default=None,
        help="outlier threshold policy",
    )(fn)
    fn = click.option(
        "--slice-filter/--no-slice-filter",
        "slice_filter",
        default=None,
        help="keep only nodes of some minimal error slice",
    )(fn)
    fn = click.option(
        "--features",
        type=click.ParsedParamType(FeatureSet, "local|+context|+type|+size|+slice|all"),
        default=None,
        help="feature groups, e.g. local+type",
    )(fn)
    return fn


def pipeline_config(
    harness: HarnessSettings,
    train: TrainConfig,
    slicer: SlicerSettings,
    /,
    features: FeatureSet | None = None,
    slice_filter: bool | None = None,
    threshold: ThresholdPolicy | None = None,
    seed: int | None = None,
    **update: t.Any,
) -> PipelineConfig:
    """the configured pipeline with command-line values laid over it"""
    if seed is not None:
        train = train.model_copy(update={"seed": seed})
    cf = harness.pipeline(train, slicer)
    changes = {
        "features": features,
        "filter_slice": slice_filter,
        "threshold": threshold,
        **update,
    }
    return cf.model_copy(update={k: v for k, v in changes.items() if v is not None})
