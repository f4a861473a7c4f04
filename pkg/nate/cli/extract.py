from __future__ import annotations

import csv
import pathlib
import sys

import nate.lib.cli as click
from nate.core import di
from nate.core.config import HarnessSettings, SlicerSettings
from nate.features import SCHEMA_VERSION, FeatureSet, TypeAbstraction, schema, to_matrix
from nate.harness import prepare, read_corpus
from nate.labeler import ThresholdPolicy
from nate.learn import TrainConfig

from .common import corpus_option, pipeline_config, selection_options


@click.command("extract")
@corpus_option
@selection_options
@click.option("--abstraction", type=click.EnumType(TypeAbstraction), default=None, help="context type blocks")
@click.option("--out", "out_path", type=click.Path(dir_okay=False, path_type=pathlib.Path), default=None)
@di.inject
def extract(
    corpus_path: pathlib.Path,
    features: FeatureSet | None,
    slice_filter: bool | None,
    threshold: ThresholdPolicy | None,
    abstraction: TypeAbstraction | None,
    out_path: pathlib.Path | None,
    harness: HarnessSettings = di.Provide["harness"],
    train: TrainConfig = di.Provide["train"],
    slicer: SlicerSettings = di.Provide["slicer"],
):
    """Write one labeled feature row per sample of the corpus as CSV."""
    cf = pipeline_config(
        harness,
        train,
        slicer,
        features=features,
        slice_filter=slice_filter,
        threshold=threshold,
        abstraction=abstraction,
    )
    prepared = prepare(read_corpus(corpus_path), cf)
    names = schema().select(cf.features)

    out = out_path.open("w", encoding="utf8", newline="") if out_path else sys.stdout
    try:
        out.write(f"# schema {SCHEMA_VERSION} features={cf.features}\n")
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow([*names, "label", "program", "node"])
        for pr in prepared.programs:
            X, y = to_matrix(pr.samples, cf.features)
            for sample, row, label in zip(pr.samples, X, y):
                writer.writerow([*(f"{v:g}" for v in row), int(label), sample.program, sample.node])
    finally:
        if out_path:
            out.close()
