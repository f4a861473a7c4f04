from __future__ import annotations

import pathlib

import nate.lib.cli as click
from nate.core import di, LoggingProvider
from nate.core.config import HarnessSettings, SlicerSettings
from nate.features import FeatureSet
from nate.harness import TooFewPrograms, prepare, read_corpus
from nate.harness.pipeline import balanced_epochs, train_models
from nate.labeler import ThresholdPolicy
from nate.learn import TrainConfig, save_file
from nate.model import ModelKind

from .common import corpus_option, pipeline_config, seed_option, selection_options


@click.command("train")
@corpus_option
@click.option("--model", "kind", type=click.EnumType(ModelKind), default=ModelKind.Tree.value)
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False, path_type=pathlib.Path))
@selection_options
@seed_option
@click.option("--epochs", type=click.IntRange(min=1), default=None)
@click.option("--balance-samples", is_flag=True, default=None, help="scale epochs to the unfiltered sample count")
@di.inject
def train(
    corpus_path: pathlib.Path,
    kind: ModelKind,
    out_path: pathlib.Path,
    features: FeatureSet | None,
    slice_filter: bool | None,
    threshold: ThresholdPolicy | None,
    seed: int | None,
    epochs: int | None,
    balance_samples: bool | None,
    harness: HarnessSettings = di.Provide["harness"],
    train_cf: TrainConfig = di.Provide["train"],
    slicer: SlicerSettings = di.Provide["slicer"],
    logging: LoggingProvider = di.Provide["logging"],
):
    """Train a classifier on every usable pair of the corpus and write it to a model file."""
    logger = logging.get_logger()
    if epochs is not None:
        train_cf = train_cf.model_copy(update={"epochs": epochs})
    cf = pipeline_config(
        harness,
        train_cf,
        slicer,
        features=features,
        slice_filter=slice_filter,
        threshold=threshold,
        seed=seed,
        models=(kind,),
        balance_samples=balance_samples,
    )
    prepared = prepare(read_corpus(corpus_path), cf)
    if not prepared.programs:
        raise TooFewPrograms(1, 0)
    models = train_models(prepared.programs, cf, cf.train, balanced_epochs(prepared.programs, cf))
    save_file(models[kind], out_path)
    logger.info(
        f"trained {kind.value} on {len(prepared.programs)} programs",
        extra={"features": str(cf.features), "slice_filter": cf.filter_slice, "out": str(out_path)},
    )
