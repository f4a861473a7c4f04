from __future__ import annotations

import pathlib

import nate.lib.cli as click
from nate.core import di, LoggingProvider
from nate.core.config import HarnessSettings, SlicerSettings
from nate.features import FeatureSet
from nate.harness import cross_validate, read_corpus, run_pipeline
from nate.labeler import ThresholdPolicy
from nate.learn import TrainConfig
from nate.model import BaselineKind, ModelKind

from .common import corpus_option, k_option, pipeline_config, seed_option, selection_options


@click.command("eval")
@corpus_option
@click.option(
    "--test-corpus",
    "test_path",
    type=click.Path(exists=True, dir_okay=False, path_type=pathlib.Path),
    default=None,
    help="train on --corpus and evaluate on this corpus",
)
@click.option("--folds", type=click.IntRange(min=2), default=None, help="cross-validation folds")
@click.option("--held-out", is_flag=True, default=False, help="evaluate on a seeded held-out share instead of folds")
@click.option(
    "--model",
    "models",
    multiple=True,
    type=click.EnumType(ModelKind),
    help="classifier to evaluate; repeatable, defaults to the configured set",
)
@click.option("--baseline", "baselines", multiple=True, type=click.EnumType(BaselineKind))
@selection_options
@seed_option
@k_option
@click.option("--epochs", type=click.IntRange(min=1), default=None)
@click.option("--balance-samples", is_flag=True, default=None, help="scale epochs to the unfiltered sample count")
@click.option("--span-overlap", is_flag=True, default=None, help="count span-overlapping predictions as hits")
@click.option("--workers", type=click.IntRange(min=1), default=None)
@click.option("--json", "json_path", type=click.Path(dir_okay=False, path_type=pathlib.Path), default=None)
@di.inject
def eval(  # noqa: A001
    corpus_path: pathlib.Path,
    test_path: pathlib.Path | None,
    folds: int | None,
    held_out: bool,
    models: tuple[ModelKind, ...],
    baselines: tuple[BaselineKind, ...],
    features: FeatureSet | None,
    slice_filter: bool | None,
    threshold: ThresholdPolicy | None,
    seed: int | None,
    k: int | None,
    epochs: int | None,
    balance_samples: bool | None,
    span_overlap: bool | None,
    workers: int | None,
    json_path: pathlib.Path | None,
    harness: HarnessSettings = di.Provide["harness"],
    train: TrainConfig = di.Provide["train"],
    slicer: SlicerSettings = di.Provide["slicer"],
    logging: LoggingProvider = di.Provide["logging"],
):
    """Evaluate classifiers and baselines on a corpus; prints a table, optionally writes JSON."""
    logger = logging.get_logger()
    if epochs is not None:
        train = train.model_copy(update={"epochs": epochs})
    if span_overlap is not None:
        harness = harness.model_copy(update={"span_overlap": span_overlap})
    cf = pipeline_config(
        harness,
        train,
        slicer,
        features=features,
        slice_filter=slice_filter,
        threshold=threshold,
        seed=seed,
        k=k,
        folds=folds,
        models=models or None,
        baselines=baselines or None,
        balance_samples=balance_samples,
        workers=workers,
    )
    corpus = read_corpus(corpus_path)
    if test_path is not None:
        report = run_pipeline(corpus, cf, read_corpus(test_path))
    elif held_out:
        report = run_pipeline(corpus, cf)
    else:
        report = cross_validate(corpus, cf)

    click.echo(report.render_table())
    if json_path is not None:
        json_path.write_text(report.to_json() + "\n", encoding="utf8")
        logger.info(f"wrote report to {json_path}", extra={"rows": len(report.rows)})
