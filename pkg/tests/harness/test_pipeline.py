"""
End-to-end evaluation: preparation, held-out runs, cross-validation and
report rendering.
"""

import pytest

from nate.features import FeatureSet, TypeAbstraction
from nate.harness import (
    AbstractionMismatch,
    CorpusSpec,
    EvalReport,
    PipelineConfig,
    TooFewPrograms,
    assign_folds,
    blame,
    cross_validate,
    generate_corpus,
    model_abstraction,
    prepare,
    run_pipeline,
)
from nate.harness.pipeline import balanced_epochs, train_models
from nate.labeler import ProgramPair, ThresholdPolicy, filter_outliers
from nate.learn import TrainConfig
from nate.lang import parse
from nate.model import BaselineKind, ModelKind
from nate.slicer import NotIllTyped, minimal_slices, slice_union


def bool_operand_corpus(n: int) -> list[ProgramPair]:
    """one error shape throughout: a boolean where an int belongs"""
    return [
        ProgramPair(bad=parse(f"let x = {i} in x + true"), fix=parse(f"let x = {i} in x + {i + 1}"), meta={"i": i})
        for i in range(n)
    ]


@pytest.fixture
def config() -> PipelineConfig:
    return PipelineConfig(folds=3, slice_budget=None, train=TrainConfig(epochs=2, n_estimators=3))


class TestPrepare(object):
    def test_accounting(self, config: PipelineConfig) -> None:
        """every pair is kept, discarded or skipped"""
        rewrite = ProgramPair(bad=parse("1 + true"), fix=parse("let f x = x :: [] in f (1 + 2)"))
        unfixed = ProgramPair(
            bad=parse("let x = 1 in let y = 2 in let z = 3 in x + true"),
            fix=parse("let x = 1 in let y = 2 in let z = 3 in x + false"),
        )
        corpus = [*bool_operand_corpus(4), rewrite, unfixed]
        prepared = prepare(corpus, config)
        assert (prepared.read, prepared.discarded, prepared.skipped) == (6, 1, 1)
        assert len(prepared.programs) == 4

    def test_samples(self, config: PipelineConfig) -> None:
        """slice-filtered samples carry the diff labels"""
        (pr,) = prepare(bool_operand_corpus(1), config).programs
        assert [s.node for s in pr.samples] == [0, 2, 4]
        assert [s.label for s in pr.samples] == [False, False, True]
        assert pr.unfiltered == 5

    def test_balanced_epochs(self, config: PipelineConfig) -> None:
        """balancing scales epochs by the unfiltered to filtered sample ratio"""
        programs = prepare(bool_operand_corpus(3), config).programs
        assert balanced_epochs(programs, config) == 2
        balanced = config.model_copy(update={"balance_samples": True, "train": TrainConfig(epochs=3)})
        assert balanced_epochs(programs, balanced) == 5


class TestRunPipeline(object):
    def test_separable(self, config: PipelineConfig) -> None:
        """a tree trained and tested on one error shape is always right"""
        corpus = bool_operand_corpus(20)
        report = run_pipeline(corpus, config, test_corpus=corpus)
        assert report.row("tree").top1 == 1.0
        assert report.row("first-error").top1 == 1.0
        assert report.row("random").top3 == 1.0
        assert report.evaluated == 20

    def test_held_out(self, config: PipelineConfig) -> None:
        """without a test corpus a seeded share is held out"""
        report = run_pipeline(bool_operand_corpus(20), config)
        assert report.evaluated == 4
        assert report.row("tree").top1 == 1.0
        assert report.folds == ()

    def test_empty(self, config: PipelineConfig) -> None:
        """nothing to train on"""
        with pytest.raises(TooFewPrograms):
            run_pipeline([], config)

    def test_deterministic(self, small_corpus: list[ProgramPair], config: PipelineConfig) -> None:
        """identical inputs give byte-identical reports"""
        cf = config.model_copy(update={"models": (ModelKind.Tree, ModelKind.Linear)})
        assert run_pipeline(small_corpus, cf).to_json() == run_pipeline(small_corpus, cf).to_json()

    def test_monotone_top_k(self, small_corpus: list[ProgramPair], config: PipelineConfig) -> None:
        """top-1 <= top-2 <= top-3 for every row"""
        for row in run_pipeline(small_corpus, config).rows:
            assert row.top1 <= row.top2 <= row.top3


class TestBlame(object):
    def test_predictions_are_slice_members(self, small_corpus: list[ProgramPair], config: PipelineConfig) -> None:
        """with slice filtering every blamed node is in a slice"""
        prepared = prepare(small_corpus, config)
        (model,) = train_models(prepared.programs, config, config.train, 2).values()
        for pr in prepared.programs[:10]:
            report = blame(model, pr.pair.bad, slices=pr.slices)
            assert 1 <= len(report) <= 3
            assert set(report.nodes) <= slice_union(pr.slices)

    def test_feature_set_from_model(self, config: PipelineConfig) -> None:
        """the model's recorded feature set is used by default"""
        cf = config.model_copy(update={"features": FeatureSet.parse("local")})
        prepared = prepare(bool_operand_corpus(5), cf)
        (model,) = train_models(prepared.programs, cf, cf.train, 1).values()
        assert model.meta["features"] == "local"
        assert model.width == 14
        p = parse("let y = 3 in y + false")
        assert blame(model, p, k=1).nodes == [4]
        assert blame(model, p, k=1, slices=minimal_slices(p)).nodes == [4]

    def test_abstraction_from_model(self, config: PipelineConfig) -> None:
        """the model's recorded type abstraction is used, and a different one is refused"""
        cf = config.model_copy(update={"abstraction": TypeAbstraction.Mentions})
        prepared = prepare(bool_operand_corpus(5), cf)
        (model,) = train_models(prepared.programs, cf, cf.train, 1).values()
        assert model.meta["abstraction"] == "mentions"
        assert model_abstraction(model) is TypeAbstraction.Mentions
        p = parse("let y = 3 in y + false")
        assert blame(model, p, k=1).nodes == blame(model, p, k=1, abstraction=TypeAbstraction.Mentions).nodes
        with pytest.raises(AbstractionMismatch):
            blame(model, p, abstraction=TypeAbstraction.Head)
        model.meta.pop("abstraction")
        assert model_abstraction(model) is TypeAbstraction.Head

    def test_well_typed(self, config: PipelineConfig) -> None:
        """blaming a well-typed program is an error"""
        prepared = prepare(bool_operand_corpus(3), config)
        (model,) = train_models(prepared.programs, config, config.train, 1).values()
        with pytest.raises(NotIllTyped):
            blame(model, parse("1 + 2"))


class TestCrossValidate(object):
    def test_folds(self) -> None:
        """fold sizes differ by at most one and depend on the seed"""
        assignment = assign_folds(10, 3, 42)
        assert sorted(assignment.count(f) for f in range(3)) == [3, 3, 4]
        assert assign_folds(10, 3, 42) == assignment

    def test_leave_one_out(self, config: PipelineConfig) -> None:
        """as many folds as programs tests each program once"""
        report = cross_validate(bool_operand_corpus(5), config, folds=5)
        assert len(report.folds) == 5
        assert all(f.test_programs == 1 and f.train_programs == 4 for f in report.folds)
        assert report.evaluated == 5
        assert report.row("tree").top1 == 1.0

    def test_accounting(self, small_corpus: list[ProgramPair], config: PipelineConfig) -> None:
        """evaluated plus skipped plus discarded is the corpus"""
        report = cross_validate(small_corpus, config)
        assert report.evaluated + report.skipped + report.discarded == report.programs == len(small_corpus)
        for fold in report.folds:
            for row in fold.rows:
                assert row.top1 <= row.top2 <= row.top3

    def test_workers(self, small_corpus: list[ProgramPair], config: PipelineConfig) -> None:
        """threaded folds give the same report"""
        threaded = config.model_copy(update={"workers": 3})
        assert cross_validate(small_corpus, config).to_json() == cross_validate(small_corpus, threaded).to_json()

    def test_too_few(self, config: PipelineConfig) -> None:
        """fewer programs than folds"""
        with pytest.raises(TooFewPrograms):
            cross_validate(bool_operand_corpus(2), config)
        with pytest.raises(ValueError):
            cross_validate(bool_operand_corpus(4), config, folds=1)


class TestReport(object):
    def test_table(self, config: PipelineConfig) -> None:
        """the table lists every row and marks baselines"""
        cf = config.model_copy(update={"baselines": (BaselineKind.FirstError,)})
        report = run_pipeline(bool_operand_corpus(10), cf)
        table = report.render_table()
        assert table.splitlines()[0].split() == ["model", "top-1", "top-2", "top-3", "recall", "evaluated"]
        assert "first-error *" in table
        assert "* baseline" in table
        assert "features=all slice-filter=on threshold=fixed:0.4 seed=42" in table

    def test_json(self, config: PipelineConfig) -> None:
        """reports round trip through JSON"""
        report = run_pipeline(bool_operand_corpus(10), config)
        assert EvalReport.model_validate_json(report.to_json()) == report


@pytest.mark.slow
class TestSyntheticCorpus(object):
    @pytest.fixture(scope="class")
    def ablation_corpus(self) -> list[ProgramPair]:
        return generate_corpus(CorpusSpec(size=600), 42)

    def test_learning_beats_random(self) -> None:
        """ten-fold top-1 of a tree beats picking a random slice member by 15 points"""
        corpus = generate_corpus(CorpusSpec(size=2000), 42)
        report = cross_validate(corpus, PipelineConfig(folds=10))
        assert report.row("tree").top1 >= report.row("random").top1 + 0.15
        assert len(report.folds) == 10
        for fold in report.folds:
            for row in fold.rows:
                assert row.top1 <= row.top2 <= row.top3

    def test_feature_ablation(self, ablation_corpus: list[ProgramPair]) -> None:
        """each added feature group keeps or raises top-1, and the full set beats local syntax alone"""
        top1 = {
            features: cross_validate(ablation_corpus, PipelineConfig(folds=5, features=FeatureSet.parse(features)))
            .row("tree")
            .top1
            for features in ("local", "local+type", "all")
        }
        assert top1["all"] >= top1["local+type"] >= top1["local"]
        assert top1["all"] > top1["local"]

    def test_slice_filter_helps(self, ablation_corpus: list[ProgramPair]) -> None:
        """ranking only slice members does at least as well as ranking every node"""
        filtered = cross_validate(ablation_corpus, PipelineConfig(folds=5))
        unfiltered = cross_validate(ablation_corpus, PipelineConfig(folds=5, filter_slice=False))
        assert filtered.row("tree").top1 >= unfiltered.row("tree").top1

    def test_outlier_filter_helps(self) -> None:
        """dropping rewritten fixes from training does at least as well on clean test pairs"""
        train_corpus = generate_corpus(CorpusSpec(size=500, rewrite_fraction=0.3), 5)
        test_corpus, _ = filter_outliers(generate_corpus(CorpusSpec(size=200), 6), ThresholdPolicy())
        filtered = run_pipeline(train_corpus, PipelineConfig(), test_corpus=test_corpus)
        kept = run_pipeline(
            train_corpus, PipelineConfig(threshold=ThresholdPolicy.parse("fixed:1.0")), test_corpus=test_corpus
        )
        assert filtered.discarded > 0
        assert kept.discarded == 0
        assert filtered.evaluated == kept.evaluated
        assert filtered.row("tree").top1 >= kept.row("tree").top1
