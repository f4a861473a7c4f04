"""
Tree-diff blame labels and outlier filtering of program pairs.
"""

import pytest

from nate.labeler import EmptyCorpus, InvalidPair, PolicyKind, ProgramPair, ThresholdPolicy, filter_outliers, tree_diff
from nate.lang import parse

from ..conftest import SumListNodes


def make_pair(bad: str, fix: str) -> ProgramPair:
    return ProgramPair(bad=parse(bad), fix=parse(fix))


class TestTreeDiff(object):
    def test_sum_list(self, sum_list_pair: ProgramPair) -> None:
        """replacing `[]` by `0` blames the nil alone"""
        labels = tree_diff(sum_list_pair)
        assert labels.changed == {SumListNodes["nil"]}
        assert labels.edits == 1
        assert labels.diff_fraction == pytest.approx(1 / 11)

    def test_wrap(self) -> None:
        """wrapping a node blames the wrapped node and counts the new operator"""
        labels = tree_diff(make_pair("let x = 1 in x :: x", "let x = 1 in x :: [x]"))
        assert labels.changed == {4}
        assert labels.edits == 2
        assert labels.diff_fraction == pytest.approx(0.4)

    def test_unwrap(self) -> None:
        """removing an operator blames the operator"""
        labels = tree_diff(make_pair("(1 :: []) + 2", "1 + 2"))
        assert labels.changed == {1}
        assert labels.edits == 2
        assert labels.diff_fraction == pytest.approx(0.4)

    def test_wrap_same_kind_application(self) -> None:
        """an application wrapped in another application blames the inner application"""
        defs = "let f = fun l -> 0 :: l in let g = fun m -> match m with [] -> 0 | h :: t -> h in "
        labels = tree_diff(make_pair(defs + "1 + f []", defs + "1 + g (f [])"))
        assert labels.changed == {13}
        assert labels.edits == 2
        assert labels.diff_fraction == pytest.approx(2 / 16)

    def test_wrap_same_kind_plus(self) -> None:
        """a sum wrapped in another sum blames the inner sum"""
        labels = tree_diff(make_pair("let a = 1 in a + a", "let a = 1 in (a + a) + 0"))
        assert labels.changed == {2}
        assert labels.edits == 2
        assert labels.diff_fraction == pytest.approx(0.4)

    def test_unwrap_same_kind(self) -> None:
        """removing a cons around a cons blames the outer cons"""
        labels = tree_diff(make_pair("let x = 1 in (x :: []) :: []", "let x = 1 in x :: []"))
        assert labels.changed == {2}
        assert labels.edits == 2
        assert labels.diff_fraction == pytest.approx(2 / 7)

    def test_payload_change(self) -> None:
        """a renamed variable is blamed without its parent"""
        labels = tree_diff(
            make_pair("let x = 1 in let y = true in x + y", "let x = 1 in let y = true in x + x")
        )
        assert labels.changed == {6}
        assert labels.diff_fraction == pytest.approx(1 / 7)

    def test_identical(self, sum_list_pair: ProgramPair) -> None:
        """a program diffed against itself has no labels"""
        labels = tree_diff(ProgramPair(bad=sum_list_pair.bad, fix=sum_list_pair.bad))
        assert labels.changed == frozenset()
        assert labels.diff_fraction == 0.0

    def test_fraction_capped(self) -> None:
        """a wholesale rewrite never exceeds 1"""
        labels = tree_diff(make_pair("1 + true", "let f x = x :: [] in f (1 + 2)"))
        assert labels.changed == {0}
        assert labels.diff_fraction == 1.0

    def test_check(self, sum_list_pair: ProgramPair) -> None:
        """pairs must go from ill-typed to well-typed"""
        assert sum_list_pair.check() is sum_list_pair
        with pytest.raises(InvalidPair):
            ProgramPair(bad=sum_list_pair.fix, fix=sum_list_pair.fix).check()
        with pytest.raises(InvalidPair):
            ProgramPair(bad=sum_list_pair.bad, fix=sum_list_pair.bad).check()


class TestThresholdPolicy(object):
    def test_parse(self) -> None:
        """both policy spellings parse and print back"""
        fixed = ThresholdPolicy.parse("fixed:0.25")
        assert (fixed.kind, fixed.theta) == (PolicyKind.Fixed, 0.25)
        assert str(fixed) == "fixed:0.25"
        assert ThresholdPolicy.parse(" sigma ").kind is PolicyKind.Sigma
        assert str(ThresholdPolicy.parse("sigma")) == "sigma"

    @pytest.mark.parametrize("text", ["fixed:", "fixed:2", "fixed:abc", "median", "0.4"])
    def test_parse_rejects(self, text: str) -> None:
        """malformed policies raise ValueError"""
        with pytest.raises(ValueError):
            ThresholdPolicy.parse(text)

    def test_sigma_threshold(self) -> None:
        """sigma is one standard deviation above the mean"""
        policy = ThresholdPolicy(kind=PolicyKind.Sigma)
        assert policy.threshold([0.1, 0.1, 0.1, 0.9]) == pytest.approx(0.3 + 0.12**0.5)
        with pytest.raises(EmptyCorpus):
            policy.threshold([])


class TestFilterOutliers(object):
    def test_fixed(self, sum_list_pair: ProgramPair) -> None:
        """pairs at the threshold are kept, larger ones discarded"""
        corpus = [sum_list_pair] * 3
        kept, discarded = filter_outliers(corpus, ThresholdPolicy.parse("fixed:0.4"), fractions=[0.1, 0.4, 0.5])
        assert len(kept) == 2
        assert len(discarded) == 1

    def test_sigma(self, sum_list_pair: ProgramPair) -> None:
        """the sigma policy drops the far tail"""
        corpus = [sum_list_pair] * 4
        kept, discarded = filter_outliers(corpus, ThresholdPolicy.parse("sigma"), fractions=[0.1, 0.1, 0.1, 0.9])
        assert (len(kept), len(discarded)) == (3, 1)

    def test_computes_fractions(self, sum_list_pair: ProgramPair) -> None:
        """without supplied fractions the tree diff is used"""
        rewrite = make_pair("1 + true", "let f x = x :: [] in f (1 + 2)")
        kept, discarded = filter_outliers([sum_list_pair, rewrite], ThresholdPolicy())
        assert kept == [sum_list_pair]
        assert discarded == [rewrite]

    def test_length_mismatch(self, sum_list_pair: ProgramPair) -> None:
        """fractions must line up with the corpus"""
        with pytest.raises(ValueError):
            filter_outliers([sum_list_pair], ThresholdPolicy(), fractions=[0.1, 0.2])
