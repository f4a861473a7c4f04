"""
Feature schema and per-node extraction, checked against the sumList table.
"""

import numpy as np
import pytest

from nate.features import (
    FeatureGroup,
    FeatureSet,
    TypeAbstraction,
    UnknownFeatureSet,
    extract,
    extract_program,
    node_vector,
    relatives,
    schema,
    to_matrix,
)
from nate.labeler import ProgramPair, tree_diff
from nate.lang import Program
from nate.slicer import in_any_slice, minimal_slices
from nate.typecheck import infer_partial

from ..conftest import SumListNodes

TABLE_COLUMNS = ["Is-[]", "Is-Case(List)-P", "Size", "Has-Type-Int-C1", "Has-Type-List", "In-Slice"]


class TestSchema(object):
    def test_width(self) -> None:
        """local, context, type, size and slice blocks add up"""
        s = schema()
        assert s.width == 97
        assert s.counts() == {
            FeatureGroup.LocalSyn: 14,
            FeatureGroup.CtxSyn: 56,
            FeatureGroup.Type: 25,
            FeatureGroup.Size: 1,
            FeatureGroup.Slice: 1,
        }
        assert len(set(s.names)) == s.width

    def test_names(self) -> None:
        """feature names use the surface spelling of kinds"""
        s = schema()
        for name in TABLE_COLUMNS:
            assert name in s.positions
        assert s.names[0] == "Is-Var"
        assert s.names[-2:] == ["Size", "In-Slice"]
        assert "Is-::-C3" in s.positions

    @pytest.mark.parametrize(
        "expr,width",
        [("all", 97), ("local", 14), ("local+context", 70), ("+context", 70), ("type+size+slice", 27)],
    )
    def test_feature_sets(self, expr: str, width: int) -> None:
        """feature-set expressions select column groups"""
        fs = FeatureSet.parse(expr)
        assert len(schema().columns(fs)) == width

    def test_feature_set_text(self) -> None:
        """feature sets print in group order"""
        assert str(FeatureSet.parse("type + local")) == "local+type"
        assert str(FeatureSet.parse("local+context+type+size+slice")) == "all"
        assert FeatureGroup.Type in FeatureSet.parse("type")

    def test_unknown_group(self) -> None:
        """unknown groups are rejected with the known ones listed"""
        with pytest.raises(UnknownFeatureSet, match="known"):
            FeatureSet.parse("local+bogus")
        with pytest.raises(ValueError):
            FeatureSet.parse("")


class TestExtract(object):
    @pytest.mark.parametrize(
        "node,expected",
        [
            ("nil", (1, 1, 1, 0, 1, 1)),
            ("plus", (0, 1, 5, 1, 0, 1)),
            ("call", (0, 0, 3, 0, 1, 1)),
            ("tl", (0, 0, 1, 0, 1, 0)),
        ],
    )
    def test_sum_list_table(self, sum_list: Program, node: str, expected: tuple[int, ...]) -> None:
        """selected features of sumList nodes"""
        d = infer_partial(sum_list)
        slices = minimal_slices(sum_list, budget=None)
        node_id = SumListNodes[node]
        v = node_vector(sum_list, node_id, d, in_any_slice(slices, node_id))
        s = schema()
        assert tuple(int(v[s.index(name)]) for name in TABLE_COLUMNS) == expected

    def test_relatives(self, sum_list: Program) -> None:
        """parent then up to three children, padded"""
        assert relatives(sum_list, SumListNodes["match"]) == [1, 3, 4, 5]
        assert relatives(sum_list, SumListNodes["call"]) == [5, 8, 9, None]
        assert relatives(sum_list, 0) == [None, 1, 10, None]

    def test_type_abstraction(self, sum_list: Program) -> None:
        """the mentions abstraction sees inside a relative's arrow type"""
        d = infer_partial(sum_list)
        call = SumListNodes["call"]
        s = schema()
        by_head = node_vector(sum_list, call, d, True, TypeAbstraction.Head)
        by_mentions = node_vector(sum_list, call, d, True, TypeAbstraction.Mentions)
        assert by_head[s.index("Has-Type-Fun-C1")] == 1.0
        assert by_head[s.index("Has-Type-Int-C1")] == 0.0
        assert by_mentions[s.index("Has-Type-Int-C1")] == 1.0

    def test_one_kind_bit(self, sum_list: Program) -> None:
        """exactly one local syntax bit is set per node"""
        d = infer_partial(sum_list)
        columns = schema().columns(FeatureSet.parse("local"))
        for node_id in range(len(sum_list)):
            assert node_vector(sum_list, node_id, d, False)[columns].sum() == 1.0

    def test_slice_filter(self, sum_list_pair: ProgramPair) -> None:
        """filtering keeps only slice members, labels come from the diff"""
        slices = minimal_slices(sum_list_pair.bad, budget=None)
        labels = tree_diff(sum_list_pair)
        filtered = extract(sum_list_pair, slices, labels, program=3)
        assert [s.node for s in filtered] == [0, 1, 2, 4, 5, 7, 8]
        assert [s.node for s in filtered if s.label] == [SumListNodes["nil"]]
        assert all(s.program == 3 for s in filtered)

        everything = extract(sum_list_pair, slices, labels, filter_slice=False)
        assert len(everything) == 11

    def test_unlabeled(self, sum_list: Program) -> None:
        """without labels every sample is negative"""
        samples = extract_program(sum_list, minimal_slices(sum_list, budget=None))
        assert not any(s.label for s in samples)

    def test_to_matrix(self, sum_list_pair: ProgramPair) -> None:
        """samples stack into a design matrix restricted to the feature set"""
        slices = minimal_slices(sum_list_pair.bad, budget=None)
        samples = extract(sum_list_pair, slices, tree_diff(sum_list_pair))
        X, y = to_matrix(samples)
        assert X.shape == (7, 97)
        assert y.tolist() == [0, 0, 0, 1, 0, 0, 0]

        X, _ = to_matrix(samples, FeatureSet.parse("local"))
        assert X.shape == (7, 14)

        X, y = to_matrix([])
        assert X.shape == (0, 97) and y.shape == (0,)
        assert np.all(np.isfinite(X))
