"""
Minimal error slices, checked against a brute-force search on small programs.
"""

import itertools

import pytest

from nate.harness import CorpusSpec, generate_corpus
from nate.labeler import ProgramPair
from nate.lang import Program, parse, pretty
from nate.slicer import (
    NotIllTyped,
    error_key,
    hole_outside,
    in_any_slice,
    minimal_slices,
    slice_union,
    union_sufficient,
    verify,
)
from nate.typecheck import infer_partial

from ..conftest import SumListNodes


def brute_force_minimal(p: Program) -> list[frozenset[int]]:
    """every inclusion-minimal ancestor-closed node set whose complement can be holed keeping a type error"""
    found: list[frozenset[int]] = []
    for size in range(1, len(p) + 1):
        for combo in itertools.combinations(range(len(p)), size):
            keep = frozenset(combo)
            if any(a not in keep for n in keep for a in p.ancestors(n)):
                continue
            if any(f <= keep for f in found):
                continue
            if not infer_partial(hole_outside(p, keep)).well_typed:
                found.append(keep)
    return found


class TestMinimalSlices(object):
    def test_bool_operand(self) -> None:
        """`1 + true` slices to the addition and the boolean"""
        p = parse("1 + true")
        (s,) = minimal_slices(p)
        assert s.nodes == {0, 2}
        assert s.minimal
        assert pretty(hole_outside(p, s.nodes)) == "?? + true"

    @pytest.mark.parametrize(
        "source,expected",
        [
            ("1 + true", {0, 2}),
            ("let x = 1 in x :: x", {0, 1, 2, 4}),
            ("(fun x -> x + 1) true", {0, 1, 2, 3, 5}),
        ],
    )
    def test_matches_brute_force(self, source: str, expected: set[int]) -> None:
        """single-error programs have a unique minimal slice and the search finds it"""
        p = parse(source)
        assert brute_force_minimal(p) == [frozenset(expected)]
        (s,) = minimal_slices(p, budget=None)
        assert s.nodes == expected

    def test_sum_list(self, sum_list: Program) -> None:
        """each sumList error gets its own slice"""
        first, second = minimal_slices(sum_list, budget=None)
        assert first.error_index == 0 and second.error_index == 1
        assert first.nodes == {0, 1, 2, 4, 5, 7, 8}
        assert second.nodes == {0, 1, 2, 4, 5}
        assert SumListNodes["call"] not in second

    def test_union(self, sum_list: Program) -> None:
        """the union covers both conflicts but not the recursive argument"""
        slices = minimal_slices(sum_list, budget=None)
        for name in ("nil", "plus", "call"):
            assert in_any_slice(slices, SumListNodes[name])
        assert not in_any_slice(slices, SumListNodes["tl"])
        assert slice_union(slices) == {0, 1, 2, 4, 5, 7, 8}
        assert union_sufficient(sum_list, slices)

    def test_verify(self, sum_list: Program) -> None:
        """slices are sufficient and every member is needed"""
        checks = verify(sum_list, minimal_slices(sum_list, budget=None))
        assert [c.passed for c in checks] == [True, True]

    def test_well_typed_rejected(self) -> None:
        """a well-typed program has nothing to slice"""
        with pytest.raises(NotIllTyped):
            minimal_slices(parse("1 + 2"))

    def test_budget_falls_back(self, sum_list: Program) -> None:
        """an exhausted budget yields flagged over-approximations"""
        exact = minimal_slices(sum_list, budget=None)
        rough = minimal_slices(sum_list, budget=1e-9)
        assert not any(s.minimal for s in rough)
        for a, b in zip(exact, rough):
            assert a.nodes <= b.nodes

    def test_generated_programs(self, small_corpus: list[ProgramPair]) -> None:
        """slices of generated programs pass the hole oracle"""
        for pair in small_corpus[:15]:
            slices = minimal_slices(pair.bad, budget=None)
            assert len(slices) == len(infer_partial(pair.bad).errors)
            assert all(c.passed for c in verify(pair.bad, slices))
            assert union_sufficient(pair.bad, slices)

    def test_error_identity_ignores_generalized_types(self) -> None:
        """an error is kept by origin and role even when holing context generalizes its types"""
        p = parse("let f = fun y -> y :: [] in 1 + f 2")
        (s,) = minimal_slices(p, budget=None)
        assert 7 in s.nodes
        assert 9 not in s.nodes
        assert all(c.passed for c in verify(p, [s]))
        (before,) = infer_partial(p).errors
        (after,) = infer_partial(hole_outside(p, s.nodes)).errors
        assert error_key(before) == error_key(after)
        assert "'" not in before.describe()
        assert "'" in after.describe()


@pytest.mark.slow
class TestGeneratedSlices(object):
    def test_five_hundred_programs(self) -> None:
        """slices of 500 generated programs are sufficient and minimal under the hole oracle"""
        corpus = generate_corpus(CorpusSpec(size=500), 7)
        assert len(corpus) == 500
        for pair in corpus:
            slices = minimal_slices(pair.bad, budget=None)
            assert len(slices) == len(infer_partial(pair.bad).errors)
            assert all(s.minimal for s in slices)
            assert all(c.passed for c in verify(pair.bad, slices))
            assert union_sufficient(pair.bad, slices)

    def test_small_programs_match_exhaustive_search(self) -> None:
        """for small single-error programs the slice contains the one minimal set found by exhaustive search"""
        checked = 0
        for pair in generate_corpus(CorpusSpec(size=500, max_depth=1), 13):
            p = pair.bad
            if len(p) > 10 or len(infer_partial(p).errors) != 1:
                continue
            found = brute_force_minimal(p)
            if len(found) != 1:
                continue
            (s,) = minimal_slices(p, budget=None)
            assert found[0] <= s.nodes
            checked += 1
        assert checked > 0
