"""Tests for the `nate` command line."""

import json
import pathlib

import pytest

from nate.cli.__main__ import execute_command

from ..conftest import SUM_LIST, SUM_LIST_FIXED


def run(*args: str) -> int:
    with pytest.raises(SystemExit) as exc:
        execute_command("nate", "-E", "test", *args)
    return int(exc.value.code or 0)


@pytest.fixture
def sum_list_path(tmp_path: pathlib.Path) -> pathlib.Path:
    path = tmp_path / "sum_list.ml"
    path.write_text(SUM_LIST, encoding="utf8")
    return path


@pytest.fixture
def fixed_path(tmp_path: pathlib.Path) -> pathlib.Path:
    path = tmp_path / "sum_list_fixed.ml"
    path.write_text(SUM_LIST_FIXED, encoding="utf8")
    return path


@pytest.fixture
def bool_operand_path(tmp_path: pathlib.Path) -> pathlib.Path:
    path = tmp_path / "bool_operand.ml"
    path.write_text("1 + true\n", encoding="utf8")
    return path


class TestInspect(object):
    """Tests for the single-program commands."""

    def test_check_ill_typed(self, sum_list_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that check lists each error and exits 1."""
        assert run("check", str(sum_list_path)) == 1
        out = capsys.readouterr().out.splitlines()
        assert out == ["node 7: expected int, actual 'a list", "node 5: expected 'a list, actual int"]

    def test_check_well_typed(self, fixed_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that check prints the program type and exits 0."""
        assert run("check", str(fixed_path)) == 0
        assert capsys.readouterr().out.strip() == "well-typed: int list -> int"

    def test_parse(self, bool_operand_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that parse prints the tree as an S-expression, one node per line."""
        assert run("parse", str(bool_operand_path)) == 0
        assert capsys.readouterr().out.splitlines() == ["(0 Plus 0-8", "  (1 IntLit 0-1 1)", "  (2 BoolLit 4-8 true))"]

    def test_slice_and_verify(self, bool_operand_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that slice prints the minimal slice and its verification."""
        assert run("slice", str(bool_operand_path), "--verify") == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "error 0: 0 2"
        assert out[-1] == "error 0: pass"

    def test_slice_text_after_non_ascii(self, tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that slice members are quoted from their byte spans past a multi-byte character."""
        path = tmp_path / "accent.ml"
        path.write_text("(* é *) 1 + true\n", encoding="utf8")
        assert run("slice", str(path)) == 0
        out = capsys.readouterr().out.splitlines()
        assert out == ["error 0: 0 2", "  0 Plus 9-17 '1 + true'", "  2 BoolLit 13-17 'true'"]

    def test_diff(self, sum_list_path: pathlib.Path, fixed_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that diff reports the changed node and fraction."""
        assert run("diff", str(sum_list_path), str(fixed_path)) == 0
        assert capsys.readouterr().out.splitlines() == ["changed: 4", "diff_fraction: 0.0909"]

    def test_parse_error(self, tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that a syntax error is reported and fails the command."""
        path = tmp_path / "broken.ml"
        path.write_text("let x = in x\n", encoding="utf8")
        assert run("check", str(path)) == -1
        assert "ERROR" in capsys.readouterr().err

    def test_unknown_command(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that an unknown command is a usage error."""
        assert run("frobnicate") == 2


class TestWorkflow(object):
    """Tests for the gen, train, blame, explain, extract and eval commands."""

    @pytest.fixture
    def corpus_path(self, tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> pathlib.Path:
        path = tmp_path / "corpus.jsonl"
        assert run("gen", "--out", str(path), "--size", "30", "--seed", "3") == 0
        assert capsys.readouterr().out.strip() == f"wrote 30 pairs to {path}"
        return path

    @pytest.fixture
    def model_path(
        self, tmp_path: pathlib.Path, corpus_path: pathlib.Path, capsys: pytest.CaptureFixture[str]
    ) -> pathlib.Path:
        path = tmp_path / "tree.model"
        assert run("train", "--corpus", str(corpus_path), "--model", "tree", "--out", str(path)) == 0
        assert path.exists()
        capsys.readouterr()
        return path

    def test_gen_is_deterministic(self, tmp_path: pathlib.Path, corpus_path: pathlib.Path) -> None:
        """Test that the same seed writes the same corpus."""
        again = tmp_path / "again.jsonl"
        assert run("gen", "--out", str(again), "--size", "30", "--seed", "3") == 0
        assert again.read_text(encoding="utf8") == corpus_path.read_text(encoding="utf8")

    def test_blame(
        self, sum_list_path: pathlib.Path, model_path: pathlib.Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Test that blame ranks only slice members of the ill-typed program."""
        assert run("blame", str(sum_list_path), "--model", str(model_path), "--json") == 0
        report = json.loads(capsys.readouterr().out)
        nodes = [e["node"] for e in report["entries"]]
        assert 1 <= len(nodes) <= 3
        assert set(nodes) <= {0, 1, 2, 4, 5, 7, 8}
        confidences = [e["confidence"] for e in report["entries"]]
        assert confidences == sorted(confidences, reverse=True)

        assert run("blame", str(sum_list_path), "--model", str(model_path), "--k", "1") == 0
        out = capsys.readouterr().out.splitlines()
        assert len(out) == 1
        assert out[0].startswith("1. node ")

    def test_blame_well_typed(
        self, fixed_path: pathlib.Path, model_path: pathlib.Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Test that blaming a well-typed program fails."""
        assert run("blame", str(fixed_path), "--model", str(model_path)) == -1
        assert "ERROR" in capsys.readouterr().err

    def test_explain(
        self, sum_list_path: pathlib.Path, model_path: pathlib.Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Test that explain walks the tree down to a leaf."""
        assert run("explain", str(sum_list_path), "--model", str(model_path), "--node", "7") == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0].startswith("node 7 App ")
        assert out[-1].lstrip().startswith("leaf ")

    def test_extract(
        self, tmp_path: pathlib.Path, corpus_path: pathlib.Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Test that extract writes a schema line, a header and labeled rows."""
        out_path = tmp_path / "features.csv"
        assert run("extract", "--corpus", str(corpus_path), "--features", "local", "--out", str(out_path)) == 0
        lines = out_path.read_text(encoding="utf8").splitlines()
        assert lines[0].startswith("# schema ")
        assert lines[0].endswith("features=local")
        header = lines[1].split(",")
        assert header[-3:] == ["label", "program", "node"]
        assert len(lines) > 2
        assert all(len(row.split(",")) == len(header) for row in lines[2:])
        assert {row.split(",")[-3] for row in lines[2:]} <= {"0", "1"}

    def test_eval(self, tmp_path: pathlib.Path, corpus_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that eval prints the table and writes the JSON report."""
        json_path = tmp_path / "report.json"
        args = ["eval", "--corpus", str(corpus_path), "--folds", "2", "--model", "tree", "--baseline", "first-error"]
        assert run(*args, "--json", str(json_path)) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0].split()[:2] == ["model", "top-1"]
        report = json.loads(json_path.read_text(encoding="utf8"))
        assert [r["name"] for r in report["rows"]] == ["tree", "first-error"]
