"""Tests for the command handlers."""

import argparse
import json

import pytest

from nilbal.classify import verifiers
from nilbal.cli.commands import (
    HANDLERS,
    enum_semidirect,
    param_overrides,
    parse_range,
    resolve_input,
)
from nilbal.errors import ParameterInvalidError, SizeLimitError
from nilbal.main import build_parser
from nilbal.models import SweepRecord, SweepReport, Verdict
from nilbal.utils.constants import EXIT_ASSERTION_FAILED, EXIT_OK


async def _run(argv, config):
    args = build_parser().parse_args(argv)
    return await HANDLERS[args.command](args, config)


class TestInputs:
    @pytest.mark.parametrize(
        "text, expected",
        [
            ("1..4", [1, 2, 3, 4]),
            ("-2..1", [-2, -1, 0, 1]),
            ("3..1", []),
            ("1,4, 9", [1, 4, 9]),
            ("7", [7]),
        ],
    )
    def test_parse_range(self, text, expected):
        assert parse_range(text) == expected

    def test_parse_range_rejects_garbage(self):
        with pytest.raises(ParameterInvalidError, match="not a range"):
            parse_range("a..b")

    def test_resolve_existing_path(self, tmp_path):
        path = tmp_path / "c3.grp"
        path.write_text("< a | a^3 >", encoding="utf-8")
        assert resolve_input(str(path)) == path

    def test_resolve_bundled(self):
        assert resolve_input("gamma_q.tower").name == "gamma_q.tower"
        assert resolve_input("q8.grp").parent.name == "groups"

    def test_resolve_missing(self):
        with pytest.raises(FileNotFoundError, match="no such input"):
            resolve_input("missing.grp")

    def test_param_overrides(self):
        args = argparse.Namespace(q=3, k=None, set=["k=8", "l = 5"])
        assert param_overrides(args) == {"q": 3, "k": 8, "l": 5}

    def test_param_overrides_needs_equals(self):
        with pytest.raises(ParameterInvalidError, match="NAME=VALUE"):
            param_overrides(argparse.Namespace(set=["k8"]))

    def test_param_overrides_needs_integer(self):
        with pytest.raises(ParameterInvalidError, match="not an integer"):
            param_overrides(argparse.Namespace(set=["k=x"]))


class TestBetti:
    async def test_tower_json(self, config):
        result = await _run(["betti", "gamma_q.tower", "--q", "2", "--json"], config)
        assert result.exit_code == EXIT_OK
        records = [json.loads(line) for line in result.text.splitlines()]
        assert {r["p"] for r in records} == {0, 2, 3, 5}
        assert all(r["verdict"] == "balanced-consistent" for r in records)
        assert records[0]["params"] == {"q": 2}

    async def test_assert_balanced_fails(self, config):
        result = await _run(["betti", "z2_x_cyclic.tower", "--assert-balanced"], config)
        assert result.exit_code == EXIT_ASSERTION_FAILED
        assert "witness F_2" in result.text

    async def test_assert_balanced_passes(self, config):
        result = await _run(["betti", "semidirect.tower", "--assert-balanced"], config)
        assert result.exit_code == EXIT_OK

    async def test_finite_presentation(self, config):
        result = await _run(["betti", "q8.grp", "--json"], config)
        records = [json.loads(line) for line in result.text.splitlines()]
        assert records[0]["group_id"] == "Q8"
        by_p = {r["p"]: (r["beta1"], r["beta2"]) for r in records}
        assert by_p[2] == (2, 2)

    async def test_set_flag(self, config):
        result = await _run(["betti", "semidirect.tower", "--set", "m=9", "--n", "4"], config)
        assert "F_3" in result.text


class TestVerify:
    async def test_euler(self, config):
        argv = ["verify", "euler", "--trials", "5", "--max-dim", "3"]
        result = await _run(argv, config)
        assert result.exit_code == EXIT_OK
        assert "euler" in result.text

    async def test_writes_report(self, config, tmp_path):
        out = tmp_path / "reports" / "partial3.jsonl"
        argv = ["verify", "partial3", "--kmax", "8", "--out", str(out)]
        result = await _run(argv, config)
        assert result.exit_code == EXIT_OK
        lines = out.read_text(encoding="utf-8").splitlines()
        assert len(lines) == 4
        assert all(json.loads(line)["passed"] for line in lines)

    async def test_interrupted_sweep_keeps_finished_records(self, config, tmp_path, monkeypatch):
        out = tmp_path / "partial3.jsonl"
        finished = []

        def dies_on_third(item):
            if len(finished) == 2:
                raise RuntimeError("worker died")
            finished.append(item)
            k, f, l = item  # noqa: E741
            return [SweepRecord("partial3", item, {"k": k, "f": f, "l": l}, True)]

        monkeypatch.setattr(verifiers, "partial3_item", dies_on_third)
        with pytest.raises(RuntimeError, match="worker died"):
            await _run(["verify", "partial3", "--kmax", "8", "--out", str(out)], config)
        lines = [json.loads(line) for line in out.read_text(encoding="utf-8").splitlines()]
        assert [tuple(r["key"]) for r in lines] == finished

    async def test_report_file_is_rewritten_sorted(self, config, tmp_path, monkeypatch):
        out = tmp_path / "partial3.jsonl"

        def reversed_keys(item):
            k, f, l = item  # noqa: E741
            return [SweepRecord("partial3", (k, -f, l), {}, True)]

        monkeypatch.setattr(verifiers, "partial3_item", reversed_keys)
        await _run(["verify", "partial3", "--kmax", "8", "--out", str(out)], config)
        keys = [json.loads(line)["key"] for line in out.read_text(encoding="utf-8").splitlines()]
        assert keys == sorted(keys)

    async def test_failed_records_exit_two(self, config, monkeypatch):
        async def failing(*args, **kwargs):
            return SweepReport("euler", [SweepRecord("euler", (2, 0), {}, False)])

        monkeypatch.setattr(verifiers, "verify_euler", failing)
        result = await _run(["verify", "euler"], config)
        assert result.exit_code == EXIT_ASSERTION_FAILED
        assert "FAILED [2, 0]" in result.text

    async def test_bound_defaults_from_config(self, config, monkeypatch):
        seen = {}

        async def capture(bound, settings, jobs, **kwargs):
            seen["bound"] = bound
            return SweepReport("h1")

        monkeypatch.setattr(verifiers, "verify_theorem_h1", capture)
        await _run(["verify", "h1"], config)
        assert seen["bound"] == config.h1_bound
        await _run(["verify", "h1", "--bound", "6"], config)
        assert seen["bound"] == 6


class TestEnum:
    def test_semidirect_records(self):
        records = enum_semidirect([1, 2, 3, 4], [-1, 0, 1, 2])
        assert [(r.params["m"], r.params["n"]) for r in records] == [
            (1, -1), (1, 1), (1, 2), (2, -1), (2, 1), (3, -1), (3, 1), (3, 2), (4, -1), (4, 1),
        ]
        assert all(r.verdict is Verdict.BALANCED_CONSISTENT for r in records)
        nilpotent = {(r.params["m"], r.params["n"]): r.nilpotent for r in records}
        assert nilpotent[(3, -1)] is False
        assert nilpotent[(4, -1)] is True

    async def test_semidirect_command(self, config):
        result = await _run(["enum", "semidirect", "--m", "4", "--n=-1..1", "--json"], config)
        records = [json.loads(line) for line in result.text.splitlines()]
        assert [r["params"]["n"] for r in records] == [-1, 1]
        assert records[0]["detail"] == {"exponent": 2, "deficiency": 0}

    async def test_metacyclic(self, config):
        argv = ["enum", "metacyclic", "--p", "3", "--s", "0", "--t", "0..1", "--json"]
        result = await _run(argv, config)
        records = [json.loads(line) for line in result.text.splitlines()]
        assert [r["order"] for r in records] == [27, 81]
        assert all(r["nilpotent"] for r in records)
        assert all(r["verdict"] == "balanced-consistent" for r in records)

    async def test_metacyclic_size_limit(self, config):
        with pytest.raises(SizeLimitError):
            await _run(["enum", "metacyclic", "--r", "4", "--s", "0", "--t", "0"], config)

    async def test_q8k(self, config):
        result = await _run(["enum", "q8k", "--k", "1..2", "--json"], config)
        records = [json.loads(line) for line in result.text.splitlines()]
        assert [r["detail"]["torsion_order"] for r in records] == [8, 16]
        assert all(r["abelianization"] == {"free_rank": 1, "invariant_factors": [2]}
                   for r in records)

    async def test_q8k_size_limit(self, config):
        with pytest.raises(SizeLimitError):
            await _run(["enum", "q8k", "--k", "5"], config)


class TestSmallCommands:
    async def test_coset_enum(self, config):
        result = await _run(["coset-enum", "q8.grp", "--json"], config)
        data = json.loads(result.text)
        assert data["order"] == 8
        assert data["nilpotency_class"] == 2

    async def test_coset_enum_with_parameters(self, config):
        result = await _run(["coset-enum", "metabelian_torsion.grp", "--m", "4"], config)
        assert "order: 64" in result.text.splitlines()

    async def test_abelianize_presentation(self, config):
        result = await _run(["abelianize", "gamma.grp", "--q", "3"], config)
        assert result.text == "gamma^ab = Z^2 + Z/3"

    async def test_abelianize_tower(self, config):
        result = await _run(["abelianize", "gamma_q.tower", "--q", "3", "--json"], config)
        data = json.loads(result.text)
        assert data["abelianization"] == {"free_rank": 2, "invariant_factors": [3]}

    async def test_fox(self, config):
        result = await _run(["fox", "q8.grp", "--json"], config)
        data = json.loads(result.text)
        assert data["deficiency"] == 0
        assert data["beta1"] == {"0": 0, "2": 2, "3": 0, "5": 0}

    async def test_fox_lyndon(self, config):
        result = await _run(["fox", "--lyndon", "--k", "8", "--f", "2", "--l", "5"], config)
        assert "beta1: 3" in result.text
        assert "beta2: 4" in result.text

    async def test_fox_needs_input(self, config):
        with pytest.raises(ParameterInvalidError, match="needs an input"):
            await _run(["fox"], config)
