"""Tests for the verification sweeps, at small bounds."""

import pytest

from nilbal.abelian.groups import FinAbGroup, abelianize
from nilbal.classify.catalog import build_catalog
from nilbal.classify.verifiers import (
    OPEN_QUESTIONS,
    SweepSettings,
    SylowOracle,
    catalog_item,
    cycboth_item,
    euler_item,
    fox_vs_snf,
    h1_item,
    oracle_item,
    partial3_grid,
    partial3_item,
    semidirect_item,
    verify_catalog,
    verify_cycboth,
    verify_euler,
    verify_oracle,
    verify_partial3,
    verify_semidirect,
    verify_theorem_h1,
)
from nilbal.errors import ParameterInvalidError
from nilbal.presentation.parser import parse


@pytest.fixture
def settings():
    return SweepSettings(
        primes=(2, 3),
        max_cosets=20000,
        bar_limit=32,
        integral_bar_limit=16,
        enum_limit=16,
    )


class TestSettings:
    def test_from_config(self, config):
        s = SweepSettings.from_config(config)
        assert s.primes == (2, 3, 5)
        assert s.max_cosets == 20000
        assert s.bar_limit == 32
        assert s.integral_bar_limit == 16


class TestSylowOracle:
    def test_small_sylow_uses_bar(self):
        oracle = SylowOracle(FinAbGroup.from_orders(2, 4, 3), 2, bar_limit=32)
        assert oracle.uses_bar
        assert oracle.sylow_order == 8

    def test_large_sylow_uses_model(self):
        oracle = SylowOracle(FinAbGroup.from_orders(4, 4, 4), 2, bar_limit=32)
        assert not oracle.uses_bar


class TestH1:
    def test_cyclic_item(self, settings):
        records = h1_item((FinAbGroup.cyclic(4), settings))
        assert records
        assert all(r.passed for r in records)
        assert any(r.detail["balanced"] for r in records)

    def test_klein_is_never_balanced(self, settings):
        records = h1_item((FinAbGroup.from_orders(2, 2), settings))
        assert records
        assert all(r.passed for r in records)
        assert not any(r.detail["balanced"] for r in records)

    async def test_sweep(self, settings):
        report = await verify_theorem_h1(8, settings)
        assert report.theorem == "h1"
        assert report.records
        assert report.passed, report.failures

    async def test_bound_above_enumeration_limit(self, settings):
        with pytest.raises(ParameterInvalidError, match="enumeration limit"):
            await verify_theorem_h1(32, settings)


class TestCycboth:
    def test_item(self, settings):
        records = cycboth_item((FinAbGroup.from_orders(2, 2), 2, settings))
        assert records
        for r in records:
            assert r.passed
            assert r.detail["homology"] == r.detail["cohomology"]
            assert r.detail["homology"] > 1

    async def test_sweep(self, settings):
        report = await verify_cycboth(8, settings)
        assert {r.params["A"] for r in report.records} == {
            str(FinAbGroup.from_orders(2, 2)),
            str(FinAbGroup.from_orders(2, 4)),
            str(FinAbGroup.from_orders(2, 2, 2)),
        }
        assert report.passed, report.failures


class TestPartial3:
    def test_grid(self):
        grid = partial3_grid(16)
        assert grid[0] == (8, 1, 5)
        assert len(grid) == 4 + 5 * 3
        assert all(l % 4 == 1 and k % f == 0 for k, f, l in grid)  # noqa: E741

    def test_item(self):
        [record] = partial3_item((8, 1, 5))
        assert record.passed
        assert record.detail["beta1"] == 2
        assert record.detail["beta2"] == 3

    async def test_sweep(self):
        report = await verify_partial3(8)
        assert len(report.records) == 4
        assert report.passed, report.failures

    @pytest.mark.slow
    async def test_sweep_to_sixteen(self):
        report = await verify_partial3(16)
        assert report.passed, report.failures


class TestEuler:
    def test_item(self):
        records = euler_item((3, 0, 20, 5, 0))
        assert len(records) == 20
        assert all(r.passed for r in records)

    async def test_sweep(self):
        report = await verify_euler(trials=10, primes=(2, 3), max_dim=4)
        assert len(report.records) == 22
        assert report.passed, report.failures
        assert any("b = (1, 3, 2)" in note for note in report.annotations)

    async def test_reproducible(self):
        first = await verify_euler(trials=5, primes=(5,), max_dim=4, seed=3)
        second = await verify_euler(trials=5, primes=(5,), max_dim=4, seed=3)
        assert [r.detail for r in first.records] == [r.detail for r in second.records]

    async def test_invalid_arguments(self):
        with pytest.raises(ParameterInvalidError):
            await verify_euler(trials=-1)


class TestSemidirect:
    def test_item(self):
        records = semidirect_item((8, 3, 20000))
        assert [r.key for r in records] == [(8, -3), (8, -1), (8, 1), (8, 3)]
        assert all(r.passed for r in records)
        assert all(r.detail["nilpotent"] for r in records)

    def test_item_with_non_nilpotent(self):
        records = semidirect_item((3, 2, 20000))
        verdicts = {r.key[1]: r.detail["nilpotent"] for r in records}
        assert verdicts == {-2: True, -1: False, 1: True, 2: False}
        assert all(r.passed for r in records)

    async def test_sweep(self, settings):
        report = await verify_semidirect(12, 4, settings)
        assert report.passed, report.failures


class TestOracle:
    def test_item(self, settings):
        records = oracle_item((FinAbGroup.from_orders(2, 4), settings))
        assert [r.params["p"] for r in records] == [2]
        assert records[0].passed
        assert records[0].detail["bar"] == [1, 2, 3]

    async def test_sweep(self, settings):
        report = await verify_oracle(12, settings)
        assert report.passed, report.failures

    async def test_bound_above_bar_limit(self, settings):
        with pytest.raises(ParameterInvalidError, match="bar limit"):
            await verify_oracle(64, settings)


class TestCatalog:
    @pytest.fixture
    def entries(self):
        keep = {"z", "z2", "gamma(1)", "omega", "z2_x_cyclic(2)", "semidirect(4,-1)", "q8k(1)"}
        catalog = build_catalog(gamma_qs=(1,), heisenberg_primes=(3,), metabelian_ms=())
        return [e for e in catalog if e.name in keep]

    def test_item(self, entries, settings):
        entry = next(e for e in entries if e.name == "semidirect(4,-1)")
        [record] = catalog_item((0, entry, settings))
        assert record.passed, record.detail
        assert record.detail["verdict"] == "balanced-consistent"
        assert record.detail["checks"]["hbh1"]
        assert record.detail["checks"]["fox vs snf"]

    def test_fox_matches_smith_form_across_catalog(self):
        for entry in build_catalog():
            ab = abelianize(entry.presentation)
            assert fox_vs_snf(entry.presentation, ab) == {}, entry.name

    def test_fox_mismatch_reported(self):
        pres = parse("< a | a^4 >")
        assert fox_vs_snf(pres, FinAbGroup(0, (3,))) == {2: (1, 0), 3: (0, 1)}

    def test_torsion_item(self, entries, settings):
        entry = next(e for e in entries if e.name == "q8k(1)")
        [record] = catalog_item((0, entry, settings))
        assert record.passed, record.detail
        assert record.detail["torsion_order"] == 8
        assert record.detail["torsion_h2_trivial"]

    async def test_survivors(self, entries, settings):
        report = await verify_catalog(settings, entries=entries)
        assert report.passed, report.failures
        survivors = report.records[-1]
        assert survivors.key[1] == "z2cor"
        assert survivors.detail["balanced_families"] == ["gamma", "omega", "z2"]

    async def test_open_question_annotations(self, entries, settings):
        report = await verify_catalog(settings, entries=entries)
        assert report.annotations[: len(OPEN_QUESTIONS)] == list(OPEN_QUESTIONS)
        assert any(note.startswith("semidirect(4,-1): h = 1") for note in report.annotations)

    @pytest.mark.slow
    async def test_full_catalog(self, settings):
        report = await verify_catalog(settings)
        assert report.passed, report.failures
