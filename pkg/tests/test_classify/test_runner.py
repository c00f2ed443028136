"""Tests for the sweep runner."""

import pytest

from nilbal.classify.runner import merge_records, run_items, sort_key
from nilbal.models import SweepRecord


def square_worker(n: int) -> list[SweepRecord]:
    return [SweepRecord("square", (n,), {"n": n}, n * n < 50, {"square": n * n})]


def pair_worker(n: int) -> list[SweepRecord]:
    return [
        SweepRecord("pair", (n, "b"), {"n": n}, True),
        SweepRecord("pair", (n, "a"), {"n": n}, True),
    ]


class TestOrdering:
    def test_integers_before_strings(self):
        assert sort_key((1, 0)) < sort_key((1, "x"))
        assert sort_key((2,)) < sort_key((10,))
        assert sort_key(("10",)) < sort_key(("2",))

    def test_merge_is_sorted(self):
        chunks = [square_worker(3), square_worker(1), square_worker(2)]
        assert [r.key for r in merge_records(chunks)] == [(1,), (2,), (3,)]


class TestRunItems:
    async def test_empty(self):
        assert await run_items(square_worker, []) == []

    async def test_inline(self):
        records = await run_items(square_worker, [9, 2, 5])
        assert [r.key for r in records] == [(2,), (5,), (9,)]
        assert [r.passed for r in records] == [True, True, False]

    async def test_several_records_per_item(self):
        records = await run_items(pair_worker, [2, 1])
        assert [r.key for r in records] == [(1, "a"), (1, "b"), (2, "a"), (2, "b")]

    @pytest.mark.slow
    async def test_process_pool_matches_inline(self):
        items = list(range(12, 0, -1))
        inline = await run_items(square_worker, items)
        pooled = await run_items(square_worker, items, jobs=2)
        assert [r.to_json_dict() for r in pooled] == [r.to_json_dict() for r in inline]

    async def test_chunks_stream_before_sorting(self):
        seen = []
        records = await run_items(square_worker, [9, 2, 5], on_chunk=seen.append)
        assert [chunk[0].key for chunk in seen] == [(9,), (2,), (5,)]
        assert [r.key for r in records] == [(2,), (5,), (9,)]

    async def test_failure_keeps_earlier_chunks(self):
        seen = []

        def breaks_at_seven(n: int) -> list[SweepRecord]:
            if n == 7:
                raise ValueError("bad item")
            return square_worker(n)

        with pytest.raises(ValueError, match="bad item"):
            await run_items(breaks_at_seven, [1, 3, 7, 4], on_chunk=seen.append)
        assert [chunk[0].key for chunk in seen] == [(1,), (3,)]
