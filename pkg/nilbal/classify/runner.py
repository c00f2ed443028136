"""Concurrent execution of sweep work items.

A sweep is a list of independent items. Each is handed to a module-level
worker function returning a list of SweepRecords; records are merged in
sorted key order so the report does not depend on scheduling.
"""

from __future__ import annotations

import asyncio
import logging
import sys
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from typing import Any, TypeVar

from tqdm import tqdm

from nilbal.models import SweepRecord

logger = logging.getLogger(__name__)

T = TypeVar("T")

Worker = Callable[[T], list[SweepRecord]]
ChunkSink = Callable[[list[SweepRecord]], None]


def sort_key(key: Sequence[Any]) -> tuple[tuple[int, Any], ...]:
    """Order keys componentwise, integers before everything else."""
    return tuple((0, x) if isinstance(x, int) else (1, str(x)) for x in key)


def merge_records(chunks: Sequence[list[SweepRecord]]) -> list[SweepRecord]:
    records = [r for chunk in chunks for r in chunk]
    return sorted(records, key=lambda r: (sort_key(r.key), r.theorem))


def _collect(
    chunks: list[list[SweepRecord]], chunk: list[SweepRecord], on_chunk: ChunkSink | None
) -> None:
    chunks.append(chunk)
    if on_chunk is not None:
        on_chunk(chunk)


async def run_items(
    worker: Worker[T],
    items: Sequence[T],
    jobs: int = 1,
    desc: str = "sweep",
    on_chunk: ChunkSink | None = None,
) -> list[SweepRecord]:
    """Run ``worker`` over ``items``, inline or in a process pool.

    The worker must be picklable (a module-level function) when ``jobs > 1``.
    ``on_chunk`` sees each item's records as soon as they arrive, in
    completion order; the returned list is sorted.
    """
    if not items:
        return []
    progress = tqdm(total=len(items), desc=desc, disable=not sys.stderr.isatty(), leave=False)
    chunks: list[list[SweepRecord]] = []
    try:
        if jobs <= 1:
            for item in items:
                _collect(chunks, worker(item), on_chunk)
                progress.update()
                await asyncio.sleep(0)
        else:
            loop = asyncio.get_running_loop()
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                futures = [loop.run_in_executor(pool, worker, item) for item in items]
                for fut in asyncio.as_completed(futures):
                    _collect(chunks, await fut, on_chunk)
                    progress.update()
    finally:
        progress.close()
    records = merge_records(chunks)
    logger.info(
        "%s: %d items, %d records, %d failures",
        desc, len(items), len(records), sum(not r.passed for r in records),
    )
    return records
