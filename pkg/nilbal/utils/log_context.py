"""Per-task logging context.

The fields below live together in one ContextVar holding an immutable mapping,
so a coroutine or worker sees a consistent snapshot. NilbalFormatter reads the
snapshot into every record. Sweep workers put the parameter tuple they are on
into ``item``.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping
from contextlib import contextmanager
from contextvars import ContextVar
from types import MappingProxyType

FIELDS = ("command", "group", "prime", "item")

_EMPTY: Mapping[str, str] = MappingProxyType({})
_context: ContextVar[Mapping[str, str]] = ContextVar("nilbal_log_context", default=_EMPTY)


def _merged(updates: Mapping[str, str | None]) -> Mapping[str, str]:
    unknown = set(updates) - set(FIELDS)
    if unknown:
        raise ValueError(f"Unknown context field: {sorted(unknown)[0]!r}")
    fields = dict(_context.get())
    fields.update({k: v for k, v in updates.items() if v is not None})
    return MappingProxyType(fields)


def set_context(**fields: str | None) -> None:
    """Update the context in place; None leaves a field as it is."""
    _context.set(_merged(fields))


def reset_context() -> None:
    _context.set(_EMPTY)


def current_context() -> Mapping[str, str]:
    return _context.get()


@contextmanager
def log_context(**fields: str | None) -> Iterator[None]:
    """Apply ``fields`` for the duration of the block, then restore the previous snapshot."""
    token = _context.set(_merged(fields))
    try:
        yield
    finally:
        _context.reset(token)
