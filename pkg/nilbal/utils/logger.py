"""Logging setup for the ``nilbal`` logger tree.

The console (stderr, so JSON on stdout stays parseable) gets a short line
tagged with whatever context is set. The optional log file gets every context
field in brackets, ``-`` for unset ones, so the lines line up for grepping.
"""

import logging
import sys
from logging.handlers import TimedRotatingFileHandler
from pathlib import Path

from nilbal.utils.log_context import FIELDS, current_context

CONSOLE_FORMAT = "%(levelname)s %(context)s%(message)s"
FILE_FORMAT = (
    "%(asctime)s [%(command)s] [%(group)s] [%(prime)s] [%(item)s]"
    " [%(levelname)s] [%(name)s] %(message)s"
)

# sympy and the process pool log at DEBUG on their own
_QUIET = ("asyncio", "concurrent.futures", "sympy")


class NilbalFormatter(logging.Formatter):
    """Copies the log context onto the record before formatting.

    Each field becomes an attribute (``-`` when unset); ``context`` is the
    set fields joined as ``command group p=prime [item]: ``, or empty.
    """

    def format(self, record: logging.LogRecord) -> str:
        ctx = current_context()
        for name in FIELDS:
            setattr(record, name, ctx.get(name, "-"))
        parts = [ctx[k] for k in ("command", "group") if k in ctx]
        if "prime" in ctx:
            parts.append(f"p={ctx['prime']}")
        if "item" in ctx:
            parts.append(f"[{ctx['item']}]")
        record.context = f"{' '.join(parts)}: " if parts else ""
        return super().format(record)


def _level(name: str) -> int:
    value = logging.getLevelName(name.upper())
    if not isinstance(value, int):
        raise ValueError(f"Invalid log level: {name!r}")
    return value


def configure_logging(level: str = "WARNING", log_file: str | None = None) -> None:
    """(Re)configure the ``nilbal`` logger: stderr always, a daily rotated file if given."""
    numeric = _level(level)
    root = logging.getLogger("nilbal")
    root.handlers.clear()
    root.setLevel(numeric)

    console = logging.StreamHandler(sys.stderr)
    console.setLevel(numeric)
    console.setFormatter(NilbalFormatter(CONSOLE_FORMAT))
    root.addHandler(console)

    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        rotating = TimedRotatingFileHandler(path, when="midnight", backupCount=7, utc=True)
        rotating.setFormatter(NilbalFormatter(FILE_FORMAT, datefmt="%Y-%m-%d %H:%M:%S"))
        root.addHandler(rotating)

    for name in _QUIET:
        logging.getLogger(name).setLevel(logging.WARNING)
