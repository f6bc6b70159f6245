# src/utils/timeutils.py
# Report timestamps and a small wall-clock timer.

import time
from contextlib import contextmanager
from datetime import datetime, timezone


def iso_stamp() -> str:
    # e.g., 2026-03-10T13-22-45
    return datetime.now(timezone.utc).astimezone().strftime("%Y-%m-%dT%H-%M-%S")


@contextmanager
def timer():
    """Yields a dict whose "seconds" entry is filled in on exit."""
    out = {"seconds": None}
    t0 = time.perf_counter()
    try:
        yield out
    finally:
        out["seconds"] = round(time.perf_counter() - t0, 6)
