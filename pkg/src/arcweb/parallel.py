"""Optional process-pool mapping, sized by the ARCWEB_THREADS variable."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def thread_count() -> int:
    raw = os.environ.get("ARCWEB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"ARCWEB_THREADS must be an integer, got {raw!r}") from None


def pmap(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    """map() that may fan out over processes; results keep the input order."""
    items = list(items)
    n = thread_count()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))
