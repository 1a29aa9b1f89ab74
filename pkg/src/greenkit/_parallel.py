import os
from concurrent.futures import ThreadPoolExecutor


def thread_count():
    """Worker cap from GREENKIT_THREADS (0 or unset = os.cpu_count())."""
    raw = os.environ.get("GREENKIT_THREADS", "0").strip() or "0"
    n = int(raw)
    if n < 0:
        raise ValueError(f"GREENKIT_THREADS must be >= 0, got {n}")
    return n if n > 0 else (os.cpu_count() or 1)


def ordered_map(fn, items):
    """map() over items, threaded when allowed; results keep input order."""
    items = list(items)
    workers = min(thread_count(), len(items))
    if workers <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
