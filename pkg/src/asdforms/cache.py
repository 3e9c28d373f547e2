"""Append-only cache of fibre point counts.

One record per line: ``family_id q t count``, where ``t`` is ``inf`` or
``a,b`` (coordinates in the basis 1, s of F_q).
"""

from __future__ import annotations

import logging
import os
import threading
from pathlib import Path

log = logging.getLogger(__name__)

ENV_VAR = "ASDFORMS_CACHE"


class CacheIntegrityError(RuntimeError):
    """Two records disagree on the count for the same fibre."""


class CountCache:
    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)
        self._counts: dict[tuple[str, int, str], int] = {}
        self._pending: list[str] = []
        self._lock = threading.Lock()
        self.skipped = 0
        self.appended = 0
        self.hits = 0
        if self.path.exists():
            self._load()

    def _load(self) -> None:
        with self.path.open() as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                parts = line.split()
                try:
                    family_id, q, t, count = parts
                    key, value = (family_id, int(q), t), int(count)
                    if t != "inf" and len(t.split(",")) != 2:
                        raise ValueError(t)
                except ValueError:
                    self.skipped += 1
                    log.warning("%s:%d: skipping corrupt cache line %r", self.path, lineno, line)
                    continue
                self._store(key, value)

    def _store(self, key: tuple[str, int, str], value: int) -> bool:
        old = self._counts.get(key)
        if old is None:
            self._counts[key] = value
            return True
        if old != value:
            raise CacheIntegrityError(f"conflicting counts {old} and {value} for {key}")
        return False

    def lookup(self, family_id: str, q: int, t: str) -> int | None:
        value = self._counts.get((family_id, q, t))
        if value is not None:
            self.hits += 1
        return value

    def append(self, family_id: str, q: int, t: str, count: int) -> None:
        with self._lock:
            if self._store((family_id, q, t), count):
                self._pending.append(f"{family_id} {q} {t} {count}\n")
                self.appended += 1

    def flush(self) -> None:
        with self._lock:
            if not self._pending:
                return
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a") as fh:
                fh.write("".join(self._pending))
            self._pending.clear()

    def entries(self) -> list[tuple[tuple[str, int, str], int]]:
        return sorted(self._counts.items())

    def __len__(self) -> int:
        return len(self._counts)

    def __enter__(self) -> "CountCache":
        return self

    def __exit__(self, *exc) -> None:
        self.flush()


def resolve_cache_path(flag: str | None, configured: str | None) -> str | None:
    """The environment variable wins over both the flag and the config file."""
    return os.environ.get(ENV_VAR) or flag or configured
