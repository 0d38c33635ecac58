"""Persistent mu cache for plain intervals, as an append-only JSON-lines
file.

Keys are the two permutation texts joined by "|".  Only plain-interval
values are cached; occurrence-poset values are host-relative and never
shared.  Entries from a different engine version are ignored, which is
how version bumps invalidate old files.  Lines that fail to parse are
dropped with a warning and the file is rewritten from the surviving
entries.
"""

from __future__ import annotations

import json
import logging
import os
import threading
from pathlib import Path
from typing import Callable

from .perms import format_permutation, parse_permutation
from .poset import ENGINE_VERSION

log = logging.getLogger(__name__)


def default_cache_path() -> Path:
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "permposet" / "mu.jsonl"


def cache_key(sigma, tau) -> str:
    return f"{format_permutation(sigma)}|{format_permutation(tau)}"


def _parse_entry(line: str) -> tuple[str, int, int] | None:
    entry = json.loads(line)
    key = entry["key"]
    if str(entry["engine_version"]) != str(ENGINE_VERSION):
        return None
    left, right = key.split("|")
    parse_permutation(left), parse_permutation(right)
    return key, int(entry["mu"]), int(entry["node_count"])


class MuCache:
    """get_or_compute() store over one JSON-lines file.

    Writes append a single line per entry; the file is only rewritten
    when corrupt lines were found on load.  Last write wins per key, so
    concurrent appenders stay consistent (they can only ever append
    equal values for equal keys).
    """

    def __init__(self, path: str | Path | None = None):
        self.path = Path(path) if path is not None else default_cache_path()
        self._lock = threading.Lock()
        self._entries: dict[str, tuple[int, int]] | None = None

    def _load(self) -> dict[str, tuple[int, int]]:
        if self._entries is not None:
            return self._entries
        entries: dict[str, tuple[int, int]] = {}
        dirty = False
        if self.path.exists():
            for line in self.path.read_text().splitlines():
                if not line.strip():
                    continue
                try:
                    parsed = _parse_entry(line)
                except (ValueError, KeyError, TypeError):
                    log.warning("dropping corrupt cache line in %s: %r",
                                self.path, line[:80])
                    dirty = True
                    continue
                if parsed is not None:
                    key, mu, nodes = parsed
                    entries[key] = (mu, nodes)
        if dirty:
            self._rewrite(entries)
        self._entries = entries
        return entries

    def _rewrite(self, entries: dict[str, tuple[int, int]]) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        tmp = self.path.with_suffix(".tmp")
        with tmp.open("w") as fh:
            for key in sorted(entries):
                mu, nodes = entries[key]
                fh.write(self._line(key, mu, nodes))
        tmp.replace(self.path)

    @staticmethod
    def _line(key: str, mu: int, nodes: int) -> str:
        return json.dumps(
            {"key": key, "mu": mu, "node_count": nodes,
             "engine_version": str(ENGINE_VERSION)},
            sort_keys=True) + "\n"

    def _append(self, key: str, mu: int, nodes: int) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a") as fh:
            fh.write(self._line(key, mu, nodes))

    def __len__(self) -> int:
        with self._lock:
            return len(self._load())

    def lookup(self, sigma, tau) -> int | None:
        with self._lock:
            hit = self._load().get(cache_key(sigma, tau))
        return hit[0] if hit is not None else None

    def get_or_compute(self, sigma, tau,
                       compute: Callable[[], tuple[int, int] | None]
                       ) -> int | None:
        """Cached mu(sigma, tau), computing and persisting on a miss.

        compute() returns (mu, node_count), or None when it had to give
        up (budget); None results are returned but never stored.
        """
        key = cache_key(sigma, tau)
        with self._lock:
            entries = self._load()
            hit = entries.get(key)
            if hit is not None:
                return hit[0]
        result = compute()
        if result is None:
            return None
        mu, nodes = result
        with self._lock:
            self._entries[key] = (mu, nodes)
            self._append(key, mu, nodes)
        return mu
