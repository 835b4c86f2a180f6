"""Append-only on-disk response cache, one JSON record per line."""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from pathlib import Path

from .records import CompletionRecord


@dataclass
class CacheStats:
    hits: int = 0
    misses: int = 0


class ResponseCache:
    """Completion records keyed by prompt hash.

    Backed by a JSON Lines file that is only ever appended to, so a crashed
    run loses at most the record being written. Re-reading tolerates duplicate
    hashes (first write wins) and a truncated final line.
    """

    def __init__(self, path):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._records: dict[str, CompletionRecord] = {}
        self._lock = threading.Lock()
        self.stats = CacheStats()
        if self.path.exists():
            self._load()

    def _load(self):
        with open(self.path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    record = CompletionRecord.from_dict(json.loads(line))
                except (json.JSONDecodeError, KeyError, ValueError):
                    continue  # torn tail write from a killed run
                self._records.setdefault(record.prompt_hash, record)

    def __len__(self) -> int:
        return len(self._records)

    def __getstate__(self):
        state = self.__dict__.copy()
        del state["_lock"]
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.Lock()

    def get(self, prompt_hash: str) -> CompletionRecord | None:
        with self._lock:
            record = self._records.get(prompt_hash)
            if record is None:
                self.stats.misses += 1
            else:
                self.stats.hits += 1
            return record

    def put(self, record: CompletionRecord) -> None:
        with self._lock:
            if record.prompt_hash in self._records:
                return
            self._records[record.prompt_hash] = record
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(record.to_dict()) + "\n")
                fh.flush()


class NullCache:
    """Cache stand-in that stores nothing (forces a completion every call)."""

    def __init__(self):
        self.stats = CacheStats()

    def __len__(self) -> int:
        return 0

    def get(self, prompt_hash: str):
        self.stats.misses += 1
        return None

    def put(self, record) -> None:
        pass
