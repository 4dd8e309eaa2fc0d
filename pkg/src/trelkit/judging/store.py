"""Crash-safe persistence for assignments and judgments.

An append-only JSONL log: every record is written, flushed and fsynced
before the caller acknowledges anything to the client, so a crash can
only lose judgments that were never acked. On replay a torn trailing
line (partial write) is discarded. ``compact`` rewrites the log keeping
assignments and the latest judgment per (assessor, topic, doc); the full
pre-compaction history is the audit trail.
"""

from __future__ import annotations

import json
import os
import threading
from pathlib import Path

LOG_NAME = "judgments.log"


class JudgmentLog:
    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self.path = self.directory / LOG_NAME
        self._lock = threading.Lock()
        self._fh = open(self.path, "a", encoding="utf-8")

    def append(self, record: dict) -> None:
        """Durably append one record; returns only after fsync."""
        line = json.dumps(record, sort_keys=True, separators=(",", ":"))
        with self._lock:
            self._fh.write(line + "\n")
            self._fh.flush()
            os.fsync(self._fh.fileno())

    def replay(self) -> list[dict]:
        """All complete records, oldest first. A torn final line (no
        newline or broken JSON) is skipped: it was never acknowledged."""
        records = []
        if not self.path.exists():
            return records
        with open(self.path, "rb") as fh:
            raw = fh.read()
        lines = raw.split(b"\n")
        complete, tail = lines[:-1], lines[-1]
        for i, line in enumerate(complete):
            if not line.strip():
                continue
            try:
                records.append(json.loads(line))
            except ValueError:
                if i == len(complete) - 1 and not tail:
                    continue  # torn write at the very end
                raise
        if tail.strip():
            try:
                records.append(json.loads(tail))
            except ValueError:
                pass  # torn write, never acked
        return records

    def compact(self) -> None:
        """Rewrite the log dropping superseded judgment records."""
        records = self.replay()
        latest: dict[tuple, int] = {}
        for i, rec in enumerate(records):
            if rec.get("type") == "judgment":
                latest[(rec["assessor"], rec["topic"], rec["doc"])] = i
        kept = [
            rec
            for i, rec in enumerate(records)
            if rec.get("type") != "judgment"
            or latest[(rec["assessor"], rec["topic"], rec["doc"])] == i
        ]
        tmp = self.path.with_suffix(".compact")
        with open(tmp, "w", encoding="utf-8") as fh:
            for rec in kept:
                fh.write(json.dumps(rec, sort_keys=True, separators=(",", ":")) + "\n")
            fh.flush()
            os.fsync(fh.fileno())
        with self._lock:
            self._fh.close()
            os.replace(tmp, self.path)
            self._fh = open(self.path, "a", encoding="utf-8")

    def close(self) -> None:
        with self._lock:
            self._fh.close()
