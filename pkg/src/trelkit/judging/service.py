"""Core judging service: blinded assignments, judgment recording with an
audit trail, exports and noise quality control.

Assessors never see provenance: worklists are seeded shuffles of the
pool's documents, and every payload built here for the assessor role
carries only document content and progress. Pools (with provenance) stay
on the operator side.
"""

from __future__ import annotations

import random
import re
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping

from ..cleaning import CleanDocument, clean_document
from ..formats import parse_judgments, write_judgments
from ..qc import DEFAULT_QC_THRESHOLD, QCReport, noise_qc
from ..types import LEVELS, CrawlManifest, JudgmentSet, Pool, derive_seed
from .store import JudgmentLog


@dataclass
class Assignment:
    """One assessor's worklist over one topic's pool."""

    assessor_id: str
    topic_id: str
    worklist: list[str]
    judged: dict[str, int] = field(default_factory=dict)
    cursor: int = 0

    def advance(self) -> None:
        while self.cursor < len(self.worklist) and self.worklist[self.cursor] in self.judged:
            self.cursor += 1

    @property
    def done(self) -> bool:
        return self.cursor >= len(self.worklist)

    def progress(self) -> tuple[int, int]:
        return len(self.judged), len(self.worklist)


@dataclass(frozen=True)
class NextDocument:
    doc_id: str
    title: str
    body: str
    judged_count: int
    total: int

    def payload(self) -> dict:
        """The exact assessor-facing schema: nothing but content and
        progress."""
        return {
            "doc_id": self.doc_id,
            "title": self.title,
            "body": self.body,
            "judged_count": self.judged_count,
            "total": self.total,
        }


DocumentSource = Mapping[str, bytes] | Callable[[str], bytes]


class JudgingService:
    """Thread-safe judging state over a durable log.

    ``documents`` maps doc_id to raw page bytes (mapping or callable).
    State is rebuilt from the log on startup, so a restart never loses an
    acknowledged judgment.
    """

    def __init__(
        self,
        data_dir: str | Path,
        documents: DocumentSource,
        seed: int = 0,
        qc_threshold: float = DEFAULT_QC_THRESHOLD,
        manifest: CrawlManifest | None = None,
    ):
        self.log = JudgmentLog(data_dir)
        self._documents = documents
        self.seed = seed
        self.qc_threshold = qc_threshold
        self.manifest = manifest
        self.pools: dict[str, Pool] = {}
        self.assignments: dict[tuple[str, str], Assignment] = {}
        self._audit: dict[tuple[str, str, str], list[int]] = {}
        self._lock = threading.Lock()
        self._clean_cache: dict[str, CleanDocument] = {}
        self._replay()

    # -- persistence

    def _replay(self) -> None:
        for rec in self.log.replay():
            if rec["type"] == "assign":
                a = Assignment(
                    assessor_id=rec["assessor"],
                    topic_id=rec["topic"],
                    worklist=list(rec["worklist"]),
                )
                self.assignments[(a.assessor_id, a.topic_id)] = a
            elif rec["type"] == "judgment":
                a = self.assignments[(rec["assessor"], rec["topic"])]
                a.judged[rec["doc"]] = rec["level"]
                a.advance()
                self._audit.setdefault(
                    (rec["assessor"], rec["topic"], rec["doc"]), []
                ).append(rec["level"])

    # -- pools and documents

    def load_pool(self, pool: Pool) -> None:
        with self._lock:
            self.pools[pool.topic_id] = pool

    def raw_document(self, doc_id: str) -> bytes:
        if callable(self._documents):
            return self._documents(doc_id)
        try:
            return self._documents[doc_id]
        except KeyError:
            raise KeyError(f"unknown document {doc_id!r}") from None

    def document_view(self, doc_id: str) -> CleanDocument:
        cached = self._clean_cache.get(doc_id)
        if cached is None:
            cached = clean_document(self.raw_document(doc_id), doc_id=doc_id)
            self._clean_cache[doc_id] = cached
        return cached

    # -- assignments

    def assign_pool(self, pool: Pool, assessor_id: str, seed: int | None = None) -> Assignment:
        """Create the assessor's worklist: a seeded shuffle of the pool's
        documents, with no provenance carried over."""
        with self._lock:
            if (assessor_id, pool.topic_id) in self.assignments:
                raise ValueError(
                    f"assessor {assessor_id!r} already assigned topic {pool.topic_id!r}"
                )
            return self._assign_locked(pool, assessor_id, seed)

    def _assign_locked(self, pool: Pool, assessor_id: str, seed: int | None) -> Assignment:
        worklist = sorted(pool.doc_ids())
        shuffle_seed = (
            seed
            if seed is not None
            else derive_seed(self.seed, "worklist", assessor_id, pool.topic_id)
        )
        random.Random(shuffle_seed).shuffle(worklist)
        assignment = Assignment(
            assessor_id=assessor_id, topic_id=pool.topic_id, worklist=worklist
        )
        self.log.append(
            {
                "type": "assign",
                "assessor": assessor_id,
                "topic": pool.topic_id,
                "worklist": worklist,
            }
        )
        self.assignments[(assessor_id, pool.topic_id)] = assignment
        return assignment

    def assignment(self, assessor_id: str, topic_id: str) -> Assignment:
        """The existing assignment, creating it lazily from the loaded
        pool on first access."""
        key = (assessor_id, topic_id)
        with self._lock:
            a = self.assignments.get(key)
            if a is not None:
                return a
            pool = self.pools.get(topic_id)
            if pool is None:
                raise KeyError(f"no pool loaded for topic {topic_id!r}")
            return self._assign_locked(pool, assessor_id, None)

    def assessor_overview(self, assessor_id: str) -> dict:
        """Blinded progress overview across the assessor's topics (loaded
        pools plus any assignments replayed from the log)."""
        with self._lock:
            topics = set(self.pools)
            topics.update(t for (a, t) in self.assignments if a == assessor_id)
            rows = []
            for t in sorted(topics):
                a = self.assignments.get((assessor_id, t))
                if a is None:
                    rows.append({"topic_id": t, "judged": 0, "total": self.pools[t].size})
                else:
                    judged, total = a.progress()
                    rows.append({"topic_id": t, "judged": judged, "total": total})
        return {"assessor_id": assessor_id, "topics": rows}

    def next_unjudged(self, assessor_id: str, topic_id: str) -> NextDocument | None:
        """The assessor's next document with its cleaned body, or None when
        the worklist is complete."""
        a = self.assignment(assessor_id, topic_id)
        with self._lock:
            a.advance()
            if a.done:
                return None
            doc_id = a.worklist[a.cursor]
            judged, total = a.progress()
        view = self.document_view(doc_id)
        return NextDocument(
            doc_id=doc_id,
            title=view.title,
            body=view.body,
            judged_count=judged,
            total=total,
        )

    # -- judgments

    def submit_judgment(
        self, assessor_id: str, topic_id: str, doc_id: str, level: int
    ) -> dict:
        """Record a judgment for the current document, or revise a
        previously judged one. Persisted durably before the ack."""
        if level not in LEVELS:
            raise ValueError(f"level must be one of {LEVELS}, got {level}")
        a = self.assignment(assessor_id, topic_id)
        with self._lock:
            if doc_id not in a.worklist:
                raise KeyError(
                    f"document {doc_id!r} is not in the assignment for "
                    f"({assessor_id!r}, {topic_id!r})"
                )
            a.advance()
            is_current = not a.done and a.worklist[a.cursor] == doc_id
            if not is_current and doc_id not in a.judged:
                raise ValueError(
                    f"document {doc_id!r} is neither the current document nor "
                    "previously judged"
                )
            self.log.append(
                {
                    "type": "judgment",
                    "assessor": assessor_id,
                    "topic": topic_id,
                    "doc": doc_id,
                    "level": level,
                }
            )
            a.judged[doc_id] = level
            self._audit.setdefault((assessor_id, topic_id, doc_id), []).append(level)
            a.advance()
            judged, total = a.progress()
            return {"accepted": True, "judged_count": judged, "total": total}

    def audit_trail(self, assessor_id: str, topic_id: str, doc_id: str) -> list[int]:
        return list(self._audit.get((assessor_id, topic_id, doc_id), []))

    def judgment_sets(self) -> list[JudgmentSet]:
        with self._lock:
            by_assessor: dict[str, JudgmentSet] = {}
            for (assessor_id, topic_id), a in sorted(self.assignments.items()):
                js = by_assessor.setdefault(assessor_id, JudgmentSet(assessor_id))
                for doc_id, level in a.judged.items():
                    js.levels[(topic_id, doc_id)] = level
        return [by_assessor[k] for k in sorted(by_assessor)]

    # -- operator surface

    def export_judgments(self, topic_id: str | None = None) -> bytes:
        """Judgment file bytes in the interchange format, deterministically
        ordered; round-trips through the parser byte-identically."""
        sets = self.judgment_sets()
        if topic_id is not None:
            sets = [
                JudgmentSet(
                    js.assessor_id,
                    {k: v for k, v in js.levels.items() if k[0] == topic_id},
                )
                for js in sets
            ]
            sets = [js for js in sets if js.levels]
        return write_judgments(sets)

    def qc_report(self) -> QCReport:
        if self.manifest is None:
            raise ValueError("noise QC needs a crawl manifest")
        return noise_qc(self.judgment_sets(), self.manifest, self.qc_threshold)

    # -- search

    def search_document(self, doc_id: str, query: str) -> list[dict]:
        """Case-insensitive substring matches over the cleaned plain text;
        offsets index into that text. An empty query matches nothing."""
        if not query:
            return []
        text = self.document_view(doc_id).plain_text()
        return [
            {"offset": m.start(), "length": m.end() - m.start()}
            for m in re.finditer(re.escape(query), text, re.IGNORECASE)
        ]
