"""Domain types shared across the toolkit.

Everything here is a plain data carrier: topics, ranked runs, crawl
manifests, graded judgments, judgment pools and resolved ground-truth
sets ("trels"). Parsing and serialization live in :mod:`trelkit.formats`.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

#: Valid judgment levels. -1 means "could not be rendered/judged".
LEVELS = (-1, 0, 1, 2)

#: Levels allowed in a resolved trel (the -1 level is resolved to 0).
RESOLVED_LEVELS = (0, 1, 2)

#: Provenance kinds a pooled document can carry.
PROVENANCE_KINDS = ("pooling_run", "search_engine", "noise")


class ToolkitWarning(UserWarning):
    """Base class for all warnings emitted by trelkit."""


class FormatWarning(ToolkitWarning):
    """A file parsed, but something looked off (e.g. a rank column mismatch)."""


class ShortfallWarning(ToolkitWarning):
    """A pool or sample could not reach its requested size."""


class DegenerateValueWarning(ToolkitWarning):
    """A score or statistic was forced to a boundary value (R=0, IDCG=0, ...)."""


def derive_seed(*parts) -> int:
    """Derive a stable child seed from arbitrary labeled parts.

    Python's builtin ``hash`` is randomized per process, so seeds for
    noise sampling, worklist shuffles etc. are derived through sha256.
    """
    text = ":".join(str(p) for p in parts)
    return int.from_bytes(hashlib.sha256(text.encode("utf-8")).digest()[:8], "big")


@dataclass(frozen=True)
class Topic:
    """An information need: id, title (used verbatim as the query) and the
    per-level relevance descriptions shown to assessors."""

    id: str
    title: str
    relevance_levels: tuple[tuple[int, str], ...] = ()

    def __post_init__(self):
        if not self.id:
            raise ValueError("topic id must be non-empty")
        if not self.title:
            raise ValueError(f"topic {self.id!r}: title must be non-empty")


@dataclass
class RankedRun:
    """One system's ordered retrieval results per topic.

    ``rankings`` maps topic_id to the ranked list of (doc_id, score);
    rank is positional and 1-based.
    """

    system_tag: str
    rankings: dict[str, list[tuple[str, float]]] = field(default_factory=dict)

    def topics(self) -> list[str]:
        return sorted(self.rankings)

    def ranking(self, topic_id: str) -> list[str]:
        """Ranked doc ids for a topic ([] when the topic is absent)."""
        return [doc for doc, _ in self.rankings.get(topic_id, [])]

    def top(self, topic_id: str, k: int) -> list[str]:
        return self.ranking(topic_id)[:k]


@dataclass
class CrawlManifest:
    """Which documents were crawled for which topic, and which topics are
    noise topics (decoys whose documents serve as known-nonrelevant probes)."""

    topic_docs: dict[str, frozenset[str]] = field(default_factory=dict)
    noise_topics: frozenset[str] = frozenset()

    def __post_init__(self):
        unknown = self.noise_topics - set(self.topic_docs)
        if unknown:
            raise ValueError(f"noise topics without crawled docs: {sorted(unknown)}")

    def topics(self) -> list[str]:
        return sorted(self.topic_docs)

    def docs_for(self, topic_id: str) -> frozenset[str]:
        try:
            return self.topic_docs[topic_id]
        except KeyError:
            raise KeyError(f"topic {topic_id!r} not in manifest") from None

    def noise_docs(self) -> frozenset[str]:
        """Union of documents crawled for the noise topics."""
        out: set[str] = set()
        for t in self.noise_topics:
            out |= self.topic_docs[t]
        return frozenset(out)


@dataclass(frozen=True)
class Judgment:
    topic_id: str
    assessor_id: str
    doc_id: str
    level: int

    def __post_init__(self):
        if self.level not in LEVELS:
            raise ValueError(
                f"judgment level must be one of {LEVELS}, got {self.level}"
            )


@dataclass
class JudgmentSet:
    """One assessor's graded judgments: (topic_id, doc_id) -> level."""

    assessor_id: str
    levels: dict[tuple[str, str], int] = field(default_factory=dict)

    def __post_init__(self):
        for (t, d), lv in self.levels.items():
            if lv not in LEVELS:
                raise ValueError(f"level {lv} for ({t}, {d}) outside {LEVELS}")

    def topics(self) -> list[str]:
        return sorted({t for t, _ in self.levels})

    def docs(self, topic_id: str) -> set[str]:
        return {d for t, d in self.levels if t == topic_id}

    def level(self, topic_id: str, doc_id: str) -> int | None:
        return self.levels.get((topic_id, doc_id))

    def topic_levels(self, topic_id: str) -> dict[str, int]:
        return {d: lv for (t, d), lv in self.levels.items() if t == topic_id}

    def add(self, topic_id: str, doc_id: str, level: int) -> None:
        if level not in LEVELS:
            raise ValueError(f"level {level} outside {LEVELS}")
        key = (topic_id, doc_id)
        if key in self.levels:
            raise ValueError(
                f"duplicate judgment by {self.assessor_id} for {key}"
            )
        self.levels[key] = level


@dataclass(frozen=True)
class PoolSpec:
    """Target size and injection counts for size-k pooling."""

    k: int
    k_g: int = 0
    k_n: int = 0

    def __post_init__(self):
        if self.k <= 0:
            raise ValueError("pool target size k must be positive")
        if self.k_g < 0 or self.k_n < 0:
            raise ValueError("injection counts must be non-negative")
        if self.k < self.k_g + self.k_n:
            raise ValueError(
                f"k={self.k} smaller than injections k_g+k_n={self.k_g + self.k_n}"
            )


@dataclass(frozen=True)
class PoolEntry:
    """A pooled document plus its provenance.

    ``rank`` is the 1-based rank at which a ranked source (pooling run or
    search engine) contributed the document; None for noise documents.
    """

    doc_id: str
    source: str
    rank: int | None = None

    def __post_init__(self):
        if self.source not in PROVENANCE_KINDS:
            raise ValueError(f"unknown provenance {self.source!r}")
        if self.source == "noise":
            if self.rank is not None:
                raise ValueError("noise entries carry no rank")
        elif self.rank is None or self.rank < 1:
            raise ValueError(f"{self.source} entries need a 1-based rank")


@dataclass
class Pool:
    """Per-topic set of documents to judge, with provenance and the
    realized pooling depth (max rank taken from the pooling runs)."""

    topic_id: str
    entries: dict[str, PoolEntry] = field(default_factory=dict)
    depth: int = 0

    def __post_init__(self):
        for doc, e in self.entries.items():
            if e.doc_id != doc:
                raise ValueError(f"entry key {doc!r} != entry doc_id {e.doc_id!r}")
        if self.depth < 0:
            raise ValueError("depth must be >= 0")
        if self.depth == 0 and any(
            e.source == "pooling_run" for e in self.entries.values()
        ):
            raise ValueError("depth must be >= 1 when pooling-run entries exist")

    @property
    def size(self) -> int:
        return len(self.entries)

    def doc_ids(self) -> set[str]:
        return set(self.entries)


@dataclass
class Trel:
    """A resolved ground truth: one level in {0,1,2} per (topic, document).

    ``topic_levels`` maps topic_id -> {doc_id -> level}. The nested shape
    lets many trels share per-topic judgment maps without copying.
    ``provenance`` records, per topic, which assessor (or "union" /
    "intersection") supplied the levels.
    """

    name: str
    topic_levels: dict[str, dict[str, int]] = field(default_factory=dict)
    provenance: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        for t, docs in self.topic_levels.items():
            for d, lv in docs.items():
                if lv not in RESOLVED_LEVELS:
                    raise ValueError(
                        f"trel level must be in {RESOLVED_LEVELS}, got {lv} for ({t}, {d})"
                    )
            if t not in self.provenance:
                raise ValueError(f"topic {t!r} has levels but no provenance")

    def topics(self) -> list[str]:
        return sorted(self.topic_levels)

    def level(self, topic_id: str, doc_id: str) -> int:
        """Judged level, with unjudged documents counting as nonrelevant."""
        return self.topic_levels.get(topic_id, {}).get(doc_id, 0)

    def graded(self, topic_id: str) -> dict[str, int]:
        return self.topic_levels.get(topic_id, {})

    def relevant(self, topic_id: str) -> set[str]:
        """Documents with conflated-relevant levels (level >= 1)."""
        return {d for d, lv in self.graded(topic_id).items() if lv >= 1}

    def items(self):
        for t in self.topics():
            for d in sorted(self.topic_levels[t]):
                yield (t, d), self.topic_levels[t][d]
