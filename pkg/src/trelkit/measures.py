"""Effectiveness measures: NDCG@k, AP@k, P@k, R@k, RR and the crawl
ratio C@k, plus the per-(system, topic) score matrix.

All measures return values in [0, 1]. AP, P, R and RR use conflated
binary relevance (level >= 1 is relevant); NDCG uses the graded levels
with linear gain g(l) = l and a 1/log2(i+1) discount. Degenerate topics
(no relevant documents, zero ideal gain) score 0 and raise a
DegenerateValueWarning.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

from .types import CrawlManifest, DegenerateValueWarning, RankedRun, Trel

MEASURE_NAMES = ("ndcg", "ap", "p", "rr", "c", "r")


def conflate(level: int) -> int:
    """Binary relevance: somewhat (1) and highly (2) relevant conflate to
    relevant; levels 0 and -1 (unjudgeable) are nonrelevant."""
    return 1 if level >= 1 else 0


def precision_at(run: RankedRun, trel: Trel, topic_id: str, k: int) -> float:
    """Fraction of the first k positions holding relevant documents;
    unretrieved positions count as nonrelevant (the divisor is k)."""
    _check_k(k)
    if topic_id not in run.rankings:
        warnings.warn(
            f"run {run.system_tag!r} has no results for topic {topic_id!r}",
            DegenerateValueWarning,
            stacklevel=2,
        )
        return 0.0
    graded = trel.graded(topic_id)
    hits = sum(1 for doc in run.top(topic_id, k) if conflate(graded.get(doc, 0)))
    return hits / k


def recall_at(run: RankedRun, trel: Trel, topic_id: str, k: int) -> float:
    """Fraction of the topic's relevant documents retrieved in the top k."""
    _check_k(k)
    graded = trel.graded(topic_id)
    total = sum(1 for lv in graded.values() if conflate(lv))
    if total == 0:
        _degenerate(topic_id, "has no relevant documents; R@k forced to 0")
        return 0.0
    hits = sum(1 for doc in run.top(topic_id, k) if conflate(graded.get(doc, 0)))
    return hits / total


def average_precision_at(
    run: RankedRun, trel: Trel, topic_id: str, k: int, capped_denominator: bool = False
) -> float:
    """AP@k: mean of the precision at each relevant retrieved position.

    The denominator is the total number of relevant documents in the
    trel (set ``capped_denominator`` to use min(R, k) instead).
    """
    _check_k(k)
    graded = trel.graded(topic_id)
    total = sum(1 for lv in graded.values() if conflate(lv))
    if total == 0:
        _degenerate(topic_id, "has no relevant documents; AP@k forced to 0")
        return 0.0
    denom = min(total, k) if capped_denominator else total
    acc = 0.0
    hits = 0
    for i, doc in enumerate(run.top(topic_id, k), start=1):
        if conflate(graded.get(doc, 0)):
            hits += 1
            acc += hits / i
    return acc / denom


def reciprocal_rank(run: RankedRun, trel: Trel, topic_id: str, k: int = 100) -> float:
    """1/rank of the first relevant document within the top k, else 0."""
    _check_k(k)
    graded = trel.graded(topic_id)
    for i, doc in enumerate(run.top(topic_id, k), start=1):
        if conflate(graded.get(doc, 0)):
            return 1.0 / i
    return 0.0


def ndcg_at(
    run: RankedRun,
    trel: Trel,
    topic_id: str,
    k: int,
    gain: Callable[[int], float] = lambda level: float(level),
) -> float:
    """Normalized discounted cumulated gain at cutoff k over graded levels.

    DCG sums gain(level)/log2(i+1) over positions i = 1..k; the ideal DCG
    ranks the trel's levels in descending order. Zero ideal gain scores 0.
    """
    _check_k(k)
    graded = trel.graded(topic_id)
    dcg = 0.0
    for i, doc in enumerate(run.top(topic_id, k), start=1):
        dcg += gain(graded.get(doc, 0)) / math.log2(i + 1)
    idcg = 0.0
    ideal = sorted(graded.values(), reverse=True)
    for i, level in enumerate(ideal[:k], start=1):
        idcg += gain(level) / math.log2(i + 1)
    if idcg == 0:
        _degenerate(topic_id, "has zero ideal gain; NDCG@k forced to 0")
        return 0.0
    return dcg / idcg


def crawl_ratio_at(
    run: RankedRun, manifest: CrawlManifest, topic_id: str, k: int
) -> float:
    """C@k: fraction of the top k retrieved documents that were crawled
    for the topic."""
    _check_k(k)
    crawled = manifest.docs_for(topic_id)
    hits = sum(1 for doc in run.top(topic_id, k) if doc in crawled)
    return hits / k


def mean_over_topics(values) -> float:
    """Unweighted arithmetic mean across topics (degenerate topics were
    already folded in as 0 by the per-topic measures)."""
    values = list(values)
    if not values:
        raise ValueError("mean over an empty topic set")
    return sum(values) / len(values)


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError(f"cutoff k must be >= 1, got {k}")


def _degenerate(topic_id: str, what: str) -> None:
    warnings.warn(f"topic {topic_id!r} {what}", DegenerateValueWarning, stacklevel=3)


# ---------------------------------------------------------------------------
# measure kinds and score matrices

@dataclass(frozen=True)
class MeasureKind:
    """A measure name plus its cutoff, e.g. NDCG@100 or RR."""

    kind: str
    k: int = 100

    def __post_init__(self):
        if self.kind not in MEASURE_NAMES:
            raise ValueError(f"unknown measure {self.kind!r} (one of {MEASURE_NAMES})")
        if self.k < 1:
            raise ValueError("cutoff k must be >= 1")

    @classmethod
    def parse(cls, text: str) -> "MeasureKind":
        """Parse notations like "ndcg@100", "P@10" or "rr"."""
        name, _, cut = text.strip().lower().partition("@")
        if cut:
            return cls(kind=name, k=int(cut))
        return cls(kind=name)

    def __str__(self) -> str:
        return f"{self.kind.upper()}@{self.k}" if self.kind != "rr" else "RR"

    def score(
        self,
        run: RankedRun,
        trel: Trel | None,
        topic_id: str,
        manifest: CrawlManifest | None = None,
    ) -> float:
        if self.kind == "c":
            if manifest is None:
                raise ValueError("C@k needs a crawl manifest")
            return crawl_ratio_at(run, manifest, topic_id, self.k)
        if trel is None:
            raise ValueError(f"{self} needs a trel")
        if self.kind == "ndcg":
            return ndcg_at(run, trel, topic_id, self.k)
        if self.kind == "ap":
            return average_precision_at(run, trel, topic_id, self.k)
        if self.kind == "p":
            return precision_at(run, trel, topic_id, self.k)
        if self.kind == "r":
            return recall_at(run, trel, topic_id, self.k)
        return reciprocal_rank(run, trel, topic_id, self.k)


@dataclass
class ScoreMatrix:
    """Per-(system, topic) scores for one measure, plus per-system means."""

    measure: MeasureKind
    topics: list[str]
    scores: dict[tuple[str, str], float] = field(default_factory=dict)

    def systems(self) -> list[str]:
        return sorted({tag for tag, _ in self.scores})

    def system_mean(self, tag: str) -> float:
        return mean_over_topics(self.scores[(tag, t)] for t in self.topics)

    def by_mean(self) -> list[tuple[str, float]]:
        """Systems with their means, best first (ties by tag ascending)."""
        rows = [(tag, self.system_mean(tag)) for tag in self.systems()]
        rows.sort(key=lambda r: (-r[1], r[0]))
        return rows

    def to_csv(self) -> str:
        header = ["system"] + list(self.topics) + ["mean"]
        lines = [",".join(header)]
        for tag, mean in self.by_mean():
            cells = [tag]
            cells += [f"{self.scores[(tag, t)]:.6f}" for t in self.topics]
            cells.append(f"{mean:.6f}")
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"


def score_matrix(
    runs: list[RankedRun],
    trel: Trel | None,
    topics: list[str],
    measure: MeasureKind,
    manifest: CrawlManifest | None = None,
) -> ScoreMatrix:
    """Evaluate every run on every topic. Safe to parallelize per
    (run, topic); results are order-insensitive."""
    if not topics:
        raise ValueError("empty topic set")
    matrix = ScoreMatrix(measure=measure, topics=list(topics))
    for run in runs:
        for topic_id in topics:
            matrix.scores[(run.system_tag, topic_id)] = measure.score(
                run, trel, topic_id, manifest
            )
    return matrix


def cutoff_curve(
    runs: list[RankedRun],
    trel: Trel | None,
    topics: list[str],
    kind: str,
    cutoffs: list[int],
    manifest: CrawlManifest | None = None,
) -> list[tuple[int, float, float, float]]:
    """Plot data (k, mean, min, max) per cutoff, aggregated over systems'
    mean-over-topics scores. Used for C@k / R@k style curves."""
    rows = []
    for k in cutoffs:
        measure = MeasureKind(kind=kind, k=k)
        means = [
            mean_over_topics(
                measure.score(run, trel, t, manifest) for t in topics
            )
            for run in runs
        ]
        rows.append((k, sum(means) / len(means), min(means), max(means)))
    return rows
