"""Pool construction: depth-k pools, size-k pools with search-engine and
noise injections, pool-growth series and pool statistics.

A size-k pool always contains the injected documents; pooling-run
documents are added whole rank tiers at a time, at the minimum depth d
whose union reaches k distinct documents in total.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field

from .types import (
    CrawlManifest,
    Pool,
    PoolEntry,
    PoolSpec,
    RankedRun,
    ShortfallWarning,
    ToolkitWarning,
)


def depth_k_pool(runs: list[RankedRun], topic_id: str, depth: int) -> Pool:
    """Union of every run's top-``depth`` documents for the topic.

    Provenance records the minimum rank at which any run contributed the
    document. A topic absent from all runs yields an empty pool plus a
    warning.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    lists = [run.ranking(topic_id) for run in runs]
    if not any(lists):
        warnings.warn(
            f"topic {topic_id!r} absent from all runs; empty pool",
            ToolkitWarning,
            stacklevel=2,
        )
        return Pool(topic_id=topic_id, entries={}, depth=0)
    min_rank: dict[str, int] = {}
    for ranking in lists:
        for i, doc in enumerate(ranking[:depth], start=1):
            if doc not in min_rank or i < min_rank[doc]:
                min_rank[doc] = i
    entries = {
        doc: PoolEntry(doc_id=doc, source="pooling_run", rank=rank)
        for doc, rank in min_rank.items()
    }
    realized = min(depth, max(len(r) for r in lists))
    return Pool(topic_id=topic_id, entries=entries, depth=realized if entries else 0)


def size_k_pool(
    runs: list[RankedRun],
    topic_id: str,
    spec: PoolSpec,
    search_top: list[str],
    noise_docs: list[str],
    manifest: CrawlManifest | None = None,
) -> Pool:
    """Build a size-k pool: the injected documents plus the depth-d union
    of the pooling runs, where d is the minimum depth reaching at least k
    distinct documents altogether.

    ``search_top`` must hold exactly spec.k_g documents (in engine rank
    order) and ``noise_docs`` exactly spec.k_n. When a manifest is given,
    noise documents that were also crawled for the topic are rejected:
    they would corrupt the judgment quality control. If the runs are
    exhausted below k, the maximal pool is returned with a warning.

    Documents fed by both an injection and a pooling run count once and
    keep the injection provenance.
    """
    if len(search_top) != spec.k_g:
        raise ValueError(f"expected {spec.k_g} search-engine documents, got {len(search_top)}")
    if len(noise_docs) != spec.k_n:
        raise ValueError(f"expected {spec.k_n} noise documents, got {len(noise_docs)}")
    if len(set(search_top)) != len(search_top) or len(set(noise_docs)) != len(noise_docs):
        raise ValueError("injected document lists must not contain duplicates")
    overlap = set(search_top) & set(noise_docs)
    if overlap:
        raise ValueError(f"documents injected as both search and noise: {sorted(overlap)}")
    if manifest is not None:
        crawled = manifest.docs_for(topic_id)
        bad = set(noise_docs) & crawled
        if bad:
            raise ValueError(
                f"noise documents also crawled for topic {topic_id!r}: {sorted(bad)}"
            )
        known_noise = manifest.noise_docs()
        stray = set(noise_docs) - known_noise
        if stray:
            raise ValueError(
                f"injected noise documents not from any noise topic: {sorted(stray)}"
            )

    entries: dict[str, PoolEntry] = {}
    for i, doc in enumerate(search_top, start=1):
        entries[doc] = PoolEntry(doc_id=doc, source="search_engine", rank=i)
    for doc in noise_docs:
        entries[doc] = PoolEntry(doc_id=doc, source="noise", rank=None)

    lists = [run.ranking(topic_id) for run in runs]
    max_depth = max((len(r) for r in lists), default=0)
    depth = 0
    total = len(entries)
    pooled: dict[str, int] = {}  # doc -> minimum contributing rank
    while total < spec.k:
        if depth >= max_depth:
            warnings.warn(
                f"topic {topic_id!r}: runs exhausted at depth {depth} with "
                f"{total} documents (< k={spec.k})",
                ShortfallWarning,
                stacklevel=2,
            )
            break
        depth += 1
        for ranking in lists:
            if len(ranking) >= depth:
                doc = ranking[depth - 1]
                if doc not in pooled:
                    pooled[doc] = depth
                    if doc not in entries:
                        total += 1
    for doc, rank in pooled.items():
        if doc not in entries:
            entries[doc] = PoolEntry(doc_id=doc, source="pooling_run", rank=rank)
    realized = depth if any(e.source == "pooling_run" for e in entries.values()) else 0
    return Pool(topic_id=topic_id, entries=entries, depth=realized)


@dataclass
class GrowthSeries:
    """Nested size-k pools for one topic over an increasing size ladder."""

    topic_id: str
    sizes: list[int]
    pools: list[Pool]
    search_top: list[str] = field(default_factory=list)
    noise_docs: list[str] = field(default_factory=list)

    def __post_init__(self):
        if len(self.sizes) != len(self.pools):
            raise ValueError("one pool per target size required")
        for a, b in zip(self.pools, self.pools[1:]):
            if not a.doc_ids() <= b.doc_ids():
                raise ValueError("growth pools must be nested")
            if a.size > b.size:
                raise ValueError("growth pool sizes must be non-decreasing")

    def pool_at(self, size: int) -> Pool:
        return self.pools[self.sizes.index(size)]


def pool_growth_series(
    runs: list[RankedRun],
    topic_id: str,
    sizes: list[int],
    search_top: list[str],
    noise_docs: list[str],
    manifest: CrawlManifest | None = None,
) -> GrowthSeries:
    """One size-k pool per target size, sharing the injected documents.

    Sizes must be strictly increasing and start at or above the injection
    count; nesting holds because the realized depth is monotone in k.
    """
    if not sizes:
        raise ValueError("empty size ladder")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("sizes must be strictly increasing")
    if sizes[0] < len(search_top) + len(noise_docs):
        raise ValueError(
            f"smallest size {sizes[0]} below injection count "
            f"{len(search_top) + len(noise_docs)}"
        )
    pools = []
    for k in sizes:
        spec = PoolSpec(k=k, k_g=len(search_top), k_n=len(noise_docs))
        pools.append(
            size_k_pool(runs, topic_id, spec, search_top, noise_docs, manifest)
        )
    return GrowthSeries(
        topic_id=topic_id,
        sizes=list(sizes),
        pools=pools,
        search_top=list(search_top),
        noise_docs=list(noise_docs),
    )


def sample_noise_docs(
    manifest: CrawlManifest, k_n: int, seed: int, exclude: set[str] | None = None
) -> list[str]:
    """Seeded uniform sample (without replacement) from the union of the
    noise topics' crawled documents."""
    candidates = sorted(manifest.noise_docs() - (exclude or set()))
    if len(candidates) < k_n:
        raise ValueError(
            f"only {len(candidates)} noise documents available, need {k_n}"
        )
    return random.Random(seed).sample(candidates, k_n)


@dataclass
class PoolStats:
    """Per-topic pool size/depth, their means and cross-topic duplicates."""

    rows: list[tuple[str, int, int]]
    mean_size: float
    mean_depth: float
    duplicates: dict[str, int]

    def to_csv(self) -> str:
        lines = ["topic_id,pool_size,pool_depth"]
        for topic_id, size, depth in self.rows:
            lines.append(f"{topic_id},{size},{depth}")
        lines.append(f"average,{self.mean_size:.6f},{self.mean_depth:.6f}")
        return "\n".join(lines) + "\n"

    def duplicates_csv(self) -> str:
        lines = ["doc_id,n_topics"]
        for doc_id in sorted(self.duplicates):
            lines.append(f"{doc_id},{self.duplicates[doc_id]}")
        return "\n".join(lines) + "\n"


def pool_stats(pools: list[Pool]) -> PoolStats:
    """Summarize pools: sizes, depths, their means, and documents pooled
    for more than one topic."""
    if not pools:
        raise ValueError("no pools to summarize")
    rows = sorted((p.topic_id, p.size, p.depth) for p in pools)
    counts: dict[str, int] = {}
    for p in pools:
        for doc in p.doc_ids():
            counts[doc] = counts.get(doc, 0) + 1
    duplicates = {doc: n for doc, n in counts.items() if n >= 2}
    return PoolStats(
        rows=rows,
        mean_size=sum(r[1] for r in rows) / len(rows),
        mean_depth=sum(r[2] for r in rows) / len(rows),
        duplicates=duplicates,
    )
