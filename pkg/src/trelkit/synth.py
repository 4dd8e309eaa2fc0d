"""Seeded synthetic collections: topics, crawl manifests, pooling runs, a
search-engine run, graded student-style system runs and dual-assessor
judgments with a controlled disagreement model.

The generative model keeps every downstream analysis meaningful:

* each (topic, document) has a latent true level drawn from the
  configured priors, plus a uniform "salience" tie-breaker shared by all
  rankers, so rankings agree heavily at the top;
* pooling runs and the search engine rank by true level + salience +
  Gaussian noise;
* systems come in quality groups: higher-quality groups weight the true
  signal more, so better groups score higher in expectation;
* assessor a1 reports the true level; a2 independently flips each
  judgment to a uniformly random different level with the configured
  probability. Both occasionally mark documents unjudgeable (-1).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path

from .formats import (
    write_judgments,
    write_manifest,
    write_pool,
    write_run,
    write_topics,
)
from .pooling import sample_noise_docs, size_k_pool
from .types import (
    CrawlManifest,
    JudgmentSet,
    Pool,
    PoolSpec,
    RankedRun,
    Topic,
    derive_seed,
)

_WORDS = (
    "search engines ranking crawling indexing latency caching protocols "
    "compression parsing clusters storage graphics compilers kernels "
    "networks encryption databases retrieval benchmarks hardware memory "
    "processors scheduling virtualization testing debugging archives"
).split()

RELEVANCE_DESCRIPTIONS = (
    (2, "The document is related to the topic and fully satisfies the information need."),
    (1, "The document is related to the topic, but does not satisfy the information need on its own."),
    (0, "The document is not related to the topic, even if it contains some common terms."),
)


@dataclass(frozen=True)
class FixtureConfig:
    """Shape and randomness of a synthetic collection.

    The defaults mirror a small classroom track: 20 topics (3 of them
    judged by a single assessor), 2 noise topics, 12 pooling runs, 8
    quality groups of 3 systems each, size-100 pools with 10 search and
    10 noise documents injected.
    """

    n_topics: int = 20
    n_noise_topics: int = 2
    n_single_topics: int = 3
    docs_per_topic: int = 240
    docs_per_noise_topic: int = 160
    n_cross_topic_docs: int = 30
    n_pooling_runs: int = 12
    pooling_run_length: int = 150
    pooling_noise: float = 0.35
    n_system_groups: int = 8
    modules_per_group: int = 3
    system_run_length: int = 150
    n_offtopic_candidates: int = 40
    quality_range: tuple[float, float] = (0.95, 0.15)
    system_noise: float = 10.0
    search_noise: float = 0.3
    flip_rate: float = 0.15
    unjudgeable_rate: float = 0.01
    relevance_priors: tuple[float, float, float] = (0.55, 0.25, 0.20)
    pool_k: int = 100
    pool_k_g: int = 10
    pool_k_n: int = 10
    seed: int = 0

    @property
    def n_systems(self) -> int:
        return self.n_system_groups * self.modules_per_group

    def __post_init__(self):
        for name in ("n_topics", "docs_per_topic", "n_pooling_runs",
                     "n_system_groups", "modules_per_group"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.n_noise_topics < 0:
            raise ValueError("n_noise_topics must be >= 0")
        if not 0 <= self.n_single_topics <= self.n_topics:
            raise ValueError("n_single_topics must be within the topic count")
        if not 0.0 <= self.flip_rate <= 1.0:
            raise ValueError("flip_rate must be in [0, 1]")
        if not 0.0 <= self.unjudgeable_rate <= 1.0:
            raise ValueError("unjudgeable_rate must be in [0, 1]")
        if len(self.relevance_priors) != 3 or abs(sum(self.relevance_priors) - 1) > 1e-9:
            raise ValueError("relevance_priors must be three probabilities summing to 1")
        if any(p < 0 for p in self.relevance_priors):
            raise ValueError("relevance_priors must be non-negative")
        PoolSpec(k=self.pool_k, k_g=self.pool_k_g, k_n=self.pool_k_n)
        if self.docs_per_topic < self.pool_k - self.pool_k_n:
            raise ValueError(
                f"docs_per_topic={self.docs_per_topic} cannot fill size-"
                f"{self.pool_k} pools ({self.pool_k - self.pool_k_n} needed)"
            )
        if self.pool_k_n > 0 and self.n_noise_topics == 0:
            raise ValueError("noise injections need at least one noise topic")
        if self.pool_k_n > self.n_noise_topics * self.docs_per_noise_topic:
            raise ValueError("not enough noise documents for the injections")
        if self.pooling_run_length < self.pool_k:
            raise ValueError("pooling_run_length must reach at least pool_k")
        if self.pool_k_g > self.docs_per_topic:
            raise ValueError("search injections exceed the per-topic documents")


@dataclass
class Fixture:
    """A generated collection plus its latent ground truth."""

    config: FixtureConfig
    topics: list[Topic]
    manifest: CrawlManifest
    pooling_runs: list[RankedRun]
    search_run: RankedRun
    system_runs: list[RankedRun]
    judgment_sets: list[JudgmentSet]
    pools: dict[str, Pool]
    truth: dict[tuple[str, str], int]
    qualities: dict[str, float] = field(default_factory=dict)

    def topic_ids(self) -> list[str]:
        return [t.id for t in self.topics]

    def search_top(self, topic_id: str) -> list[str]:
        return self.search_run.top(topic_id, self.config.pool_k_g)

    def noise_docs(self, topic_id: str) -> list[str]:
        return sample_noise_docs(
            self.manifest,
            self.config.pool_k_n,
            derive_seed(self.config.seed, "noise", topic_id),
        )

    def truth_trel(self):
        from .types import Trel

        topic_levels: dict[str, dict[str, int]] = {t: {} for t in self.topic_ids()}
        for (t, d), lv in self.truth.items():
            topic_levels[t][d] = lv
        return Trel(
            name="truth",
            topic_levels=topic_levels,
            provenance={t: "truth" for t in topic_levels},
        )

    def write(self, directory: str | Path) -> None:
        """Write the collection in the interchange formats plus a
        truth.txt (for tests; never served to assessors)."""
        root = Path(directory)
        (root / "runs" / "pooling").mkdir(parents=True, exist_ok=True)
        (root / "runs" / "systems").mkdir(parents=True, exist_ok=True)
        (root / "runs" / "search").mkdir(parents=True, exist_ok=True)
        (root / "pools").mkdir(parents=True, exist_ok=True)
        (root / "topics.xml").write_bytes(write_topics(self.topics))
        (root / "manifest.csv").write_bytes(write_manifest(self.manifest))
        for run in self.pooling_runs:
            (root / "runs" / "pooling" / f"{run.system_tag}.run").write_bytes(
                write_run(run)
            )
        (root / "runs" / "search" / f"{self.search_run.system_tag}.run").write_bytes(
            write_run(self.search_run)
        )
        for run in self.system_runs:
            (root / "runs" / "systems" / f"{run.system_tag}.run").write_bytes(
                write_run(run)
            )
        (root / "judgments.txt").write_bytes(write_judgments(self.judgment_sets))
        for topic_id, pool in sorted(self.pools.items()):
            (root / "pools" / f"{topic_id}.pool").write_bytes(write_pool(pool))
        truth_lines = [
            f"{t} {d} {lv}" for (t, d), lv in sorted(self.truth.items())
        ]
        (root / "truth.txt").write_text("\n".join(truth_lines) + "\n", encoding="utf-8")


def _title(rng: random.Random) -> str:
    n = rng.randint(5, 14)
    return " ".join(rng.choice(_WORDS) for _ in range(n))


def _draw_level(rng: random.Random, priors) -> int:
    x = rng.random()
    if x < priors[0]:
        return 0
    if x < priors[0] + priors[1]:
        return 1
    return 2


def _ranked(scored: list[tuple[str, float]], length: int) -> list[tuple[str, float]]:
    scored.sort(key=lambda e: (-e[1], e[0]))
    # re-emit strictly decreasing synthetic scores so files carry clean ranks
    return [(doc, float(len(scored) - i)) for i, (doc, _) in enumerate(scored[:length])]


def generate_fixture(config: FixtureConfig) -> Fixture:
    """Deterministically generate the full collection for a seed."""
    seed = config.seed
    topic_ids = [f"{i:03d}" for i in range(1, config.n_topics + 1)]
    noise_ids = [
        f"{i:03d}"
        for i in range(config.n_topics + 1, config.n_topics + config.n_noise_topics + 1)
    ]
    single_topics = set(topic_ids[config.n_topics - config.n_single_topics:])

    topics = []
    for t in topic_ids:
        rng = random.Random(derive_seed(seed, "topic", t))
        topics.append(
            Topic(id=t, title=_title(rng), relevance_levels=RELEVANCE_DESCRIPTIONS)
        )

    # crawled documents; some are crawled for two topics
    topic_docs: dict[str, set[str]] = {}
    for t in topic_ids:
        topic_docs[t] = {f"d{t}-{j:04d}" for j in range(config.docs_per_topic)}
    for n in noise_ids:
        topic_docs[n] = {f"d{n}-{j:04d}" for j in range(config.docs_per_noise_topic)}
    cross_rng = random.Random(derive_seed(seed, "cross"))
    for _ in range(config.n_cross_topic_docs):
        src, dst = cross_rng.sample(topic_ids, 2)
        doc = cross_rng.choice(sorted(topic_docs[src]))
        topic_docs[dst].add(doc)
    manifest = CrawlManifest(
        topic_docs={t: frozenset(d) for t, d in topic_docs.items()},
        noise_topics=frozenset(noise_ids),
    )

    # latent truth and the shared salience tie-breaker
    truth: dict[tuple[str, str], int] = {}
    salience: dict[tuple[str, str], float] = {}
    for t in topic_ids:
        rng = random.Random(derive_seed(seed, "truth", t))
        for d in sorted(topic_docs[t]):
            truth[(t, d)] = _draw_level(rng, config.relevance_priors)
            salience[(t, d)] = rng.random()

    def signal(t: str, d: str) -> float:
        return 2.0 * truth.get((t, d), 0) + salience.get((t, d), 0.0)

    # search engine ranking (the k_g injection source)
    search_rankings = {}
    for t in topic_ids:
        rng = random.Random(derive_seed(seed, "search", t))
        scored = [
            (d, signal(t, d) + rng.gauss(0.0, config.search_noise))
            for d in sorted(topic_docs[t])
        ]
        search_rankings[t] = _ranked(scored, config.docs_per_topic)
    search_run = RankedRun(system_tag="google", rankings=search_rankings)

    # pooling runs with varied noise levels
    pooling_runs = []
    for r in range(config.n_pooling_runs):
        spread = 0.6 + 0.8 * (r / max(config.n_pooling_runs - 1, 1))
        sigma = config.pooling_noise * spread
        rankings = {}
        for t in topic_ids:
            rng = random.Random(derive_seed(seed, "pooling", r, t))
            scored = [
                (d, signal(t, d) + rng.gauss(0.0, sigma))
                for d in sorted(topic_docs[t])
            ]
            rankings[t] = _ranked(scored, config.pooling_run_length)
        pooling_runs.append(RankedRun(system_tag=f"p{r + 1:04d}", rankings=rankings))

    # graded system runs: quality varies by group, not by module; the
    # noise ladder is geometric so adjacent groups stay separated both
    # near the ceiling and near the random floor
    lo, hi = min(config.quality_range), max(config.quality_range)
    qualities: dict[str, float] = {}
    system_runs = []
    # candidates retrievable from other topics; cross-listed docs must not
    # reappear (a ranking may hold each document once)
    other_docs = {
        t: sorted(
            set().union(*(topic_docs[o] for o in topic_ids if o != t)) - topic_docs[t]
        )
        for t in topic_ids
    }
    for g in range(config.n_system_groups):
        if config.n_system_groups == 1:
            quality = hi
        else:
            ratio = (1.0 - lo) / (1.0 - hi)
            quality = 1.0 - (1.0 - hi) * ratio ** (g / (config.n_system_groups - 1))
        for m in range(config.modules_per_group):
            tag = f"{g + 1:02d}.{m + 1}"
            qualities[tag] = quality
            rankings = {}
            for t in topic_ids:
                rng = random.Random(derive_seed(seed, "system", tag, t))
                offtopic = rng.sample(
                    other_docs[t], min(config.n_offtopic_candidates, len(other_docs[t]))
                )
                candidates = sorted(topic_docs[t]) + offtopic
                sigma = (1.0 - quality) * config.system_noise
                scored = [
                    (d, signal(t, d) + sigma * rng.gauss(0.0, 1.0))
                    for d in candidates
                ]
                rankings[t] = _ranked(scored, config.system_run_length)
            system_runs.append(RankedRun(system_tag=tag, rankings=rankings))

    # size-k pools with search and noise injections
    pools: dict[str, Pool] = {}
    spec = PoolSpec(k=config.pool_k, k_g=config.pool_k_g, k_n=config.pool_k_n)
    for t in topic_ids:
        search_top = [d for d, _ in search_rankings[t][: config.pool_k_g]]
        noise_docs = sample_noise_docs(
            manifest, config.pool_k_n, derive_seed(seed, "noise", t)
        )
        pools[t] = size_k_pool(
            pooling_runs, t, spec, search_top, noise_docs, manifest
        )

    # two assessors: a1 reports the truth, a2 flips with probability p
    a1 = JudgmentSet(assessor_id="a1")
    a2 = JudgmentSet(assessor_id="a2")
    for t in topic_ids:
        rng = random.Random(derive_seed(seed, "judge", t))
        for d in sorted(pools[t].doc_ids()):
            true_level = truth.get((t, d), 0)
            level_1 = true_level
            if rng.random() < config.unjudgeable_rate:
                level_1 = -1
            a1.levels[(t, d)] = level_1
            if t in single_topics:
                continue
            level_2 = true_level
            if rng.random() < config.flip_rate:
                level_2 = rng.choice([lv for lv in (0, 1, 2) if lv != true_level])
            if rng.random() < config.unjudgeable_rate:
                level_2 = -1
            a2.levels[(t, d)] = level_2

    return Fixture(
        config=config,
        topics=topics,
        manifest=manifest,
        pooling_runs=pooling_runs,
        search_run=search_run,
        system_runs=system_runs,
        judgment_sets=[a1, a2],
        pools=pools,
        truth=truth,
        qualities=qualities,
    )
