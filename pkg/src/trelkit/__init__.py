"""trelkit: build small-scale IR test collections and meta-evaluate their
reliability.

The toolkit covers the full pipeline: size-k pooling with search-engine
and noise injections, blinded human judging over HTTP, effectiveness
measures (NDCG/AP/P/R/RR and the crawl ratio), trel construction from
multi-assessor judgments, agreement and ranking-stability analytics, and
pool-growth incompleteness analysis -- plus a seeded synthetic collection
generator so every analysis has a reproducible desk-scale input.
"""

from .cleaning import CleanDocument, clean_document
from .formats import (
    ParseError,
    parse_judgments,
    parse_manifest,
    parse_pool,
    parse_run,
    parse_topics,
    parse_trel,
    write_judgments,
    write_manifest,
    write_pool,
    write_run,
    write_topics,
    write_trel,
)
from .incompleteness import GrowthReport, growth_report, percent_increment, restrict_trel
from .measures import (
    MeasureKind,
    ScoreMatrix,
    average_precision_at,
    conflate,
    crawl_ratio_at,
    cutoff_curve,
    mean_over_topics,
    ndcg_at,
    precision_at,
    reciprocal_rank,
    recall_at,
    score_matrix,
)
from .pooling import (
    GrowthSeries,
    PoolStats,
    depth_k_pool,
    pool_growth_series,
    pool_stats,
    sample_noise_docs,
    size_k_pool,
)
from .qc import QCReport, noise_qc
from .synth import Fixture, FixtureConfig, generate_fixture
from .trels import (
    TrelSpace,
    intersection_trel,
    sample_trels,
    trel_pairs,
    trel_space,
    union_trel,
)
from .types import (
    CrawlManifest,
    Judgment,
    JudgmentSet,
    Pool,
    PoolEntry,
    PoolSpec,
    RankedRun,
    Topic,
    Trel,
)

__version__ = "0.1.0"
