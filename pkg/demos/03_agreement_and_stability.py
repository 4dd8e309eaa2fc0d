"""Judge-inconsistency analysis: agreement, score spread, ranking
stability.

Two assessors disagree; this notebook-style walk quantifies how much that
matters: per-topic kappa/overlap/precision/recall, the spread of system
scores across 200 sampled trels, Kendall-tau between rankings from random
trel pairs, and a Wilcoxon check of an adjacent ranking swap.
"""

import warnings

from trelkit import (
    FixtureConfig,
    MeasureKind,
    generate_fixture,
    intersection_trel,
    sample_trels,
    trel_pairs,
    trel_space,
    union_trel,
)
from trelkit.reliability import (
    agreement_table,
    largest_differences,
    score_distribution,
    tau_distribution,
    wilcoxon_swap_test,
)

warnings.simplefilter("ignore")

fixture = generate_fixture(
    FixtureConfig(
        n_topics=8,
        n_single_topics=1,
        docs_per_topic=120,
        docs_per_noise_topic=60,
        n_pooling_runs=6,
        pooling_run_length=80,
        n_system_groups=4,
        modules_per_group=2,
        system_run_length=80,
        pool_k=50,
        pool_k_g=5,
        pool_k_n=5,
        flip_rate=0.15,
        seed=7,
    )
)

# -- how much do the assessors agree?
table = agreement_table(fixture.judgment_sets)
print("topic  kappa  overlap  precision  recall")
for rec in table.records:
    print(
        f"{rec.topic_id}    {rec.kappa:.3f}  {rec.overlap:.3f}    "
        f"{rec.precision:.3f}      {rec.recall:.3f}"
    )
print(f"mean kappa {table.mean_kappa:.3f}, mean overlap {table.mean_overlap:.3f}")

# precision/recall depend on who plays ground truth; randomize it
sample = table.orientation_sample(n=1000, seed=1)
print(
    f"orientation-free precision {sample.mean_precision:.3f} "
    f"+- {sample.std_precision:.3f}"
)

# -- does the disagreement move system scores?
space = trel_space(fixture.judgment_sets)
print(f"\n{len(space.dual_topics)} dual topics -> {space.total_combinations} trels")
trels = sample_trels(space, 100, seed=3)
measure = MeasureKind.parse("ndcg@50")
topics = fixture.topic_ids()

best = fixture.system_runs[0]
dist = score_distribution(best, measure, trels, topics=topics)
print(
    f"{best.system_tag} NDCG@50 over 100 trels: mean {dist.mean:.3f} "
    f"+- {dist.std:.3f}, range [{dist.min:.3f}, {dist.max:.3f}]"
)
diffs = largest_differences(
    fixture.system_runs, measure, trels,
    union=union_trel(fixture.judgment_sets),
    intersection=intersection_trel(fixture.judgment_sets),
    topics=topics,
)
print(f"largest per-system spread across trels: {diffs.all_trels}")
print(f"union vs intersection gap:              {diffs.union_intersection}")

# -- does it reorder the systems?
pairs = trel_pairs(space, 500, seed=4)
taus = tau_distribution(fixture.system_runs, measure, pairs, topics=topics)
print(
    f"\nKendall tau over 500 trel pairs: {taus.summary.mean:.3f} "
    f"+- {taus.summary.std:.3f}, min {taus.summary.min:.3f}; "
    f"{taus.fraction_above:.0%} above {taus.threshold}"
)

# -- is any adjacent swap statistically significant?
result = wilcoxon_swap_test(
    fixture.system_runs[0], fixture.system_runs[1], measure,
    union_trel(fixture.judgment_sets), alpha=0.05, topics=topics,
)
print(
    f"adjacent swap test: W={result.statistic}, p={result.p_value:.3f} "
    f"({result.method}), significant: {result.significant}"
)
