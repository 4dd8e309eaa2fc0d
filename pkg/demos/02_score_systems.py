"""Score ranked systems against resolved ground truth.

Shows the measure engine: build trels from the two assessors' judgments,
then rank all systems by mean NDCG@50 with AP, P@10 and RR alongside,
plus the crawl-ratio curve that diagnoses how topic-focused each system's
retrieval is.
"""

import warnings

from trelkit import (
    FixtureConfig,
    MeasureKind,
    cutoff_curve,
    generate_fixture,
    score_matrix,
    union_trel,
)
from trelkit.types import DegenerateValueWarning

warnings.simplefilter("ignore", DegenerateValueWarning)

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
        seed=7,
    )
)
topics = fixture.topic_ids()

# The union trel is the permissive reading of the two assessors.
truth = union_trel(fixture.judgment_sets)

measures = [MeasureKind.parse(m) for m in ("ndcg@50", "ap@50", "p@10", "rr")]
matrices = {m: score_matrix(fixture.system_runs, truth, topics, m) for m in measures}

print("system   quality  " + "  ".join(f"{m!s:>8}" for m in measures))
for tag, ndcg in matrices[measures[0]].by_mean():
    row = "  ".join(f"{matrices[m].system_mean(tag):8.4f}" for m in measures)
    print(f"{tag}     {fixture.qualities[tag]:.2f}   {row}")

# Crawl ratio: how many of the top-k documents were crawled for the topic.
best = matrices[measures[0]].by_mean()[0][0]
best_run = next(r for r in fixture.system_runs if r.system_tag == best)
print(f"\nC@k curve for the best system ({best}):")
for k, mean, lo, hi in cutoff_curve(
    [best_run], None, topics, "c", [5, 10, 25, 50], manifest=fixture.manifest
):
    print(f"  C@{k:<3} mean {mean:.3f}  range [{lo:.3f}, {hi:.3f}]")
