"""Build a small synthetic test collection and pool it.

Walks the collection-construction half of the toolkit: generate seeded
topics/runs/judgments, build size-k pools with search-engine and noise
injections, and summarize pool sizes and depths.
"""

from trelkit import FixtureConfig, generate_fixture, pool_stats

# A desk-scale collection: 8 topics, 2 noise topics, 6 pooling runs.
config = FixtureConfig(
    n_topics=8,
    n_noise_topics=2,
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
fixture = generate_fixture(config)

print(f"{len(fixture.topics)} topics, first: {fixture.topics[0].id!r}")
print(f"  title: {fixture.topics[0].title!r}")
print(f"noise topics: {sorted(fixture.manifest.noise_topics)}")

# Pools were built at the minimum depth reaching 50 documents, always
# including the 5 search-engine and 5 noise injections.
print("\ntopic  size  depth")
for topic_id, pool in sorted(fixture.pools.items()):
    print(f"{topic_id}    {pool.size}    {pool.depth}")

stats = pool_stats(list(fixture.pools.values()))
print(f"\nmean size  {stats.mean_size:.1f}")
print(f"mean depth {stats.mean_depth:.1f}")
print(f"documents pooled for >1 topic: {len(stats.duplicates)}")

# Every pool entry knows where it came from; assessors never see this.
example = sorted(fixture.pools)[0]
sources = {}
for entry in fixture.pools[example].entries.values():
    sources[entry.source] = sources.get(entry.source, 0) + 1
print(f"\npool {example} provenance counts: {sources}")
