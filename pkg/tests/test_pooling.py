import random
import warnings

import pytest

from trelkit.pooling import (
    GrowthSeries,
    depth_k_pool,
    pool_growth_series,
    pool_stats,
    sample_noise_docs,
    size_k_pool,
)
from trelkit.types import (
    CrawlManifest,
    Pool,
    PoolEntry,
    PoolSpec,
    RankedRun,
    ShortfallWarning,
    ToolkitWarning,
)

from .oracles import ref_size_k_depth


def run_of(docs, topic="001", tag="r"):
    return RankedRun(
        system_tag=tag,
        rankings={topic: [(d, float(len(docs) - i)) for i, d in enumerate(docs)]},
    )


class TestDepthKPool:
    def test_union_of_top_one(self):
        pool = depth_k_pool([run_of(["d1", "d2"]), run_of(["d2", "d3"])], "001", 1)
        assert pool.doc_ids() == {"d1", "d2"}
        assert pool.size == 2

    def test_depth_zero(self):
        pool = depth_k_pool([run_of(["d1"])], "001", 0)
        assert pool.size == 0

    def test_single_run_identity(self):
        pool = depth_k_pool([run_of(["a", "b", "c"])], "001", 3)
        assert pool.doc_ids() == {"a", "b", "c"}
        assert pool.depth == 3

    def test_min_contributing_rank(self):
        pool = depth_k_pool([run_of(["a", "b"]), run_of(["b", "c"])], "001", 2)
        assert pool.entries["b"].rank == 1
        assert pool.entries["c"].rank == 2

    def test_absent_topic_warns(self):
        with pytest.warns(ToolkitWarning, match="absent"):
            pool = depth_k_pool([run_of(["a"], topic="002")], "001", 3)
        assert pool.size == 0


class TestSizeKPool:
    def test_hand_example(self):
        runs = [run_of(["d1", "d2", "d3", "d4"]), run_of(["d2", "d3", "d5", "d6"])]
        spec = PoolSpec(k=6, k_g=1, k_n=1)
        pool = size_k_pool(runs, "001", spec, ["g1"], ["n1"])
        assert pool.depth == 3
        assert pool.size == 6
        assert pool.doc_ids() == {"d1", "d2", "d3", "d5", "g1", "n1"}

    def test_injections_already_suffice(self):
        spec = PoolSpec(k=2, k_g=1, k_n=1)
        pool = size_k_pool([run_of(["a", "b"])], "001", spec, ["g1"], ["n1"])
        assert pool.depth == 0
        assert pool.doc_ids() == {"g1", "n1"}

    def test_injection_provenance_wins(self):
        spec = PoolSpec(k=3, k_g=1, k_n=0)
        pool = size_k_pool([run_of(["g1", "b", "c"])], "001", spec, ["g1"], [])
        assert pool.entries["g1"].source == "search_engine"
        assert pool.size == 3

    def test_shortfall_warns_and_returns_maximal(self):
        spec = PoolSpec(k=50, k_g=0, k_n=0)
        with pytest.warns(ShortfallWarning):
            pool = size_k_pool([run_of(["a", "b"])], "001", spec, [], [])
        assert pool.doc_ids() == {"a", "b"}

    def test_noise_crawled_for_topic_rejected(self):
        manifest = CrawlManifest(
            topic_docs={"001": frozenset({"a", "n1"}), "021": frozenset({"n1", "n2"})},
            noise_topics=frozenset({"021"}),
        )
        spec = PoolSpec(k=2, k_g=0, k_n=1)
        with pytest.raises(ValueError, match="also crawled"):
            size_k_pool([run_of(["a"])], "001", spec, [], ["n1"], manifest)

    def test_noise_must_come_from_noise_topics(self):
        manifest = CrawlManifest(
            topic_docs={"001": frozenset({"a"}), "021": frozenset({"n1"})},
            noise_topics=frozenset({"021"}),
        )
        spec = PoolSpec(k=2, k_g=0, k_n=1)
        with pytest.raises(ValueError, match="not from any noise topic"):
            size_k_pool([run_of(["a"])], "001", spec, [], ["zz"], manifest)

    def test_wrong_injection_counts(self):
        spec = PoolSpec(k=5, k_g=2, k_n=1)
        with pytest.raises(ValueError, match="search-engine"):
            size_k_pool([run_of(["a"])], "001", spec, ["g1"], ["n1"])

    def test_determinism(self):
        runs = [run_of(["d1", "d2", "d3"]), run_of(["d3", "d4", "d5"])]
        spec = PoolSpec(k=4, k_g=1, k_n=1)
        p1 = size_k_pool(runs, "001", spec, ["g1"], ["n1"])
        p2 = size_k_pool(runs, "001", spec, ["g1"], ["n1"])
        assert p1 == p2


def random_runs(rng, n_runs=None, universe=60, max_len=30, topic="001"):
    n_runs = n_runs or rng.randint(1, 6)
    docs = [f"d{i}" for i in range(universe)]
    runs = []
    for r in range(n_runs):
        length = rng.randint(0, max_len)
        runs.append(run_of(rng.sample(docs, length), topic=topic, tag=f"r{r}"))
    return runs


def test_size_k_minimality_brute_force():
    """Realized depth d satisfies |pool(d-1)| < k <= |pool(d)| (brute-force
    depth scan) and every injection is present, on 500 random run sets."""
    rng = random.Random(424242)
    for _ in range(500):
        runs = random_runs(rng)
        k_g = rng.randint(0, 3)
        k_n = rng.randint(0, 3)
        search = [f"g{i}" for i in range(k_g)]
        noise = [f"n{i}" for i in range(k_n)]
        k = rng.randint(max(1, k_g + k_n), 40)
        spec = PoolSpec(k=k, k_g=k_g, k_n=k_n)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            pool = size_k_pool(runs, "001", spec, search, noise)

        lists = [r.ranking("001") for r in runs]
        ref_depth, ref_docs = ref_size_k_depth(lists, set(search) | set(noise), k)
        assert pool.doc_ids() == ref_docs
        assert set(search) <= pool.doc_ids()
        assert set(noise) <= pool.doc_ids()
        if pool.size >= k and pool.depth >= 1:
            assert pool.depth == ref_depth
            shallower = set(search) | set(noise)
            for lst in lists:
                shallower.update(lst[: pool.depth - 1])
            assert len(shallower) < k <= pool.size


class TestGrowthSeries:
    def make(self, sizes=(4, 6, 8)):
        runs = [
            run_of(["a", "b", "c", "d", "e", "f", "g"]),
            run_of(["c", "d", "h", "i", "j", "k", "l"]),
        ]
        return pool_growth_series(runs, "001", list(sizes), ["g1"], ["n1"])

    def test_seventeen_sizes(self):
        runs = [run_of([f"d{i}" for i in range(200)], tag=f"r{j}") for j in range(3)]
        series = pool_growth_series(
            runs, "001", list(range(20, 101, 5)), [f"g{i}" for i in range(10)],
            [f"n{i}" for i in range(10)],
        )
        assert len(series.pools) == 17

    def test_injection_only_base(self):
        series = pool_growth_series(
            [run_of(["a"])], "001", [2], ["g1"], ["n1"]
        )
        assert series.pools[0].doc_ids() == {"g1", "n1"}

    def test_nesting(self):
        series = self.make()
        for small, large in zip(series.pools, series.pools[1:]):
            assert small.doc_ids() <= large.doc_ids()

    def test_nesting_on_random_inputs(self):
        rng = random.Random(7)
        for _ in range(50):
            runs = random_runs(rng, universe=40)
            sizes = sorted(rng.sample(range(2, 30), rng.randint(2, 5)))
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                series = pool_growth_series(runs, "001", sizes, ["g0"], ["n0"])
            for small, large in zip(series.pools, series.pools[1:]):
                assert small.doc_ids() <= large.doc_ids()

    def test_sizes_must_increase(self):
        with pytest.raises(ValueError, match="strictly increasing"):
            self.make(sizes=(4, 4))

    def test_first_size_fits_injections(self):
        with pytest.raises(ValueError, match="below injection count"):
            self.make(sizes=(1, 5))


class TestPoolStats:
    def pool(self, topic, docs, depth=1):
        entries = {
            d: PoolEntry(d, "pooling_run", i + 1) for i, d in enumerate(docs)
        }
        return Pool(topic_id=topic, entries=entries, depth=depth)

    def test_means(self):
        stats = pool_stats(
            [
                self.pool("001", [f"a{i}" for i in range(100)], depth=28),
                self.pool("002", [f"b{i}" for i in range(102)], depth=25),
            ]
        )
        assert stats.mean_size == pytest.approx(101)
        assert stats.mean_depth == pytest.approx(26.5)

    def test_single_pool_identity(self):
        stats = pool_stats([self.pool("001", ["a", "b"], depth=2)])
        assert stats.mean_size == 2
        assert stats.mean_depth == 2

    def test_duplicates(self):
        stats = pool_stats(
            [self.pool("001", ["x", "a"]), self.pool("002", ["x", "b"])]
        )
        assert stats.duplicates == {"x": 2}

    def test_csv(self):
        stats = pool_stats([self.pool("001", ["a"], depth=1)])
        lines = stats.to_csv().splitlines()
        assert lines[0] == "topic_id,pool_size,pool_depth"
        assert lines[1] == "001,1,1"
        assert lines[2].startswith("average,")


def test_sample_noise_docs_seeded():
    manifest = CrawlManifest(
        topic_docs={
            "001": frozenset({"a"}),
            "021": frozenset({f"n{i}" for i in range(30)}),
        },
        noise_topics=frozenset({"021"}),
    )
    s1 = sample_noise_docs(manifest, 5, seed=13)
    s2 = sample_noise_docs(manifest, 5, seed=13)
    s3 = sample_noise_docs(manifest, 5, seed=14)
    assert s1 == s2
    assert len(set(s1)) == 5
    assert s1 != s3
    with pytest.raises(ValueError, match="noise documents available"):
        sample_noise_docs(manifest, 50, seed=1)
