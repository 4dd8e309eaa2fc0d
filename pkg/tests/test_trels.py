import itertools
import random

import pytest

from trelkit.trels import (
    TrelSpace,
    intersection_trel,
    sample_trels,
    trel_pairs,
    trel_space,
    union_trel,
)
from trelkit.types import JudgmentSet


def dual_sets(n_dual, n_single=0, docs_per_topic=3, seed=0):
    """Two assessors; a2 skips the last n_single topics."""
    rng = random.Random(seed)
    a1 = JudgmentSet(assessor_id="a1")
    a2 = JudgmentSet(assessor_id="a2")
    for i in range(n_dual + n_single):
        t = f"{i + 1:03d}"
        for j in range(docs_per_topic):
            d = f"d{i}-{j}"
            a1.levels[(t, d)] = rng.choice([-1, 0, 1, 2])
            if i < n_dual:
                a2.levels[(t, d)] = rng.choice([-1, 0, 1, 2])
    return [a1, a2]


class TestTrelSpace:
    def test_seventeen_dual_topics(self):
        space = trel_space(dual_sets(17))
        assert space.total_combinations == 131072

    def test_no_dual_topics(self):
        space = trel_space([JudgmentSet("a1", {("001", "d1"): 1})])
        assert space.total_combinations == 1
        assert space.single_topics == ["001"]

    def test_two_dual_topics(self):
        space = trel_space(dual_sets(2))
        assert space.total_combinations == 4

    def test_three_assessors_rejected(self):
        sets = [
            JudgmentSet("a1", {("001", "d"): 1}),
            JudgmentSet("a2", {("001", "d"): 1}),
            JudgmentSet("a3", {("001", "d"): 0}),
        ]
        with pytest.raises(ValueError, match="at most 2"):
            trel_space(sets)

    def test_no_judgments_rejected(self):
        with pytest.raises(ValueError, match="no judged topics"):
            trel_space([])


class TestSampleTrels:
    def test_exhaustive_when_n_equals_total(self):
        space = trel_space(dual_sets(2))
        trels = sample_trels(space, 4, seed=1)
        assert len(trels) == 4
        choices = {tuple(t.provenance[d] for d in space.dual_topics) for t in trels}
        assert choices == set(itertools.product(["a1", "a2"], repeat=2))

    def test_deterministic(self):
        space = trel_space(dual_sets(5))
        t1 = sample_trels(space, 8, seed=42)
        t2 = sample_trels(space, 8, seed=42)
        assert [t.provenance for t in t1] == [t.provenance for t in t2]

    def test_distinct_choice_vectors(self):
        space = trel_space(dual_sets(17))
        trels = sample_trels(space, 1000, seed=7)
        vectors = {
            tuple(t.provenance[d] for d in space.dual_topics) for t in trels
        }
        assert len(vectors) == 1000

    def test_oversampling_rejected(self):
        space = trel_space(dual_sets(2))
        with pytest.raises(ValueError, match="cannot sample"):
            sample_trels(space, 5, seed=0)

    def test_single_topic_choice_fixed(self):
        space = trel_space(dual_sets(1, n_single=1))
        for trel in sample_trels(space, 2, seed=0):
            assert trel.provenance["002"] == "a1"

    def test_every_trel_matches_an_assessor_everywhere(self):
        sets = dual_sets(4, n_single=1)
        space = trel_space(sets)
        resolved = {
            js.assessor_id: {
                (t, d): max(lv, 0) for (t, d), lv in js.levels.items()
            }
            for js in sets
        }
        for trel in sample_trels(space, 16, seed=3):
            for (t, d), lv in trel.items():
                assessor = trel.provenance[t]
                assert resolved[assessor][(t, d)] == lv


class TestUnionIntersection:
    def make(self, a_level, b_level):
        return [
            JudgmentSet("a1", {("001", "d"): a_level}),
            JudgmentSet("a2", {("001", "d"): b_level}),
        ]

    def test_union_max(self):
        assert union_trel(self.make(1, 2)).level("001", "d") == 2

    def test_union_identity(self):
        assert union_trel(self.make(0, 0)).level("001", "d") == 0

    def test_union_resolves_unjudgeable_first(self):
        assert union_trel(self.make(-1, 1)).level("001", "d") == 1

    def test_intersection_min(self):
        assert intersection_trel(self.make(1, 2)).level("001", "d") == 1

    def test_intersection_single_assessor_identity(self):
        trel = intersection_trel([JudgmentSet("a1", {("001", "d"): 2})])
        assert trel.level("001", "d") == 2

    def test_intersection_resolves_unjudgeable_first(self):
        assert intersection_trel(self.make(-1, 2)).level("001", "d") == 0

    def test_doc_judged_by_one_assessor_on_dual_topic(self):
        sets = [
            JudgmentSet("a1", {("001", "d"): 2, ("001", "e"): 1}),
            JudgmentSet("a2", {("001", "d"): 1}),
        ]
        assert union_trel(sets).level("001", "e") == 1
        assert intersection_trel(sets).level("001", "e") == 0


def test_dominance_intersection_sample_union():
    """intersection <= any sampled trel <= union, pointwise."""
    sets = dual_sets(6, n_single=2, docs_per_topic=5, seed=11)
    space = trel_space(sets)
    union = union_trel(sets)
    inter = intersection_trel(sets)
    all_keys = {key for key, _ in union.items()}
    for trel in sample_trels(space, space.total_combinations, seed=0):
        for t, d in all_keys:
            assert (
                inter.level(t, d) <= trel.level(t, d) <= union.level(t, d)
            ), (t, d, trel.name)


class TestTrelPairs:
    def test_forced_pair_when_two_combinations(self):
        space = trel_space(dual_sets(1))
        pairs = trel_pairs(space, 10, seed=5)
        for a, b in pairs:
            assert a.provenance != b.provenance

    def test_deterministic(self):
        space = trel_space(dual_sets(5))
        p1 = trel_pairs(space, 20, seed=9)
        p2 = trel_pairs(space, 20, seed=9)
        assert [(a.provenance, b.provenance) for a, b in p1] == [
            (a.provenance, b.provenance) for a, b in p2
        ]

    def test_members_always_differ(self):
        space = trel_space(dual_sets(8))
        for a, b in trel_pairs(space, 200, seed=1):
            assert a.provenance != b.provenance

    def test_rejects_degenerate_space(self):
        space = trel_space([JudgmentSet("a1", {("001", "d"): 1})])
        with pytest.raises(ValueError, match="at least 2 combinations"):
            trel_pairs(space, 1, seed=0)


def test_sampled_trels_share_topic_maps():
    # trels from one space share per-topic dicts, keeping 1,000+ trels cheap
    space = trel_space(dual_sets(3))
    t1, t2 = sample_trels(space, 2, seed=0)
    for t in space.topics():
        assert (
            t1.topic_levels[t] is space.resolved[t][t1.provenance[t]]
        )
