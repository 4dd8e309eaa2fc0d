"""Resolved ground-truth construction from multi-assessor judgments.

A *trel* fixes one judgment level per (topic, document). With dual-judged
topics there is no single ground truth, so trels are built by choosing an
assessor per topic, by sampling such choices uniformly, or by taking the
union (max level) or intersection (min level) of the assessors.

The -1 "could not be judged" level is resolved to 0 here; raw judgment
files keep it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .types import JudgmentSet, Trel


def _resolve(levels: dict[str, int]) -> dict[str, int]:
    """Map raw judgment levels to trel levels (-1 becomes 0)."""
    return {d: (0 if lv < 0 else lv) for d, lv in levels.items()}


@dataclass
class TrelSpace:
    """The space of assessor-choice combinations over a judgment corpus.

    Topics judged twice contribute a binary choice each, so the space has
    2^len(dual_topics) members. Per-topic resolved judgment maps are built
    once and shared by every trel materialized from this space.
    """

    dual_topics: list[str]
    single_topics: list[str]
    assessors: dict[str, list[str]]
    resolved: dict[str, dict[str, dict[str, int]]] = field(repr=False, default_factory=dict)

    @property
    def total_combinations(self) -> int:
        return 2 ** len(self.dual_topics)

    def topics(self) -> list[str]:
        return sorted(self.dual_topics + self.single_topics)

    def trel_for_choice(self, choice: dict[str, str], name: str) -> Trel:
        """Materialize the trel selecting ``choice[topic]`` on dual topics."""
        topic_levels: dict[str, dict[str, int]] = {}
        provenance: dict[str, str] = {}
        for t in self.topics():
            assessor = choice.get(t, self.assessors[t][0])
            if assessor not in self.assessors[t]:
                raise ValueError(f"assessor {assessor!r} did not judge topic {t!r}")
            topic_levels[t] = self.resolved[t][assessor]
            provenance[t] = assessor
        return Trel(name=name, topic_levels=topic_levels, provenance=provenance)

    def trel_for_index(self, index: int, name: str | None = None) -> Trel:
        """Decode a combination index (one bit per dual topic) into a trel."""
        if not 0 <= index < self.total_combinations:
            raise ValueError(f"combination index {index} out of range")
        choice = {}
        for bit, t in enumerate(self.dual_topics):
            choice[t] = self.assessors[t][(index >> bit) & 1]
        return self.trel_for_choice(choice, name or f"trel-{index}")


def trel_space(judgment_sets: list[JudgmentSet]) -> TrelSpace:
    """Classify topics by assessor count and set up the combination space.

    Every judged topic must have exactly one or two assessors; more is out
    of scope and raises.
    """
    by_topic: dict[str, list[str]] = {}
    for js in judgment_sets:
        for t in js.topics():
            by_topic.setdefault(t, []).append(js.assessor_id)
    if not by_topic:
        raise ValueError("no judged topics")
    dual, single = [], []
    for t, assessors in sorted(by_topic.items()):
        if len(assessors) == 1:
            single.append(t)
        elif len(assessors) == 2:
            dual.append(t)
        else:
            raise ValueError(
                f"topic {t!r} judged by {len(assessors)} assessors; at most 2 supported"
            )
    sets = {js.assessor_id: js for js in judgment_sets}
    resolved = {
        t: {a: _resolve(sets[a].topic_levels(t)) for a in sorted(assessors)}
        for t, assessors in by_topic.items()
    }
    return TrelSpace(
        dual_topics=dual,
        single_topics=single,
        assessors={t: sorted(a) for t, a in by_topic.items()},
        resolved=resolved,
    )


def sample_trels(space: TrelSpace, n: int, seed: int) -> list[Trel]:
    """Sample n distinct assessor-choice combinations, uniformly without
    replacement. n equal to the space size returns the full enumeration;
    larger n is an error. Deterministic for a given seed.
    """
    if n < 1:
        raise ValueError("sample size must be >= 1")
    total = space.total_combinations
    if n > total:
        raise ValueError(f"cannot sample {n} distinct trels from {total} combinations")
    if n == total:
        indices = list(range(total))
    else:
        indices = random.Random(seed).sample(range(total), n)
    width = len(str(n - 1)) if n > 1 else 1
    return [
        space.trel_for_index(idx, name=f"trel-{i:0{width}d}")
        for i, idx in enumerate(indices)
    ]


def trel_pairs(space: TrelSpace, n_pairs: int, seed: int) -> list[tuple[Trel, Trel]]:
    """Draw n_pairs unordered pairs of distinct trels, uniformly and with
    replacement across pairs. Deterministic for a given seed."""
    if n_pairs < 1:
        raise ValueError("need at least one pair")
    total = space.total_combinations
    if total < 2:
        raise ValueError("need at least 2 combinations to form pairs")
    rng = random.Random(seed)
    pairs = []
    for i in range(n_pairs):
        a = rng.randrange(total)
        b = rng.randrange(total - 1)
        if b >= a:
            b += 1
        pairs.append(
            (
                space.trel_for_index(a, name=f"pair-{i}-a"),
                space.trel_for_index(b, name=f"pair-{i}-b"),
            )
        )
    return pairs


def union_trel(judgment_sets: list[JudgmentSet], name: str = "union") -> Trel:
    """Pointwise maximum level over the assessors (a permissive judge).

    -1 resolves to 0 before taking the maximum; a document judged by only
    one assessor keeps that assessor's resolved level.
    """
    return _combine(judgment_sets, max, name, "union")


def intersection_trel(
    judgment_sets: list[JudgmentSet], name: str = "intersection"
) -> Trel:
    """Pointwise minimum level over the assessors (a restrictive judge).

    On dual-judged topics a document missing from one assessor counts as
    level 0 for the minimum, so intersection never exceeds any single
    assessor's trel.
    """
    return _combine(judgment_sets, min, name, "intersection")


def _combine(judgment_sets, op, name, label) -> Trel:
    space = trel_space(judgment_sets)
    topic_levels: dict[str, dict[str, int]] = {}
    provenance: dict[str, str] = {}
    for t in space.topics():
        maps = [space.resolved[t][a] for a in space.assessors[t]]
        docs = set()
        for m in maps:
            docs |= set(m)
        topic_levels[t] = {d: op(m.get(d, 0) for m in maps) for d in sorted(docs)}
        provenance[t] = label
    return Trel(name=name, topic_levels=topic_levels, provenance=provenance)
