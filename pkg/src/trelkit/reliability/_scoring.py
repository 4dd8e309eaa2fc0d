"""Shared scoring helper for the trel-distribution analytics.

Trels materialized from one TrelSpace share their per-topic judgment
maps, so the per-topic score of a system under a trel only depends on
which map the trel references. Caching on (topic, provenance label)
collapses thousands of trel evaluations into a handful of measure calls;
a mapping identity check guards against label collisions from unrelated
trels.
"""

from __future__ import annotations

import warnings

import numpy as np

from ..measures import MeasureKind
from ..types import CrawlManifest, DegenerateValueWarning, RankedRun, Trel


class TrelScorer:
    def __init__(
        self,
        runs: list[RankedRun],
        measure: MeasureKind,
        topics: list[str] | None = None,
        manifest: CrawlManifest | None = None,
    ):
        self.runs = list(runs)
        self.measure = measure
        self.topics = topics
        self.manifest = manifest
        # (topic, variant key) -> (mapping ref, [score per run])
        self._cache: dict[tuple, tuple] = {}
        self._collisions: dict[tuple, list] = {}

    def _topics_for(self, trel: Trel) -> list[str]:
        return self.topics if self.topics is not None else trel.topics()

    def _variant_key(self, trel: Trel, topic_id: str) -> tuple:
        mapping = trel.topic_levels.get(topic_id)
        base = (topic_id, trel.provenance.get(topic_id, trel.name))
        hit = self._cache.get(base)
        if hit is not None:
            if hit[0] is mapping or hit[0] == mapping:
                return base
            # same label, different judgments: disambiguate by identity
            for alt_key, alt_mapping in self._collisions.get(base, []):
                if alt_mapping is mapping or alt_mapping == mapping:
                    return alt_key
            alt_key = base + (len(self._collisions.get(base, ())),)
            self._collisions.setdefault(base, []).append((alt_key, mapping))
            return alt_key
        return base

    def _scores_for(self, trel: Trel, topic_id: str) -> list[float]:
        key = self._variant_key(trel, topic_id)
        hit = self._cache.get(key)
        if hit is None:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", DegenerateValueWarning)
                scores = [
                    self.measure.score(run, trel, topic_id, self.manifest)
                    for run in self.runs
                ]
            hit = (trel.topic_levels.get(topic_id), scores)
            self._cache[key] = hit
        return hit[1]

    def mean_scores(self, trel: Trel) -> np.ndarray:
        """Mean-over-topics score per run (in self.runs order)."""
        topics = self._topics_for(trel)
        if not topics:
            raise ValueError("no topics to evaluate")
        acc = np.zeros(len(self.runs))
        for t in topics:
            acc += self._scores_for(trel, t)
        return acc / len(topics)

    def mean_matrix(self, trels: list[Trel]) -> np.ndarray:
        """Matrix of mean-over-topics scores, shape (n_runs, n_trels)."""
        out = np.empty((len(self.runs), len(trels)))
        for j, trel in enumerate(trels):
            out[:, j] = self.mean_scores(trel)
        return out
