"""Effect of pool growth on scores: trels restricted to nested pools and
percentage increments per growth step.

Increments are signed (NDCG can drop when new relevant documents enlarge
the ideal gain). Steps whose smaller-pool score is 0 while the larger is
positive have an undefined percentage; they are excluded and counted
instead of being mapped to a sentinel.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .measures import MeasureKind
from .pooling import GrowthSeries
from .reliability._scoring import TrelScorer
from .reliability.stability import summarize
from .types import Pool, RankedRun, Trel


def restrict_trel(trel: Trel, pools: Pool | Iterable[Pool]) -> Trel:
    """Keep only judgments for documents in the given pool(s).

    Topics without a pool are dropped entirely; documents outside the
    pool become unjudged and therefore nonrelevant for scoring.
    """
    if isinstance(pools, Pool):
        pools = [pools]
    by_topic = {p.topic_id: p for p in pools}
    topic_levels: dict[str, dict[str, int]] = {}
    provenance: dict[str, str] = {}
    for t, pool in by_topic.items():
        levels = trel.topic_levels.get(t)
        if levels is None:
            continue
        docs = pool.doc_ids()
        topic_levels[t] = {d: lv for d, lv in levels.items() if d in docs}
        provenance[t] = trel.provenance[t]
    return Trel(
        name=f"{trel.name}|restricted",
        topic_levels=topic_levels,
        provenance=provenance,
    )


def percent_increment(score_small: float, score_large: float) -> float | None:
    """Percentage increase from the smaller to the larger pool's score.

    Both zero gives 0; a zero small score with a positive large score is
    undefined and returns None (callers exclude and count it).
    """
    if score_small < 0:
        raise ValueError("scores must be non-negative")
    if score_small == 0:
        return 0.0 if score_large == 0 else None
    return 100.0 * (score_large - score_small) / score_small


@dataclass(frozen=True)
class StepCell:
    """Aggregates of the per-(system, trel) increments for one growth step
    and one measure."""

    mean: float
    std: float
    max: float
    excluded: int
    min: float = 0.0


@dataclass
class GrowthReport:
    """Table-style growth report: one row per adjacent size step, one cell
    per measure, aggregated over every (system, trel) combination.

    ``plot_rows`` carries, per measure, (pool size, mean, min, max,
    ci95_lo, ci95_hi, ci99_lo, ci99_hi) rows for the step ending at that
    pool size.
    """

    sizes: list[int]
    measures: list[MeasureKind]
    cells: dict[tuple[str, str], StepCell] = field(default_factory=dict)
    plot_rows: dict[str, list[tuple]] = field(default_factory=dict)

    def steps(self) -> list[str]:
        return [f"{a}->{b}" for a, b in zip(self.sizes, self.sizes[1:])]

    def cell(self, step: str, measure: MeasureKind) -> StepCell:
        return self.cells[(step, str(measure))]

    def to_csv(self) -> str:
        header = ["step"]
        for m in self.measures:
            header += [f"{m}_mean", f"{m}_std", f"{m}_max", f"{m}_excluded"]
        lines = [",".join(header)]
        for step in self.steps():
            cells = [step]
            for m in self.measures:
                c = self.cell(step, m)
                cells += [f"{c.mean:.6f}", f"{c.std:.6f}", f"{c.max:.6f}", str(c.excluded)]
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    def plot_csv(self, measure: MeasureKind) -> str:
        lines = ["pool_size,mean,min,max,ci95_lo,ci95_hi,ci99_lo,ci99_hi"]
        for row in self.plot_rows[str(measure)]:
            lines.append(",".join(f"{v:.6f}" if isinstance(v, float) else str(v) for v in row))
        return "\n".join(lines) + "\n"


def growth_report(
    systems: list[RankedRun],
    measures: list[MeasureKind],
    growth: dict[str, GrowthSeries] | list[GrowthSeries],
    trels: list[Trel],
    topics: list[str] | None = None,
) -> GrowthReport:
    """Evaluate every system against every trel restricted to each pool of
    the growth series, then aggregate the per-step percentage increments.

    The aggregation pools all (system, trel) increments of a step into one
    mean / sample-std / max, as documented in the report header.
    """
    series = list(growth.values()) if isinstance(growth, dict) else list(growth)
    if not series:
        raise ValueError("no growth series")
    if not trels:
        raise ValueError("no trels")
    sizes = series[0].sizes
    for s in series[1:]:
        if s.sizes != sizes:
            raise ValueError("all growth series must share the same size ladder")
    if len(sizes) < 2:
        raise ValueError("need at least two sizes for increments")
    topic_list = topics if topics is not None else sorted(s.topic_id for s in series)

    report = GrowthReport(sizes=list(sizes), measures=list(measures))
    for measure in measures:
        # mean-over-topics score per (system, trel) at each pool size
        means = np.empty((len(sizes), len(systems), len(trels)))
        for si, size in enumerate(sizes):
            pools = [s.pool_at(size) for s in series]
            restricted = [restrict_trel(t, pools) for t in trels]
            scorer = TrelScorer(systems, measure, topics=topic_list)
            means[si] = scorer.mean_matrix(restricted)
        for si in range(len(sizes) - 1):
            small, large = means[si], means[si + 1]
            defined = small > 0
            both_zero = (small == 0) & (large == 0)
            excluded = int(((small == 0) & (large > 0)).sum())
            increments = np.concatenate(
                [
                    100.0 * (large[defined] - small[defined]) / small[defined],
                    np.zeros(int(both_zero.sum())),
                ]
            )
            step = f"{sizes[si]}->{sizes[si + 1]}"
            if increments.size == 0:
                cell = StepCell(mean=0.0, std=0.0, max=0.0, excluded=excluded)
            else:
                s = summarize(increments)
                cell = StepCell(
                    mean=s.mean, std=s.std, max=s.max, excluded=excluded, min=s.min
                )
            report.cells[(step, str(measure))] = cell
        rows = []
        for si in range(1, len(sizes)):
            step = f"{sizes[si - 1]}->{sizes[si]}"
            c = report.cells[(step, str(measure))]
            rows.append(
                (
                    sizes[si],
                    c.mean,
                    c.min,
                    c.max,
                    c.mean - 2 * c.std,
                    c.mean + 2 * c.std,
                    c.mean - 2.6 * c.std,
                    c.mean + 2.6 * c.std,
                )
            )
        report.plot_rows[str(measure)] = rows
    return report
