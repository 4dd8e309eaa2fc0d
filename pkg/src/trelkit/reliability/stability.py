"""Score distributions over trels, largest-difference tables, Kendall-tau
ranking stability and the Wilcoxon signed-rank swap test."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from ..measures import MeasureKind
from ..types import DegenerateValueWarning, RankedRun, Trel
from ._scoring import TrelScorer

#: Sample size at or below which the signed-rank p-value is exact.
EXACT_WILCOXON_LIMIT = 12


@dataclass(frozen=True)
class DistributionSummary:
    """Mean, sample standard deviation, range and the 2-sigma / 2.6-sigma
    bands (95% and 99% CI) of a score distribution."""

    mean: float
    std: float
    min: float
    max: float

    @property
    def ci95(self) -> tuple[float, float]:
        return (self.mean - 2 * self.std, self.mean + 2 * self.std)

    @property
    def ci99(self) -> tuple[float, float]:
        return (self.mean - 2.6 * self.std, self.mean + 2.6 * self.std)


def summarize(values) -> DistributionSummary:
    arr = np.asarray(list(values), dtype=float)
    if arr.size == 0:
        raise ValueError("cannot summarize an empty sample")
    std = float(arr.std(ddof=1)) if arr.size > 1 else 0.0
    return DistributionSummary(
        mean=float(arr.mean()), std=std, min=float(arr.min()), max=float(arr.max())
    )


def score_distribution(
    system: RankedRun,
    measure: MeasureKind,
    trels: list[Trel],
    topics: list[str] | None = None,
) -> DistributionSummary:
    """Distribution of the system's mean-over-topics score across trels."""
    if len(trels) < 2:
        raise ValueError("need at least 2 trels for a score distribution")
    scorer = TrelScorer([system], measure, topics=topics)
    return summarize(scorer.mean_matrix(trels)[0])


@dataclass
class LargestDifferences:
    """Min/max over systems of each system's largest score difference,
    under three readings: the 2-sigma band width, the full trel sample,
    and union vs intersection."""

    measure: MeasureKind
    ci95: tuple[float, float]
    all_trels: tuple[float, float]
    union_intersection: tuple[float, float] | None = None
    per_system: dict[str, float] = field(default_factory=dict)

    def to_csv(self) -> str:
        lines = ["row,min,max"]
        lines.append(f"ci95_2sigma,{self.ci95[0]:.6f},{self.ci95[1]:.6f}")
        lines.append(f"all_trels,{self.all_trels[0]:.6f},{self.all_trels[1]:.6f}")
        if self.union_intersection is not None:
            lines.append(
                "union_intersection,"
                f"{self.union_intersection[0]:.6f},{self.union_intersection[1]:.6f}"
            )
        return "\n".join(lines) + "\n"


def largest_differences(
    systems: list[RankedRun],
    measure: MeasureKind,
    trels: list[Trel],
    union: Trel | None = None,
    intersection: Trel | None = None,
    topics: list[str] | None = None,
) -> LargestDifferences:
    """For each system take max-min of its mean score across the trels;
    report the extremes across systems, plus the 4-sigma band widths and,
    when union/intersection trels are given, their score gaps."""
    if len(trels) < 2:
        raise ValueError("need at least 2 trels")
    scorer = TrelScorer(systems, measure, topics=topics)
    matrix = scorer.mean_matrix(trels)
    spreads = matrix.max(axis=1) - matrix.min(axis=1)
    sigmas = 4 * matrix.std(axis=1, ddof=1)
    result = LargestDifferences(
        measure=measure,
        ci95=(float(sigmas.min()), float(sigmas.max())),
        all_trels=(float(spreads.min()), float(spreads.max())),
        per_system={
            run.system_tag: float(s) for run, s in zip(systems, spreads)
        },
    )
    if union is not None and intersection is not None:
        gaps = np.abs(
            scorer.mean_matrix([union])[:, 0] - scorer.mean_matrix([intersection])[:, 0]
        )
        result.union_intersection = (float(gaps.min()), float(gaps.max()))
    return result


def kendall_tau(order_a, order_b) -> float:
    """Kendall's tau-a between two orderings of the same items.

    Accepts the orderings as sequences (best first). Both must rank the
    same item set; fewer than two items is an error.
    """
    items_a, items_b = list(order_a), list(order_b)
    if set(items_a) != set(items_b) or len(items_a) != len(set(items_a)):
        raise ValueError("orderings must rank the same items exactly once")
    n = len(items_a)
    if n < 2:
        raise ValueError("need at least 2 items")
    pos_b = {item: i for i, item in enumerate(items_b)}
    ranks_b = [pos_b[item] for item in items_a]
    concordant = discordant = 0
    for i in range(n):
        for j in range(i + 1, n):
            if ranks_b[i] < ranks_b[j]:
                concordant += 1
            else:
                discordant += 1
    return (concordant - discordant) / (n * (n - 1) / 2)


@dataclass
class TauSample:
    """Kendall-tau values over trel pairs plus their summary."""

    measure: MeasureKind
    values: list[float]
    summary: DistributionSummary
    threshold: float
    fraction_above: float
    tie_breaks: int

    def __post_init__(self):
        for v in self.values:
            if not -1.0 - 1e-9 <= v <= 1.0 + 1e-9:
                raise ValueError(f"tau value {v} outside [-1, 1]")

    def to_csv(self) -> str:
        lines = ["statistic,value"]
        lines.append(f"mean,{self.summary.mean:.6f}")
        lines.append(f"std,{self.summary.std:.6f}")
        lines.append(f"min,{self.summary.min:.6f}")
        lines.append(f"max,{self.summary.max:.6f}")
        lines.append(f"fraction_above_{self.threshold},{self.fraction_above:.6f}")
        lines.append(f"tie_breaks,{self.tie_breaks}")
        return "\n".join(lines) + "\n"


def rank_systems(tags, means) -> list[str]:
    """Order system tags by score descending, ties broken by tag
    ascending. Returns the ordering; tie counting is the caller's job."""
    return [t for t, _ in sorted(zip(tags, means), key=lambda x: (-x[1], x[0]))]


def tau_distribution(
    systems: list[RankedRun],
    measure: MeasureKind,
    pairs: list[tuple[Trel, Trel]],
    threshold: float = 0.9,
    topics: list[str] | None = None,
) -> TauSample:
    """Tau between the system rankings induced by each trel pair.

    Rankings sort by mean-over-topics score descending with ties broken
    by system tag; the number of broken ties is reported because tau on
    tied data is sensitive to that policy.
    """
    if not pairs:
        raise ValueError("need at least one trel pair")
    tags = [r.system_tag for r in systems]
    scorer = TrelScorer(systems, measure, topics=topics)
    flat: list[Trel] = []
    for a, b in pairs:
        flat.append(a)
        flat.append(b)
    matrix = scorer.mean_matrix(flat)
    values = []
    tie_breaks = 0
    for i in range(len(pairs)):
        means_a = matrix[:, 2 * i]
        means_b = matrix[:, 2 * i + 1]
        tie_breaks += _count_ties(means_a) + _count_ties(means_b)
        values.append(
            kendall_tau(rank_systems(tags, means_a), rank_systems(tags, means_b))
        )
    above = sum(1 for v in values if v > threshold)
    return TauSample(
        measure=measure,
        values=values,
        summary=summarize(values),
        threshold=threshold,
        fraction_above=above / len(values),
        tie_breaks=tie_breaks,
    )


def _count_ties(means) -> int:
    seen: dict[float, int] = {}
    for m in means:
        seen[m] = seen.get(m, 0) + 1
    return sum(n * (n - 1) // 2 for n in seen.values() if n > 1)


@dataclass(frozen=True)
class WilcoxonResult:
    statistic: float
    p_value: float
    significant: bool
    n_used: int
    method: str
    flagged: bool = False


def wilcoxon_signed_rank(differences, alpha: float = 0.05) -> WilcoxonResult:
    """Two-sided Wilcoxon signed-rank test over paired differences.

    Zero differences are dropped; tied absolute differences get average
    ranks. Up to 12 remaining pairs the p-value is exact (distribution of
    W+ over all sign assignments, computed by convolution); above that, a
    normal approximation with tie correction and no continuity correction
    is used. All differences zero yields p = 1, flagged.
    """
    diffs = [d for d in differences if d != 0]
    n = len(diffs)
    if n == 0:
        warnings.warn(
            "all paired differences are zero; p forced to 1",
            DegenerateValueWarning,
            stacklevel=2,
        )
        return WilcoxonResult(0.0, 1.0, False, 0, "degenerate", flagged=True)
    ranks = _average_ranks([abs(d) for d in diffs])
    w_plus = sum(r for d, r in zip(diffs, ranks) if d > 0)
    if n <= EXACT_WILCOXON_LIMIT:
        p = _exact_two_sided_p(ranks, w_plus)
        method = "exact"
    else:
        mu = sum(ranks) / 2
        sigma = math.sqrt(sum(r * r for r in ranks)) / 2
        z = (w_plus - mu) / sigma
        p = math.erfc(abs(z) / math.sqrt(2))
        method = "normal"
    return WilcoxonResult(
        statistic=w_plus,
        p_value=min(p, 1.0),
        significant=p < alpha,
        n_used=n,
        method=method,
    )


def wilcoxon_swap_test(
    system_a: RankedRun,
    system_b: RankedRun,
    measure: MeasureKind,
    trel: Trel,
    alpha: float = 0.05,
    topics: list[str] | None = None,
) -> WilcoxonResult:
    """Signed-rank test over the two systems' per-topic score differences
    under one trel."""
    topic_list = topics if topics is not None else trel.topics()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateValueWarning)
        diffs = [
            measure.score(system_a, trel, t) - measure.score(system_b, trel, t)
            for t in topic_list
        ]
    return wilcoxon_signed_rank(diffs, alpha=alpha)


def _average_ranks(values: list[float]) -> list[float]:
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        avg = (i + j) / 2 + 1
        for idx in order[i : j + 1]:
            ranks[idx] = avg
        i = j + 1
    return ranks


def _exact_two_sided_p(ranks: list[float], w_plus: float) -> float:
    """Distribution of W+ under the null via convolution over the rank
    multiset (ranks doubled to stay integral with average ranks), then
    P(|W+ - mu| >= |observed - mu|)."""
    doubled = [round(2 * r) for r in ranks]
    total = sum(doubled)
    counts = [0] * (total + 1)
    counts[0] = 1
    for r in doubled:
        nxt = counts[:]
        for w in range(total - r + 1):
            if counts[w]:
                nxt[w + r] += counts[w]
        counts = nxt
    mu = total / 2
    obs = abs(round(2 * w_plus) - mu)
    favorable = sum(c for w, c in enumerate(counts) if abs(w - mu) >= obs - 1e-9)
    return favorable / (1 << len(ranks))
