"""Assessor agreement statistics: Cohen's kappa, relevant-set overlap and
the precision/recall duality between two assessors."""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass

from ..measures import conflate
from ..types import DegenerateValueWarning, JudgmentSet, ToolkitWarning


def _common_pairs(a: JudgmentSet, b: JudgmentSet, topic_id: str):
    """(level_a, level_b) for documents judged by both; documents judged
    by only one assessor are excluded with a warning, pairs involving the
    unjudgeable -1 level are excluded silently (agreement on unrendered
    documents is undefined)."""
    docs_a = a.docs(topic_id)
    docs_b = b.docs(topic_id)
    only_one = docs_a ^ docs_b
    if only_one:
        warnings.warn(
            f"topic {topic_id!r}: {len(only_one)} documents judged by only one "
            "assessor are excluded from kappa",
            ToolkitWarning,
            stacklevel=3,
        )
    pairs = []
    for d in docs_a & docs_b:
        la = a.level(topic_id, d)
        lb = b.level(topic_id, d)
        if la >= 0 and lb >= 0:
            pairs.append((la, lb))
    return pairs


def cohen_kappa(
    a: JudgmentSet, b: JudgmentSet, topic_id: str, weights: str = "unweighted"
) -> float:
    """Cohen's kappa over the categories {0, 1, 2}.

    "unweighted" charges every disagreement equally; "linear" charges
    |i - j|. Perfect observed agreement returns 1 by convention (flagged
    when expected agreement is also 1). Fewer than two usable common
    documents is an error.
    """
    if weights not in ("unweighted", "linear"):
        raise ValueError(f"unknown weighting {weights!r}")
    pairs = _common_pairs(a, b, topic_id)
    n = len(pairs)
    if n < 2:
        raise ValueError(
            f"topic {topic_id!r}: need >= 2 common judged documents, have {n}"
        )
    cats = (0, 1, 2)
    table = {(i, j): 0 for i in cats for j in cats}
    for la, lb in pairs:
        table[(la, lb)] += 1
    row = {i: sum(table[(i, j)] for j in cats) / n for i in cats}
    col = {j: sum(table[(i, j)] for i in cats) / n for j in cats}

    if weights == "unweighted":
        p_o = sum(table[(i, i)] for i in cats) / n
        p_e = sum(row[i] * col[i] for i in cats)
        if p_o == 1.0:
            if p_e == 1.0:
                warnings.warn(
                    f"topic {topic_id!r}: both assessors constant on the same "
                    "category; kappa is 1 by convention",
                    DegenerateValueWarning,
                    stacklevel=2,
                )
            return 1.0
        return (p_o - p_e) / (1 - p_e)

    d_o = sum(abs(i - j) * table[(i, j)] for i in cats for j in cats) / n
    d_e = sum(abs(i - j) * row[i] * col[j] for i in cats for j in cats)
    if d_o == 0.0:
        if d_e == 0.0:
            warnings.warn(
                f"topic {topic_id!r}: degenerate weighted kappa; 1 by convention",
                DegenerateValueWarning,
                stacklevel=2,
            )
        return 1.0
    return 1 - d_o / d_e


def _relevant(js: JudgmentSet, topic_id: str) -> set[str]:
    return {
        d for d in js.docs(topic_id) if conflate(js.level(topic_id, d)) == 1
    }


def relevant_overlap(a: JudgmentSet, b: JudgmentSet, topic_id: str) -> float:
    """|Ra & Rb| / |Ra | Rb| over conflated-relevant sets; two empty sets
    overlap perfectly (flagged)."""
    ra, rb = _relevant(a, topic_id), _relevant(b, topic_id)
    union = ra | rb
    if not union:
        warnings.warn(
            f"topic {topic_id!r}: no relevant documents for either assessor; "
            "overlap forced to 1",
            DegenerateValueWarning,
            stacklevel=2,
        )
        return 1.0
    return len(ra & rb) / len(union)


def assessor_precision_recall(
    a: JudgmentSet, b: JudgmentSet, topic_id: str
) -> tuple[float, float]:
    """Treat B as the ground truth and A as a retrieval run.

    precision = |Ra & Rb| / |Ra| and recall = |Ra & Rb| / |Rb|, so the
    precision of A w.r.t. B equals the recall of B w.r.t. A. Empty
    denominators yield 1 (flagged).
    """
    ra, rb = _relevant(a, topic_id), _relevant(b, topic_id)
    inter = len(ra & rb)
    if not ra:
        warnings.warn(
            f"topic {topic_id!r}: assessor {a.assessor_id!r} judged nothing "
            "relevant; precision forced to 1",
            DegenerateValueWarning,
            stacklevel=2,
        )
        precision = 1.0
    else:
        precision = inter / len(ra)
    if not rb:
        warnings.warn(
            f"topic {topic_id!r}: assessor {b.assessor_id!r} judged nothing "
            "relevant; recall forced to 1",
            DegenerateValueWarning,
            stacklevel=2,
        )
        recall = 1.0
    else:
        recall = inter / len(rb)
    return precision, recall


@dataclass(frozen=True)
class AgreementRecord:
    """Per-topic agreement between the two assessors, with assessor A
    chosen canonically (lexicographically smaller id)."""

    topic_id: str
    kappa: float
    overlap: float
    precision: float
    recall: float


@dataclass(frozen=True)
class OrientationSample:
    """Distribution of mean precision/recall when the assessor treated as
    ground truth is re-drawn at random per topic."""

    n: int
    seed: int
    mean_precision: float
    mean_recall: float
    std_precision: float
    std_recall: float
    min_precision: float
    max_precision: float
    min_recall: float
    max_recall: float


@dataclass
class AgreementTable:
    """Per-topic agreement records plus their averages."""

    records: list[AgreementRecord]

    def __post_init__(self):
        if not self.records:
            raise ValueError("no dual-judged topics; agreement is undefined")

    @property
    def mean_kappa(self) -> float:
        return self._mean("kappa")

    @property
    def mean_overlap(self) -> float:
        return self._mean("overlap")

    @property
    def mean_precision(self) -> float:
        return self._mean("precision")

    @property
    def mean_recall(self) -> float:
        return self._mean("recall")

    def _mean(self, attr: str) -> float:
        return sum(getattr(r, attr) for r in self.records) / len(self.records)

    def orientation_sample(self, n: int = 1000, seed: int = 0) -> OrientationSample:
        """Re-draw which assessor counts as "A" per topic, n times, and
        summarize the resulting mean precision/recall distribution.

        Swapping the orientation of a topic exchanges its precision and
        recall, so the draw works directly on the stored record values.
        """
        if n < 1:
            raise ValueError("need at least one draw")
        rng = random.Random(seed)
        precisions, recalls = [], []
        for _ in range(n):
            ps, rs = [], []
            for rec in self.records:
                if rng.random() < 0.5:
                    ps.append(rec.precision)
                    rs.append(rec.recall)
                else:
                    ps.append(rec.recall)
                    rs.append(rec.precision)
            precisions.append(sum(ps) / len(ps))
            recalls.append(sum(rs) / len(rs))
        return OrientationSample(
            n=n,
            seed=seed,
            mean_precision=sum(precisions) / n,
            mean_recall=sum(recalls) / n,
            std_precision=_sample_std(precisions),
            std_recall=_sample_std(recalls),
            min_precision=min(precisions),
            max_precision=max(precisions),
            min_recall=min(recalls),
            max_recall=max(recalls),
        )

    def to_csv(self) -> str:
        lines = ["topic_id,kappa,overlap,precision,recall"]
        for r in self.records:
            lines.append(
                f"{r.topic_id},{r.kappa:.6f},{r.overlap:.6f},"
                f"{r.precision:.6f},{r.recall:.6f}"
            )
        lines.append(
            f"average,{self.mean_kappa:.6f},{self.mean_overlap:.6f},"
            f"{self.mean_precision:.6f},{self.mean_recall:.6f}"
        )
        return "\n".join(lines) + "\n"


def _sample_std(values) -> float:
    n = len(values)
    if n < 2:
        return 0.0
    mean = sum(values) / n
    return math.sqrt(sum((v - mean) ** 2 for v in values) / (n - 1))


def agreement_table(judgment_sets: list[JudgmentSet]) -> AgreementTable:
    """Per-topic agreement for every topic judged by exactly two
    assessors. The assessor with the smaller id is treated as A (the
    "run"); use orientation_sample for orientation-free aggregates."""
    by_topic: dict[str, list[JudgmentSet]] = {}
    for js in judgment_sets:
        for t in js.topics():
            by_topic.setdefault(t, []).append(js)
    records = []
    for t in sorted(by_topic):
        sets = sorted(by_topic[t], key=lambda js: js.assessor_id)
        if len(sets) != 2:
            continue
        a, b = sets
        precision, recall = assessor_precision_recall(a, b, t)
        records.append(
            AgreementRecord(
                topic_id=t,
                kappa=cohen_kappa(a, b, t),
                overlap=relevant_overlap(a, b, t),
                precision=precision,
                recall=recall,
            )
        )
    return AgreementTable(records=records)
