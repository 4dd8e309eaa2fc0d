"""Quality control over judgments via noise documents.

Noise documents come from decoy topics and should always be judged
nonrelevant; an assessor marking too many of them relevant is flagged
for review (possible negligence).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .measures import conflate
from .types import CrawlManifest, JudgmentSet, ToolkitWarning

DEFAULT_QC_THRESHOLD = 0.10


@dataclass(frozen=True)
class AssessorQC:
    assessor_id: str
    noise_judged: int
    violations: int
    rate: float
    flagged: bool


@dataclass
class QCReport:
    threshold: float
    records: list[AssessorQC]

    @property
    def total_noise_judgments(self) -> int:
        return sum(r.noise_judged for r in self.records)

    @property
    def total_violations(self) -> int:
        return sum(r.violations for r in self.records)

    def flagged_assessors(self) -> list[str]:
        return [r.assessor_id for r in self.records if r.flagged]

    def to_csv(self) -> str:
        lines = ["assessor_id,noise_judged,violations,rate,flagged"]
        for r in self.records:
            lines.append(
                f"{r.assessor_id},{r.noise_judged},{r.violations},"
                f"{r.rate:.6f},{int(r.flagged)}"
            )
        lines.append(
            f"total,{self.total_noise_judgments},{self.total_violations},,"
        )
        return "\n".join(lines) + "\n"


def noise_qc(
    judgment_sets: list[JudgmentSet],
    manifest: CrawlManifest,
    threshold: float = DEFAULT_QC_THRESHOLD,
) -> QCReport:
    """Per assessor: noise documents judged, how many were marked relevant
    (conflated level >= 1), the violation rate, and a flag when the rate
    exceeds the threshold. No noise judgments at all yields an empty,
    flagged report."""
    if not 0 <= threshold <= 1:
        raise ValueError("threshold must be in [0, 1]")
    noise_docs = manifest.noise_docs()
    records = []
    for js in sorted(judgment_sets, key=lambda s: s.assessor_id):
        judged = 0
        violations = 0
        for (_t, d), level in js.levels.items():
            if d in noise_docs:
                judged += 1
                if conflate(level):
                    violations += 1
        rate = violations / judged if judged else 0.0
        records.append(
            AssessorQC(
                assessor_id=js.assessor_id,
                noise_judged=judged,
                violations=violations,
                rate=rate,
                flagged=judged > 0 and rate > threshold,
            )
        )
    report = QCReport(threshold=threshold, records=records)
    if report.total_noise_judgments == 0:
        warnings.warn(
            "no noise documents were judged; quality control is empty",
            ToolkitWarning,
            stacklevel=2,
        )
    return report
