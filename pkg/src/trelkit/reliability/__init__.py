"""Reliability analytics: assessor agreement, score distributions over
trels, ranking stability and swap significance."""

from .agreement import (
    AgreementRecord,
    AgreementTable,
    OrientationSample,
    agreement_table,
    assessor_precision_recall,
    cohen_kappa,
    relevant_overlap,
)
from .stability import (
    DistributionSummary,
    LargestDifferences,
    TauSample,
    WilcoxonResult,
    kendall_tau,
    largest_differences,
    rank_systems,
    score_distribution,
    summarize,
    tau_distribution,
    wilcoxon_signed_rank,
    wilcoxon_swap_test,
)

__all__ = [
    "AgreementRecord",
    "AgreementTable",
    "OrientationSample",
    "agreement_table",
    "assessor_precision_recall",
    "cohen_kappa",
    "relevant_overlap",
    "DistributionSummary",
    "LargestDifferences",
    "TauSample",
    "WilcoxonResult",
    "kendall_tau",
    "largest_differences",
    "rank_systems",
    "score_distribution",
    "summarize",
    "tau_distribution",
    "wilcoxon_signed_rank",
    "wilcoxon_swap_test",
]
