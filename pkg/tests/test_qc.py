import pytest

from trelkit.qc import noise_qc
from trelkit.types import CrawlManifest, JudgmentSet, ToolkitWarning


def manifest_with_noise(n_noise=400):
    return CrawlManifest(
        topic_docs={
            "001": frozenset({"a", "b"}),
            "021": frozenset({f"n{i}" for i in range(n_noise)}),
        },
        noise_topics=frozenset({"021"}),
    )


def test_all_noise_judged_nonrelevant():
    js = JudgmentSet("a1", {("001", f"n{i}"): 0 for i in range(20)})
    report = noise_qc([js], manifest_with_noise())
    assert report.total_violations == 0
    assert report.flagged_assessors() == []


def test_one_violation_among_326_not_flagged():
    levels = {}
    assessor = 0
    # spread 326 noise judgments over a few assessors, one judged relevant
    sets = []
    for group in range(4):
        n = 82 if group < 2 else 81
        levels = {("001", f"n{group * 100 + i}"): 0 for i in range(n)}
        sets.append(JudgmentSet(f"a{group}", levels))
    key = next(iter(sets[0].levels))
    sets[0].levels[key] = 1
    report = noise_qc(sets, manifest_with_noise())
    assert report.total_noise_judgments == 326
    assert report.total_violations == 1
    assert report.records[0].rate == pytest.approx(1 / 82)
    assert report.flagged_assessors() == []


def test_careless_assessor_flagged():
    levels = {("001", f"n{i}"): (1 if i < 3 else 0) for i in range(10)}
    report = noise_qc([JudgmentSet("a9", levels)], manifest_with_noise())
    assert report.records[0].violations == 3
    assert report.records[0].rate == pytest.approx(0.3)
    assert report.flagged_assessors() == ["a9"]


def test_unjudgeable_noise_not_a_violation():
    levels = {("001", "n0"): -1, ("001", "n1"): 0}
    report = noise_qc([JudgmentSet("a1", levels)], manifest_with_noise())
    assert report.total_violations == 0


def test_empty_report_warns():
    js = JudgmentSet("a1", {("001", "a"): 1})
    with pytest.warns(ToolkitWarning, match="no noise documents"):
        report = noise_qc([js], manifest_with_noise())
    assert report.total_noise_judgments == 0


def test_csv_layout():
    js = JudgmentSet("a1", {("001", "n0"): 0})
    report = noise_qc([js], manifest_with_noise())
    lines = report.to_csv().splitlines()
    assert lines[0] == "assessor_id,noise_judged,violations,rate,flagged"
    assert lines[1].startswith("a1,1,0,")
    assert lines[-1].startswith("total,1,0")


def test_threshold_validation():
    with pytest.raises(ValueError):
        noise_qc([], manifest_with_noise(), threshold=1.5)
