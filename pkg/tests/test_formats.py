import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trelkit.formats import (
    ParseError,
    parse_judgments,
    parse_manifest,
    parse_pool,
    parse_run,
    parse_topics,
    parse_trel,
    write_judgments,
    write_manifest,
    write_pool,
    write_run,
    write_topics,
    write_trel,
)
from trelkit.types import (
    CrawlManifest,
    FormatWarning,
    JudgmentSet,
    Pool,
    PoolEntry,
    RankedRun,
    Topic,
    Trel,
)

FIGURE_TOPIC = """
<topic id="2010-019">
<title>Where are Google’s data-centers located?</title>
<relevance>
<level value="2">The document is not related to the topic. It may contain some common terms, but still not related
to the topic.</level>
<level value="1">The document is related to the topic, but does not satisfy the information need. It may contain a
hyperlink to a relevant document.</level>
<level value="0">The document is related to the topic and does satisfy the information need.</level>
</relevance>
</topic>
"""


class TestTopics:
    def test_sample_topic(self):
        topics = parse_topics(FIGURE_TOPIC)
        assert len(topics) == 1
        t = topics[0]
        assert t.id == "2010-019"
        assert t.title == "Where are Google’s data-centers located?"
        assert len(t.relevance_levels) == 3
        assert [v for v, _ in t.relevance_levels] == [2, 1, 0]

    def test_empty_document(self):
        assert parse_topics("<topics/>") == []

    def test_duplicate_id(self):
        data = '<topics><topic id="a"><title>x</title></topic><topic id="a"><title>y</title></topic></topics>'
        with pytest.raises(ParseError, match="duplicate topic id"):
            parse_topics(data)

    def test_malformed_markup_reports_line(self):
        data = "<topics>\n<topic id='a'>\n<title>x</title>\n</oops>\n</topics>"
        with pytest.raises(ParseError, match="line 4"):
            parse_topics(data)

    def test_missing_title(self):
        with pytest.raises(ParseError, match="title"):
            parse_topics('<topics><topic id="a"></topic></topics>')

    def test_round_trip(self):
        topics = parse_topics(FIGURE_TOPIC)
        assert parse_topics(write_topics(topics)) == topics


class TestRuns:
    def test_single_line(self):
        run = parse_run("001 Q0 d7 1 9.5 p0001")
        assert run.system_tag == "p0001"
        assert run.ranking("001") == ["d7"]

    def test_duplicate_doc(self):
        data = "001 Q0 d7 1 9.5 p1\n001 Q0 d7 2 8.0 p1"
        with pytest.raises(ParseError, match="duplicate document"):
            parse_run(data)

    def test_three_ordered_lines(self):
        data = "001 Q0 a 1 3.0 p1\n001 Q0 b 2 2.0 p1\n001 Q0 c 3 1.0 p1"
        run = parse_run(data)
        assert run.ranking("001") == ["a", "b", "c"]

    def test_positional_rank_authoritative(self):
        # scores dominate the rank column; the mismatch only warns
        data = "001 Q0 a 1 1.0 p1\n001 Q0 b 2 3.0 p1"
        with pytest.warns(FormatWarning):
            run = parse_run(data)
        assert run.ranking("001") == ["b", "a"]

    def test_score_ties_broken_by_doc_id(self):
        data = "001 Q0 zz 1 5.0 p1\n001 Q0 aa 2 5.0 p1"
        with pytest.warns(FormatWarning):
            run = parse_run(data)
        assert run.ranking("001") == ["aa", "zz"]

    def test_inconsistent_tag(self):
        data = "001 Q0 a 1 2.0 p1\n001 Q0 b 2 1.0 p2"
        with pytest.raises(ParseError, match="inconsistent system tag"):
            parse_run(data)

    def test_non_numeric_fields(self):
        with pytest.raises(ParseError, match="rank"):
            parse_run("001 Q0 a one 2.0 p1")
        with pytest.raises(ParseError, match="score"):
            parse_run("001 Q0 a 1 high p1")

    def test_round_trip(self):
        data = "001 Q0 a 1 3.5 p1\n001 Q0 b 2 2.25 p1\n002 Q0 c 1 1.0 p1"
        run = parse_run(data)
        assert parse_run(write_run(run)) == run


class TestJudgments:
    def test_single_line(self):
        sets = parse_judgments("001 a1 d1 2")
        assert len(sets) == 1
        assert sets[0].assessor_id == "a1"
        assert sets[0].levels == {("001", "d1"): 2}

    def test_out_of_range_level(self):
        with pytest.raises(ParseError, match="outside"):
            parse_judgments("001 a1 d1 3")

    def test_two_assessors(self):
        sets = parse_judgments("001 a1 d1 2\n001 a2 d1 0\n002 a1 d2 -1")
        assert [s.assessor_id for s in sets] == ["a1", "a2"]
        assert sets[0].levels == {("001", "d1"): 2, ("002", "d2"): -1}

    def test_duplicate(self):
        with pytest.raises(ParseError, match="duplicate judgment"):
            parse_judgments("001 a1 d1 2\n001 a1 d1 1")

    def test_round_trip_bytes_identical(self):
        data = b"001 a1 d1 2\n001 a2 d1 0\n002 a1 d2 -1\n"
        sets = parse_judgments(data)
        assert write_judgments(sets) == data


class TestManifest:
    def test_parse(self):
        data = "topic_id,doc_id,noise\n001,d1,\n001,d2,\n021,n1,noise\n"
        m = parse_manifest(data)
        assert m.docs_for("001") == {"d1", "d2"}
        assert m.noise_topics == {"021"}
        assert m.noise_docs() == {"n1"}

    def test_two_column_rows(self):
        m = parse_manifest("001,d1\n021,n1,noise")
        assert m.docs_for("001") == {"d1"}

    def test_bad_marker(self):
        with pytest.raises(ParseError, match="marker"):
            parse_manifest("001,d1,garbage")

    def test_round_trip(self):
        m = CrawlManifest(
            topic_docs={
                "001": frozenset({"d1", "d2"}),
                "021": frozenset({"n1"}),
            },
            noise_topics=frozenset({"021"}),
        )
        assert parse_manifest(write_manifest(m)) == m


class TestPools:
    def make_pool(self):
        entries = {
            "d1": PoolEntry("d1", "pooling_run", 1),
            "d2": PoolEntry("d2", "pooling_run", 2),
            "g1": PoolEntry("g1", "search_engine", 1),
            "n1": PoolEntry("n1", "noise", None),
        }
        return Pool(topic_id="001", entries=entries, depth=2)

    def test_round_trip(self):
        pool = self.make_pool()
        assert parse_pool(write_pool(pool)) == pool

    def test_noise_line(self):
        text = write_pool(self.make_pool()).decode()
        assert "001,n1,noise,\n" in text

    def test_empty_pool_is_header_only(self):
        pool = Pool(topic_id="001", entries={}, depth=0)
        lines = write_pool(pool).decode().splitlines()
        assert lines == ["#pool topic=001 size=0 depth=0", "topic_id,doc_id,provenance,rank"]
        assert parse_pool(write_pool(pool)) == pool

    def test_line_count_and_size_field(self):
        entries = {
            f"d{i}": PoolEntry(f"d{i}", "pooling_run", i + 1) for i in range(102)
        }
        pool = Pool(topic_id="001", entries=entries, depth=102)
        text = write_pool(pool).decode()
        data_lines = [l for l in text.splitlines() if not l.startswith(("#", "topic_id"))]
        assert len(data_lines) == 102
        assert "size=102" in text.splitlines()[0]

    def test_unknown_provenance(self):
        data = "#pool topic=001 size=1 depth=0\ntopic_id,doc_id,provenance,rank\n001,d1,teleport,\n"
        with pytest.raises(ParseError, match="unknown provenance"):
            parse_pool(data)

    def test_size_mismatch(self):
        data = "#pool topic=001 size=2 depth=1\ntopic_id,doc_id,provenance,rank\n001,d1,pooling_run,1\n"
        with pytest.raises(ParseError, match="size field"):
            parse_pool(data)


class TestTrels:
    def test_round_trip(self):
        trel = Trel(
            name="union",
            topic_levels={"001": {"d1": 2, "d2": 0}, "002": {"d3": 1}},
            provenance={"001": "union", "002": "union"},
        )
        assert parse_trel(write_trel(trel)) == trel

    def test_rejects_unresolved_level(self):
        data = "#trel name=x\n#choice 001 a1\n001 d1 -1\n"
        with pytest.raises(ParseError, match="outside"):
            parse_trel(data)


# ---------------------------------------------------------------------------
# randomized round-trip properties

doc_ids = st.text(alphabet="abcdefg0123456789", min_size=1, max_size=8).map(
    lambda s: "d" + s
)
topic_ids = st.sampled_from(["001", "002", "003", "2010-019"])
levels = st.sampled_from([-1, 0, 1, 2])


@given(
    st.dictionaries(
        topic_ids,
        st.lists(doc_ids, min_size=0, max_size=12, unique=True),
        min_size=1,
        max_size=4,
    )
)
@settings(max_examples=60)
def test_run_round_trip_property(topic_docs):
    rankings = {
        t: [(d, float(len(docs) - i)) for i, d in enumerate(sorted(docs))]
        for t, docs in topic_docs.items()
        if docs
    }
    if not rankings:
        return
    run = RankedRun(system_tag="sys", rankings=rankings)
    assert parse_run(write_run(run)) == run


@given(
    st.dictionaries(
        st.tuples(topic_ids, doc_ids), levels, min_size=0, max_size=30
    ),
    st.dictionaries(
        st.tuples(topic_ids, doc_ids), levels, min_size=1, max_size=30
    ),
)
@settings(max_examples=60)
def test_judgments_round_trip_property(levels_a, levels_b):
    sets = [
        JudgmentSet(assessor_id="a1", levels=dict(levels_a)),
        JudgmentSet(assessor_id="a2", levels=dict(levels_b)),
    ]
    parsed = parse_judgments(write_judgments(sets))
    expected = [s for s in sets if s.levels]
    assert parsed == sorted(expected, key=lambda s: s.assessor_id)


@given(
    st.lists(
        st.tuples(doc_ids, st.sampled_from(["pooling_run", "search_engine", "noise"])),
        min_size=0,
        max_size=20,
        unique_by=lambda e: e[0],
    )
)
@settings(max_examples=60)
def test_pool_round_trip_property(raw_entries):
    entries = {}
    rank = 0
    for doc, source in raw_entries:
        rank += 1
        entries[doc] = PoolEntry(
            doc, source, None if source == "noise" else rank
        )
    depth = max(
        (e.rank for e in entries.values() if e.source == "pooling_run"), default=0
    )
    pool = Pool(topic_id="001", entries=entries, depth=depth)
    assert parse_pool(write_pool(pool)) == pool


@given(
    st.dictionaries(
        topic_ids,
        st.dictionaries(doc_ids, st.sampled_from([0, 1, 2]), max_size=10),
        min_size=1,
        max_size=4,
    )
)
@settings(max_examples=60)
def test_trel_round_trip_property(topic_levels):
    trel = Trel(
        name="sample-1",
        topic_levels=topic_levels,
        provenance={t: "a1" for t in topic_levels},
    )
    assert parse_trel(write_trel(trel)) == trel
