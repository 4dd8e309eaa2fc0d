"""Parsers and writers for every file format the toolkit exchanges.

Formats
-------
topics      XML: ``<topics><topic id=".."><title>..</title><relevance>
            <level value="2">..</level>..</relevance></topic></topics>``
runs        six whitespace-separated columns:
            ``topic_id Q0 doc_id rank score system_tag``
judgments   four whitespace-separated columns:
            ``topic_id assessor_id doc_id level``
manifest    CSV ``topic_id,doc_id[,noise]``
pools       CSV ``topic_id,doc_id,provenance,rank`` with a metadata header
trels       ``topic_id doc_id level`` lines with a provenance header

All parsers accept bytes or str (UTF-8), all writers return bytes, and
``parse(write(x)) == x`` holds for every type with a writer.
"""

from __future__ import annotations

import re
import warnings
import xml.etree.ElementTree as ET
from xml.sax.saxutils import escape, quoteattr

from .types import (
    LEVELS,
    PROVENANCE_KINDS,
    RESOLVED_LEVELS,
    CrawlManifest,
    FormatWarning,
    JudgmentSet,
    Pool,
    PoolEntry,
    RankedRun,
    Topic,
    Trel,
)


class ParseError(ValueError):
    """Raised when an input file is malformed; carries a 1-based line number
    when one is known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _decode(data: bytes | str) -> str:
    if isinstance(data, bytes):
        return data.decode("utf-8")
    return data


def _lines(data: bytes | str):
    """Yield (line_number, stripped_line) for non-blank lines."""
    for i, raw in enumerate(_decode(data).splitlines(), start=1):
        line = raw.strip()
        if line:
            yield i, line


# ---------------------------------------------------------------------------
# topics

def parse_topics(data: bytes | str) -> list[Topic]:
    """Parse a topics file into Topic records.

    Noise topics are simply absent from the file; that is not an error.
    Raises ParseError on malformed markup (with the offending line) or on
    duplicate topic ids.
    """
    text = _decode(data)
    try:
        root = ET.fromstring(text)
    except ET.ParseError as e:
        line = e.position[0] if e.position else None
        raise ParseError(f"malformed topics markup: {e.msg}", line) from None
    if root.tag == "topic":
        elements = [root]
    elif root.tag == "topics":
        elements = list(root.findall("topic"))
    else:
        raise ParseError(f"unexpected root element <{root.tag}>")

    topics: list[Topic] = []
    seen: set[str] = set()
    for el in elements:
        tid = (el.get("id") or "").strip()
        if not tid:
            raise ParseError("topic element without an id attribute")
        if tid in seen:
            raise ParseError(f"duplicate topic id {tid!r}")
        seen.add(tid)
        title = _collapse(el.findtext("title") or "")
        levels: list[tuple[int, str]] = []
        rel = el.find("relevance")
        if rel is not None:
            for lv in rel.findall("level"):
                value = lv.get("value")
                try:
                    value_int = int(value)  # type: ignore[arg-type]
                except (TypeError, ValueError):
                    raise ParseError(
                        f"topic {tid!r}: level value {value!r} is not an integer"
                    ) from None
                levels.append((value_int, _collapse(lv.text or "")))
        try:
            topics.append(Topic(id=tid, title=title, relevance_levels=tuple(levels)))
        except ValueError as e:
            raise ParseError(str(e)) from None
    return topics


def write_topics(topics: list[Topic]) -> bytes:
    parts = ["<topics>"]
    for t in topics:
        parts.append(f"<topic id={quoteattr(t.id)}>")
        parts.append(f"<title>{escape(t.title)}</title>")
        if t.relevance_levels:
            parts.append("<relevance>")
            for value, desc in t.relevance_levels:
                parts.append(f'<level value="{value}">{escape(desc)}</level>')
            parts.append("</relevance>")
        parts.append("</topic>")
    parts.append("</topics>")
    return ("\n".join(parts) + "\n").encode("utf-8")


def _collapse(text: str) -> str:
    return re.sub(r"\s+", " ", text).strip()


# ---------------------------------------------------------------------------
# runs

def parse_run(data: bytes | str) -> RankedRun:
    """Parse a six-column run file.

    The positional order after sorting by (score desc, doc_id asc) is
    authoritative; a rank column that disagrees with it only triggers a
    FormatWarning. Duplicate (topic, doc) pairs, inconsistent system tags
    and non-numeric rank/score fields are errors.
    """
    per_topic: dict[str, list[tuple[str, float]]] = {}
    file_ranks: dict[str, list[tuple[str, int]]] = {}
    tag: str | None = None
    for ln, line in _lines(data):
        fields = line.split()
        if len(fields) != 6:
            raise ParseError(f"expected 6 fields, got {len(fields)}", ln)
        topic_id, _q0, doc_id, rank_s, score_s, system_tag = fields
        try:
            rank = int(rank_s)
        except ValueError:
            raise ParseError(f"non-numeric rank {rank_s!r}", ln) from None
        try:
            score = float(score_s)
        except ValueError:
            raise ParseError(f"non-numeric score {score_s!r}", ln) from None
        if tag is None:
            tag = system_tag
        elif system_tag != tag:
            raise ParseError(
                f"inconsistent system tag {system_tag!r} (expected {tag!r})", ln
            )
        entries = per_topic.setdefault(topic_id, [])
        if any(d == doc_id for d, _ in entries):
            raise ParseError(f"duplicate document {doc_id!r} for topic {topic_id!r}", ln)
        entries.append((doc_id, score))
        file_ranks.setdefault(topic_id, []).append((doc_id, rank))

    if tag is None:
        raise ParseError("empty run file")

    mismatches = 0
    for topic_id, entries in per_topic.items():
        entries.sort(key=lambda e: (-e[1], e[0]))
        positions = {doc: i + 1 for i, (doc, _) in enumerate(entries)}
        for doc, rank in file_ranks[topic_id]:
            if positions[doc] != rank:
                mismatches += 1
    if mismatches:
        warnings.warn(
            f"run {tag!r}: {mismatches} rank column values disagree with "
            "positional order; positional rank is authoritative",
            FormatWarning,
            stacklevel=2,
        )
    return RankedRun(system_tag=tag, rankings=per_topic)


def write_run(run: RankedRun) -> bytes:
    lines = []
    for topic_id in run.topics():
        for i, (doc_id, score) in enumerate(run.rankings[topic_id], start=1):
            lines.append(f"{topic_id} Q0 {doc_id} {i} {score!r} {run.system_tag}")
    return ("\n".join(lines) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# judgments

def parse_judgments(data: bytes | str) -> list[JudgmentSet]:
    """Parse a four-column judgment file into one JudgmentSet per assessor.

    Levels outside {-1, 0, 1, 2} and duplicate (assessor, topic, doc)
    triples are errors. Sets are returned sorted by assessor id.
    """
    sets: dict[str, JudgmentSet] = {}
    for ln, line in _lines(data):
        fields = line.split()
        if len(fields) != 4:
            raise ParseError(f"expected 4 fields, got {len(fields)}", ln)
        topic_id, assessor_id, doc_id, level_s = fields
        try:
            level = int(level_s)
        except ValueError:
            raise ParseError(f"non-numeric level {level_s!r}", ln) from None
        if level not in LEVELS:
            raise ParseError(f"level {level} outside {LEVELS}", ln)
        js = sets.setdefault(assessor_id, JudgmentSet(assessor_id=assessor_id))
        if (topic_id, doc_id) in js.levels:
            raise ParseError(
                f"duplicate judgment by {assessor_id!r} for ({topic_id!r}, {doc_id!r})",
                ln,
            )
        js.levels[(topic_id, doc_id)] = level
    return [sets[a] for a in sorted(sets)]


def write_judgments(judgment_sets: list[JudgmentSet]) -> bytes:
    """Serialize judgment sets, deterministically ordered by (topic,
    assessor, doc)."""
    rows = []
    for js in judgment_sets:
        for (topic_id, doc_id), level in js.levels.items():
            rows.append((topic_id, js.assessor_id, doc_id, level))
    rows.sort()
    lines = [f"{t} {a} {d} {lv}" for t, a, d, lv in rows]
    return ("\n".join(lines) + ("\n" if lines else "")).encode("utf-8")


# ---------------------------------------------------------------------------
# manifest

MANIFEST_HEADER = "topic_id,doc_id,noise"


def parse_manifest(data: bytes | str) -> CrawlManifest:
    """Parse a crawl manifest CSV; a third column "noise" flags the row's
    topic as a noise topic."""
    topic_docs: dict[str, set[str]] = {}
    noise: set[str] = set()
    for ln, line in _lines(data):
        if ln == 1 and line.replace(" ", "") == MANIFEST_HEADER:
            continue
        cells = [c.strip() for c in line.split(",")]
        if len(cells) == 2:
            cells.append("")
        if len(cells) != 3:
            raise ParseError(f"expected 2 or 3 columns, got {len(cells)}", ln)
        topic_id, doc_id, marker = cells
        if not topic_id or not doc_id:
            raise ParseError("empty topic_id or doc_id", ln)
        if marker not in ("", "noise"):
            raise ParseError(f"unknown marker {marker!r} (expected 'noise')", ln)
        topic_docs.setdefault(topic_id, set()).add(doc_id)
        if marker == "noise":
            noise.add(topic_id)
    return CrawlManifest(
        topic_docs={t: frozenset(d) for t, d in topic_docs.items()},
        noise_topics=frozenset(noise),
    )


def write_manifest(manifest: CrawlManifest) -> bytes:
    lines = [MANIFEST_HEADER]
    for topic_id in manifest.topics():
        marker = ",noise" if topic_id in manifest.noise_topics else ","
        for doc_id in sorted(manifest.topic_docs[topic_id]):
            lines.append(f"{topic_id},{doc_id}{marker}")
    return ("\n".join(lines) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# pools

POOL_HEADER = "topic_id,doc_id,provenance,rank"
_SOURCE_ORDER = {src: i for i, src in enumerate(PROVENANCE_KINDS)}


def write_pool(pool: Pool) -> bytes:
    """Serialize a pool, metadata first. The provenance column is for the
    operator pipeline only and must never reach assessors."""
    lines = [
        f"#pool topic={pool.topic_id} size={pool.size} depth={pool.depth}",
        POOL_HEADER,
    ]
    entries = sorted(
        pool.entries.values(),
        key=lambda e: (_SOURCE_ORDER[e.source], e.rank or 0, e.doc_id),
    )
    for e in entries:
        rank = "" if e.rank is None else str(e.rank)
        lines.append(f"{pool.topic_id},{e.doc_id},{e.source},{rank}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def parse_pool(data: bytes | str) -> Pool:
    topic_id: str | None = None
    size: int | None = None
    depth: int | None = None
    entries: dict[str, PoolEntry] = {}
    for ln, line in _lines(data):
        if line.startswith("#pool"):
            meta = dict(
                part.split("=", 1) for part in line[len("#pool"):].split() if "=" in part
            )
            try:
                topic_id = meta["topic"]
                size = int(meta["size"])
                depth = int(meta["depth"])
            except (KeyError, ValueError):
                raise ParseError("bad pool metadata header", ln) from None
            continue
        if line.replace(" ", "") == POOL_HEADER:
            continue
        cells = [c.strip() for c in line.split(",")]
        if len(cells) != 4:
            raise ParseError(f"expected 4 columns, got {len(cells)}", ln)
        row_topic, doc_id, source, rank_s = cells
        if source not in PROVENANCE_KINDS:
            raise ParseError(f"unknown provenance token {source!r}", ln)
        if topic_id is None:
            raise ParseError("pool rows before the #pool metadata header", ln)
        if row_topic != topic_id:
            raise ParseError(
                f"row topic {row_topic!r} != header topic {topic_id!r}", ln
            )
        if doc_id in entries:
            raise ParseError(f"duplicate pooled document {doc_id!r}", ln)
        rank = None
        if rank_s:
            try:
                rank = int(rank_s)
            except ValueError:
                raise ParseError(f"non-numeric rank {rank_s!r}", ln) from None
        try:
            entries[doc_id] = PoolEntry(doc_id=doc_id, source=source, rank=rank)
        except ValueError as e:
            raise ParseError(str(e), ln) from None
    if topic_id is None or size is None or depth is None:
        raise ParseError("missing #pool metadata header")
    if size != len(entries):
        raise ParseError(
            f"size field {size} != {len(entries)} distinct documents in file"
        )
    return Pool(topic_id=topic_id, entries=entries, depth=depth)


# ---------------------------------------------------------------------------
# trels

def write_trel(trel: Trel) -> bytes:
    lines = [f"#trel name={trel.name}"]
    for topic_id in trel.topics():
        lines.append(f"#choice {topic_id} {trel.provenance[topic_id]}")
    for (topic_id, doc_id), level in trel.items():
        lines.append(f"{topic_id} {doc_id} {level}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def parse_trel(data: bytes | str) -> Trel:
    name: str | None = None
    provenance: dict[str, str] = {}
    topic_levels: dict[str, dict[str, int]] = {}
    for ln, line in _lines(data):
        if line.startswith("#trel"):
            meta = dict(
                part.split("=", 1) for part in line[len("#trel"):].split() if "=" in part
            )
            name = meta.get("name")
            if not name:
                raise ParseError("bad trel metadata header", ln)
            continue
        if line.startswith("#choice"):
            fields = line.split()
            if len(fields) != 3:
                raise ParseError("bad #choice line", ln)
            provenance[fields[1]] = fields[2]
            topic_levels.setdefault(fields[1], {})
            continue
        fields = line.split()
        if len(fields) != 3:
            raise ParseError(f"expected 3 fields, got {len(fields)}", ln)
        topic_id, doc_id, level_s = fields
        try:
            level = int(level_s)
        except ValueError:
            raise ParseError(f"non-numeric level {level_s!r}", ln) from None
        if level not in RESOLVED_LEVELS:
            raise ParseError(f"trel level {level} outside {RESOLVED_LEVELS}", ln)
        if topic_id not in provenance:
            raise ParseError(f"topic {topic_id!r} has no #choice header line", ln)
        docs = topic_levels.setdefault(topic_id, {})
        if doc_id in docs:
            raise ParseError(f"duplicate trel entry ({topic_id!r}, {doc_id!r})", ln)
        docs[doc_id] = level
    if name is None:
        raise ParseError("missing #trel metadata header")
    return Trel(name=name, topic_levels=topic_levels, provenance=provenance)
