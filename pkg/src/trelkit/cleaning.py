"""Document cleaning for blinded judging.

Raw crawled pages are reduced to a basic black-and-white reading
document: only structural, text-bearing elements survive (headings,
paragraphs, lists, tables, a few inline breaks), every attribute is
stripped, and scripts, styles, embedded objects, frames and images are
removed together with their content. The function is deterministic and
idempotent, and tolerates arbitrarily broken markup.
"""

from __future__ import annotations

import html
import warnings
from dataclasses import dataclass
from html.parser import HTMLParser

from .types import ToolkitWarning

#: Structural elements kept in cleaned bodies (attributes are dropped).
KEPT_TAGS = frozenset(
    {
        "h1", "h2", "h3", "h4", "h5", "h6",
        "p", "blockquote", "pre", "br",
        "ul", "ol", "li",
        "table", "tr", "th", "td",
    }
)

#: Elements removed together with everything inside them.
DROPPED_SUBTREES = frozenset(
    {
        "script", "style", "noscript", "template",
        "object", "applet", "iframe", "frameset",
        "svg", "math", "canvas", "audio", "video", "picture", "map",
        "select", "option", "textarea", "button",
    }
)

#: Void elements silently dropped (they carry no text and no end tag).
DROPPED_VOID = frozenset(
    {
        "img", "embed", "frame", "input", "hr", "area", "source", "track",
        "meta", "link", "base", "param", "col", "wbr",
    }
)

_VOID_KEPT = frozenset({"br"})


@dataclass(frozen=True)
class CleanDocument:
    """A cleaned, blinded document ready for display to an assessor."""

    doc_id: str
    title: str
    body: str
    byte_size: int

    def to_html(self) -> str:
        """Minimal standalone rendering of the cleaned document."""
        return (
            "<html><head><title>"
            + html.escape(self.title)
            + "</title></head><body>"
            + self.body
            + "</body></html>"
        )

    def plain_text(self) -> str:
        """The body's text content, exactly as a DOM's textContent would
        concatenate it. Search offsets index into this string."""
        extractor = _TextExtractor()
        extractor.feed(self.body)
        extractor.close()
        return "".join(extractor.chunks)


class _TextExtractor(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.chunks: list[str] = []

    def handle_data(self, data):
        self.chunks.append(data)


class _Cleaner(HTMLParser):
    """Single pass over the raw markup producing a balanced, attribute-free
    token stream limited to KEPT_TAGS."""

    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.out: list[str] = []
        self.stack: list[str] = []
        self.drop_depth = 0
        self.title_depth = 0
        self.title_parts: list[str] = []
        self._pending_ws = False

    # -- tag handling

    def handle_starttag(self, tag, attrs):
        tag = tag.lower()
        if tag in DROPPED_SUBTREES:
            self.drop_depth += 1
            return
        if self.drop_depth:
            return
        if tag == "title":
            self.title_depth += 1
            return
        if tag in DROPPED_VOID:
            return
        if tag in _VOID_KEPT:
            self._flush_ws()
            self.out.append(f"<{tag}>")
            return
        if tag in KEPT_TAGS:
            self._pending_ws = False
            self.out.append(f"<{tag}>")
            self.stack.append(tag)
        # unknown tags are transparent: the tag goes away, its text stays

    def handle_startendtag(self, tag, attrs):
        tag = tag.lower()
        if tag in DROPPED_SUBTREES or self.drop_depth:
            return
        if tag in _VOID_KEPT:
            self._flush_ws()
            self.out.append(f"<{tag}>")

    def handle_endtag(self, tag):
        tag = tag.lower()
        if tag in DROPPED_SUBTREES:
            if self.drop_depth:
                self.drop_depth -= 1
            return
        if self.drop_depth:
            return
        if tag == "title":
            if self.title_depth:
                self.title_depth -= 1
            return
        if tag in KEPT_TAGS and tag not in _VOID_KEPT and tag in self.stack:
            while self.stack:
                open_tag = self.stack.pop()
                self._pending_ws = False
                self.out.append(f"</{open_tag}>")
                if open_tag == tag:
                    break

    # -- text handling

    def handle_data(self, data):
        if self.drop_depth:
            return
        if self.title_depth:
            self.title_parts.append(data)
            return
        collapsed = " ".join(data.split())
        if not collapsed:
            if data:
                self._pending_ws = True
            return
        if self._pending_ws or data[:1].isspace():
            self._append_space()
        self._pending_ws = False
        self.out.append(html.escape(collapsed, quote=False))
        if data[-1:].isspace():
            self._pending_ws = True

    def _flush_ws(self):
        if self._pending_ws:
            self._append_space()
        self._pending_ws = False

    def _append_space(self):
        # only between text chunks, never doubled, never inside tags
        if self.out and not self.out[-1].endswith((">", " ")):
            self.out.append(" ")

    def finish(self) -> str:
        while self.stack:
            self.out.append(f"</{self.stack.pop()}>")
        return "".join(self.out)


def clean_document(raw: bytes | str, doc_id: str = "") -> CleanDocument:
    """Clean raw page bytes into a CleanDocument.

    Undecodable byte sequences are decoded with replacement characters
    and flagged with a warning. The title comes from <title>, falling
    back to the first heading.
    """
    if isinstance(raw, bytes):
        byte_size = len(raw)
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError:
            warnings.warn(
                f"document {doc_id!r}: undecodable bytes replaced during decoding",
                ToolkitWarning,
                stacklevel=2,
            )
            text = raw.decode("utf-8", errors="replace")
    else:
        byte_size = len(raw.encode("utf-8"))
        text = raw
    cleaner = _Cleaner()
    cleaner.feed(text)
    cleaner.close()
    body = cleaner.finish()
    title = " ".join("".join(cleaner.title_parts).split())
    if not title:
        title = _first_heading(body)
    return CleanDocument(doc_id=doc_id, title=title, body=body, byte_size=byte_size)


def _first_heading(body: str) -> str:
    class Finder(HTMLParser):
        def __init__(self):
            super().__init__(convert_charrefs=True)
            self.in_heading = 0
            self.parts: list[str] = []
            self.done = False

        def handle_starttag(self, tag, attrs):
            if not self.done and tag in ("h1", "h2", "h3", "h4", "h5", "h6"):
                self.in_heading += 1

        def handle_endtag(self, tag):
            if self.in_heading and tag in ("h1", "h2", "h3", "h4", "h5", "h6"):
                self.in_heading -= 1
                if not self.in_heading and self.parts:
                    self.done = True

        def handle_data(self, data):
            if self.in_heading and not self.done:
                self.parts.append(data)

    finder = Finder()
    finder.feed(body)
    finder.close()
    return " ".join("".join(finder.parts).split())
