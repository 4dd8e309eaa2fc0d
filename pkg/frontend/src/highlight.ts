import type { SearchMatch } from "./types";

/** Wrap the given matches (offsets into the container's concatenated
 * text-node content, i.e. its textContent) in <mark> elements.
 *
 * A match spanning several text nodes produces several <mark> segments
 * sharing one data-match index, so counting distinct indices equals the
 * number of service-reported matches.
 */
export function highlightMatches(container: Element, matches: SearchMatch[]): number {
  clearHighlights(container);
  if (matches.length === 0) return 0;
  const doc = container.ownerDocument;
  const sorted = [...matches].sort((a, b) => a.offset - b.offset);

  interface Piece {
    node: Text;
    start: number;
    end: number;
    match: number;
  }
  const pieces: Piece[] = [];
  let position = 0;
  const walk = (node: Node): void => {
    if (node.nodeType === 3) {
      const text = node as Text;
      const data = text.data;
      const nodeStart = position;
      const nodeEnd = position + data.length;
      sorted.forEach((m, index) => {
        const start = Math.max(m.offset, nodeStart);
        const end = Math.min(m.offset + m.length, nodeEnd);
        if (start < end) {
          pieces.push({ node: text, start: start - nodeStart, end: end - nodeStart, match: index });
        }
      });
      position = nodeEnd;
      return;
    }
    for (const child of Array.from(node.childNodes)) walk(child);
  };
  walk(container);

  // split text nodes from the right so earlier offsets stay valid
  const byNode = new Map<Text, Piece[]>();
  for (const piece of pieces) {
    const list = byNode.get(piece.node) ?? [];
    list.push(piece);
    byNode.set(piece.node, list);
  }
  let highlighted = new Set<number>();
  for (const [node, list] of byNode) {
    list.sort((a, b) => b.start - a.start);
    for (const piece of list) {
      const tail = node.splitText(piece.start);
      tail.splitText(piece.end - piece.start);
      const mark = doc.createElement("mark");
      mark.setAttribute("data-match", String(piece.match));
      mark.textContent = tail.data;
      tail.replaceWith(mark);
      highlighted.add(piece.match);
    }
  }
  scrollToFirst(container);
  return highlighted.size;
}

export function clearHighlights(container: Element): void {
  for (const mark of Array.from(container.querySelectorAll("mark[data-match]"))) {
    const text = mark.ownerDocument.createTextNode(mark.textContent ?? "");
    mark.replaceWith(text);
  }
  container.normalize();
}

export function countHighlightedMatches(container: Element): number {
  const indices = new Set<string>();
  for (const mark of Array.from(container.querySelectorAll("mark[data-match]"))) {
    indices.add(mark.getAttribute("data-match") ?? "");
  }
  return indices.size;
}

function scrollToFirst(container: Element): void {
  const first = container.querySelector('mark[data-match="0"]');
  if (first && typeof (first as HTMLElement).scrollIntoView === "function") {
    (first as HTMLElement).scrollIntoView({ block: "center" });
  }
}
