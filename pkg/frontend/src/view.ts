import { clearHighlights, highlightMatches } from "./highlight";
import type { JudgingSession } from "./session";
import type { Level } from "./types";

const LEVEL_LEGEND: ReadonlyArray<[Level, string, string]> = [
  [2, "2", "highly relevant"],
  [1, "1", "somewhat relevant"],
  [0, "0", "nonrelevant"],
  [-1, "u", "could not be judged"],
];

function levelLabel(level: Level): string {
  const row = LEVEL_LEGEND.find(([value]) => value === level);
  return row ? row[2] : String(level);
}

/** Render the whole session into a root element. Everything shown comes
 * from the session state, which in turn holds only assessor-endpoint
 * data; the reading pane is forced monochrome by the stylesheet. */
export function render(root: HTMLElement, session: JudgingSession): void {
  const doc = root.ownerDocument;
  root.textContent = "";
  root.className = "judging-root";

  const header = doc.createElement("header");
  header.className = "session-header";
  const progress = doc.createElement("span");
  progress.className = "progress";
  progress.textContent = `${session.judgedCount} / ${session.total} judged`;
  header.append(progress);
  if (session.banner) {
    const banner = doc.createElement("div");
    banner.className = "banner";
    banner.setAttribute("role", "status");
    banner.textContent = session.banner;
    const retry = doc.createElement("button");
    retry.className = "retry";
    retry.textContent = "retry";
    retry.addEventListener("click", () => void session.loadNext());
    banner.append(" ", retry);
    header.append(banner);
  }
  root.append(header);

  const main = doc.createElement("main");
  main.className = "layout";
  root.append(main);

  const reading = doc.createElement("section");
  reading.className = "reading-pane";
  main.append(reading);

  if (session.phase === "done") {
    const done = doc.createElement("p");
    done.className = "completion";
    done.textContent = "Topic complete: every document has been judged.";
    reading.append(done);
  } else if (session.phase === "unreachable") {
    const msg = doc.createElement("p");
    msg.className = "completion";
    msg.textContent = "Waiting for the service...";
    reading.append(msg);
  } else if (session.current) {
    const title = doc.createElement("h1");
    title.className = "doc-title";
    title.textContent = session.current.title;
    reading.append(title);
    const body = doc.createElement("article");
    body.className = "doc-body";
    body.innerHTML = session.current.body;
    reading.append(body);
    if (session.searchMatches.length > 0) {
      highlightMatches(body, session.searchMatches);
    } else {
      clearHighlights(body);
    }
  }

  const side = doc.createElement("aside");
  side.className = "side-panel";
  main.append(side);

  // search box
  const searchRow = doc.createElement("div");
  searchRow.className = "search-row";
  const search = doc.createElement("input");
  search.className = "search-input";
  search.setAttribute("type", "search");
  search.setAttribute("placeholder", "find in document");
  search.value = session.searchQuery;
  search.addEventListener("change", () => void session.search(search.value));
  searchRow.append(search);
  const count = doc.createElement("span");
  count.className = "search-count";
  count.textContent = session.searchQuery ? `${session.searchMatches.length} matches` : "";
  searchRow.append(count);
  side.append(searchRow);

  // level selector with keyboard hints
  const selector = doc.createElement("div");
  selector.className = "level-selector";
  for (const [level, key, label] of LEVEL_LEGEND) {
    const button = doc.createElement("button");
    button.className = "level-button";
    button.setAttribute("data-level", String(level));
    button.textContent = `[${key}] ${label}`;
    button.addEventListener("click", () => session.choose(level));
    selector.append(button);
  }
  side.append(selector);

  if (session.inlineError) {
    const error = doc.createElement("p");
    error.className = "inline-error";
    error.setAttribute("role", "alert");
    error.textContent = session.inlineError;
    side.append(error);
  }

  // history panel: re-open any judged document to revise it
  const history = doc.createElement("ol");
  history.className = "history";
  for (const entry of session.history) {
    const item = doc.createElement("li");
    const link = doc.createElement("button");
    link.className = "history-entry";
    link.setAttribute("data-doc", entry.doc_id);
    link.textContent = `${entry.title}: ${levelLabel(entry.level)}`;
    link.addEventListener("click", () => session.revise(entry.doc_id));
    item.append(link);
    history.append(item);
  }
  side.append(history);

  if (session.phase === "revising") {
    const back = doc.createElement("button");
    back.className = "resume";
    back.textContent = "back to judging";
    back.addEventListener("click", () => void session.resume());
    side.append(back);
  }
}

export function bindKeyboard(target: Document, session: JudgingSession): () => void {
  const handler = (event: KeyboardEvent) => {
    const element = event.target as HTMLElement | null;
    if (element && element.tagName === "INPUT") return;
    session.handleKey(event.key);
  };
  target.addEventListener("keydown", handler);
  return () => target.removeEventListener("keydown", handler);
}
