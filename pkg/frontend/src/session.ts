import { ServiceClient, ServiceError } from "./api";
import { SubmitQueue } from "./queue";
import type { JudgmentPayload, Level, NextDocument, SearchMatch } from "./types";
import { isDone } from "./types";

export interface HistoryEntry {
  doc_id: string;
  title: string;
  level: Level;
}

export interface DocView {
  doc_id: string;
  title: string;
  body: string;
}

export type Phase = "idle" | "loading" | "judging" | "revising" | "done" | "unreachable";

/** Assessor session over one topic: linear judging with auto-advance,
 * revision of any judged document from the history panel, in-document
 * search, and an outbound queue that survives network failures. */
export class JudgingSession {
  phase: Phase = "idle";
  current: DocView | null = null;
  judgedCount = 0;
  total = 0;
  history: HistoryEntry[] = [];
  inlineError: string | null = null;
  banner: string | null = null;
  searchQuery = "";
  searchMatches: SearchMatch[] = [];

  private readonly queue: SubmitQueue;
  private readonly bodies = new Map<string, DocView>();
  private revisionCounter = 0;
  private onChange: () => void = () => undefined;

  constructor(
    private readonly client: ServiceClient,
    readonly assessor: string,
    readonly topic: string,
    retryDelayMs = 800,
  ) {
    this.queue = new SubmitQueue(
      (p) => this.client.submit(p),
      {
        onAck: (payload, ack) => this.handleAck(payload, ack.judged_count, ack.total),
        onReject: (payload, error) => this.handleReject(payload, error),
        onRetryScheduled: () => {
          this.banner = "connection lost; retrying submission";
          this.notify();
        },
      },
      retryDelayMs,
    );
  }

  subscribe(listener: () => void): void {
    this.onChange = listener;
  }

  private notify(): void {
    this.onChange();
  }

  /** Fetch and show the next unjudged document. State is kept on
   * failure so a retry can resume where the assessor left off. */
  async loadNext(): Promise<void> {
    this.phase = "loading";
    this.inlineError = null;
    this.notify();
    let response;
    try {
      response = await this.client.next(this.assessor, this.topic);
    } catch (err) {
      if (err instanceof ServiceError) throw err;
      this.phase = "unreachable";
      this.banner = "service unreachable; use retry";
      this.notify();
      return;
    }
    this.banner = null;
    this.judgedCount = response.judged_count;
    this.total = response.total;
    if (isDone(response)) {
      this.phase = "done";
      this.current = null;
    } else {
      this.phase = "judging";
      this.setCurrent(response);
    }
    this.clearSearch();
    this.notify();
  }

  private setCurrent(doc: NextDocument): void {
    const view = { doc_id: doc.doc_id, title: doc.title, body: doc.body };
    this.current = view;
    this.bodies.set(doc.doc_id, view);
  }

  /** Record a level for the active document (judging or revising). */
  choose(level: Level): void {
    if (!this.current || (this.phase !== "judging" && this.phase !== "revising")) return;
    this.inlineError = null;
    this.revisionCounter += 1;
    this.queue.enqueue({
      assessor_id: this.assessor,
      topic_id: this.topic,
      doc_id: this.current.doc_id,
      level,
      revision: this.revisionCounter,
    });
    this.notify();
  }

  private handleAck(payload: JudgmentPayload, judged: number, total: number): void {
    this.banner = null;
    this.judgedCount = judged;
    this.total = total;
    const existing = this.history.find((h) => h.doc_id === payload.doc_id);
    if (existing) {
      existing.level = payload.level;
    } else {
      const title = this.bodies.get(payload.doc_id)?.title ?? payload.doc_id;
      this.history.push({ doc_id: payload.doc_id, title, level: payload.level });
    }
    if (this.queue.size === 0) void this.loadNext();
    this.notify();
  }

  private handleReject(payload: JudgmentPayload, error: ServiceError): void {
    this.inlineError = `judgment for ${payload.doc_id} rejected: ${error.message}`;
    this.notify();
  }

  /** Re-open a previously judged document for revision. */
  revise(docId: string): void {
    const cached = this.bodies.get(docId);
    const entry = this.history.find((h) => h.doc_id === docId);
    if (!cached || !entry) return;
    this.phase = "revising";
    this.current = cached;
    this.inlineError = null;
    this.clearSearch();
    this.notify();
  }

  /** Leave revision mode and continue with the next unjudged document. */
  async resume(): Promise<void> {
    await this.loadNext();
  }

  async search(query: string): Promise<number> {
    this.searchQuery = query;
    if (!this.current || query === "") {
      this.searchMatches = [];
      this.notify();
      return 0;
    }
    const response = await this.client.search(this.current.doc_id, query);
    this.searchMatches = response.matches;
    this.notify();
    return this.searchMatches.length;
  }

  clearSearch(): void {
    this.searchQuery = "";
    this.searchMatches = [];
  }

  handleKey(key: string): void {
    if (key === "0") this.choose(0);
    else if (key === "1") this.choose(1);
    else if (key === "2") this.choose(2);
    else if (key === "u") this.choose(-1);
  }

  dispose(): void {
    this.queue.dispose();
  }
}
