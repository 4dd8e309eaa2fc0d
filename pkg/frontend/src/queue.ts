import type { JudgmentAck, JudgmentPayload } from "./types";
import { ServiceError } from "./api";

export interface QueueCallbacks {
  onAck: (payload: JudgmentPayload, ack: JudgmentAck) => void;
  onReject: (payload: JudgmentPayload, error: ServiceError) => void;
  onRetryScheduled: (payload: JudgmentPayload, attempt: number) => void;
}

/** Outbound judgment queue: at most one in-flight submission.
 *
 * Network failures requeue the same payload (same doc and revision
 * counter, so a resubmission the server already applied is a harmless
 * overwrite with the identical level) and never produce a second ack for
 * one entry. Rejections (4xx) are surfaced and NOT retried.
 */
export class SubmitQueue {
  private pending: JudgmentPayload[] = [];
  private inFlight = false;
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly send: (p: JudgmentPayload) => Promise<JudgmentAck>,
    private readonly callbacks: QueueCallbacks,
    private readonly retryDelayMs = 800,
  ) {}

  get size(): number {
    // the in-flight payload stays at pending[0] until it is acked
    return this.pending.length;
  }

  enqueue(payload: JudgmentPayload): void {
    this.pending.push(payload);
    void this.pump();
  }

  private async pump(attempt = 0): Promise<void> {
    if (this.inFlight || this.pending.length === 0) return;
    this.inFlight = true;
    const payload = this.pending[0];
    try {
      const ack = await this.send(payload);
      this.pending.shift();
      this.inFlight = false;
      this.callbacks.onAck(payload, ack);
      void this.pump();
    } catch (err) {
      this.inFlight = false;
      if (err instanceof ServiceError && err.status < 500) {
        this.pending.shift();
        this.callbacks.onReject(payload, err);
        void this.pump();
        return;
      }
      this.callbacks.onRetryScheduled(payload, attempt + 1);
      this.timer = setTimeout(() => void this.pump(attempt + 1), this.retryDelayMs);
    }
  }

  dispose(): void {
    if (this.timer !== null) clearTimeout(this.timer);
  }
}
