// Fault injection around the outbound judgment queue: a network failure
// mid-submit must lead to a queued retry and exactly one ack, with no
// duplicate advance and no lost judgment.

import { describe, expect, it } from "vitest";

import { ServiceClient } from "../src/api";
import { SubmitQueue } from "../src/queue";
import { JudgingSession } from "../src/session";
import type { JudgmentPayload } from "../src/types";
import { FakeService, tenDocPool } from "./fake_service";

async function flush(times = 10): Promise<void> {
  for (let i = 0; i < times; i += 1) {
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
}

function payload(doc: string, revision: number): JudgmentPayload {
  return { assessor_id: "a1", topic_id: "001", doc_id: doc, level: 1, revision };
}

describe("submit queue", () => {
  it("retries network failures and acks exactly once", async () => {
    const service = new FakeService("001", tenDocPool());
    const client = new ServiceClient("", null, service.fetch);
    const acks: string[] = [];
    const retries: number[] = [];
    const queue = new SubmitQueue(
      (p) => client.submit(p),
      {
        onAck: (p) => acks.push(p.doc_id),
        onReject: () => {
          throw new Error("unexpected rejection");
        },
        onRetryScheduled: (_p, attempt) => retries.push(attempt),
      },
      0,
    );
    service.failNextRequests = 2;
    queue.enqueue(payload("doc0", 1));
    await flush(20);
    expect(retries.length).toBe(2);
    expect(acks).toEqual(["doc0"]);
    expect(service.exportJudgments()).toBe("001 a1 doc0 1\n");
    queue.dispose();
  });

  it("keeps at most one submission in flight and preserves order", async () => {
    const service = new FakeService("001", tenDocPool());
    const client = new ServiceClient("", null, service.fetch);
    const acks: string[] = [];
    const queue = new SubmitQueue(
      (p) => client.submit(p),
      {
        onAck: (p) => acks.push(p.doc_id),
        onReject: () => undefined,
        onRetryScheduled: () => undefined,
      },
      0,
    );
    queue.enqueue(payload("doc0", 1));
    queue.enqueue(payload("doc1", 2));
    queue.enqueue(payload("doc2", 3));
    expect(queue.size).toBe(3);
    await flush(20);
    expect(acks).toEqual(["doc0", "doc1", "doc2"]);
    expect(queue.size).toBe(0);
    queue.dispose();
  });

  it("a session survives a mid-submit network failure without duplicates", async () => {
    const service = new FakeService("001", tenDocPool());
    const client = new ServiceClient("", null, service.fetch);
    const session = new JudgingSession(client, "a1", "001", 30);
    await session.loadNext();
    await flush();
    expect(session.current?.doc_id).toBe("doc0");

    service.failNextRequests = 1;
    session.choose(2);
    await flush(5);
    expect(session.banner).toContain("retrying");
    await new Promise((resolve) => setTimeout(resolve, 60));
    await flush(20);
    // exactly one recorded judgment and one auto-advance
    expect(service.auditTrail("doc0")).toEqual([2]);
    expect(session.current?.doc_id).toBe("doc1");
    expect(session.banner).toBeNull();
    expect(session.history.length).toBe(1);
    session.dispose();
  });
});
