import { ServiceClient } from "./api";
import { JudgingSession } from "./session";
import { bindKeyboard, render } from "./view";

/** Entry point for the hosted bundle: pick assessor and topic, then run
 * the judging session. The token is remembered per browser. */
async function boot(): Promise<void> {
  const root = document.getElementById("app");
  if (!root) return;

  const params = new URLSearchParams(window.location.search);
  const assessor = params.get("assessor") ?? window.prompt("assessor id") ?? "";
  let token = params.get("token") ?? window.localStorage.getItem("judging-token");
  if (!token) {
    token = window.prompt("session token") ?? "";
  }
  if (token) window.localStorage.setItem("judging-token", token);
  if (!assessor) {
    root.textContent = "an assessor id is required";
    return;
  }

  const client = new ServiceClient("", token);
  let topic = params.get("topic");
  if (!topic) {
    const overview = await client.assignments(assessor);
    const open = overview.topics.find((t) => t.judged < t.total);
    topic = (open ?? overview.topics[0])?.topic_id ?? null;
  }
  if (!topic) {
    root.textContent = "no topics assigned";
    return;
  }

  const session = new JudgingSession(client, assessor, topic);
  session.subscribe(() => render(root, session));
  bindKeyboard(document, session);
  await session.loadNext();
  render(root, session);
}

void boot();
