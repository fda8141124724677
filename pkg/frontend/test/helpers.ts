import type { BatchItem, RoundMetrics, SessionSummary } from "../src/types";

export function item(docId: string, overrides: Partial<BatchItem> = {}): BatchItem {
  return {
    position: 0,
    doc_id: docId,
    text: `text of ${docId}`,
    probs: [0.6, 0.4],
    predicted: 0,
    predicted_label: "ham",
    confidence: 0.6,
    entropy: 0.673,
    entropy_norm: 0.97,
    ...overrides,
  };
}

export function round(n_labels: number, accuracy = 0.5): RoundMetrics {
  return {
    n_labels,
    accuracy,
    precision_macro: accuracy,
    recall_macro: accuracy,
    eval_size: 100,
    mean_pool_entropy: 0.5,
  };
}

export function summary(overrides: Partial<SessionSummary> = {}): SessionSummary {
  return {
    v: 1,
    session_id: "s1",
    dataset: "toy",
    round: 0,
    labels_used: 0,
    budget: 30,
    batch_size: 10,
    strategy: "max_entropy",
    protocol: "pool_protocol",
    labels: ["ham", "spam"],
    eval_size: 100,
    pool_size: 40,
    metrics: round(0),
    ...overrides,
  };
}

interface Call {
  method: string;
  url: string;
  body?: unknown;
}

type PostScript = { status: number; body: unknown } | "network";

function json(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

/** Scripted stand-in for the annotation service, just real enough for the
 * controller: serves batches in order, consumes one per accepted POST. */
export class MockService {
  calls: Call[] = [];
  batchQueue: BatchItem[][] = [];
  curve: RoundMetrics[] = [];
  postScripts: PostScript[] = [];

  get postCalls(): Call[] {
    return this.calls.filter((c) => c.method === "POST");
  }

  fetchImpl = async (input: RequestInfo | URL, init?: RequestInit): Promise<Response> => {
    const url = String(input);
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    this.calls.push({ method, url, body });

    if (method === "POST" && url.endsWith("/annotations")) {
      const script = this.postScripts.shift();
      if (script === "network") throw new TypeError("fetch failed");
      if (!script) throw new Error(`unscripted POST to ${url}`);
      if (script.status === 200) {
        this.curve = [...this.curve, (script.body as { metrics: RoundMetrics }).metrics];
        this.batchQueue.shift();
      }
      return json(script.status, script.body);
    }
    if (method === "GET" && url.endsWith("/batch")) {
      const current = this.batchQueue[0];
      if (!current) return json(409, { v: 1, error: "label budget of 30 reached" });
      return json(200, { v: 1, session_id: "s1", round: 0, batch: current });
    }
    if (method === "GET" && url.endsWith("/metrics")) {
      return json(200, { v: 1, session_id: "s1", curve: this.curve });
    }
    throw new Error(`unrouted ${method} ${url}`);
  };
}

export function mountAppDom(): {
  queue: HTMLElement;
  curve: HTMLElement;
  status: HTMLElement;
  submit: HTMLButtonElement;
  header: HTMLElement;
} {
  document.body.innerHTML = `
    <header><span id="session-header"></span></header>
    <div id="queue"></div>
    <button id="submit" disabled></button>
    <span id="status"></span>
    <div id="curve"></div>
  `;
  return {
    queue: document.getElementById("queue") as HTMLElement,
    curve: document.getElementById("curve") as HTMLElement,
    status: document.getElementById("status") as HTMLElement,
    submit: document.getElementById("submit") as HTMLButtonElement,
    header: document.getElementById("session-header") as HTMLElement,
  };
}

export function domOrder(queue: HTMLElement): string[] {
  return [...queue.querySelectorAll<HTMLElement>(".queue-row")].map(
    (row) => row.dataset.docId as string,
  );
}
