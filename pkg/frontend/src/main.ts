import { ApiClient } from "./api";
import { App } from "./app";
import type { AppElements } from "./app";

function elements(): AppElements {
  return {
    queue: document.getElementById("queue") as HTMLElement,
    curve: document.getElementById("curve") as HTMLElement,
    status: document.getElementById("status") as HTMLElement,
    submit: document.getElementById("submit") as HTMLButtonElement,
    header: document.getElementById("session-header") as HTMLElement,
  };
}

async function pickOrCreateSession(api: ApiClient): Promise<string> {
  const fromUrl = new URLSearchParams(window.location.search).get("session");
  if (fromUrl) return fromUrl;

  const { sessions } = await api.listSessions();
  const open = sessions.find((s) => s.labels_used < s.budget);
  if (open) return open.session_id;

  const { datasets } = await api.listDatasets();
  if (!datasets.length) {
    throw new Error("no datasets ingested; run `labelloop ingest` first");
  }
  const created = await api.createSession(datasets[0], {});
  return created.session_id;
}

async function boot(): Promise<void> {
  const base = new URLSearchParams(window.location.search).get("api") ?? "";
  const api = new ApiClient(base);
  const el = elements();
  try {
    const sessionId = await pickOrCreateSession(api);
    const session = await api.getSession(sessionId);
    const app = new App(api, session, el);
    await app.start();
  } catch (err) {
    el.status.textContent = err instanceof Error ? err.message : String(err);
    el.status.classList.add("error");
  }
}

void boot();
