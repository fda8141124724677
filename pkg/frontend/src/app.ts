import { ApiClient, ApiError, NetworkError } from "./api";
import { renderCurve } from "./curve";
import { bindKeyboard } from "./keyboard";
import { renderQueue } from "./queue";
import { SessionStore } from "./state";
import type { SessionSummary } from "./types";

export interface AppElements {
  queue: HTMLElement;
  curve: HTMLElement;
  status: HTMLElement;
  submit: HTMLButtonElement;
  header: HTMLElement;
}

/**
 * Controller for one annotation session. Every state change round-trips
 * through the service; the store only mirrors server responses plus the
 * annotator's in-progress selections.
 */
export class App {
  readonly store = new SessionStore();
  private unbind: (() => void) | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly session: SessionSummary,
    private readonly el: AppElements,
  ) {
    this.store.setLabels(session.labels);
  }

  async start(): Promise<void> {
    this.unbind?.();
    this.unbind = bindKeyboard(document, this.store, {
      onChanged: () => this.render(),
      onSubmit: () => void this.submit(),
    });
    this.el.submit.addEventListener("click", () => void this.submit());
    await this.refreshCurve();
    await this.refreshBatch();
  }

  async refreshBatch(): Promise<void> {
    try {
      const response = await this.api.getBatch(this.session.session_id);
      this.store.loadBatch(response.batch);
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.store.complete();
      } else {
        this.fail(err);
      }
    }
    this.render();
  }

  async refreshCurve(): Promise<void> {
    try {
      const response = await this.api.getMetrics(this.session.session_id);
      this.store.setCurve(response.curve);
    } catch (err) {
      this.fail(err);
    }
  }

  async submit(): Promise<void> {
    if (this.store.status !== "ready" && this.store.status !== "offline") return;
    if (!this.store.allSelected()) return;
    this.store.status = "submitting";
    this.render();
    try {
      const { metrics } = await this.api.submitAnnotations(
        this.session.session_id,
        this.store.selectionsPayload(),
      );
      this.store.applySubmitSuccess(metrics);
      await this.refreshBatch();
    } catch (err) {
      if (err instanceof ApiError && err.status === 422) {
        this.store.applyRejection(err.message);
      } else if (err instanceof ApiError && err.status === 409) {
        // budget spent or a racing submit; re-sync from the server
        await this.refreshCurve();
        await this.refreshBatch();
      } else {
        this.fail(err);
      }
    }
    this.render();
  }

  private fail(err: unknown): void {
    const message = err instanceof Error ? err.message : String(err);
    if (err instanceof NetworkError) {
      this.store.applyNetworkFailure(message);
    } else {
      this.store.banner = message;
    }
  }

  render(): void {
    renderQueue(this.el.queue, this.store, {
      onSelect: (docId, labelIndex) => {
        this.store.select(docId, labelIndex);
        this.render();
      },
      onFocusRow: (index) => {
        if (index !== this.store.cursor) {
          this.store.cursor = index;
          this.render();
        }
      },
    });
    renderCurve(this.el.curve, this.store.curve, this.store.labels.length);

    this.el.header.textContent =
      `${this.session.dataset} — ${this.session.strategy} / ${this.session.protocol} — ` +
      `${this.store.curve.length ? this.store.curve[this.store.curve.length - 1].n_labels : 0}` +
      ` of ${this.session.budget} labels`;

    const canSubmit =
      (this.store.status === "ready" || this.store.status === "offline") &&
      this.store.allSelected();
    this.el.submit.disabled = !canSubmit;
    this.el.submit.textContent =
      this.store.status === "offline" ? "Retry submit" : "Submit batch";

    this.el.status.textContent = this.store.banner ?? this.statusLine();
    this.el.status.classList.toggle("error", this.store.banner !== null);
  }

  private statusLine(): string {
    switch (this.store.status) {
      case "loading":
        return "Loading batch…";
      case "submitting":
        return "Submitting and retraining…";
      case "complete":
        return "Labeling complete.";
      case "offline":
        return "Connection lost — selections preserved.";
      default: {
        const picked = this.store.rows.filter((r) => r.selected !== null).length;
        return `${picked}/${this.store.rows.length} rows labeled — ` +
          "j/k move · 1-9 pick label · Enter confirm suggestion · Ctrl+Enter submit";
      }
    }
  }
}
