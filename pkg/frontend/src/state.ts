import type { BatchItem, RoundMetrics } from "./types";

export type QueueStatus = "loading" | "ready" | "submitting" | "complete" | "offline";

export interface RowState {
  item: BatchItem;
  /** Confirmed label index, or null while undecided. The model's suggestion
   * is shown but never counts as a selection until confirmed. */
  selected: number | null;
  flagged: boolean;
}

/**
 * All annotator-side state for one session. The server stays authoritative:
 * rows mirror the served batch in its exact order, and the curve only grows
 * from server responses.
 */
export class SessionStore {
  rows: RowState[] = [];
  curve: RoundMetrics[] = [];
  labels: string[] = [];
  status: QueueStatus = "loading";
  cursor = 0;
  banner: string | null = null;
  private submitted = new Set<string>();

  setLabels(labels: string[]): void {
    this.labels = labels;
  }

  loadBatch(items: BatchItem[]): void {
    for (const item of items) {
      if (this.submitted.has(item.doc_id)) {
        // server contract violation; surface loudly but never reorder/filter
        console.warn(`already-labeled document served again: ${item.doc_id}`);
      }
    }
    this.rows = items.map((item) => ({ item, selected: null, flagged: false }));
    this.cursor = 0;
    this.status = "ready";
    this.banner = null;
  }

  setCurve(curve: RoundMetrics[]): void {
    this.curve = curve;
  }

  row(docId: string): RowState | undefined {
    return this.rows.find((r) => r.item.doc_id === docId);
  }

  select(docId: string, labelIndex: number): void {
    const row = this.row(docId);
    if (!row || labelIndex < 0 || labelIndex >= this.labels.length) return;
    row.selected = labelIndex;
    row.flagged = false;
  }

  confirmSuggestion(docId: string): void {
    const row = this.row(docId);
    if (row) this.select(docId, row.item.predicted);
  }

  moveCursor(delta: number): void {
    if (!this.rows.length) return;
    this.cursor = Math.min(this.rows.length - 1, Math.max(0, this.cursor + delta));
  }

  get cursorRow(): RowState | undefined {
    return this.rows[this.cursor];
  }

  allSelected(): boolean {
    return this.rows.length > 0 && this.rows.every((r) => r.selected !== null);
  }

  selectionsPayload(): { doc_id: string; label: string }[] {
    return this.rows.map((r) => ({
      doc_id: r.item.doc_id,
      label: this.labels[r.selected as number],
    }));
  }

  applySubmitSuccess(metrics: RoundMetrics): void {
    for (const row of this.rows) this.submitted.add(row.item.doc_id);
    this.curve = [...this.curve, metrics];
    this.status = "loading";
  }

  /** Flag only the row the 422 names; every selection survives. */
  applyRejection(message: string): void {
    this.status = "ready";
    this.banner = message;
    for (const row of this.rows) {
      row.flagged = message.includes(`'${row.item.doc_id}'`);
    }
  }

  applyNetworkFailure(message: string): void {
    this.status = "offline";
    this.banner = `request failed: ${message}`;
  }

  complete(): void {
    this.status = "complete";
    this.banner = null;
  }

  hasRendered(docId: string): boolean {
    return this.submitted.has(docId);
  }
}

/** Case-insensitive prefix-then-substring ranking for the label type-ahead. */
export function typeaheadMatches(labels: string[], query: string, limit = 8): number[] {
  const q = query.trim().toLowerCase();
  if (!q) return [];
  const starts: number[] = [];
  const contains: number[] = [];
  labels.forEach((name, index) => {
    const lower = name.toLowerCase();
    if (lower.startsWith(q)) starts.push(index);
    else if (lower.includes(q)) contains.push(index);
  });
  return [...starts, ...contains].slice(0, limit);
}
