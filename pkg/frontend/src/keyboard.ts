import { NUMBER_KEY_LIMIT } from "./queue";
import type { SessionStore } from "./state";

export interface KeyboardActions {
  onChanged(): void;
  onSubmit(): void;
}

/**
 * Keyboard-first labeling:
 *   j / ArrowDown, k / ArrowUp   move the cursor
 *   1..9, 0                      pick label 1..10 on the cursor row (small label sets)
 *   Enter                        confirm the model's suggestion for the cursor row
 *   Ctrl+Enter                   submit the batch
 * Large label sets keep digits/letters for their type-ahead inputs, so row
 * shortcuts only apply when the event target is not a text input.
 */
export function bindKeyboard(
  target: EventTarget,
  store: SessionStore,
  actions: KeyboardActions,
): () => void {
  const handler = (raw: Event) => {
    const event = raw as KeyboardEvent;
    if (event.target instanceof HTMLInputElement || event.target instanceof HTMLTextAreaElement) {
      return;
    }
    if (store.status !== "ready") return;

    if (event.key === "Enter" && (event.ctrlKey || event.metaKey)) {
      event.preventDefault();
      actions.onSubmit();
      return;
    }
    switch (event.key) {
      case "j":
      case "ArrowDown":
        store.moveCursor(1);
        break;
      case "k":
      case "ArrowUp":
        store.moveCursor(-1);
        break;
      case "Enter": {
        const row = store.cursorRow;
        if (row) store.confirmSuggestion(row.item.doc_id);
        break;
      }
      default: {
        if (!/^[0-9]$/.test(event.key) || store.labels.length > NUMBER_KEY_LIMIT) return;
        const index = event.key === "0" ? 9 : Number(event.key) - 1;
        const row = store.cursorRow;
        if (row) store.select(row.item.doc_id, index);
        break;
      }
    }
    event.preventDefault();
    actions.onChanged();
  };
  target.addEventListener("keydown", handler);
  return () => target.removeEventListener("keydown", handler);
}
