import type { SessionStore } from "./state";
import { typeaheadMatches } from "./state";

/** Number keys drive the picker directly up to this many labels; larger
 * label sets get the type-ahead input instead. */
export const NUMBER_KEY_LIMIT = 10;

export interface QueueHandlers {
  onSelect(docId: string, labelIndex: number): void;
  onFocusRow(index: number): void;
}

function bar(kind: "confidence" | "entropy", value: number): HTMLElement {
  const wrap = document.createElement("div");
  wrap.className = `bar bar-${kind}`;
  wrap.title = `${kind}: ${value.toFixed(3)}`;
  const fill = document.createElement("div");
  fill.className = "bar-fill";
  fill.style.width = `${Math.round(Math.min(1, Math.max(0, value)) * 100)}%`;
  wrap.appendChild(fill);
  return wrap;
}

function labelPicker(
  store: SessionStore,
  docId: string,
  handlers: QueueHandlers,
): HTMLElement {
  const labels = store.labels;
  const row = store.row(docId);
  const picker = document.createElement("div");
  picker.className = "picker";

  if (labels.length <= NUMBER_KEY_LIMIT) {
    labels.forEach((name, index) => {
      const button = document.createElement("button");
      button.type = "button";
      button.className = "label-option";
      button.dataset.labelIndex = String(index);
      button.textContent = `${(index + 1) % 10} ${name}`;
      if (row?.selected === index) button.classList.add("chosen");
      button.addEventListener("click", () => handlers.onSelect(docId, index));
      picker.appendChild(button);
    });
    return picker;
  }

  // 77-label territory: type-ahead input with a ranked dropdown
  const input = document.createElement("input");
  input.type = "text";
  input.className = "typeahead";
  input.placeholder = "type a label…";
  if (row?.selected !== null && row?.selected !== undefined) {
    input.value = labels[row.selected];
  }
  const menu = document.createElement("ul");
  menu.className = "typeahead-menu";
  const refreshMenu = () => {
    menu.textContent = "";
    for (const index of typeaheadMatches(labels, input.value)) {
      const option = document.createElement("li");
      option.textContent = labels[index];
      option.dataset.labelIndex = String(index);
      option.addEventListener("mousedown", () => handlers.onSelect(docId, index));
      menu.appendChild(option);
    }
  };
  input.addEventListener("input", refreshMenu);
  input.addEventListener("keydown", (event) => {
    if (event.key === "Enter") {
      const [first] = typeaheadMatches(labels, input.value, 1);
      if (first !== undefined) handlers.onSelect(docId, first);
      event.preventDefault();
      event.stopPropagation();
    }
  });
  picker.appendChild(input);
  picker.appendChild(menu);
  return picker;
}

/**
 * Render the queue exactly in server order: no sorting, no filtering, no
 * augmentation. Row N of the DOM is row N of the batch response.
 */
export function renderQueue(
  container: HTMLElement,
  store: SessionStore,
  handlers: QueueHandlers,
): void {
  container.textContent = "";
  if (store.status === "complete") {
    const done = document.createElement("div");
    done.className = "complete-banner";
    done.textContent = "Labeling complete — the budget is spent. Final curve below.";
    container.appendChild(done);
    return;
  }
  const list = document.createElement("ol");
  list.className = "queue";
  store.rows.forEach((row, index) => {
    const li = document.createElement("li");
    li.className = "queue-row";
    li.dataset.docId = row.item.doc_id;
    li.dataset.position = String(index);
    if (index === store.cursor) li.classList.add("cursor");
    if (row.selected !== null) li.classList.add("pending");
    if (row.flagged) li.classList.add("flagged");
    li.tabIndex = 0;
    li.addEventListener("focus", () => handlers.onFocusRow(index));
    li.addEventListener("click", () => handlers.onFocusRow(index));

    const text = document.createElement("p");
    text.className = "doc-text";
    text.textContent = row.item.text;

    const meta = document.createElement("div");
    meta.className = "row-meta";
    const suggestion = document.createElement("span");
    suggestion.className = "suggested";
    suggestion.textContent = `suggests: ${row.item.predicted_label}`;
    suggestion.title = "model suggestion — press Enter to confirm";
    meta.appendChild(suggestion);
    meta.appendChild(bar("confidence", row.item.confidence));
    meta.appendChild(bar("entropy", row.item.entropy_norm));
    if (row.selected !== null) {
      const chosen = document.createElement("span");
      chosen.className = "chosen-label";
      chosen.textContent = store.labels[row.selected];
      meta.appendChild(chosen);
    }

    li.appendChild(text);
    li.appendChild(meta);
    li.appendChild(labelPicker(store, row.item.doc_id, handlers));
    list.appendChild(li);
  });
  container.appendChild(list);
}
