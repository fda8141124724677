import { afterEach, beforeEach, describe, expect, it } from "vitest";

import { bindKeyboard } from "../src/keyboard";
import { renderQueue } from "../src/queue";
import { SessionStore } from "../src/state";
import { item, mountAppDom } from "./helpers";

function press(key: string, init: KeyboardEventInit = {}): void {
  document.dispatchEvent(new KeyboardEvent("keydown", { key, bubbles: true, ...init }));
}

describe("keyboard-first labeling", () => {
  let store: SessionStore;
  let submitted: number;
  let unbind: () => void;

  beforeEach(() => {
    store = new SessionStore();
    store.setLabels(["ham", "spam", "other"]);
    store.loadBatch([item("d1"), item("d2"), item("d3")]);
    submitted = 0;
    unbind = bindKeyboard(document, store, {
      onChanged: () => {},
      onSubmit: () => {
        submitted += 1;
      },
    });
  });

  afterEach(() => unbind());

  it("digits select the nth label on the cursor row", () => {
    press("2");
    expect(store.row("d1")?.selected).toBe(1);
    press("j");
    press("1");
    expect(store.row("d2")?.selected).toBe(0);
  });

  it("arrows and j/k move the cursor within bounds", () => {
    press("k");
    expect(store.cursor).toBe(0);
    press("ArrowDown");
    press("ArrowDown");
    press("ArrowDown");
    expect(store.cursor).toBe(2);
    press("ArrowUp");
    expect(store.cursor).toBe(1);
  });

  it("Enter confirms the model suggestion for the cursor row", () => {
    press("Enter");
    expect(store.row("d1")?.selected).toBe(store.row("d1")?.item.predicted);
  });

  it("Ctrl+Enter submits", () => {
    press("Enter", { ctrlKey: true });
    expect(submitted).toBe(1);
  });

  it("ignores keys typed into text inputs", () => {
    const el = mountAppDom();
    renderQueue(el.queue, store, { onSelect: () => {}, onFocusRow: () => {} });
    const input = document.createElement("input");
    document.body.appendChild(input);
    input.focus();
    input.dispatchEvent(new KeyboardEvent("keydown", { key: "2", bubbles: true }));
    expect(store.row("d1")?.selected).toBeNull();
  });

  it("digit shortcuts are reserved for small label sets", () => {
    store.setLabels([...Array(77)].map((_, i) => `intent ${i}`));
    press("3");
    expect(store.rows.every((r) => r.selected === null)).toBe(true);
  });
});

describe("type-ahead picker for large label sets", () => {
  it("filters and selects via Enter", () => {
    const store = new SessionStore();
    const labels = [...Array(75)].map((_, i) => `intent ${i}`);
    store.setLabels([...labels, "pin blocked", "cash received"]);
    store.loadBatch([item("d1")]);
    const el = mountAppDom();
    const selections: Array<[string, number]> = [];
    renderQueue(el.queue, store, {
      onSelect: (docId, index) => selections.push([docId, index]),
      onFocusRow: () => {},
    });

    const input = el.queue.querySelector("input.typeahead") as HTMLInputElement;
    expect(input).not.toBeNull();
    input.value = "pin";
    input.dispatchEvent(new Event("input", { bubbles: true }));
    const options = [...el.queue.querySelectorAll(".typeahead-menu li")];
    expect(options.map((o) => o.textContent)).toEqual(["pin blocked"]);

    input.dispatchEvent(new KeyboardEvent("keydown", { key: "Enter", bubbles: true }));
    expect(selections).toEqual([["d1", 75]]);
  });
});
