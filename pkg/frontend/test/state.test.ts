import { describe, expect, it } from "vitest";

import { SessionStore, typeaheadMatches } from "../src/state";
import { item, round } from "./helpers";

describe("SessionStore", () => {
  function store(): SessionStore {
    const s = new SessionStore();
    s.setLabels(["ham", "spam"]);
    s.loadBatch([item("x1"), item("x2")]);
    return s;
  }

  it("gates submission on full selection", () => {
    const s = store();
    expect(s.allSelected()).toBe(false);
    s.select("x1", 0);
    expect(s.allSelected()).toBe(false);
    s.select("x2", 1);
    expect(s.allSelected()).toBe(true);
    expect(s.selectionsPayload()).toEqual([
      { doc_id: "x1", label: "ham" },
      { doc_id: "x2", label: "spam" },
    ]);
  });

  it("ignores out-of-range label indices", () => {
    const s = store();
    s.select("x1", 5);
    expect(s.row("x1")?.selected).toBeNull();
  });

  it("selecting clears a flag and rejection flags only the named row", () => {
    const s = store();
    s.select("x1", 0);
    s.select("x2", 0);
    s.applyRejection("document 'x2' is not in the current batch");
    expect(s.row("x1")?.flagged).toBe(false);
    expect(s.row("x2")?.flagged).toBe(true);
    expect(s.row("x2")?.selected).toBe(0);
    s.select("x2", 1);
    expect(s.row("x2")?.flagged).toBe(false);
  });

  it("tracks submitted ids across batches", () => {
    const s = store();
    s.select("x1", 0);
    s.select("x2", 0);
    s.applySubmitSuccess(round(2, 0.5));
    expect(s.curve).toHaveLength(1);
    expect(s.hasRendered("x1")).toBe(true);
    s.loadBatch([item("x3")]);
    expect(s.row("x3")?.selected).toBeNull();
  });
});

describe("typeaheadMatches", () => {
  const labels = ["cash received", "card arrival", "pin blocked", "declined cash withdrawal"];

  it("ranks prefix matches before substring matches", () => {
    expect(typeaheadMatches(labels, "cas")).toEqual([0, 3]);
  });

  it("is case-insensitive and trims", () => {
    expect(typeaheadMatches(labels, "  PIN ")).toEqual([2]);
  });

  it("empty query matches nothing", () => {
    expect(typeaheadMatches(labels, "   ")).toEqual([]);
  });

  it("honors the limit", () => {
    expect(typeaheadMatches(labels, "c", 2)).toHaveLength(2);
  });
});
