import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api";
import { App } from "../src/app";
import { MockService, domOrder, item, mountAppDom, round, summary } from "./helpers";

describe("queue fidelity against a mocked service", () => {
  let service: MockService;
  let app: App;
  let el: ReturnType<typeof mountAppDom>;

  // a deliberately non-alphabetical server ranking
  const serverOrder = ["t4", "t1", "t3", "t2", "t5"];

  beforeEach(async () => {
    service = new MockService();
    service.curve = [round(0, 0.3)];
    service.batchQueue = [
      serverOrder.map((id, position) => item(id, { position })),
      ["t6", "t7", "t8", "t9", "t10"].map((id, position) => item(id, { position })),
    ];
    el = mountAppDom();
    app = new App(new ApiClient("", service.fetchImpl), summary(), el);
    await app.start();
  });

  it("renders rows in exactly the server order", () => {
    expect(domOrder(el.queue)).toEqual(serverOrder);
  });

  it("keeps server order after selections are made", () => {
    // label rows in a scrambled order; display order must not budge
    for (const id of ["t3", "t5", "t1", "t2", "t4"]) {
      app.store.select(id, 1);
    }
    app.render();
    expect(domOrder(el.queue)).toEqual(serverOrder);
  });

  it("submits a complete batch with exactly one POST and appends exactly one curve point", async () => {
    for (const id of serverOrder) app.store.select(id, 0);
    app.render();
    expect(el.submit.disabled).toBe(false);

    const pointsBefore = app.store.curve.length;
    service.postScripts = [{ status: 200, body: { v: 1, metrics: round(5, 0.6) } }];
    await app.submit();

    expect(service.postCalls).toHaveLength(1);
    expect(service.postCalls[0].url).toBe("/sessions/s1/annotations");
    expect(service.postCalls[0].body).toEqual({
      annotations: serverOrder.map((id) => ({ doc_id: id, label: "ham" })),
    });
    expect(app.store.curve.length).toBe(pointsBefore + 1);
    expect(app.store.curve.at(-1)?.n_labels).toBe(5);
  });

  it("never re-renders a submitted doc_id", async () => {
    for (const id of serverOrder) app.store.select(id, 0);
    service.postScripts = [{ status: 200, body: { v: 1, metrics: round(5, 0.6) } }];
    await app.submit();
    const next = domOrder(el.queue);
    expect(next).toEqual(["t6", "t7", "t8", "t9", "t10"]);
    for (const id of serverOrder) expect(next).not.toContain(id);
  });

  it("submit stays disabled until every row has a confirmed label", () => {
    expect(el.submit.disabled).toBe(true);
    for (const id of serverOrder.slice(0, 4)) app.store.select(id, 1);
    app.render();
    expect(el.submit.disabled).toBe(true);
    app.store.select("t5", 1);
    app.render();
    expect(el.submit.disabled).toBe(false);
  });

  it("shows the model suggestion without counting it as a selection", () => {
    const firstRow = el.queue.querySelector(".queue-row") as HTMLElement;
    expect(firstRow.querySelector(".suggested")?.textContent).toContain("ham");
    expect(firstRow.classList.contains("pending")).toBe(false);
    expect(el.submit.disabled).toBe(true);
  });

  it("enters the terminal complete state on 409 and keeps the final curve", async () => {
    for (const id of serverOrder) app.store.select(id, 0);
    service.postScripts = [{ status: 200, body: { v: 1, metrics: round(5, 0.6) } }];
    await app.submit();
    // drain the remaining batch, then the queue 409s
    for (const id of ["t6", "t7", "t8", "t9", "t10"]) app.store.select(id, 0);
    service.postScripts = [{ status: 200, body: { v: 1, metrics: round(10, 0.7) } }];
    await app.submit();

    expect(app.store.status).toBe("complete");
    expect(el.queue.querySelector(".complete-banner")).not.toBeNull();
    expect(el.curve.querySelectorAll("table.curve-table tr").length).toBe(1 + 3);
  });
});
