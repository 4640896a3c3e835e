import { beforeEach, describe, expect, it } from "vitest";

import { Client } from "../src/api.js";
import { ProofApp } from "../src/app.js";
import { loadFixture, tableTokensFromDom, traceFetch, type Fixture } from "./helpers.js";

function mount(fixture: Fixture) {
  const double = traceFetch(fixture.trace);
  const root = document.createElement("div");
  document.body.append(root);
  const app = new ProofApp(root, new Client("", double.fetch));
  return { app, root, double };
}

async function driveSteps(app: ProofApp, root: HTMLElement, fixture: Fixture) {
  for (const step of fixture.steps) {
    const rows = [...root.querySelectorAll<HTMLElement>(".option-row")];
    const row = rows.find(
      (r) =>
        r.dataset.connection === step.connection &&
        r.dataset.conclusion === step.conclusion,
    );
    expect(row, `option ${step.connection} ${step.conclusion} visible`).toBeTruthy();
    row!.querySelector<HTMLButtonElement>(".apply-button")!.click();
    await app.settle();
  }
}

beforeEach(() => {
  document.body.innerHTML = "";
});

describe("recorded walkthrough", () => {
  it("reproduces the first worked proof token for token", async () => {
    const fixture = loadFixture("t1_walkthrough.json");
    const { app, root, double } = mount(fixture);

    const input = root.querySelector<HTMLTextAreaElement>("#premise-input")!;
    input.value = fixture.premises;
    root.querySelector<HTMLButtonElement>("#start-button")!.click();
    await app.settle();

    expect(root.querySelectorAll("#proof-table tr").length).toBe(2);
    await driveSteps(app, root, fixture);

    expect(root.querySelectorAll("#proof-table tr").length).toBe(16);
    const expected = fixture.listing.split(/\s+/).filter(Boolean);
    expect(tableTokensFromDom(root)).toEqual(expected);

    root.querySelector<HTMLButtonElement>("#extract-button")!.click();
    await app.settle();
    expect(root.querySelector("#theorem-text")!.textContent).toBe(fixture.theorem);
    expect(double.remaining()).toBe(0);
  });

  it("badges the redundant premise of the padded variant", async () => {
    const fixture = loadFixture("t6_variant.json");
    const { app, root, double } = mount(fixture);

    await app.start(fixture.premises);
    await driveSteps(app, root, fixture);

    root.querySelector<HTMLButtonElement>("#extract-button")!.click();
    await app.settle();

    const padded = root.querySelector<HTMLElement>('tr[data-number="1"]')!;
    expect(padded.classList.contains("redundant")).toBe(true);
    expect(padded.querySelector(".badge")!.textContent).toBe("redundant");
    const kept = root.querySelector<HTMLElement>('tr[data-number="2"]')!;
    expect(kept.classList.contains("used")).toBe(true);
    expect(kept.querySelector(".badge")).toBeNull();
    expect(root.querySelector("#theorem-premises")!.textContent).toContain(
      "redundant: 1",
    );
    expect(double.remaining()).toBe(0);
  });

  it("shows inline diagnostics for invalid premises", async () => {
    const detail =
      "statement 1: input c is an output of statement 1 or later";
    const trace = [
      {
        method: "POST",
        path: "/sessions",
        body: { premises: "[Add([a,b],[c]), Add([c,b],[a])]" },
        status: 400,
        response: { detail },
      },
    ];
    const double = traceFetch(trace);
    const root = document.createElement("div");
    document.body.append(root);
    const app = new ProofApp(root, new Client("", double.fetch));
    await app.start("[Add([a,b],[c]), Add([c,b],[a])]");
    expect(root.querySelector("#entry-error")!.textContent).toBe(detail);
    expect(root.querySelector<HTMLElement>("#proof-section")!.hidden).toBe(true);
    expect(double.remaining()).toBe(0);
  });

  it("notices a stale apply and refreshes the options", async () => {
    const t1 = loadFixture("t1_walkthrough.json");
    const created = t1.trace[0]!;
    const firstOptions = t1.trace[1]!;
    const sid = (created.response as { id: string }).id;
    const trace = [
      created,
      firstOptions,
      {
        method: "POST",
        path: `/sessions/${sid}/apply`,
        body: { option: 0, revision: 0 },
        status: 409,
        response: { detail: "stale revision" },
      },
      firstOptions,
    ];
    const double = traceFetch(trace);
    const root = document.createElement("div");
    document.body.append(root);
    const app = new ProofApp(root, new Client("", double.fetch));
    await app.start(t1.premises);
    await app.pick(0);
    expect(root.querySelector("#notice")!.textContent).toContain("stale");
    expect(double.remaining()).toBe(0);
  });
});
