/** End-to-end drill-down flow against a real server instance.
 *
 * Spawns the Python service on the bundled case-study graph, drives the
 * actual DOM app through search -> drill-down -> mark-known -> search, and
 * checks the rendered paths against the service responses.
 */

import { type ChildProcess, spawn } from "node:child_process";
import { connect, createServer } from "node:net";
import { resolve } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { Client } from "../src/api.js";
import { App } from "../src/app.js";

// vitest runs with cwd = frontend/; the snapshot ships with the Python package.
const SNAPSHOT = resolve(process.cwd(), "../src/antpath/fixtures/case_study_snapshot.json");

let server: ChildProcess;
let base: string;

async function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const probe = createServer();
    probe.once("error", reject);
    probe.listen(0, "127.0.0.1", () => {
      const address = probe.address();
      if (address === null || typeof address === "string") {
        reject(new Error("no port"));
        return;
      }
      probe.close(() => resolve(address.port));
    });
  });
}

async function until(check: () => boolean | Promise<boolean>, timeoutMs = 20000): Promise<void> {
  const start = Date.now();
  for (;;) {
    if (await check()) return;
    if (Date.now() - start > timeoutMs) throw new Error("condition not met in time");
    await new Promise((r) => setTimeout(r, 100));
  }
}

function portOpen(port: number): Promise<boolean> {
  return new Promise((resolvePort) => {
    const socket = connect({ host: "127.0.0.1", port }, () => {
      socket.end();
      resolvePort(true);
    });
    socket.once("error", () => resolvePort(false));
  });
}

beforeAll(async () => {
  const port = await freePort();
  base = `http://127.0.0.1:${port}`;
  server = spawn("antpath", ["serve", "--graph", SNAPSHOT, "--port", String(port)], {
    stdio: "ignore",
  });
  await until(() => portOpen(port));
  await until(async () => (await fetch(`${base}/terms`)).ok);
});

afterAll(() => {
  server?.kill();
});

function mountApp(): { app: App; root: HTMLElement } {
  document.body.innerHTML = `
    <div id="app">
      <form id="search-form">
        <input id="search-input" list="terms-list" />
        <datalist id="terms-list"></datalist>
        <button type="submit">Search</button>
      </form>
    </div>`;
  const root = document.getElementById("app") as HTMLElement;
  const app = new App(new Client(base), root);
  return { app, root };
}

function chipTerms(root: HTMLElement): string[] {
  return Array.from(root.querySelectorAll<HTMLElement>(".chip")).map(
    (chip) => chip.dataset.term ?? "",
  );
}

describe("learner drill-down flow", () => {
  it("search -> drill-down -> mark-known -> search reproduces the case study", async () => {
    const { app, root } = mountApp();
    await app.init();
    expect(root.querySelectorAll("#terms-list option").length).toBe(18); // Root excluded

    // Search the first demo term through the real form.
    const input = root.querySelector<HTMLInputElement>("#search-input")!;
    input.value = "Mitochondria";
    root
      .querySelector<HTMLFormElement>("#search-form")!
      .dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
    await until(() => app.state.breadcrumbDepth === 1);

    const first = app.state.currentCrumb!.doc;
    expect(first.recommended).toEqual(["atp", "cell", "eukaryotic", "organelle"]);
    expect(chipTerms(root)).toEqual(first.path);
    expect(root.querySelectorAll(".edge.assoc").length).toBe(5);

    // Drill down by clicking the rendered chip button.
    const drill = root.querySelector<HTMLElement>('[data-drill="eukaryotic"]');
    expect(drill).not.toBeNull();
    drill!.dispatchEvent(new Event("click", { bubbles: true }));
    await until(() => app.state.breadcrumbDepth === 2);

    const second = app.state.currentCrumb!.doc;
    expect(second.recommended).toEqual(["cell", "metabolism", "nucleus", "organelle"]);
    expect(root.querySelectorAll(".crumb").length).toBe(2);
    expect(chipTerms(root)).toEqual(second.path);

    // The query chip itself is never drillable.
    expect(root.querySelector('[data-drill="eukaryotic"]')).toBeNull();

    // Mark cell known, then search dna: the path must end at cell, not Root.
    root
      .querySelector<HTMLElement>('[data-know="cell"]')!
      .dispatchEvent(new Event("click", { bubbles: true }));
    await until(() => app.state.known.has("cell"));

    input.value = "dna";
    root
      .querySelector<HTMLFormElement>("#search-form")!
      .dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
    await until(() => app.state.breadcrumbDepth === 3);

    const third = app.state.currentCrumb!.doc;
    expect(third.path[0]).toBe("cell");
    expect(third.path[third.path.length - 1]).toBe("dna");
    expect(third.history_length).toBe(app.state.breadcrumbDepth);
    const chips = chipTerms(root);
    expect(chips[0]).toBe("cell");
    expect(root.querySelector('[data-term="cell"]')!.classList.contains("known")).toBe(true);

    // Back navigation restores the first path from local history.
    root
      .querySelector<HTMLElement>('[data-crumb="0"]')!
      .dispatchEvent(new Event("click", { bubbles: true }));
    expect(chipTerms(root)).toEqual(first.path);
    expect(app.state.breadcrumbDepth).toBe(3);

    // Every rendered path is byte-traceable to a logged service response.
    expect(app.responseLog.map((d) => d.path)).toEqual([first.path, second.path, third.path]);
  });

  it("renders suggestions on unknown terms and a notice on known terms", async () => {
    const { app, root } = mountApp();
    await app.init();

    await app.search("mito");
    await until(() => app.state.notice.kind === "suggestions");
    const suggestion = root.querySelector<HTMLElement>('[data-suggest="mitochondria"]');
    expect(suggestion).not.toBeNull();

    suggestion!.dispatchEvent(new Event("click", { bubbles: true }));
    await until(() => app.state.breadcrumbDepth === 1);
    expect(app.state.currentCrumb!.doc.query).toBe("mitochondria");

    await app.markKnown("organelle");
    await until(() => app.state.known.has("organelle"));
    await app.search("organelle");
    expect(app.state.notice.kind).toBe("info");
    expect(app.state.breadcrumbDepth).toBe(1);
  });
});
