/** Controller: wires the API client, the view state and the DOM. */

import { ApiError, Client, type PathDoc } from "./api.js";
import { render } from "./render.js";
import { AppState } from "./state.js";

/** Mirror of the server's term normalization, used only for local checks
 *  (known-term short circuit); the server remains the authority. */
export function normalizeTerm(raw: string): string {
  return raw.trim().replace(/\s+/g, " ").toLowerCase();
}

export class App {
  readonly state = new AppState();
  /** Every path response ever displayed, verbatim, in arrival order. */
  readonly responseLog: PathDoc[] = [];

  constructor(
    private readonly client: Client,
    private readonly root: HTMLElement,
  ) {}

  async init(): Promise<void> {
    this.bindEvents();
    try {
      const terms = await this.client.terms();
      const datalist = this.root.querySelector<HTMLElement>("#terms-list");
      if (datalist) {
        const doc = this.root.ownerDocument;
        datalist.replaceChildren(
          ...terms
            .filter((t) => t.term !== "Root")
            .map((t) => {
              const option = doc.createElement("option");
              option.value = t.term;
              return option;
            }),
        );
      }
    } catch {
      this.state.setNotice({ kind: "error", text: "service unreachable" });
    }
    this.refresh();
  }

  private bindEvents(): void {
    const form = this.root.querySelector<HTMLFormElement>("#search-form");
    form?.addEventListener("submit", (event) => {
      event.preventDefault();
      const input = this.root.querySelector<HTMLInputElement>("#search-input");
      if (input && input.value.trim()) void this.search(input.value);
    });
    this.root.addEventListener("click", (event) => {
      const target = event.target as HTMLElement | null;
      if (!target) return;
      if (target.dataset.drill) void this.drilldown(target.dataset.drill);
      else if (target.dataset.know) void this.markKnown(target.dataset.know);
      else if (target.dataset.crumb !== undefined) this.showCrumb(Number(target.dataset.crumb));
      else if (target.dataset.suggest) void this.search(target.dataset.suggest);
    });
  }

  private async ensureSession(): Promise<string> {
    if (this.state.sessionId === null) {
      const session = await this.client.createSession([]);
      this.state.sessionId = session.id;
      this.state.markKnownLocally(session.known);
    }
    return this.state.sessionId;
  }

  async search(rawTerm: string): Promise<void> {
    const term = normalizeTerm(rawTerm);
    if (this.state.known.has(term)) {
      this.state.setNotice({
        kind: "info",
        text: `${term} is already marked known; no path needed`,
      });
      this.refresh();
      return;
    }
    const requestId = this.state.beginRequest();
    this.refresh();
    try {
      const session = await this.ensureSession();
      const doc = await this.client.query(term, session);
      if (this.state.acceptPath(requestId, term, doc)) {
        this.responseLog.push(doc);
      }
    } catch (error) {
      this.handleError(requestId, error);
    }
    this.refresh();
  }

  async drilldown(rawTerm: string): Promise<void> {
    const term = normalizeTerm(rawTerm);
    if (!this.state.canDrillDown(term)) return;
    const requestId = this.state.beginRequest();
    this.refresh();
    try {
      const session = await this.ensureSession();
      const doc = await this.client.drilldown(session, term);
      if (this.state.acceptPath(requestId, term, doc)) {
        this.responseLog.push(doc);
      }
    } catch (error) {
      this.handleError(requestId, error);
    }
    this.refresh();
  }

  async markKnown(rawTerm: string): Promise<void> {
    const term = normalizeTerm(rawTerm);
    try {
      const session = await this.ensureSession();
      const doc = await this.client.markKnown(session, term);
      this.state.markKnownLocally(doc.known);
    } catch (error) {
      // Local state untouched on failure.
      const text = error instanceof ApiError ? error.message : "request failed";
      this.state.setNotice({ kind: "error", text });
    }
    this.refresh();
  }

  showCrumb(index: number): void {
    if (this.state.showCrumb(index)) this.refresh();
  }

  private handleError(requestId: number, error: unknown): void {
    if (this.state.isStale(requestId)) return;
    this.state.settle(requestId);
    if (error instanceof ApiError) {
      if (error.status === 404 && error.body.suggestions) {
        this.state.setNotice({
          kind: "suggestions",
          text: error.body.detail,
          terms: error.body.suggestions,
        });
        return;
      }
      if (error.status === 409 && error.body.error === "no_path") {
        this.state.setNotice({
          kind: "dead-end",
          text: error.body.detail,
          deadEnds: error.body.dead_ends ?? [],
        });
        return;
      }
      this.state.setNotice({ kind: "error", text: error.message });
      return;
    }
    this.state.setNotice({ kind: "error", text: "request failed" });
  }

  refresh(): void {
    render(this.root, this.state);
  }
}
