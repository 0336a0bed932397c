/** Pure view-state for the learner session: breadcrumbs, known terms,
 *  stale-response protection. No path is ever computed here — every crumb
 *  stores a verbatim service response. */

import type { PathDoc } from "./api.js";

export interface Crumb {
  term: string;
  doc: PathDoc;
}

export type Notice =
  | { kind: "none" }
  | { kind: "info"; text: string }
  | { kind: "error"; text: string }
  | { kind: "suggestions"; text: string; terms: string[] }
  | { kind: "dead-end"; text: string; deadEnds: string[] };

export class AppState {
  sessionId: string | null = null;
  known = new Set<string>();
  /** Every accepted path response, in query order (mirrors session history). */
  crumbs: Crumb[] = [];
  /** Index of the crumb currently displayed, -1 when none. */
  displayed = -1;
  notice: Notice = { kind: "none" };
  busy = false;

  private requestCounter = 0;

  /** Start a request; the returned id must be passed to accept(). */
  beginRequest(): number {
    this.busy = true;
    return ++this.requestCounter;
  }

  /** True when a newer request was issued after this one. */
  isStale(requestId: number): boolean {
    return requestId !== this.requestCounter;
  }

  settle(requestId: number): void {
    if (!this.isStale(requestId)) this.busy = false;
  }

  /** Record an accepted response as the newest crumb and display it.
   *  Returns false (and changes nothing) for stale responses. */
  acceptPath(requestId: number, term: string, doc: PathDoc): boolean {
    if (this.isStale(requestId)) return false;
    this.crumbs.push({ term, doc });
    this.displayed = this.crumbs.length - 1;
    this.notice = { kind: "none" };
    this.busy = false;
    return true;
  }

  get currentCrumb(): Crumb | null {
    return this.displayed >= 0 ? (this.crumbs[this.displayed] ?? null) : null;
  }

  /** Breadcrumb depth always equals the number of queries run. */
  get breadcrumbDepth(): number {
    return this.crumbs.length;
  }

  /** Back/forward navigation re-displays a stored response; no refetch. */
  showCrumb(index: number): boolean {
    if (index < 0 || index >= this.crumbs.length) return false;
    this.displayed = index;
    this.notice = { kind: "none" };
    return true;
  }

  /** Drill-down targets: interior terms of the newest path only (the
   *  service validates against the most recent recommendation). */
  canDrillDown(term: string): boolean {
    if (this.displayed !== this.crumbs.length - 1) return false;
    const crumb = this.currentCrumb;
    if (!crumb) return false;
    return crumb.doc.recommended.includes(term) && !this.known.has(term);
  }

  markKnownLocally(known: string[]): void {
    this.known = new Set(known);
  }

  setNotice(notice: Notice): void {
    this.notice = notice;
    this.busy = false;
  }
}
