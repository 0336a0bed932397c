/** DOM rendering. Everything shown comes verbatim from service responses
 *  held in AppState; this module only lays it out. */

import type { AppState } from "./state.js";

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderNotice(doc: Document, state: AppState): HTMLElement {
  const box = el(doc, "div", "notice");
  box.id = "notice";
  const notice = state.notice;
  if (notice.kind === "none") {
    box.classList.add("hidden");
    return box;
  }
  box.classList.add(notice.kind);
  box.appendChild(el(doc, "p", "notice-text", notice.text));
  if (notice.kind === "suggestions") {
    const list = el(doc, "ul", "suggestions");
    for (const term of notice.terms) {
      const item = el(doc, "li");
      const button = el(doc, "button", "suggestion", term);
      button.dataset.suggest = term;
      item.appendChild(button);
      list.appendChild(item);
    }
    box.appendChild(list);
  }
  if (notice.kind === "dead-end") {
    box.appendChild(
      el(doc, "p", "dead-ends", `search dead-ended at: ${notice.deadEnds.join(", ")}`),
    );
  }
  return box;
}

export function renderBreadcrumbs(doc: Document, state: AppState): HTMLElement {
  const nav = el(doc, "nav", "breadcrumbs");
  nav.id = "breadcrumbs";
  state.crumbs.forEach((crumb, index) => {
    if (index > 0) nav.appendChild(el(doc, "span", "crumb-sep", "/"));
    const button = el(doc, "button", "crumb", crumb.term);
    button.dataset.crumb = String(index);
    if (index === state.displayed) button.classList.add("current");
    nav.appendChild(button);
  });
  return nav;
}

export function renderPath(doc: Document, state: AppState): HTMLElement {
  const section = el(doc, "section", "path-view");
  section.id = "path-view";
  const crumb = state.currentCrumb;
  if (!crumb) {
    section.classList.add("hidden");
    return section;
  }
  const { doc: path } = crumb;

  const meta = el(
    doc,
    "p",
    "path-meta",
    `query ${path.query} — ${path.associations} association(s), seed ${path.seed}`,
  );
  meta.id = "path-meta";
  section.appendChild(meta);

  const chips = el(doc, "ol", "chips");
  path.path.forEach((term, index) => {
    if (index > 0) {
      const edge = path.edges[index - 1];
      const badge = el(
        doc,
        "li",
        "edge",
        edge ? `${edge.association ? "⇒" : "→"} ${edge.frequency}` : "→",
      );
      if (edge?.association) badge.classList.add("assoc");
      if (edge) badge.title = `frequency ${edge.frequency}, trail ${edge.tau.toFixed(2)}`;
      chips.appendChild(badge);
    }
    const chip = el(doc, "li", "chip");
    chip.dataset.term = term;
    chip.appendChild(el(doc, "span", "chip-label", term));
    if (term === path.query) chip.classList.add("query");
    if (state.known.has(term)) chip.classList.add("known");
    if (state.canDrillDown(term)) {
      chip.classList.add("drillable");
      const drill = el(doc, "button", "drill", "drill down");
      drill.dataset.drill = term;
      chip.appendChild(drill);
    } else if (term !== path.query && term !== "Root") {
      chip.classList.add("disabled");
    }
    if (term !== "Root" && !state.known.has(term)) {
      const know = el(doc, "button", "know", "mark known");
      know.dataset.know = term;
      chip.appendChild(know);
    }
    chips.appendChild(chip);
  });
  section.appendChild(chips);
  return section;
}

export function render(root: HTMLElement, state: AppState): void {
  const doc = root.ownerDocument;
  let dynamic = root.querySelector<HTMLElement>("#dynamic");
  if (!dynamic) {
    dynamic = el(doc, "div");
    dynamic.id = "dynamic";
    root.appendChild(dynamic);
  }
  dynamic.replaceChildren(
    renderNotice(doc, state),
    renderBreadcrumbs(doc, state),
    renderPath(doc, state),
  );
  root.classList.toggle("busy", state.busy);
}
