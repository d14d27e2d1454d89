/** What-if panel: tri-state toggles per activation node, before/after
 * posteriors for the top event and every outcome state, and a trace link
 * per node. Every probability shown is a payload value verbatim. */

import { ApiClient } from "./api";
import { attrs, esc, num } from "./html";
import { setToggle, type UiSession } from "./session";
import type {
  ActivationPayload,
  DagDoc,
  ModelAnchors,
  PosteriorPayload,
  Toggle,
} from "./types";

const TOGGLE_VALUES: Toggle[] = ["unset", "works", "fails"];

export interface WhatifView {
  before: PosteriorPayload;
  after: PosteriorPayload;
  toggles: Record<string, Toggle>;
}

function arrow(before: number, after: number): string {
  if (after > before) return "▲"; // ▲
  if (after < before) return "▼"; // ▼
  return "=";
}

function posteriorRow(
  label: string,
  nodeId: string,
  state: string,
  view: WhatifView,
): string {
  const before = view.before.posteriors[nodeId]?.[state];
  const after = view.after.posteriors[nodeId]?.[state];
  if (before === undefined || after === undefined) {
    throw new Error(`posterior payload missing ${nodeId}/${state}`);
  }
  return (
    `<tr ${attrs({ "data-node": nodeId, "data-state": state })}>` +
    `<th>${esc(label)} <a class="trace-link" ${attrs({
      "data-trace": nodeId,
      href: `#trace/${nodeId}`,
    })}>origin</a></th>` +
    `<td class="before">${num(before)}</td>` +
    `<td class="after">${num(after)}</td>` +
    `<td class="delta">${arrow(before, after)}</td>` +
    "</tr>"
  );
}

export function renderWhatifPanel(
  dag: DagDoc,
  anchors: ModelAnchors,
  activation: ActivationPayload,
  view: WhatifView,
): string {
  const parts: string[] = [];
  parts.push('<section class="whatif-panel">');
  parts.push(`<h2>what-if: ${esc(dag.id)}</h2>`);

  for (const node of activation.activationNodes) {
    const current = view.toggles[node.id] ?? "unset";
    const buttons = TOGGLE_VALUES.map((value) => {
      const pressed = value === current ? "true" : "false";
      return (
        `<button ${attrs({
          "data-node": node.id,
          "data-value": value,
          "aria-pressed": pressed,
        })}>${esc(value)}</button>`
      );
    }).join("");
    parts.push(
      `<div class="activation-toggle" ${attrs({ "data-node": node.id })}>` +
        `<span class="label">${esc(node.label)}</span>` +
        `<a class="trace-link" ${attrs({
          "data-trace": node.id,
          href: `#trace/${node.id}`,
        })}>origin</a>` +
        buttons +
        "</div>",
    );
  }

  parts.push('<table class="posteriors">');
  parts.push(
    "<thead><tr><th></th><th>before</th><th>after</th><th></th></tr></thead><tbody>",
  );
  parts.push(
    posteriorRow(`P(${anchors.topEventId}=true)`, anchors.topEventId, "true", view),
  );
  const outcome = dag.nodes.find((n) => n.id === anchors.outcomeId);
  for (const state of outcome?.states ?? []) {
    if (state === "safe") continue;
    parts.push(posteriorRow(`P(${state})`, anchors.outcomeId, state, view));
  }
  parts.push("</tbody></table>");
  parts.push("</section>");
  return parts.join("\n");
}

export class WhatifController {
  private toggles: Record<string, Toggle> = {};

  constructor(
    private readonly client: ApiClient,
    private readonly dagId: string,
    private readonly activation: ActivationPayload,
    private readonly baseline: PosteriorPayload,
  ) {}

  currentToggles(): Record<string, Toggle> {
    return { ...this.toggles };
  }

  /** One toggle change issues exactly one whatif call. Clearing every
   * toggle still round-trips once; the response then equals the baseline. */
  async toggle(
    session: UiSession,
    nodeId: string,
    value: Toggle,
  ): Promise<{ session: UiSession; view: WhatifView }> {
    const next = setToggle(session, this.activation.activationNodes, nodeId, value);
    this.toggles =
      value === "unset"
        ? Object.fromEntries(
            Object.entries(this.toggles).filter(([id]) => id !== nodeId),
          )
        : { ...this.toggles, [nodeId]: value };
    const after = await this.client.whatif(
      this.dagId,
      next.pendingEvidence,
      next.pendingIntervention,
    );
    return {
      session: { ...next, lastPosterior: after },
      view: { before: this.baseline, after, toggles: this.currentToggles() },
    };
  }

  baselineView(): WhatifView {
    return { before: this.baseline, after: this.baseline, toggles: {} };
  }
}
