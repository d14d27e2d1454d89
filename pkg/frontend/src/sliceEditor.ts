/** Slice editor: per-dimension level selectors, the polar heatmap, and the
 * grade badge. Both the grade and the adjusted values are displayed exactly
 * as the slice endpoint returned them. */

import { ApiClient, ApiError } from "./api";
import { attrs, esc, num } from "./html";
import { setLevel, type UiSession } from "./session";
import type { RiskPayload, SlicePayload } from "./types";

export interface SliceView {
  slice: SlicePayload | null;
  svg: string | null;
  error: string | null;
}

export function renderSliceEditor(
  risk: RiskPayload,
  view: SliceView,
  workingState: Record<string, string>,
): string {
  const parts: string[] = [];
  parts.push('<section class="slice-editor">');
  parts.push(`<h2>${esc(risk.risk.title)}</h2>`);

  for (const dim of risk.risk.contextDimensions) {
    const selected = workingState[dim.name];
    const options = dim.scale.levels
      .map((level) => {
        const chosen = level.name === selected ? " selected" : "";
        return `<option value="${esc(level.name)}"${chosen}>${esc(level.name)}</option>`;
      })
      .join("");
    parts.push(
      `<label class="dim-select">${esc(dim.name)} ` +
        `<select ${attrs({ "data-dim": dim.name })}>${options}</select></label>`,
    );
  }

  if (view.error !== null) {
    parts.push(`<div class="error" role="alert">${esc(view.error)}</div>`);
  }

  if (view.slice !== null) {
    const s = view.slice;
    parts.push(
      `<span class="grade-badge" ${attrs({
        "data-grade": s.grade.name,
        style: `background:${s.grade.color}`,
      })}>${esc(s.grade.name)}</span>`,
    );
    parts.push(
      '<dl class="slice-values">' +
        `<dt>likelihood</dt><dd ${attrs({ "data-field": "xAdj" })}>${num(s.xAdj)}</dd>` +
        `<dt>level</dt><dd ${attrs({ "data-field": "xLevel" })}>${esc(s.xLevel.name)}</dd>` +
        `<dt>impact</dt><dd ${attrs({ "data-field": "yAdjMetric" })}>${num(s.yAdjMetric)}</dd>` +
        `<dt>level</dt><dd ${attrs({ "data-field": "yLevel" })}>${esc(s.yLevel.name)}</dd>` +
        "</dl>",
    );
  }

  if (view.svg !== null) {
    parts.push(`<div class="polar">${view.svg}</div>`);
  }
  parts.push("</section>");
  return parts.join("\n");
}

export class SliceEditorController {
  constructor(
    private readonly client: ApiClient,
    private readonly risk: RiskPayload,
  ) {}

  /** Change one selector: one slice call plus one polar fetch. On an API
   * error the session is left untouched and the error is surfaced inline. */
  async selectLevel(
    session: UiSession,
    dimension: string,
    level: string,
  ): Promise<{ session: UiSession; view: SliceView }> {
    let candidate: UiSession;
    try {
      candidate = setLevel(session, this.risk, dimension, level);
      const slice = await this.client.computeSlice(
        session.riskId,
        candidate.workingState,
      );
      const svg = await this.client.polarSvg(session.riskId, candidate.workingState);
      return { session: candidate, view: { slice, svg, error: null } };
    } catch (error) {
      const message =
        error instanceof ApiError
          ? `${error.code}: ${error.message}`
          : String(error);
      return { session, view: { slice: null, svg: null, error: message } };
    }
  }

  async load(session: UiSession): Promise<SliceView> {
    const slice = await this.client.computeSlice(session.riskId, session.workingState);
    const svg = await this.client.polarSvg(session.riskId, session.workingState);
    return { slice, svg, error: null };
  }
}
