/** String-based rendering helpers: views are pure payload -> HTML
 * functions so identical payloads always produce identical markup. */

export function esc(value: unknown): string {
  return String(value)
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

/** Displayed numbers are the payload values verbatim (String(x) of the
 * parsed JSON number), never re-rounded or re-derived. */
export function num(value: number): string {
  return String(value);
}

export function attrs(pairs: Record<string, string>): string {
  return Object.entries(pairs)
    .map(([key, value]) => `${key}="${esc(value)}"`)
    .join(" ");
}
