/** Read-only structure views: the Bowtie (left-to-right) and the DAG
 * (layered topological). Layout is computed client-side; the engine
 * persists none. Rendering is a pure function of the payload. */

import { attrs, esc } from "./html";
import type { DagDoc } from "./types";

export interface BowtieNodeDoc {
  id: string;
  kind: string;
  name: string;
  attributes: Record<string, string>;
}

export interface BowtieDoc {
  id: string;
  nodes: BowtieNodeDoc[];
  edges: [string, string][];
}

/** Parse the canonical flat Bowtie XML (quoted attributes, self-closing
 * node/edge elements) without a DOM dependency. */
export function parseBowtieXml(xml: string): BowtieDoc {
  const rootMatch = /<bowtie\s+id="([^"]*)"\s*>/.exec(xml);
  if (!rootMatch || rootMatch[1] === undefined) {
    throw new Error("document has no <bowtie> root element");
  }
  const nodes: BowtieNodeDoc[] = [];
  const edges: [string, string][] = [];
  const element = /<(node|edge)\s+([^>]*?)\/>/g;
  const attribute = /([A-Za-z][A-Za-z0-9]*)="([^"]*)"/g;
  for (const match of xml.matchAll(element)) {
    const attributes: Record<string, string> = {};
    for (const pair of (match[2] ?? "").matchAll(attribute)) {
      attributes[pair[1]!] = unescapeXml(pair[2]!);
    }
    if (match[1] === "node") {
      const { id, kind } = attributes;
      if (!id || !kind) throw new Error("<node> missing id or kind");
      nodes.push({ id, kind, name: attributes["name"] ?? "", attributes });
    } else {
      const from = attributes["from"];
      const to = attributes["to"];
      if (!from || !to) throw new Error("<edge> missing from or to");
      edges.push([from, to]);
    }
  }
  return { id: unescapeXml(rootMatch[1]), nodes, edges };
}

function unescapeXml(value: string): string {
  return value
    .replaceAll("&lt;", "<")
    .replaceAll("&gt;", ">")
    .replaceAll("&quot;", '"')
    .replaceAll("&amp;", "&");
}

const BOWTIE_COLUMNS: [string, (n: BowtieNodeDoc) => boolean][] = [
  ["threats", (n) => n.kind === "threat"],
  ["cause structure", (n) => n.kind === "gate" || (n.kind === "barrier" && n.attributes["barrierSide"] === "FT")],
  ["top event", (n) => n.kind === "topEvent"],
  ["impact structure", (n) => n.kind === "fork" || (n.kind === "barrier" && n.attributes["barrierSide"] === "ET")],
  ["consequences", (n) => n.kind === "consequence"],
];

export function renderBowtieView(doc: BowtieDoc): string {
  const parts: string[] = [];
  parts.push(`<section class="bowtie-view" ${attrs({ "data-bowtie": doc.id })}>`);
  parts.push(`<h2>bowtie: ${esc(doc.id)}</h2>`);
  parts.push('<div class="bowtie-columns">');
  for (const [title, member] of BOWTIE_COLUMNS) {
    parts.push(`<div class="bowtie-column"><h3>${esc(title)}</h3><ul>`);
    for (const node of doc.nodes.filter(member)) {
      const badges: string[] = [];
      if (node.attributes["activation"] === "true") badges.push("activation");
      if (node.attributes["lambda"]) badges.push(`λ=${node.attributes["lambda"]}`);
      if (node.attributes["theta"]) badges.push(`θ=${node.attributes["theta"]}`);
      parts.push(
        `<li ${attrs({ "data-node": node.id, "data-kind": node.kind })}>` +
          `${esc(node.name || node.id)}` +
          (badges.length ? ` <small>(${esc(badges.join(", "))})</small>` : "") +
          "</li>",
      );
    }
    parts.push("</ul></div>");
  }
  parts.push("</div>");
  parts.push('<ul class="edge-list">');
  for (const [from, to] of doc.edges) {
    parts.push(`<li ${attrs({ "data-from": from, "data-to": to })}>${esc(from)} → ${esc(to)}</li>`);
  }
  parts.push("</ul></section>");
  return parts.join("\n");
}

/** Longest-path layer per node; parents always sit in an earlier layer. */
export function dagLayers(dag: DagDoc): Map<string, number> {
  const layers = new Map<string, number>();
  for (const node of dag.nodes) {
    // export order is topological, so parents are already assigned
    const depth = node.parents.length
      ? Math.max(...node.parents.map((p) => layers.get(p) ?? 0)) + 1
      : 0;
    layers.set(node.id, depth);
  }
  return layers;
}

export function renderDagView(dag: DagDoc): string {
  const layers = dagLayers(dag);
  const depth = Math.max(...layers.values()) + 1;
  const origin = new Map<string, string>();
  for (const entry of dag.trace.entries) {
    if (!origin.has(entry.dagNodeId)) origin.set(entry.dagNodeId, entry.bowtieNodeId);
  }

  const parts: string[] = [];
  parts.push(`<section class="dag-view" ${attrs({ "data-dag": dag.id })}>`);
  parts.push(`<h2>dag: ${esc(dag.id)} <small>(${esc(dag.profile)})</small></h2>`);
  parts.push('<div class="dag-layers">');
  for (let layer = 0; layer < depth; layer += 1) {
    parts.push(`<div class="dag-layer" ${attrs({ "data-layer": String(layer) })}><ul>`);
    for (const node of dag.nodes.filter((n) => layers.get(n.id) === layer)) {
      const synthesized = dag.trace.synthesized[node.id];
      const source = synthesized
        ? `synthesized:${synthesized}`
        : origin.get(node.id) ?? node.id;
      parts.push(
        `<li ${attrs({
          "data-node": node.id,
          "data-activation": node.activation ? "true" : "false",
          "data-origin": source,
        })}>${esc(node.id)}` +
          (node.activation ? ' <small>(activation)</small>' : "") +
          ` <small class="states">{${esc(node.states.join(", "))}}</small></li>`,
      );
    }
    parts.push("</ul></div>");
  }
  parts.push("</div>");
  parts.push('<ul class="edge-list">');
  for (const [from, to] of dag.edges) {
    parts.push(`<li ${attrs({ "data-from": from, "data-to": to })}>${esc(from)} → ${esc(to)}</li>`);
  }
  parts.push("</ul></section>");
  return parts.join("\n");
}
