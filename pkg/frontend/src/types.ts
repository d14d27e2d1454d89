/** Payload shapes as the REST API serves them. The UI never recomputes any
 * of these values; it only displays them. */

export interface LevelDoc {
  name: string;
  lower: number;
  upper: number | null; // null = unbounded top level
  index: number;
}

export interface ScaleDoc {
  name: string;
  unit: string;
  levels: LevelDoc[];
}

export interface ContextDimensionDoc {
  name: string;
  kind: "X_context" | "Y_context" | "both";
  scale: ScaleDoc;
}

export interface RiskDoc {
  id: string;
  title: string;
  scales: { x: ScaleDoc; y: ScaleDoc };
  contextDimensions: ContextDimensionDoc[];
  contributions: Record<string, unknown>[];
  base: { xBase: number; yBase: number; incidentWindow: number };
}

export interface RiskPayload {
  revision: number;
  risk: RiskDoc;
}

export interface SlicePayload {
  riskId: string;
  state: Record<string, string>;
  xAdj: number;
  yAdjMetric: number;
  xLevel: { name: string; index: number };
  yLevel: { name: string; index: number };
  grade: { name: string; color: string };
}

export interface TriageDecisionDoc {
  riskId: string;
  material: boolean;
  triggeringStates: Record<string, string>[];
  priority: number;
  rationale: string;
}

export interface DagNodeDoc {
  id: string;
  states: string[];
  parents: string[];
  cpt: number[];
  activation: boolean;
}

export interface DagDoc {
  id: string;
  profile: string;
  nodes: DagNodeDoc[];
  edges: [string, string][];
  trace: {
    entries: { dagNodeId: string; bowtieNodeId: string; rule: string }[];
    synthesized: Record<string, string>;
  };
}

export interface DagPayload {
  revision: number;
  dag: DagDoc;
}

export interface ActivationNodeDoc {
  id: string;
  states: string[];
  forced: string | null;
  label: string;
}

export interface ActivationPayload {
  activationNodes: ActivationNodeDoc[];
}

export interface PosteriorPayload {
  posteriors: Record<string, Record<string, number>>;
}

export interface TracePayload {
  dagNodeId: string;
  origin: string | null;
  synthesized: string | null;
}

export interface ApiErrorBody {
  error: {
    httpStatus: number;
    code: string;
    message: string;
    details: unknown;
  };
}

export type Toggle = "unset" | "works" | "fails";

export interface ModelAnchors {
  topEventId: string;
  outcomeId: string;
}

/** The outcome variable is the synthesized safe-state node; its first
 * parent is the top event (transform contract). */
export function modelAnchors(dag: DagDoc): ModelAnchors {
  const outcomeId = Object.entries(dag.trace.synthesized).find(
    ([, rule]) => rule === "safeState",
  )?.[0];
  if (!outcomeId) throw new Error("dag export has no safe-state outcome node");
  const outcome = dag.nodes.find((n) => n.id === outcomeId);
  const topEventId = outcome?.parents[0];
  if (!topEventId) throw new Error("outcome node has no top-event parent");
  return { topEventId, outcomeId };
}
