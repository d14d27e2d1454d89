/** Per-tab analyst session: the working context state, pending evidence
 * and intervention, and the last posterior received from the API. */

import type {
  ActivationNodeDoc,
  PosteriorPayload,
  RiskPayload,
  Toggle,
} from "./types";

export interface UiSession {
  riskId: string;
  /** complete by construction: one level per declared dimension */
  workingState: Record<string, string>;
  pendingEvidence: Record<string, string>;
  /** node id -> forced state; only activation nodes offered by the API */
  pendingIntervention: Record<string, string>;
  lastPosterior: PosteriorPayload | null;
}

export function newSession(risk: RiskPayload): UiSession {
  const workingState: Record<string, string> = {};
  for (const dim of risk.risk.contextDimensions) {
    const first = dim.scale.levels[0];
    if (!first) throw new Error(`dimension ${dim.name} has no levels`);
    workingState[dim.name] = first.name;
  }
  return {
    riskId: risk.risk.id,
    workingState,
    pendingEvidence: {},
    pendingIntervention: {},
    lastPosterior: null,
  };
}

export function setLevel(
  session: UiSession,
  risk: RiskPayload,
  dimension: string,
  level: string,
): UiSession {
  const dim = risk.risk.contextDimensions.find((d) => d.name === dimension);
  if (!dim) throw new Error(`unknown context dimension ${dimension}`);
  if (!dim.scale.levels.some((l) => l.name === level)) {
    throw new Error(`dimension ${dimension} has no level ${level}`);
  }
  return {
    ...session,
    workingState: { ...session.workingState, [dimension]: level },
  };
}

export function setToggle(
  session: UiSession,
  offered: ActivationNodeDoc[],
  nodeId: string,
  value: Toggle,
): UiSession {
  if (!offered.some((node) => node.id === nodeId)) {
    throw new Error(`${nodeId} is not an activation node offered by the API`);
  }
  const pendingIntervention = { ...session.pendingIntervention };
  if (value === "unset") {
    delete pendingIntervention[nodeId];
  } else {
    pendingIntervention[nodeId] = value;
  }
  return { ...session, pendingIntervention };
}
