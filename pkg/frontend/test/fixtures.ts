/** Recorded API payloads (captured from the live service) for replay. */

import { readFileSync } from "node:fs";

import type {
  ActivationPayload,
  ApiErrorBody,
  DagPayload,
  PosteriorPayload,
  RiskPayload,
  SlicePayload,
  TracePayload,
} from "../src/types";

function read<T>(name: string): T {
  const url = new URL(`./fixtures/${name}`, import.meta.url);
  return JSON.parse(readFileSync(url, "utf-8")) as T;
}

export const riskPayload = (): RiskPayload => read("risk.json");
export const slicePeak = (): SlicePayload => read("slice-peak.json");
export const sliceOffPeak = (): SlicePayload => read("slice-offpeak.json");
export const dagPayload = (): DagPayload => read("dag.json");
export const activationNodes = (): ActivationPayload => read("activation-nodes.json");
export const inferBaseline = (): PosteriorPayload => read("infer-baseline.json");
export const whatifEmpty = (): PosteriorPayload => read("whatif-empty.json");
export const whatifEt1Works = (): PosteriorPayload => read("whatif-et1-works.json");
export const whatifEt1Fails = (): PosteriorPayload => read("whatif-et1-fails.json");
export const whatifFt2Works = (): PosteriorPayload => read("whatif-ft2-works.json");
export const traceFt2 = (): TracePayload => read("trace-ft2.json");
export const traceOutcome = (): TracePayload => read("trace-outcome.json");
export const error422 = (): ApiErrorBody => read("error-422.json");

export function polarSvg(): string {
  return readFileSync(new URL("./fixtures/polar-peak.svg", import.meta.url), "utf-8");
}
