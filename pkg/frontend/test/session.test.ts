import { describe, expect, it } from "vitest";

import { newSession, setLevel, setToggle } from "../src/session";

import * as fx from "./fixtures";

describe("newSession", () => {
  it("defaults the working state to the first level of every dimension", () => {
    const session = newSession(fx.riskPayload());
    expect(session.workingState).toEqual({
      load: "Off-Peak",
      "change-complexity": "Low",
      "third-party": "Healthy",
      other: "Baseline",
    });
  });

  it("starts with no pending evidence or intervention", () => {
    const session = newSession(fx.riskPayload());
    expect(session.pendingEvidence).toEqual({});
    expect(session.pendingIntervention).toEqual({});
    expect(session.lastPosterior).toBeNull();
  });

  it("keeps the working state complete after level changes", () => {
    const risk = fx.riskPayload();
    const session = setLevel(newSession(risk), risk, "load", "Peak");
    const dims = risk.risk.contextDimensions.map((d) => d.name);
    expect(Object.keys(session.workingState).sort()).toEqual([...dims].sort());
    expect(session.workingState["load"]).toBe("Peak");
  });

  it("rejects unknown dimensions and levels", () => {
    const risk = fx.riskPayload();
    const session = newSession(risk);
    expect(() => setLevel(session, risk, "nonsense", "Peak")).toThrow();
    expect(() => setLevel(session, risk, "load", "Hurricane")).toThrow();
  });
});

describe("setToggle", () => {
  it("only accepts activation nodes offered by the API", () => {
    const session = newSession(fx.riskPayload());
    const offered = fx.activationNodes().activationNodes;
    const next = setToggle(session, offered, "et-1", "works");
    expect(next.pendingIntervention).toEqual({ "et-1": "works" });
    expect(() => setToggle(session, offered, "outage", "works")).toThrow();
  });

  it("unset removes the pending entry", () => {
    const session = newSession(fx.riskPayload());
    const offered = fx.activationNodes().activationNodes;
    const on = setToggle(session, offered, "ft-2", "fails");
    const off = setToggle(on, offered, "ft-2", "unset");
    expect(off.pendingIntervention).toEqual({});
  });
});
