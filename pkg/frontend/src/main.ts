/** Browser bootstrap: wires the pure views and controllers to the DOM.
 * All state lives in the session / controllers; the DOM is re-rendered
 * from payloads after every API response. */

import { ApiClient } from "./api";
import { parseBowtieXml, renderBowtieView, renderDagView } from "./graphViews";
import { newSession, type UiSession } from "./session";
import { renderSliceEditor, SliceEditorController, type SliceView } from "./sliceEditor";
import { renderWhatifPanel, WhatifController, type WhatifView } from "./whatifPanel";
import { modelAnchors, type Toggle } from "./types";

function param(name: string, fallback: string): string {
  return new URLSearchParams(window.location.search).get(name) ?? fallback;
}

export async function boot(root: HTMLElement): Promise<void> {
  const client = new ApiClient("");
  const riskId = param("risk", "gateway");
  const dagId = param("dag", `${riskId}-deterministic`);

  const risk = await client.getRisk(riskId);
  let session: UiSession = newSession(risk);

  const sliceController = new SliceEditorController(client, risk);
  let sliceView: SliceView = await sliceController.load(session);

  const dag = (await client.getDag(dagId)).dag;
  const anchors = modelAnchors(dag);
  const activation = await client.activationNodes(dagId);
  const baseline = await client.infer(dagId, {});
  const whatifController = new WhatifController(client, dagId, activation, baseline);
  let whatifView: WhatifView = whatifController.baselineView();

  const bowtieDoc = parseBowtieXml(await client.bowtieXml(riskId));

  const sliceHost = document.createElement("div");
  const whatifHost = document.createElement("div");
  const structureHost = document.createElement("div");
  root.replaceChildren(sliceHost, whatifHost, structureHost);

  function paint(): void {
    sliceHost.innerHTML = renderSliceEditor(risk, sliceView, session.workingState);
    whatifHost.innerHTML = renderWhatifPanel(dag, anchors, activation, whatifView);
    structureHost.innerHTML =
      renderBowtieView(bowtieDoc) + "\n" + renderDagView(dag);
  }

  sliceHost.addEventListener("change", (event) => {
    const select = event.target as HTMLSelectElement;
    const dim = select.dataset.dim;
    if (!dim) return;
    void sliceController.selectLevel(session, dim, select.value).then((result) => {
      session = result.session;
      sliceView = result.view;
      paint();
    });
  });

  whatifHost.addEventListener("click", (event) => {
    const button = (event.target as HTMLElement).closest("button");
    if (!button) return;
    const nodeId = button.dataset.node;
    const value = button.dataset.value as Toggle | undefined;
    if (!nodeId || !value) return;
    void whatifController.toggle(session, nodeId, value).then((result) => {
      session = result.session;
      whatifView = result.view;
      paint();
    });
  });

  paint();
}

if (typeof document !== "undefined") {
  const root = document.getElementById("app");
  if (root) {
    void boot(root).catch((error) => {
      root.textContent = `failed to load: ${String(error)}`;
    });
  }
}
