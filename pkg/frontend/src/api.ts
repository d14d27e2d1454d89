/** Thin fetch wrapper over the riskpipe REST API.
 *
 * Every displayed value in the UI comes from one of these responses; the
 * client performs no local probability or grading computation. */

import type {
  ActivationPayload,
  ApiErrorBody,
  DagPayload,
  PosteriorPayload,
  RiskPayload,
  SlicePayload,
  TracePayload,
  TriageDecisionDoc,
} from "./types";

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly details: unknown;

  constructor(status: number, body: ApiErrorBody["error"]) {
    super(body.message);
    this.status = status;
    this.code = body.code;
    this.details = body.details;
  }
}

async function raise(response: Response): Promise<never> {
  let body: ApiErrorBody["error"] = {
    httpStatus: response.status,
    code: "INTERNAL",
    message: response.statusText,
    details: null,
  };
  try {
    body = ((await response.json()) as ApiErrorBody).error ?? body;
  } catch {
    // non-JSON error body: keep the synthetic one
  }
  throw new ApiError(response.status, body);
}

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  private async getJson<T>(path: string): Promise<T> {
    const response = await this.fetchImpl(`${this.base}${path}`);
    if (!response.ok) await raise(response);
    return (await response.json()) as T;
  }

  private async postJson<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchImpl(`${this.base}${path}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) await raise(response);
    return (await response.json()) as T;
  }

  listRisks(): Promise<{ risks: { id: string; revision: number }[] }> {
    return this.getJson("/risks");
  }

  getRisk(riskId: string): Promise<RiskPayload> {
    return this.getJson(`/risks/${riskId}`);
  }

  computeSlice(riskId: string, state: Record<string, string>): Promise<SlicePayload> {
    return this.postJson(`/risks/${riskId}/slices`, state);
  }

  async polarSvg(riskId: string, state: Record<string, string>): Promise<string> {
    const param = Object.entries(state)
      .map(([dim, level]) => `${dim}=${level}`)
      .join(",");
    const response = await this.fetchImpl(
      `${this.base}/risks/${riskId}/polar?state=${encodeURIComponent(param)}`,
    );
    if (!response.ok) await raise(response);
    return response.text();
  }

  triage(body: unknown): Promise<{ decisions: TriageDecisionDoc[] }> {
    return this.postJson("/triage", body);
  }

  async bowtieXml(riskId: string): Promise<string> {
    const response = await this.fetchImpl(`${this.base}/risks/${riskId}/bowtie`);
    if (!response.ok) await raise(response);
    return response.text();
  }

  getDag(dagId: string): Promise<DagPayload> {
    return this.getJson(`/dags/${dagId}`);
  }

  activationNodes(dagId: string): Promise<ActivationPayload> {
    return this.getJson(`/dags/${dagId}/activation-nodes`);
  }

  trace(dagId: string, nodeId: string): Promise<TracePayload> {
    return this.getJson(`/dags/${dagId}/trace/${nodeId}`);
  }

  infer(dagId: string, evidence: Record<string, string>): Promise<PosteriorPayload> {
    return this.postJson(`/dags/${dagId}/infer`, { evidence });
  }

  whatif(
    dagId: string,
    evidence: Record<string, string>,
    intervention: Record<string, string>,
  ): Promise<PosteriorPayload> {
    return this.postJson(`/dags/${dagId}/whatif`, { evidence, intervention });
  }
}
