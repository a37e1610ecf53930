/**
 * Thin typed client for the analysis service endpoints.
 */

import type { ApplyFixResponse, DiagnosisDocument } from "./types.js";

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
  }
}

export class StaleFixError extends ServiceError {}

export type FetchLike = (
  url: string,
  init?: {
    method?: string;
    headers?: Record<string, string>;
    body?: string;
  },
) => Promise<{
  status: number;
  json(): Promise<unknown>;
}>;

async function detailOf(res: { json(): Promise<unknown> }): Promise<string> {
  try {
    const body = (await res.json()) as { detail?: string };
    return body.detail ?? "request failed";
  } catch {
    return "request failed";
  }
}

export class ServiceClient {
  constructor(
    private readonly baseUrl = "",
    private readonly fetchImpl: FetchLike = fetch as unknown as FetchLike,
  ) {}

  async analyze(xml: string, lenient = false): Promise<DiagnosisDocument> {
    const query = lenient ? "?lenient=true" : "";
    const res = await this.fetchImpl(`${this.baseUrl}/api/analyze${query}`, {
      method: "POST",
      headers: { "content-type": "application/xml" },
      body: xml,
    });
    if (res.status !== 200) {
      throw new ServiceError(res.status, await detailOf(res));
    }
    return (await res.json()) as DiagnosisDocument;
  }

  async applyFix(xml: string, fixId: string): Promise<ApplyFixResponse> {
    const res = await this.fetchImpl(`${this.baseUrl}/api/fix/apply`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ xml, fixId }),
    });
    if (res.status === 409) {
      throw new StaleFixError(res.status, await detailOf(res));
    }
    if (res.status !== 200) {
      throw new ServiceError(res.status, await detailOf(res));
    }
    return (await res.json()) as ApplyFixResponse;
  }

  async health(): Promise<{ status: string; version: string }> {
    const res = await this.fetchImpl(`${this.baseUrl}/api/health`);
    if (res.status !== 200) {
      throw new ServiceError(res.status, "service unavailable");
    }
    return (await res.json()) as { status: string; version: string };
  }
}
