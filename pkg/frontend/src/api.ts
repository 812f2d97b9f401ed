/**
 * Transport layer. The fetch function is injected so tests can count
 * calls; after the initial load every interaction is pure state, so the
 * injected transport must never fire again until the user reloads.
 */

import { assertAnalyzeResponse, type AnalyzeResponse, type DatasetInfo } from "./types.js";

export type FetchJson = (url: string, init?: RequestInit) => Promise<unknown>;

export const browserFetchJson: FetchJson = async (url, init) => {
  const resp = await fetch(url, init);
  if (!resp.ok) {
    let detail = "";
    try {
      detail = JSON.stringify((await resp.json()).detail ?? "");
    } catch {
      /* non-JSON error body */
    }
    throw new Error(`${resp.status} ${resp.statusText} ${detail}`.trim());
  }
  return resp.json();
};

export interface LoadParams {
  dataset: string;
  samples: number;
  seed: number;
}

export async function loadAnalysis(fetchJson: FetchJson, params: LoadParams): Promise<AnalyzeResponse> {
  const body = await fetchJson("/api/analyze", {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(params),
  });
  return assertAnalyzeResponse(body);
}

export async function listDatasets(fetchJson: FetchJson): Promise<DatasetInfo[]> {
  const body = await fetchJson("/api/datasets");
  if (!Array.isArray(body)) throw new Error("malformed dataset listing");
  return body as DatasetInfo[];
}
