/** Wire types mirroring the analysis service's JSON schema. */

export type SignView = "decrease" | "increase";

export interface EntryMetadata {
  study: string;
  year: number;
  group_x: string;
  group_y: string;
  units: string;
  species: string;
  pmid: string;
  location: string;
  reported_sign: number;
  alpha_dm_text: string;
  discarded: number;
}

export interface Entry {
  id: number;
  lo: number;
  hi: number;
  median: number;
  delta_l: number;
  rank: number;
  alpha_dm: number;
  metadata: EntryMetadata;
}

export interface AnalyzeResponse {
  dataset: string;
  seed: number;
  samples: number;
  entries: Entry[];
  warnings?: string[];
  timing_ms?: number;
}

export interface DatasetInfo {
  name: string;
  records: number;
  measured_phenomenon: string;
}

function isNumber(x: unknown): x is number {
  return typeof x === "number" && Number.isFinite(x);
}

export function assertAnalyzeResponse(body: unknown): AnalyzeResponse {
  const b = body as AnalyzeResponse;
  if (!b || typeof b !== "object" || !Array.isArray(b.entries)) {
    throw new Error("malformed analyze response: missing entries");
  }
  for (const e of b.entries) {
    if (!isNumber(e.id) || !isNumber(e.lo) || !isNumber(e.hi) ||
        !isNumber(e.delta_l) || !isNumber(e.median) || !isNumber(e.rank)) {
      throw new Error(`malformed entry in analyze response: ${JSON.stringify(e)}`);
    }
    if (e.lo > e.hi) {
      throw new Error(`entry ${e.id}: interval bounds out of order`);
    }
  }
  return b;
}
