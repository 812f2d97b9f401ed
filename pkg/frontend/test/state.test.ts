/**
 * Explorer logic against committed CLI fixtures: the highlighted set must
 * equal `contraplot test` output for the same (dataset, K, seed,
 * threshold), and the threshold loop must stay off the network.
 */

import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { loadAnalysis, type FetchJson } from "../src/api.js";
import {
  applyThresholdDrag,
  clampThreshold,
  findEntry,
  initialState,
  passList,
  passSet,
  switchView,
  viewEntries,
  MIN_THRESHOLD_MAGNITUDE,
} from "../src/state.js";
import { assertAnalyzeResponse, type AnalyzeResponse, type SignView } from "../src/types.js";

function fixture(name: string): AnalyzeResponse {
  const raw = readFileSync(new URL(`./fixtures/${name}`, import.meta.url), "utf-8");
  return assertAnalyzeResponse(JSON.parse(raw));
}

const tpc = fixture("tpc_analyze.json");
const plaque = fixture("plaque_analyze.json");
const expected = JSON.parse(
  readFileSync(new URL("./fixtures/expected_pass_sets.json", import.meta.url), "utf-8"),
) as { cases: Array<{ dataset: string; sign: SignView; threshold: number; ids: number[] }> };

const byName: Record<string, AnalyzeResponse> = { tpc, plaque };

describe("highlight set matches the CLI threshold test", () => {
  for (const c of expected.cases) {
    it(`${c.dataset} ${c.sign} at ${c.threshold}`, () => {
      const got = passList(byName[c.dataset].entries, c.sign, c.threshold);
      expect(got).toEqual(c.ids);
    });
  }
});

describe("threshold behaviour", () => {
  it("pass set grows monotonically as a decrease threshold approaches zero", () => {
    let previous = new Set<number>();
    for (const t of [-0.45, -0.3, -0.2, -0.1, -0.05, -0.01]) {
      const current = passSet(tpc.entries, "decrease", t);
      for (const id of previous) expect(current.has(id)).toBe(true);
      previous = current;
    }
  });

  it("no bundled TPC interval lies entirely below -0.99", () => {
    expect(passSet(tpc.entries, "decrease", -0.99).size).toBe(0);
  });

  it("uses strict inequality exactly like the backend", () => {
    const entry = tpc.entries.find((e) => e.id === 17)!;
    expect(passSet(tpc.entries, "decrease", entry.delta_l).has(17)).toBe(false);
    expect(passSet(tpc.entries, "decrease", entry.delta_l + 1e-9).has(17)).toBe(true);
  });

  it("clamps drags that cross zero and flags them", () => {
    expect(clampThreshold("decrease", -0.2)).toEqual({ value: -0.2, clamped: false });
    expect(clampThreshold("decrease", 0.3)).toEqual({
      value: -MIN_THRESHOLD_MAGNITUDE, clamped: true,
    });
    expect(clampThreshold("decrease", 0)).toEqual({
      value: -MIN_THRESHOLD_MAGNITUDE, clamped: true,
    });
    expect(clampThreshold("increase", -1)).toEqual({
      value: MIN_THRESHOLD_MAGNITUDE, clamped: true,
    });
    expect(clampThreshold("increase", 0.4)).toEqual({ value: 0.4, clamped: false });
    expect(clampThreshold("increase", Number.NaN).clamped).toBe(true);
  });
});

describe("view ordering", () => {
  it("decrease view is ascending delta_l with zero scores included", () => {
    const rows = viewEntries(tpc.entries, "decrease");
    expect(rows.every((e) => e.delta_l <= 0)).toBe(true);
    const deltas = rows.map((e) => e.delta_l);
    expect([...deltas].sort((a, b) => a - b)).toEqual(deltas);
    expect(rows.some((e) => e.delta_l === 0)).toBe(true);
  });

  it("zero-score studies appear in both views", () => {
    const zeros = tpc.entries.filter((e) => e.delta_l === 0).map((e) => e.id);
    const dec = new Set(viewEntries(tpc.entries, "decrease").map((e) => e.id));
    const inc = new Set(viewEntries(tpc.entries, "increase").map((e) => e.id));
    for (const id of zeros) {
      expect(dec.has(id)).toBe(true);
      expect(inc.has(id)).toBe(true);
    }
  });

  it("every study lands in at least one view", () => {
    const dec = viewEntries(plaque.entries, "decrease");
    const inc = viewEntries(plaque.entries, "increase");
    expect(new Set([...dec, ...inc].map((e) => e.id)).size).toBe(plaque.entries.length);
  });
});

describe("network discipline", () => {
  it("threshold drags issue zero requests after the initial load", async () => {
    let calls = 0;
    const counting: FetchJson = async () => {
      calls += 1;
      return JSON.parse(
        readFileSync(new URL("./fixtures/tpc_analyze.json", import.meta.url), "utf-8"),
      );
    };
    const response = await loadAnalysis(counting, { dataset: "tpc", samples: 100000, seed: 42 });
    expect(calls).toBe(1);

    let state = initialState(response, "decrease");
    for (let i = 0; i < 60; i++) {
      state = applyThresholdDrag(state, -0.5 + i * 0.008);
      passSet(state.response.entries, state.signView, state.threshold);
    }
    state = switchView(state, "increase");
    passSet(state.response.entries, state.signView, state.threshold);
    expect(calls).toBe(1);
  });

  it("rejects malformed responses instead of rendering stale state", async () => {
    const bad: FetchJson = async () => ({ entries: [{ id: "x" }] });
    await expect(loadAnalysis(bad, { dataset: "tpc", samples: 100000, seed: 42 }))
      .rejects.toThrow(/malformed/);
  });
});

describe("study inspection", () => {
  it("study 30 carries its source metadata", () => {
    const state = initialState(tpc, "increase");
    const entry = findEntry(state, 30)!;
    expect(entry.metadata.pmid).toBe("1411543");
    expect(entry.metadata.species).toBe("ms");
  });

  it("unknown ids resolve to undefined for the not-found notice", () => {
    const state = initialState(tpc, "increase");
    expect(findEntry(state, 999)).toBeUndefined();
  });

  it("switching views resets the threshold to the view default", () => {
    let state = initialState(tpc, "decrease");
    state = applyThresholdDrag(state, -0.37);
    state = switchView(state, "increase");
    expect(state.threshold).toBeGreaterThan(0);
  });
});
