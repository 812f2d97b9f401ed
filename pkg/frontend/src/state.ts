/**
 * Pure explorer state: which studies pass the current threshold, how rows
 * are ordered within a sign view, and how dragging is clamped. Everything
 * here is a plain function of its arguments; no DOM, no network. The rules
 * mirror the analysis backend exactly: strict inequalities against
 * delta_L, ascending delta_L ordering with |median| then id tie-breaks.
 */

import type { AnalyzeResponse, Entry, SignView } from "./types.js";

export interface ExplorerState {
  response: AnalyzeResponse;
  signView: SignView;
  threshold: number; // sign-locked to the view, never zero
  selectedId: number | null;
}

export const DEFAULT_THRESHOLD: Record<SignView, number> = {
  decrease: -0.1,
  increase: 0.5,
};

/** Smallest magnitude a dragged threshold may clamp to. */
export const MIN_THRESHOLD_MAGNITUDE = 1e-4;

export function initialState(response: AnalyzeResponse, view: SignView): ExplorerState {
  return {
    response,
    signView: view,
    threshold: DEFAULT_THRESHOLD[view],
    selectedId: null,
  };
}

/**
 * Entries belonging to a sign view, in display order. Zero-score studies
 * appear in both views for reference. Order is ascending delta_L with ties
 * broken by smaller |median| then id, matching the backend's ranking.
 */
export function viewEntries(entries: Entry[], view: SignView): Entry[] {
  const kept = entries.filter((e) =>
    view === "decrease" ? e.delta_l <= 0 : e.delta_l >= 0,
  );
  return kept.sort((a, b) =>
    a.delta_l - b.delta_l ||
    Math.abs(a.median) - Math.abs(b.median) ||
    a.id - b.id,
  );
}

/**
 * Ids whose whole interval lies beyond the threshold: strict comparison of
 * delta_L against it, exactly the backend's rejection rule, so no request
 * is ever needed to retest a new threshold.
 */
export function passSet(entries: Entry[], view: SignView, threshold: number): Set<number> {
  const pass = new Set<number>();
  for (const e of entries) {
    if (view === "decrease" ? e.delta_l < threshold : e.delta_l > threshold) {
      pass.add(e.id);
    }
  }
  return pass;
}

/** Passing ids in display order (rank order of the view). */
export function passList(entries: Entry[], view: SignView, threshold: number): number[] {
  const pass = passSet(entries, view, threshold);
  return viewEntries(entries, view).map((e) => e.id).filter((id) => pass.has(id));
}

export interface ClampResult {
  value: number;
  clamped: boolean; // true when the raw value crossed or touched zero
}

/** Keep a dragged or typed threshold on the view's side of zero, never zero. */
export function clampThreshold(view: SignView, raw: number): ClampResult {
  if (Number.isNaN(raw)) {
    return { value: DEFAULT_THRESHOLD[view], clamped: true };
  }
  if (view === "decrease") {
    return raw < -MIN_THRESHOLD_MAGNITUDE
      ? { value: raw, clamped: false }
      : { value: -MIN_THRESHOLD_MAGNITUDE, clamped: true };
  }
  return raw > MIN_THRESHOLD_MAGNITUDE
    ? { value: raw, clamped: false }
    : { value: MIN_THRESHOLD_MAGNITUDE, clamped: true };
}

/** Pure drag step: new threshold in, new state out. Never touches the network. */
export function applyThresholdDrag(state: ExplorerState, raw: number): ExplorerState {
  const { value } = clampThreshold(state.signView, raw);
  return { ...state, threshold: value };
}

export function switchView(state: ExplorerState, view: SignView): ExplorerState {
  if (view === state.signView) return state;
  return { ...state, signView: view, threshold: DEFAULT_THRESHOLD[view] };
}

export function selectStudy(state: ExplorerState, id: number | null): ExplorerState {
  return { ...state, selectedId: id };
}

export function findEntry(state: ExplorerState, id: number): Entry | undefined {
  return state.response.entries.find((e) => e.id === id);
}
