/**
 * Wiring: load an analysis once, then run the entire threshold loop from
 * local state. The only network calls are the initial dataset listing and
 * explicit loads.
 */

import { browserFetchJson, listDatasets, loadAnalysis } from "./api.js";
import { renderPanel } from "./panel.js";
import { axisDomain, renderPlot, type AxisDomain } from "./plot.js";
import {
  applyThresholdDrag,
  clampThreshold,
  findEntry,
  initialState,
  passList,
  selectStudy,
  switchView,
  type ExplorerState,
} from "./state.js";
import type { SignView } from "./types.js";

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const datasetSelect = byId<HTMLSelectElement>("dataset");
const samplesInput = byId<HTMLInputElement>("samples");
const seedInput = byId<HTMLInputElement>("seed");
const loadButton = byId<HTMLButtonElement>("load");
const thresholdInput = byId<HTMLInputElement>("threshold");
const banner = byId<HTMLDivElement>("banner");
const hint = byId<HTMLDivElement>("hint");
const plotHost = byId<HTMLDivElement>("plot");
const panelHost = byId<HTMLDivElement>("panel");
const passOut = byId<HTMLDivElement>("passing");
const tabs = Array.from(document.querySelectorAll<HTMLButtonElement>(".tab"));

let state: ExplorerState | null = null;
let domain: AxisDomain | null = null;
let notFoundId: number | null = null;

function showBanner(text: string | null): void {
  banner.textContent = text ?? "";
  banner.classList.toggle("hidden", text === null);
}

function showHint(text: string | null): void {
  hint.textContent = text ?? "";
  hint.classList.toggle("hidden", text === null);
}

function redraw(): void {
  if (!state || !domain) return;
  thresholdInput.value = state.threshold.toPrecision(4);
  renderPlot(plotHost, state, domain, {
    onDrag: (raw) => {
      if (!state) return;
      const clamp = clampThreshold(state.signView, raw);
      showHint(clamp.clamped ? "threshold must stay nonzero on this side of zero" : null);
      state = applyThresholdDrag(state, raw);
      redraw();
    },
    onDragEnd: () => showHint(null),
    onSelect: (id) => {
      if (!state) return;
      state = selectStudy(state, id);
      redraw();
    },
  });
  const ids = passList(state.response.entries, state.signView, state.threshold);
  passOut.textContent = ids.length
    ? `passing (${ids.length}): ${ids.join(", ")}`
    : "passing: none";
  const selected = state.selectedId === null ? null : findEntry(state, state.selectedId) ?? null;
  notFoundId = state.selectedId !== null && selected === null ? state.selectedId : null;
  renderPanel(panelHost, selected, notFoundId, () => {
    if (!state) return;
    state = selectStudy(state, null);
    redraw();
  });
  for (const tab of tabs) {
    tab.classList.toggle("active", tab.dataset.view === state.signView);
  }
}

async function load(): Promise<void> {
  showBanner(null);
  state = null;
  domain = null;
  plotHost.replaceChildren();
  passOut.textContent = "";
  try {
    const response = await loadAnalysis(browserFetchJson, {
      dataset: datasetSelect.value,
      samples: Number(samplesInput.value),
      seed: Number(seedInput.value),
    });
    const view = (tabs.find((t) => t.classList.contains("active"))?.dataset.view ??
      "decrease") as SignView;
    state = initialState(response, view);
    domain = axisDomain(response.entries, view);
    if (response.warnings?.length) {
      showBanner(`warnings: ${response.warnings.join(" | ")}`);
    }
    redraw();
  } catch (err) {
    showBanner(`load failed: ${err instanceof Error ? err.message : String(err)}`);
  }
}

loadButton.addEventListener("click", () => void load());

thresholdInput.addEventListener("change", () => {
  if (!state) return;
  const clamp = clampThreshold(state.signView, Number(thresholdInput.value));
  showHint(clamp.clamped ? "threshold must be nonzero and match the view's sign" : null);
  state = { ...state, threshold: clamp.value };
  redraw();
});

for (const tab of tabs) {
  tab.addEventListener("click", () => {
    if (!state) return;
    state = switchView(state, tab.dataset.view as SignView);
    domain = axisDomain(state.response.entries, state.signView);
    redraw();
  });
}

void (async () => {
  try {
    const datasets = await listDatasets(browserFetchJson);
    datasetSelect.replaceChildren(
      ...datasets.map((d) => {
        const opt = document.createElement("option");
        opt.value = d.name;
        opt.textContent = `${d.name} (${d.records} studies)`;
        return opt;
      }),
    );
  } catch {
    showBanner("service unreachable: dataset list unavailable");
  }
})();
