/**
 * Interactive contra plot: interval rows with a draggable gold threshold
 * line. Rendering consumes precomputed entries only; dragging reports raw
 * data-space values upward and triggers no network activity.
 */

import { passSet, viewEntries, type ExplorerState } from "./state.js";
import type { Entry, SignView } from "./types.js";

const SVGNS = "http://www.w3.org/2000/svg";

const ROW_H = 24;
const PLOT_W = 480;
const PAD = 18;
const TOP = 28;
const AXIS_H = 34;
const TABLE_GAP = 16;
const COLS: Array<{ key: string; width: number; title: string }> = [
  { key: "rank", width: 36, title: "#" },
  { key: "study", width: 86, title: "study" },
  { key: "year", width: 44, title: "year" },
  { key: "species", width: 36, title: "Sp" },
  { key: "ls", width: 56, title: "Ls%" },
];

export interface PlotCallbacks {
  onDrag: (rawValue: number) => void;
  onDragEnd: (rawValue: number) => void;
  onSelect: (id: number) => void;
}

export interface AxisDomain {
  min: number;
  max: number;
}

/** Fixed per-load domain so the axis does not slide under a drag. */
export function axisDomain(entries: Entry[], view: SignView): AxisDomain {
  const rows = viewEntries(entries, view);
  const values = [0];
  for (const e of rows) values.push(e.lo, e.hi);
  let min = Math.min(...values);
  let max = Math.max(...values);
  const pad = 0.05 * (max - min || 1);
  min -= pad;
  max += pad;
  return { min, max };
}

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number>,
  text?: string,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVGNS, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, String(v));
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderPlot(
  container: HTMLElement,
  state: ExplorerState,
  domain: AxisDomain,
  callbacks: PlotCallbacks,
): void {
  const rows = viewEntries(state.response.entries, state.signView);
  const passing = passSet(state.response.entries, state.signView, state.threshold);

  const innerW = PLOT_W - 2 * PAD;
  const sx = (v: number) => PAD + ((v - domain.min) / (domain.max - domain.min)) * innerW;
  const inv = (px: number) => domain.min + ((px - PAD) / innerW) * (domain.max - domain.min);

  const tableX0 = PLOT_W + TABLE_GAP;
  const width = tableX0 + COLS.reduce((acc, c) => acc + c.width, 0) + 8;
  const bottom = TOP + rows.length * ROW_H;
  const height = bottom + AXIS_H;

  const svg = el("svg", {
    width, height, viewBox: `0 0 ${width} ${height}`, class: "contra-plot",
  });

  svg.appendChild(el("line", {
    class: "zero-line", x1: sx(0), y1: TOP, x2: sx(0), y2: bottom,
  }));

  // header
  let cx = tableX0;
  for (const col of COLS) {
    svg.appendChild(el("text", { class: "header", x: cx, y: TOP - 9 }, col.title));
    cx += col.width;
  }

  rows.forEach((entry, i) => {
    const cy = TOP + (i + 0.5) * ROW_H;
    const group = el("g", {
      class: passing.has(entry.id) ? "row pass" : "row",
      "data-id": entry.id,
    });
    group.appendChild(el("rect", {
      class: "row-bg", x: 0, y: cy - ROW_H / 2, width, height: ROW_H,
    }));
    const x1 = sx(Math.min(Math.max(entry.lo, domain.min), domain.max));
    const x2 = sx(Math.min(Math.max(entry.hi, domain.min), domain.max));
    group.appendChild(el("line", { class: "interval", x1, y1: cy, x2, y2: cy }));
    for (const [v, px] of [[entry.lo, x1], [entry.hi, x2]] as Array<[number, number]>) {
      if (v >= domain.min && v <= domain.max) {
        group.appendChild(el("line", {
          class: "tick", x1: px, y1: cy - 5, x2: px, y2: cy + 5,
        }));
      } else {
        const dir = v < domain.min ? -6 : 6;
        group.appendChild(el("path", {
          class: "clip",
          d: `M ${px - dir} ${cy - 5} L ${px} ${cy} L ${px - dir} ${cy + 5} Z`,
        }));
      }
    }
    if (entry.median >= domain.min && entry.median <= domain.max) {
      group.appendChild(el("circle", {
        class: "median", cx: sx(entry.median), cy, r: 3,
      }));
    }
    const cells: Record<string, string> = {
      rank: String(i + 1),
      study: entry.metadata.study,
      year: String(entry.metadata.year),
      species: entry.metadata.species,
      ls: `${(entry.delta_l * 100).toFixed(0)}%`,
    };
    let tx = tableX0;
    for (const col of COLS) {
      group.appendChild(el("text", { class: "cell", x: tx, y: cy + 4 }, cells[col.key]));
      tx += col.width;
    }
    group.addEventListener("click", () => callbacks.onSelect(entry.id));
    svg.appendChild(group);
  });

  // axis
  svg.appendChild(el("line", { class: "axis", x1: 0, y1: bottom, x2: PLOT_W, y2: bottom }));
  for (const t of ticks(domain)) {
    svg.appendChild(el("line", {
      class: "axis-tick", x1: sx(t), y1: bottom, x2: sx(t), y2: bottom + 4,
    }));
    svg.appendChild(el("text", {
      class: "axis-label", x: sx(t), y: bottom + 16, "text-anchor": "middle",
    }, `${+(t * 100).toPrecision(6)}%`));
  }

  // gold threshold line with a generous invisible drag handle
  const clampedX = Math.min(Math.max(sx(state.threshold), PAD), PLOT_W - PAD);
  svg.appendChild(el("line", {
    class: "threshold", x1: clampedX, y1: TOP - 4, x2: clampedX, y2: bottom,
  }));
  const handle = el("rect", {
    class: "threshold-handle", x: clampedX - 6, y: TOP - 4, width: 12,
    height: bottom - TOP + 4,
  });
  handle.addEventListener("pointerdown", (down: PointerEvent) => {
    down.preventDefault();
    const svgRect = svg.getBoundingClientRect();
    const toValue = (ev: PointerEvent) => inv(ev.clientX - svgRect.left);
    const move = (ev: PointerEvent) => callbacks.onDrag(toValue(ev));
    const up = (ev: PointerEvent) => {
      document.removeEventListener("pointermove", move);
      document.removeEventListener("pointerup", up);
      callbacks.onDragEnd(toValue(ev));
    };
    document.addEventListener("pointermove", move);
    document.addEventListener("pointerup", up);
  });
  svg.appendChild(handle);

  container.replaceChildren(svg);
}

function ticks(domain: AxisDomain, target = 6): number[] {
  const raw = (domain.max - domain.min) / target;
  const mag = 10 ** Math.floor(Math.log10(raw));
  let step = 10 * mag;
  for (const mult of [1, 2, 2.5, 5, 10]) {
    if (mult * mag >= raw) {
      step = mult * mag;
      break;
    }
  }
  const out: number[] = [];
  for (let i = Math.ceil(domain.min / step); i <= Math.floor(domain.max / step); i++) {
    out.push(i * step);
  }
  return out;
}
