/** Study detail panel: the full record metadata for one entry. */

import type { Entry } from "./types.js";

function field(label: string, value: string): HTMLElement {
  const row = document.createElement("div");
  row.className = "field";
  const dt = document.createElement("span");
  dt.className = "field-label";
  dt.textContent = label;
  const dd = document.createElement("span");
  dd.className = "field-value";
  dd.textContent = value;
  row.append(dt, dd);
  return row;
}

export function renderPanel(
  container: HTMLElement,
  entry: Entry | null,
  notFoundId: number | null,
  onClose: () => void,
): void {
  container.replaceChildren();
  if (entry === null && notFoundId === null) {
    container.classList.add("hidden");
    return;
  }
  container.classList.remove("hidden");

  const close = document.createElement("button");
  close.className = "close";
  close.textContent = "close";
  close.addEventListener("click", onClose);
  container.appendChild(close);

  if (entry === null) {
    const note = document.createElement("p");
    note.className = "not-found";
    note.textContent = `study ${notFoundId} not found in the loaded analysis`;
    container.appendChild(note);
    return;
  }

  const m = entry.metadata;
  const title = document.createElement("h3");
  title.textContent = `Study ${entry.id}: ${m.study} (${m.year})`;
  container.appendChild(title);

  const pct = (v: number) => `${(v * 100).toFixed(1)}%`;
  container.appendChild(field("control", m.group_x));
  container.appendChild(field("treatment", m.group_y));
  container.appendChild(field("interval", `[${pct(entry.lo)}, ${pct(entry.hi)}]`));
  container.appendChild(field("median", pct(entry.median)));
  container.appendChild(field("Ls%", pct(entry.delta_l)));
  container.appendChild(field("alpha", m.alpha_dm_text));
  container.appendChild(field("units", m.units));
  container.appendChild(field("species", m.species));
  container.appendChild(field("location", m.location));
  if (m.discarded > 0) {
    container.appendChild(field("discarded draws", String(m.discarded)));
  }

  const link = document.createElement("a");
  link.href = `https://pubmed.ncbi.nlm.nih.gov/${encodeURIComponent(m.pmid)}/`;
  link.textContent = `PMID ${m.pmid}`;
  link.target = "_blank";
  link.rel = "noopener";
  const wrap = document.createElement("div");
  wrap.className = "field";
  wrap.appendChild(link);
  container.appendChild(wrap);
}
