/** Dashboard assembly: load data, build the toolbar and panels, and keep
 * every panel in sync with the shared view state. */

import { Dashboard, loadDashboard } from "./data.js";
import { Store } from "./state.js";
import { CellPanel } from "./panels/cells.js";
import { DensityPanel } from "./panels/density.js";
import { MapPanel } from "./panels/map.js";
import { ReelPanel } from "./panels/reel.js";
import { TimeSeriesPanel } from "./panels/timeseries.js";
import { METHOD_TITLES } from "./colors.js";
import { htmlEl } from "./svg.js";

export interface App {
  store: Store;
  map: MapPanel;
  reel: ReelPanel;
  density: DensityPanel;
  cells: CellPanel;
  timeseries: TimeSeriesPanel;
}

/** Build the dashboard into a root element holding the panel containers. */
export function buildApp(root: HTMLElement, dash: Dashboard): App {
  const get = (id: string): HTMLElement => {
    const el = root.querySelector<HTMLElement>(`#${id}`);
    if (!el) throw new Error(`missing container #${id}`);
    return el;
  };

  const store = new Store(dash.methods, dash.alpha, dash.timesteps.length - 1);
  buildToolbar(get("toolbar"), dash, store);
  const map = new MapPanel(get("map-panel"), dash, store);
  const reel = new ReelPanel(get("reel-panel"), dash, store, map.tooltip);
  const density = new DensityPanel(get("density-panel"), dash);
  const cells = new CellPanel(get("cells-panel"), dash, store);
  const timeseries = new TimeSeriesPanel(get("timeseries-panel"), dash);

  const renderAll = () => {
    const state = store.get();
    map.update(state);
    reel.update(state);
    density.update(state);
    cells.update(state);
    timeseries.update(state);
  };
  store.subscribe(renderAll);
  renderAll();
  return { store, map, reel, density, cells, timeseries };
}

function buildToolbar(el: HTMLElement, dash: Dashboard, store: Store): void {
  const modeWrap = htmlEl("label", "mode-select", "color mode ");
  const select = htmlEl("select") as HTMLSelectElement;
  const aggOpt = htmlEl("option", "", "aggregate agreement");
  aggOpt.value = "aggregate";
  select.appendChild(aggOpt);
  for (const m of dash.methods) {
    const opt = htmlEl("option", "", METHOD_TITLES[m] ?? m);
    opt.value = m;
    select.appendChild(opt);
  }
  select.addEventListener("change", () => store.setMode(select.value));
  modeWrap.appendChild(select);
  el.appendChild(modeWrap);

  const methodsWrap = htmlEl("span", "method-toggles");
  for (const m of dash.methods) {
    const label = htmlEl("label", "method-toggle");
    const cb = htmlEl("input") as HTMLInputElement;
    cb.type = "checkbox";
    cb.checked = true;
    cb.value = m;
    cb.addEventListener("change", () => {
      store.toggleMethod(m);
      cb.checked = store.get().enabledMethods.includes(m);
    });
    label.append(cb, document.createTextNode(METHOD_TITLES[m] ?? m));
    methodsWrap.appendChild(label);
  }
  el.appendChild(methodsWrap);

  el.appendChild(
    htmlEl("span", "alpha-display",
      `alpha = ${dash.alpha}, M = ${dash.results.config.permutations}`),
  );
}

export async function start(): Promise<void> {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app root");
  try {
    const dash = await loadDashboard();
    buildApp(root, dash);
  } catch (err) {
    root.textContent = `failed to load dashboard data: ${err}`;
    throw err;
  }
}

// Auto-start in the browser; tests import buildApp directly.
if (typeof document !== "undefined" && document.getElementById("app")) {
  void start();
}
