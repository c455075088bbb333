/** Cluster assignments cell plot: time on x, method on y; global labels when
 * unfocused, local labels when focused, plus an aggregate bottom row in
 * aggregate mode. */

import type { Dashboard } from "../data.js";
import type { Store, ViewState } from "../state.js";
import { globalLabelColor, labelColor, METHOD_TITLES } from "../colors.js";
import { clear, htmlEl, svgEl } from "../svg.js";

const CELL_W = 34;
const CELL_H = 22;
const LEFT = 120;
const TOP = 18;

export class CellPanel {
  constructor(
    private container: HTMLElement,
    private dash: Dashboard,
    private store: Store,
  ) {}

  update(state: ViewState): void {
    clear(this.container);
    const focused = state.focus !== null;
    this.container.setAttribute("data-scope", focused ? "local" : "global");
    const methods =
      state.mode === "aggregate" ? state.enabledMethods : [state.mode];
    const rows: { title: string; kind: "method" | "aggregate"; method?: string }[] =
      methods.map((m) => ({ title: METHOD_TITLES[m] ?? m, kind: "method", method: m }));
    if (focused && state.mode === "aggregate") {
      rows.push({ title: "aggregate", kind: "aggregate" });
    }
    const timesteps = this.dash.timesteps;
    const width = LEFT + timesteps.length * CELL_W + 4;
    const height = TOP + rows.length * CELL_H + 4;

    const title = focused
      ? `assignments for ${this.dash.locationName(state.focus as number)}`
      : "global assignments";
    this.container.appendChild(htmlEl("div", "panel-title", title));

    const svg = svgEl("svg", { viewBox: `0 0 ${width} ${height}`, width, height });
    timesteps.forEach((t, tIndex) => {
      const x = LEFT + tIndex * CELL_W;
      const head = svgEl("text", {
        x: x + CELL_W / 2, y: TOP - 6, class: "axis-text", "text-anchor": "middle",
      });
      head.textContent = t;
      svg.appendChild(head);
      if (tIndex === state.tIndex) {
        svg.appendChild(svgEl("rect", {
          x, y: TOP - 2, width: CELL_W - 2, height: rows.length * CELL_H + 2,
          class: "current-column",
        }));
      }
    });

    rows.forEach((row, r) => {
      const y = TOP + r * CELL_H;
      const lab = svgEl("text", { x: LEFT - 6, y: y + CELL_H / 2 + 3, class: "axis-text", "text-anchor": "end" });
      lab.textContent = row.title;
      svg.appendChild(lab);
      timesteps.forEach((t, tIndex) => {
        let fill: string;
        let label: string;
        if (row.kind === "aggregate") {
          const agg = this.dash.aggregate(t, state.focus as number);
          fill = agg.color;
          label = agg.core;
        } else if (focused) {
          label = this.dash.local(t, row.method as string, state.focus as number).label;
          fill = labelColor(label);
        } else {
          label = this.dash.global(t, row.method as string).label;
          fill = globalLabelColor(label);
        }
        const rect = svgEl("rect", {
          x: LEFT + tIndex * CELL_W, y, width: CELL_W - 2, height: CELL_H - 2,
          fill,
          class: "cell",
          "data-label": label,
          "data-t": t,
        });
        rect.addEventListener("click", () => this.store.setTimestep(tIndex));
        const tip = svgEl("title");
        tip.textContent = `${row.title} @ ${t}: ${label}`;
        rect.appendChild(tip);
        svg.appendChild(rect);
      });
    });
    this.container.appendChild(svg);
  }
}
