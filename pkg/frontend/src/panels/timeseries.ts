/** Statistic time-series: solid red value line, dashed grey cutoff lines,
 * black dot at the visualized timestep; global vs local follows focus. */

import type { Dashboard } from "../data.js";
import type { ViewState } from "../state.js";
import type { StatRecord } from "../types.js";
import { GLOBAL_TITLES, METHOD_TITLES } from "../colors.js";
import { fmt, linearScale, padExtent, ticks } from "../scale.js";
import { clear, htmlEl, svgEl } from "../svg.js";

const PW = 260;
const PH = 120;

export class TimeSeriesPanel {
  constructor(private container: HTMLElement, private dash: Dashboard) {}

  update(state: ViewState): void {
    clear(this.container);
    const scope = state.focus === null ? "global" : "local";
    this.container.setAttribute("data-scope", scope);
    const methods =
      state.mode === "aggregate" ? state.enabledMethods : [state.mode];
    for (const method of methods) {
      const records = this.dash.timesteps.map((t): StatRecord =>
        state.focus === null
          ? this.dash.global(t, method)
          : this.dash.local(t, method, state.focus),
      );
      const title =
        state.focus === null
          ? `${GLOBAL_TITLES[method] ?? method} (global)`
          : `${METHOD_TITLES[method] ?? method} at ${this.dash.locationName(state.focus)}`;
      this.container.appendChild(this.plot(title, records, state.tIndex));
    }
  }

  private plot(title: string, records: StatRecord[], tIndex: number): HTMLElement {
    const box = htmlEl("div", "ts-plot");
    box.appendChild(htmlEl("div", "panel-title", title));
    const finite: number[] = [];
    for (const r of records) {
      for (const v of [r.value, r.lower, r.upper]) {
        if (v !== null && v !== undefined) finite.push(v);
      }
    }
    if (finite.length === 0) {
      box.appendChild(htmlEl("div", "note", "no results over time for this scope"));
      return box;
    }
    const n = records.length;
    const xs = linearScale([0, Math.max(n - 1, 1)], [34, PW - 8]);
    const ys = linearScale(padExtent(finite, 0.08), [PH - 16, 6]);
    const svg = svgEl("svg", { viewBox: `0 0 ${PW} ${PH}`, width: PW, height: PH });

    for (const tick of ticks(ys.domain, 4)) {
      svg.appendChild(svgEl("line", {
        x1: 34, x2: PW - 8, y1: ys(tick), y2: ys(tick), class: "axis-mark",
      }));
      const lab = svgEl("text", { x: 2, y: ys(tick) + 3, class: "axis-text" });
      lab.textContent = fmt(tick);
      svg.appendChild(lab);
    }

    const line = (pick: (r: StatRecord) => number | null | undefined, cls: string) => {
      let d = "";
      records.forEach((r, t) => {
        const v = pick(r);
        if (v === null || v === undefined) return;
        d += (d === "" ? "M" : "L") + `${xs(t)},${ys(v)}`;
      });
      if (d) svg.appendChild(svgEl("path", { d, class: cls }));
    };
    line((r) => r.lower, "cutoff-line");
    line((r) => r.upper, "cutoff-line");
    line((r) => r.value, "series-line");

    const cur = records[tIndex]?.value;
    if (cur !== null && cur !== undefined) {
      svg.appendChild(svgEl("circle", {
        cx: xs(tIndex), cy: ys(cur), r: 3, class: "current-dot",
      }));
    }
    records.forEach((r, t) => {
      const lab = svgEl("text", {
        x: xs(t), y: PH - 4, class: "axis-text", "text-anchor": "middle",
      });
      lab.textContent = this.dash.timesteps[t];
      svg.appendChild(lab);
    });
    box.appendChild(svg);
    return box;
  }
}
