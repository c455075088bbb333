/** Density plots of the permutation distributions: filled KDE curve, dashed
 * cutoff lines, solid red observed-value line.  Global scope without focus,
 * local scope (from stored sketches) when a location is focused. */

import type { Dashboard } from "../data.js";
import type { ViewState } from "../state.js";
import type { StatRecord } from "../types.js";
import { GLOBAL_TITLES, METHOD_TITLES } from "../colors.js";
import { kdeCurve } from "../kde.js";
import { fmt, linearScale, padExtent } from "../scale.js";
import { clear, htmlEl, svgEl } from "../svg.js";

const PW = 250;
const PH = 110;

export class DensityPanel {
  constructor(private container: HTMLElement, private dash: Dashboard) {}

  update(state: ViewState): void {
    clear(this.container);
    const t = this.dash.timesteps[state.tIndex];
    const methods =
      state.mode === "aggregate" ? state.enabledMethods : [state.mode];
    const scope = state.focus === null ? "global" : "local";
    this.container.setAttribute("data-scope", scope);

    for (const method of methods) {
      const rec: StatRecord =
        state.focus === null
          ? this.dash.global(t, method)
          : this.dash.local(t, method, state.focus);
      const title =
        state.focus === null
          ? `${GLOBAL_TITLES[method] ?? method} (global)`
          : `${METHOD_TITLES[method] ?? method} at ${this.dash.locationName(state.focus)}`;
      this.container.appendChild(this.plot(title, rec, scope));
    }
  }

  private plot(title: string, rec: StatRecord, scope: string): HTMLElement {
    const box = htmlEl("div", "density-plot");
    box.setAttribute("data-scope", scope);
    box.appendChild(htmlEl("div", "panel-title", title));
    if (rec.value === null) {
      box.appendChild(htmlEl("div", "note", `no result (${rec.label})`));
      return box;
    }
    const sketch = rec.sketch;
    if (!sketch || sketch.length === 0) {
      box.appendChild(
        htmlEl("div", "note",
          "distribution sketch not stored for this scope; rerun with local sketches enabled"),
      );
      return box;
    }
    const curve = kdeCurve(sketch, 70);
    const xsDomain = padExtent(
      [...curve.xs, rec.value, rec.lower ?? rec.value, rec.upper ?? rec.value], 0.02,
    );
    const xs = linearScale(xsDomain, [4, PW - 4]);
    const ys = linearScale([0, Math.max(...curve.ys)], [PH - 16, 6]);

    const svg = svgEl("svg", { viewBox: `0 0 ${PW} ${PH}`, width: PW, height: PH });
    let d = `M${xs(curve.xs[0])},${ys(0)}`;
    curve.xs.forEach((x, k) => {
      d += `L${xs(x)},${ys(curve.ys[k])}`;
    });
    d += `L${xs(curve.xs[curve.xs.length - 1])},${ys(0)}Z`;
    svg.appendChild(svgEl("path", { d, class: "density-area" }));

    for (const cutoff of [rec.lower, rec.upper]) {
      if (cutoff === null || cutoff === undefined) continue;
      svg.appendChild(svgEl("line", {
        x1: xs(cutoff), x2: xs(cutoff), y1: ys.range[1], y2: PH - 16, class: "cutoff-line",
      }));
    }
    svg.appendChild(svgEl("line", {
      x1: xs(rec.value), x2: xs(rec.value), y1: ys.range[1], y2: PH - 16, class: "observed-line",
    }));
    const lab = svgEl("text", { x: 4, y: PH - 4, class: "axis-text" });
    lab.textContent = `value ${fmt(rec.value)}  p* ${rec.pseudo_p === null ? "-" : fmt(rec.pseudo_p)}`;
    svg.appendChild(lab);
    box.appendChild(svg);
    return box;
  }
}
