/** Graphical tooltip: location header, value time-series with dataset mean
 * and +/-3 sigma axis marks, a side density of all values with the current
 * value marked, and a single-row color strip for the active mode. */

import type { Dashboard } from "../data.js";
import type { Store } from "../state.js";
import { kdeCurve } from "../kde.js";
import { fillFor } from "./map.js";
import { fmt, linearScale, padExtent } from "../scale.js";
import { clear, htmlEl, svgEl } from "../svg.js";

const TW = 260;
const TH = 120;
const DW = 46; // side density width
const STRIP = 16;

export class Tooltip {
  readonly root: HTMLDivElement;
  private readonly mean: number;
  private readonly sd: number;
  private readonly density = { xs: [] as number[], ys: [] as number[] };

  constructor(
    container: HTMLElement,
    private dash: Dashboard,
    private store: Store,
  ) {
    this.root = htmlEl("div", "tooltip hidden");
    container.appendChild(this.root);
    const all = dash.allValues();
    this.mean = all.reduce((a, b) => a + b, 0) / all.length;
    this.sd = Math.sqrt(
      all.reduce((a, b) => a + (b - this.mean) ** 2, 0) / all.length,
    );
    const curve = kdeCurve(all, 60);
    this.density.xs = curve.xs;
    this.density.ys = curve.ys;
  }

  show(i: number, ev: MouseEvent): void {
    this.render(i);
    this.root.classList.remove("hidden");
    this.move(ev);
  }

  move(ev: MouseEvent): void {
    this.root.style.left = `${ev.clientX + 14}px`;
    this.root.style.top = `${ev.clientY + 14}px`;
  }

  hide(): void {
    this.root.classList.add("hidden");
  }

  private render(i: number): void {
    clear(this.root);
    const state = this.store.get();
    const tIndex = state.tIndex;
    this.root.appendChild(htmlEl("div", "tooltip-header", this.dash.locationName(i)));

    const svg = svgEl("svg", {
      viewBox: `0 0 ${TW} ${TH}`,
      width: TW,
      height: TH,
      class: "tooltip-series",
    });
    const plotW = TW - DW - 4;
    const n = this.dash.timesteps.length;
    const xs = linearScale([0, Math.max(n - 1, 1)], [28, plotW - 4]);
    const marks = [this.mean - 3 * this.sd, this.mean, this.mean + 3 * this.sd];
    const values = this.dash.results.values[i];
    const presentVals = values.filter((v): v is number => v !== null);
    const ys = linearScale(padExtent([...marks, ...presentVals]), [TH - 14, 6]);

    for (const m of marks) {
      svg.appendChild(svgEl("line", {
        x1: 28, x2: plotW - 4, y1: ys(m), y2: ys(m), class: "axis-mark",
      }));
      const lab = svgEl("text", { x: 2, y: ys(m) + 3, class: "axis-text" });
      lab.textContent = fmt(m);
      svg.appendChild(lab);
    }
    let d = "";
    values.forEach((v, t) => {
      if (v === null) return;
      d += (d === "" ? "M" : "L") + `${xs(t)},${ys(v)}`;
    });
    if (d) svg.appendChild(svgEl("path", { d, class: "series-line" }));
    const cur = values[tIndex];
    if (cur !== null) {
      svg.appendChild(svgEl("circle", { cx: xs(tIndex), cy: ys(cur), r: 2.5, class: "series-dot" }));
    }

    // side density over all locations and time points (raw values)
    const maxY = Math.max(...this.density.ys, 1e-12);
    const dx = linearScale([0, maxY], [plotW + 2, TW - 2]);
    let dd = `M${plotW + 2},${ys(this.density.xs[0])}`;
    this.density.xs.forEach((x, k) => {
      dd += `L${dx(this.density.ys[k])},${ys(x)}`;
    });
    dd += `L${plotW + 2},${ys(this.density.xs[this.density.xs.length - 1])}Z`;
    svg.appendChild(svgEl("path", { d: dd, class: "density-area" }));
    if (cur !== null) {
      svg.appendChild(svgEl("line", {
        x1: plotW + 2, x2: TW - 2, y1: ys(cur), y2: ys(cur), class: "current-value",
      }));
      const lab = svgEl("text", { x: plotW + 4, y: ys(cur) - 3, class: "current-text" });
      lab.textContent = fmt(cur);
      svg.appendChild(lab);
    }
    this.root.appendChild(svg);

    // single-row color strip for the active mode
    const strip = svgEl("svg", {
      viewBox: `0 0 ${TW} ${STRIP}`,
      width: TW,
      height: STRIP,
      class: "tooltip-strip",
    });
    const cw = TW / n;
    for (let t = 0; t < n; t++) {
      strip.appendChild(svgEl("rect", {
        x: t * cw, y: 0, width: cw - 1, height: STRIP,
        fill: fillFor(this.dash, { ...state, tIndex: t }, i),
        class: "strip-cell",
        "data-t": this.dash.timesteps[t],
      }));
    }
    this.root.appendChild(strip);
  }
}
