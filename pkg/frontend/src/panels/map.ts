/** Primary cluster map: categorical choropleth with time slider, hover
 * focus, click-to-pin, and drag selection for the reel. */

import type { Dashboard } from "../data.js";
import type { Store, ViewState } from "../state.js";
import type { BrushSelection } from "../types.js";
import { featureBounds, featurePath, fitProjection, Projection } from "../geo.js";
import { labelColor } from "../colors.js";
import { clear, htmlEl, pointerXY, svgEl } from "../svg.js";
import { Tooltip } from "./tooltip.js";

const W = 640;
const H = 430;

export function fillFor(dash: Dashboard, state: ViewState, i: number): string {
  const t = dash.timesteps[state.tIndex];
  if (state.mode === "aggregate") return dash.aggregate(t, i).color;
  return labelColor(dash.local(t, state.mode, i).label);
}

export class MapPanel {
  readonly svg: SVGSVGElement;
  readonly slider: HTMLInputElement;
  private readonly sliderLabel: HTMLSpanElement;
  private readonly paths: SVGPathElement[] = [];
  private readonly projection: Projection;
  private readonly brushRect: SVGRectElement;
  private readonly bounds: { x0: number; y0: number; x1: number; y1: number }[];
  private drag: { x0: number; y0: number } | null = null;
  readonly tooltip: Tooltip | null;

  constructor(
    container: HTMLElement,
    private dash: Dashboard,
    private store: Store,
    withTooltip = true,
  ) {
    const sliderRow = htmlEl("div", "slider-row");
    this.slider = htmlEl("input") as HTMLInputElement;
    this.slider.type = "range";
    this.slider.min = "0";
    this.slider.max = String(dash.timesteps.length - 1);
    this.slider.step = "1";
    this.sliderLabel = htmlEl("span", "slider-label");
    sliderRow.append(this.slider, this.sliderLabel);
    container.appendChild(sliderRow);

    this.slider.addEventListener("input", () => {
      store.setTimestep(Number(this.slider.value));
    });

    this.svg = svgEl("svg", {
      viewBox: `0 0 ${W} ${H}`,
      width: W,
      height: H,
      class: "map-svg",
    });
    container.appendChild(this.svg);
    this.projection = fitProjection(dash.geometry, W, H);
    this.bounds = dash.featureByLocation.map((f) => featureBounds(f, this.projection));

    dash.featureByLocation.forEach((feat, i) => {
      const p = svgEl("path", {
        d: featurePath(feat, this.projection),
        class: "area",
        "data-index": i,
        "data-id": dash.results.dataset.locations[i].id,
      });
      p.addEventListener("mouseenter", (ev) => {
        store.hover(i);
        this.tooltip?.show(i, ev as MouseEvent);
      });
      p.addEventListener("mousemove", (ev) => this.tooltip?.move(ev as MouseEvent));
      p.addEventListener("mouseleave", () => {
        store.hoverOut(i);
        this.tooltip?.hide();
      });
      p.addEventListener("click", () => store.togglePin(i));
      this.svg.appendChild(p);
      this.paths.push(p);
    });

    this.brushRect = svgEl("rect", { class: "brush", display: "none" });
    this.svg.appendChild(this.brushRect);
    this.svg.addEventListener("mousedown", (ev) => this.onDown(ev as MouseEvent));
    this.svg.addEventListener("mousemove", (ev) => this.onMove(ev as MouseEvent));
    this.svg.addEventListener("mouseup", (ev) => this.onUp(ev as MouseEvent));

    this.tooltip = withTooltip ? new Tooltip(container, dash, store) : null;
  }

  private onDown(ev: MouseEvent): void {
    const [x, y] = pointerXY(this.svg, ev);
    this.drag = { x0: x, y0: y };
  }

  private onMove(ev: MouseEvent): void {
    if (!this.drag) return;
    const [x, y] = pointerXY(this.svg, ev);
    const box = normBox(this.drag.x0, this.drag.y0, x, y);
    this.brushRect.setAttribute("display", "");
    this.brushRect.setAttribute("x", String(box.x0));
    this.brushRect.setAttribute("y", String(box.y0));
    this.brushRect.setAttribute("width", String(box.x1 - box.x0));
    this.brushRect.setAttribute("height", String(box.y1 - box.y0));
  }

  private onUp(ev: MouseEvent): void {
    if (!this.drag) return;
    const [x, y] = pointerXY(this.svg, ev);
    const box = normBox(this.drag.x0, this.drag.y0, x, y);
    this.drag = null;
    this.brushRect.setAttribute("display", "none");
    if (box.x1 - box.x0 < 3 && box.y1 - box.y0 < 3) {
      this.store.setBrush(null); // click-sized drag clears the selection
      return;
    }
    const ids: string[] = [];
    this.bounds.forEach((b, i) => {
      const inside = b.x0 < box.x1 && b.x1 > box.x0 && b.y0 < box.y1 && b.y1 > box.y0;
      if (inside) ids.push(this.dash.results.dataset.locations[i].id);
    });
    const brush: BrushSelection = { ids, box };
    this.store.setBrush(ids.length ? brush : null);
  }

  update(state: ViewState): void {
    const t = this.dash.timesteps[state.tIndex];
    this.slider.value = String(state.tIndex);
    this.sliderLabel.textContent = t;
    this.paths.forEach((p, i) => {
      p.setAttribute("fill", fillFor(this.dash, state, i));
      p.classList.toggle("focused", state.focus === i);
      p.classList.toggle("pinned", state.pinned && state.focus === i);
    });
  }
}

function normBox(ax: number, ay: number, bx: number, by: number) {
  return {
    x0: Math.min(ax, bx),
    y0: Math.min(ay, by),
    x1: Math.max(ax, bx),
    y1: Math.max(ay, by),
  };
}

export { clear };
