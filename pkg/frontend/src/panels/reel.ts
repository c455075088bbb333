/** Zoomed cluster reel: one mini choropleth per timestep for the brushed
 * sub-region, vertically stacked and scrollable. */

import type { Dashboard } from "../data.js";
import type { Store, ViewState } from "../state.js";
import { featurePath, fitProjection } from "../geo.js";
import { fillFor } from "./map.js";
import type { Tooltip } from "./tooltip.js";
import { clear, htmlEl, svgEl } from "../svg.js";

const MW = 210;
const MH = 150;

export class ReelPanel {
  constructor(
    private container: HTMLElement,
    private dash: Dashboard,
    private store: Store,
    private tooltip: Tooltip | null = null,
  ) {}

  update(state: ViewState): void {
    clear(this.container);
    if (!state.brush || state.brush.ids.length === 0) {
      this.container.appendChild(
        htmlEl("div", "placeholder", "Drag a box on the map to inspect a sub-region over time."),
      );
      return;
    }
    const indices = state.brush.ids
      .map((id) => this.dash.locationIndex.get(id))
      .filter((i): i is number => i !== undefined);
    const feats = indices.map((i) => this.dash.featureByLocation[i]);
    const project = fitProjection(feats, MW, MH);

    this.dash.timesteps.forEach((t, tIndex) => {
      const item = htmlEl("div", "reel-item");
      item.appendChild(htmlEl("div", "reel-label", t));
      const svg = svgEl("svg", {
        viewBox: `0 0 ${MW} ${MH}`,
        width: MW,
        height: MH,
        class: "reel-svg",
        "data-t": t,
      });
      indices.forEach((i, k) => {
        const p = svgEl("path", {
          d: featurePath(feats[k], project),
          fill: fillFor(this.dash, { ...state, tIndex }, i),
          class: "area",
          "data-id": this.dash.results.dataset.locations[i].id,
        });
        p.classList.toggle("focused", state.focus === i);
        p.addEventListener("mouseenter", (ev) => {
          this.store.hover(i);
          this.tooltip?.show(i, ev as MouseEvent);
        });
        p.addEventListener("mousemove", (ev) => this.tooltip?.move(ev as MouseEvent));
        p.addEventListener("mouseleave", () => {
          this.store.hoverOut(i);
          this.tooltip?.hide();
        });
        p.addEventListener("click", () => this.store.togglePin(i));
        svg.appendChild(p);
      });
      item.appendChild(svg);
      this.container.appendChild(item);
    });
  }
}
