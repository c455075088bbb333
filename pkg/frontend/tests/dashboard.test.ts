/** Dashboard acceptance: load the 20x20 fixture, render every panel, and
 * verify the linked-view behaviors with labels/colors byte-matching the
 * results file. */

import { beforeEach, describe, expect, it } from "vitest";

import { buildApp, App } from "../src/main.js";
import { featureBounds, fitProjection } from "../src/geo.js";
import { labelColor } from "../src/colors.js";
import type { Dashboard } from "../src/data.js";
import { appSkeleton, fixtureDashboard, mouse } from "./helpers.js";

let dash: Dashboard;
let app: App;

function mapPaths(): SVGPathElement[] {
  return Array.from(
    document.querySelectorAll<SVGPathElement>("#map-panel svg.map-svg path.area"),
  );
}

function panel(id: string): HTMLElement {
  return document.getElementById(id) as HTMLElement;
}

beforeEach(() => {
  dash = fixtureDashboard();
  app = buildApp(appSkeleton(), dash);
});

describe("initial render", () => {
  it("renders all five panels plus the tooltip element", () => {
    expect(mapPaths()).toHaveLength(400);
    expect(panel("reel-panel").querySelector(".placeholder")).not.toBeNull();
    expect(panel("density-panel").querySelectorAll(".density-plot").length).toBe(3);
    expect(panel("cells-panel").querySelectorAll("rect.cell").length).toBe(3 * 3);
    expect(panel("timeseries-panel").querySelectorAll(".ts-plot").length).toBe(3);
    expect(document.querySelector("#map-panel .tooltip")).not.toBeNull();
    expect(document.querySelector("#toolbar select")).not.toBeNull();
  });

  it("map fills byte-match the aggregate colors at the latest timestep", () => {
    const t = dash.timesteps[dash.timesteps.length - 1];
    mapPaths().forEach((p, i) => {
      expect(p.getAttribute("fill")).toBe(dash.aggregate(t, i).color);
    });
  });

  it("unfocused panels show global content", () => {
    expect(panel("density-panel").getAttribute("data-scope")).toBe("global");
    expect(panel("cells-panel").getAttribute("data-scope")).toBe("global");
    expect(panel("timeseries-panel").getAttribute("data-scope")).toBe("global");
    const labels = Array.from(
      panel("cells-panel").querySelectorAll<SVGRectElement>("rect.cell"),
    ).map((r) => r.getAttribute("data-label"));
    const expected = dash.timesteps.map((t) => dash.global(t, "local-moran").label);
    expect(labels.slice(0, 3)).toEqual(expected);
  });
});

describe("hover focus", () => {
  it("switches density, cell, and time-series panels to local content", () => {
    const i = 125;
    mapPaths()[i].dispatchEvent(mouse("mouseenter", { clientX: 5, clientY: 5 }));
    expect(app.store.get().focus).toBe(i);
    expect(panel("density-panel").getAttribute("data-scope")).toBe("local");
    expect(panel("cells-panel").getAttribute("data-scope")).toBe("local");
    expect(panel("timeseries-panel").getAttribute("data-scope")).toBe("local");

    // cell plot rows now carry this location's local labels plus an
    // aggregate bottom row, all byte-matching the file
    const cells = Array.from(
      panel("cells-panel").querySelectorAll<SVGRectElement>("rect.cell"),
    );
    expect(cells).toHaveLength(4 * 3);
    dash.methods.forEach((m, r) => {
      dash.timesteps.forEach((t, c) => {
        expect(cells[r * 3 + c].getAttribute("data-label")).toBe(
          dash.local(t, m, i).label,
        );
      });
    });
    dash.timesteps.forEach((t, c) => {
      expect(cells[9 + c].getAttribute("fill")).toBe(dash.aggregate(t, i).color);
      expect(cells[9 + c].getAttribute("data-label")).toBe(dash.aggregate(t, i).core);
    });
  });

  it("hover-out restores global content when not pinned", () => {
    const i = 125;
    mapPaths()[i].dispatchEvent(mouse("mouseenter", { clientX: 5, clientY: 5 }));
    mapPaths()[i].dispatchEvent(mouse("mouseleave"));
    expect(panel("density-panel").getAttribute("data-scope")).toBe("global");
  });

  it("click pins focus across hover-out", () => {
    const i = 125;
    const p = mapPaths()[i];
    p.dispatchEvent(mouse("mouseenter", { clientX: 5, clientY: 5 }));
    p.dispatchEvent(mouse("click"));
    p.dispatchEvent(mouse("mouseleave"));
    expect(app.store.get().focus).toBe(i);
    expect(panel("cells-panel").getAttribute("data-scope")).toBe("local");
    expect(p.classList.contains("pinned")).toBe(true);
  });

  it("shows the tooltip with the location id and mode colors", () => {
    const i = 125;
    mapPaths()[i].dispatchEvent(mouse("mouseenter", { clientX: 8, clientY: 9 }));
    const tip = document.querySelector("#map-panel .tooltip") as HTMLElement;
    expect(tip.classList.contains("hidden")).toBe(false);
    expect(tip.querySelector(".tooltip-header")?.textContent).toBe(
      dash.results.dataset.locations[i].id,
    );
    const strip = Array.from(
      tip.querySelectorAll<SVGRectElement>(".tooltip-strip rect"),
    );
    expect(strip).toHaveLength(3);
    dash.timesteps.forEach((t, c) => {
      expect(strip[c].getAttribute("fill")).toBe(dash.aggregate(t, i).color);
    });
    mapPaths()[i].dispatchEvent(mouse("mouseleave"));
    expect(tip.classList.contains("hidden")).toBe(true);
  });
});

describe("time slider", () => {
  it("recolors the map to the selected timestep's aggregate colors", () => {
    const slider = document.querySelector<HTMLInputElement>("#map-panel input[type=range]")!;
    slider.value = "0";
    slider.dispatchEvent(new Event("input", { bubbles: true }));
    expect(app.store.get().tIndex).toBe(0);
    const t = dash.timesteps[0];
    mapPaths().forEach((p, i) => {
      expect(p.getAttribute("fill")).toBe(dash.aggregate(t, i).color);
    });
  });

  it("moves the time-series dot without changing scope", () => {
    const slider = document.querySelector<HTMLInputElement>("#map-panel input[type=range]")!;
    slider.value = "1";
    slider.dispatchEvent(new Event("input", { bubbles: true }));
    expect(panel("timeseries-panel").getAttribute("data-scope")).toBe("global");
    expect(panel("timeseries-panel").querySelectorAll(".current-dot").length).toBe(3);
  });
});

describe("brush selection", () => {
  function brushRect() {
    // a box covering exactly the 2x2 block r0c0, r0c1, r1c0, r1c1
    const proj = fitProjection(dash.geometry, 640, 430);
    const idx = (id: string) => dash.locationIndex.get(id)!;
    const cells = ["r0c0", "r0c1", "r1c0", "r1c1"].map((id) =>
      featureBounds(dash.featureByLocation[idx(id)], proj),
    );
    return {
      x0: Math.min(...cells.map((b) => b.x0)) + 1,
      y0: Math.min(...cells.map((b) => b.y0)) + 1,
      x1: Math.max(...cells.map((b) => b.x1)) - 1,
      y1: Math.max(...cells.map((b) => b.y1)) - 1,
    };
  }

  it("populates the reel with one mini-map per timestep", () => {
    const svg = document.querySelector<SVGSVGElement>("#map-panel svg.map-svg")!;
    const box = brushRect();
    svg.dispatchEvent(mouse("mousedown", { clientX: box.x0, clientY: box.y0 }));
    svg.dispatchEvent(mouse("mousemove", { clientX: box.x1, clientY: box.y1 }));
    svg.dispatchEvent(mouse("mouseup", { clientX: box.x1, clientY: box.y1 }));

    const brush = app.store.get().brush;
    expect(brush).not.toBeNull();
    expect(new Set(brush!.ids)).toEqual(new Set(["r0c0", "r0c1", "r1c0", "r1c1"]));

    const minis = Array.from(
      panel("reel-panel").querySelectorAll<SVGSVGElement>("svg.reel-svg"),
    );
    expect(minis).toHaveLength(dash.timesteps.length);
    minis.forEach((mini, tIndex) => {
      const t = dash.timesteps[tIndex];
      expect(mini.getAttribute("data-t")).toBe(t);
      const paths = Array.from(mini.querySelectorAll<SVGPathElement>("path.area"));
      expect(paths).toHaveLength(4);
      for (const p of paths) {
        const i = dash.locationIndex.get(p.getAttribute("data-id")!)!;
        expect(p.getAttribute("fill")).toBe(dash.aggregate(t, i).color);
      }
    });
  });

  it("reel hover drives the linked panels and a tiny drag clears", () => {
    const svg = document.querySelector<SVGSVGElement>("#map-panel svg.map-svg")!;
    const box = brushRect();
    svg.dispatchEvent(mouse("mousedown", { clientX: box.x0, clientY: box.y0 }));
    svg.dispatchEvent(mouse("mouseup", { clientX: box.x1, clientY: box.y1 }));
    const reelPath = panel("reel-panel").querySelector<SVGPathElement>("path.area")!;
    reelPath.dispatchEvent(mouse("mouseenter", { clientX: 4, clientY: 4 }));
    expect(app.store.get().focus).toBe(
      dash.locationIndex.get(reelPath.getAttribute("data-id")!),
    );
    const tip = document.querySelector("#map-panel .tooltip") as HTMLElement;
    expect(tip.classList.contains("hidden")).toBe(false);
    reelPath.dispatchEvent(mouse("mouseleave"));
    expect(tip.classList.contains("hidden")).toBe(true);
    // click-sized drag clears the selection
    svg.dispatchEvent(mouse("mousedown", { clientX: 5, clientY: 5 }));
    svg.dispatchEvent(mouse("mouseup", { clientX: 6, clientY: 6 }));
    expect(app.store.get().brush).toBeNull();
    expect(panel("reel-panel").querySelector(".placeholder")).not.toBeNull();
  });
});

describe("color modes", () => {
  it("per-method mode colors the map by that method's labels", () => {
    const select = document.querySelector<HTMLSelectElement>("#toolbar select")!;
    select.value = "gi-star";
    select.dispatchEvent(new Event("change", { bubbles: true }));
    const t = dash.timesteps[app.store.get().tIndex];
    mapPaths().forEach((p, i) => {
      expect(p.getAttribute("fill")).toBe(labelColor(dash.local(t, "gi-star", i).label));
    });
    expect(panel("density-panel").querySelectorAll(".density-plot").length).toBe(1);
  });

  it("method toggles filter the aggregate-mode panels", () => {
    const boxes = Array.from(
      document.querySelectorAll<HTMLInputElement>("#toolbar input[type=checkbox]"),
    );
    boxes[0].checked = false;
    boxes[0].dispatchEvent(new Event("change", { bubbles: true }));
    expect(app.store.get().enabledMethods).toEqual(["local-geary", "gi-star"]);
    expect(panel("density-panel").querySelectorAll(".density-plot").length).toBe(2);
    expect(panel("timeseries-panel").querySelectorAll(".ts-plot").length).toBe(2);
  });
});

describe("local sketches and no-data handling", () => {
  it("focused density plots use stored local sketches", () => {
    mapPaths()[125].dispatchEvent(mouse("mouseenter", { clientX: 5, clientY: 5 }));
    const plots = panel("density-panel").querySelectorAll(".density-plot");
    expect(plots.length).toBe(3);
    for (const plot of Array.from(plots)) {
      expect(plot.querySelector("path.density-area")).not.toBeNull();
      expect(plot.querySelector("line.observed-line")).not.toBeNull();
      expect(plot.querySelectorAll("line.cutoff-line").length).toBe(2);
    }
  });

  it("a no-data cell renders an informative note, not a failure", () => {
    const i = 41; // missing at the middle timestep in the fixture
    const slider = document.querySelector<HTMLInputElement>("#map-panel input[type=range]")!;
    slider.value = "1";
    slider.dispatchEvent(new Event("input", { bubbles: true }));
    mapPaths()[i].dispatchEvent(mouse("mouseenter", { clientX: 5, clientY: 5 }));
    const notes = panel("density-panel").querySelectorAll(".note");
    expect(notes.length).toBe(3);
    expect(notes[0].textContent).toContain("no-data");
  });
});
