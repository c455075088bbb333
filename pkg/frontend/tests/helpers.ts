import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { Dashboard } from "../src/data.js";
import type { GeometryFile, ResultsFile } from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));

export function loadFixture(): { results: ResultsFile; geometry: GeometryFile } {
  const results = JSON.parse(
    readFileSync(join(here, "fixtures", "results.json"), "utf-8"),
  ) as ResultsFile;
  const geometry = JSON.parse(
    readFileSync(join(here, "fixtures", "geometry.json"), "utf-8"),
  ) as GeometryFile;
  return { results, geometry };
}

export function fixtureDashboard(): Dashboard {
  const { results, geometry } = loadFixture();
  return new Dashboard(results, geometry);
}

/** The app skeleton matching index.html's container ids. */
export function appSkeleton(): HTMLElement {
  document.body.innerHTML = `
    <div id="app">
      <div id="toolbar"></div>
      <section id="map-panel"></section>
      <section id="reel-panel"></section>
      <section id="density-panel"></section>
      <section id="cells-panel"></section>
      <section id="timeseries-panel"></section>
    </div>`;
  return document.getElementById("app") as HTMLElement;
}

export function mouse(type: string, opts: MouseEventInit = {}): MouseEvent {
  return new MouseEvent(type, { bubbles: true, ...opts });
}
