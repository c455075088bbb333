/** Loaded results + geometry with index lookups and validation.
 *
 * The dashboard never recomputes statistics: every label, p-value, and color
 * is read from the results file as-is.
 */

import type {
  AggregateRecord,
  GeoFeature,
  GeometryFile,
  GlobalRecord,
  ResultsFile,
  StatRecord,
} from "./types.js";

export class Dashboard {
  readonly results: ResultsFile;
  readonly geometry: GeometryFile;
  readonly locationIndex: Map<string, number>;
  readonly featureByLocation: GeoFeature[];
  readonly idField: string | null;

  constructor(results: ResultsFile, geometry: GeometryFile) {
    this.results = results;
    this.geometry = geometry;
    this.locationIndex = new Map(
      results.dataset.locations.map((loc, i) => [loc.id, i]),
    );
    const { field, byId } = detectIdField(geometry, this.locationIndex);
    this.idField = field;
    const missing: string[] = [];
    this.featureByLocation = results.dataset.locations.map((loc) => {
      const feat = byId.get(loc.id);
      if (!feat) missing.push(loc.id);
      return feat as GeoFeature;
    });
    if (missing.length > 0) {
      throw new Error(
        `geometry is missing locations: ${missing.slice(0, 5).join(", ")}`,
      );
    }
  }

  get timesteps(): string[] {
    return this.results.dataset.timesteps;
  }

  get methods(): string[] {
    return this.results.config.methods;
  }

  get alpha(): number {
    return this.results.config.alpha;
  }

  locationName(i: number): string {
    const loc = this.results.dataset.locations[i];
    return loc.name ?? loc.id;
  }

  local(t: string, method: string, i: number): StatRecord {
    return this.results.local[t][method][i];
  }

  global(t: string, method: string): GlobalRecord {
    return this.results.global[t][method];
  }

  aggregate(t: string, i: number): AggregateRecord {
    return this.results.aggregate[t][i];
  }

  value(i: number, tIndex: number): number | null {
    return this.results.values[i][tIndex];
  }

  /** All present raw values across locations and timesteps. */
  allValues(): number[] {
    const out: number[] = [];
    for (const row of this.results.values) {
      for (const v of row) if (v !== null) out.push(v);
    }
    return out;
  }
}

function detectIdField(
  geometry: GeometryFile,
  wanted: Map<string, number>,
): { field: string | null; byId: Map<string, GeoFeature> } {
  const candidates = new Map<string, Map<string, GeoFeature>>();
  const featureLevel = new Map<string, GeoFeature>();
  for (const feat of geometry.features) {
    if (feat.id !== undefined) featureLevel.set(String(feat.id), feat);
    for (const [key, val] of Object.entries(feat.properties ?? {})) {
      let m = candidates.get(key);
      if (!m) candidates.set(key, (m = new Map()));
      m.set(String(val), feat);
    }
  }
  const covers = (m: Map<string, GeoFeature>) => {
    for (const id of wanted.keys()) if (!m.has(id)) return false;
    return true;
  };
  for (const [key, m] of candidates) {
    if (covers(m)) return { field: key, byId: m };
  }
  if (covers(featureLevel)) return { field: null, byId: featureLevel };
  // fall through with the best map so the constructor reports what's missing
  return { field: null, byId: featureLevel.size ? featureLevel : new Map() };
}

export async function loadDashboard(
  resultsUrl = "/api/results",
  geometryUrl = "/api/geometry",
): Promise<Dashboard> {
  const [results, geometry] = await Promise.all([
    fetch(resultsUrl).then((r) => r.json() as Promise<ResultsFile>),
    fetch(geometryUrl).then((r) => r.json() as Promise<GeometryFile>),
  ]);
  return new Dashboard(results, geometry);
}
