/** Shapes of the results file (schema v1) and the GeoJSON side-channel. */

export interface LocationInfo {
  id: string;
  name: string | null;
}

export interface StatRecord {
  value: number | null;
  znorm: number | null;
  pseudo_p: number | null;
  lower: number | null;
  upper: number | null;
  label: string;
  sketch?: number[] | null;
}

export interface GlobalRecord extends StatRecord {
  statistic: string;
}

export interface AggregateRecord {
  core: string;
  h: number;
  color: string;
}

export interface ResultsFile {
  schema_version: number;
  config: {
    methods: string[];
    alpha: number;
    permutations: number;
    [key: string]: unknown;
  };
  dataset: {
    locations: LocationInfo[];
    timesteps: string[];
    digest?: string;
  };
  values: (number | null)[][];
  zvalues: (number | null)[][];
  global: Record<string, Record<string, GlobalRecord>>;
  local: Record<string, Record<string, StatRecord[]>>;
  aggregate: Record<string, AggregateRecord[]>;
  warnings: string[];
}

export type Ring = [number, number][];

export interface GeoFeature {
  type: "Feature";
  id?: string | number;
  properties: Record<string, unknown> | null;
  geometry: {
    type: "Polygon" | "MultiPolygon";
    coordinates: number[][][] | number[][][][];
  };
}

export interface GeometryFile {
  type: "FeatureCollection";
  features: GeoFeature[];
}

export type ColorMode = "aggregate" | string; // method name when per-method

export interface BrushSelection {
  ids: string[];
  box: { x0: number; y0: number; x1: number; y1: number };
}
