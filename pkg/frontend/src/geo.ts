/** Plate-carree fit-to-bounds projection and polygon path building.
 *
 * Longitude/latitude are drawn directly (x = lon, y = -lat) and scaled to the
 * target frame preserving aspect; no tile basemap.
 */

import type { GeoFeature, GeometryFile } from "./types.js";

export interface Projection {
  (lonLat: [number, number] | number[]): [number, number];
  width: number;
  height: number;
}

function eachCoord(feat: GeoFeature, fn: (lon: number, lat: number) => void): void {
  const geom = feat.geometry;
  const polys = (geom.type === "Polygon" ? [geom.coordinates] : geom.coordinates) as number[][][][];
  for (const poly of polys) {
    for (const ring of poly) {
      for (const pt of ring) fn(pt[0], pt[1]);
    }
  }
}

export function fitProjection(
  geometry: GeometryFile | GeoFeature[],
  width: number,
  height: number,
  margin = 2,
): Projection {
  const feats = Array.isArray(geometry) ? geometry : geometry.features;
  let minLon = Infinity, maxLon = -Infinity, minLat = Infinity, maxLat = -Infinity;
  for (const f of feats) {
    eachCoord(f, (lon, lat) => {
      if (lon < minLon) minLon = lon;
      if (lon > maxLon) maxLon = lon;
      if (lat < minLat) minLat = lat;
      if (lat > maxLat) maxLat = lat;
    });
  }
  const spanLon = maxLon - minLon || 1;
  const spanLat = maxLat - minLat || 1;
  const scale = Math.min((width - 2 * margin) / spanLon, (height - 2 * margin) / spanLat);
  const ox = (width - spanLon * scale) / 2;
  const oy = (height - spanLat * scale) / 2;
  const fn = ((pt: [number, number]) => [
    ox + (pt[0] - minLon) * scale,
    oy + (maxLat - pt[1]) * scale,
  ]) as Projection;
  fn.width = width;
  fn.height = height;
  return fn;
}

export function featurePath(feat: GeoFeature, project: Projection): string {
  const geom = feat.geometry;
  const polys = (geom.type === "Polygon" ? [geom.coordinates] : geom.coordinates) as number[][][][];
  const parts: string[] = [];
  for (const poly of polys) {
    for (const ring of poly) {
      const pts = ring.map((pt) => project([pt[0], pt[1]]));
      parts.push(
        "M" + pts.map(([x, y]) => `${round2(x)},${round2(y)}`).join("L") + "Z",
      );
    }
  }
  return parts.join("");
}

function round2(v: number): number {
  return Math.round(v * 100) / 100;
}

/** Axis-aligned bounding box of a feature in projected coordinates. */
export function featureBounds(
  feat: GeoFeature,
  project: Projection,
): { x0: number; y0: number; x1: number; y1: number } {
  let x0 = Infinity, y0 = Infinity, x1 = -Infinity, y1 = -Infinity;
  eachCoord(feat, (lon, lat) => {
    const [x, y] = project([lon, lat]);
    if (x < x0) x0 = x;
    if (y < y0) y0 = y;
    if (x > x1) x1 = x;
    if (y > y1) y1 = y;
  });
  return { x0, y0, x1, y1 };
}
