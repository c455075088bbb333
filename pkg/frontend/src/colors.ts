/** Categorical colors for per-method labels.
 *
 * Matched concepts share colors across methods (high-high and hot-spot are
 * both core red, etc.).  Aggregate-mode colors are never computed here; they
 * come verbatim from the results file.
 */

export const LABEL_COLORS: Record<string, string> = {
  "high-high": "#b2182b",
  "hot-spot": "#b2182b",
  "low-low": "#2166ac",
  "cold-spot": "#2166ac",
  "high-low": "#f4a582",
  "low-high": "#92c5de",
  "other-positive": "#fee08b",
  "negative-sa": "#c2a5cf",
  "not-significant": "#e0e0e0",
  "no-data": "#fafafa",
  "no-neighbors": "#cccccc",
};

export const GLOBAL_LABEL_COLORS: Record<string, string> = {
  "positive-sa": "#b2182b",
  "negative-sa": "#2166ac",
  "high-clustering": "#b2182b",
  "low-clustering": "#2166ac",
  "not-significant": "#e0e0e0",
  "no-data": "#fafafa",
};

export function labelColor(label: string): string {
  return LABEL_COLORS[label] ?? "#ffffff";
}

export function globalLabelColor(label: string): string {
  return GLOBAL_LABEL_COLORS[label] ?? "#ffffff";
}

export const METHOD_TITLES: Record<string, string> = {
  "local-moran": "Local Moran's I",
  "local-geary": "Local Geary's C",
  "gi-star": "Getis-Ord Gi*",
  "gi": "Getis-Ord Gi",
};

export const GLOBAL_TITLES: Record<string, string> = {
  "local-moran": "Moran's I",
  "local-geary": "Geary's C",
  "gi-star": "General G",
  "gi": "General G",
};
