/** Gaussian kernel density reconstruction from a quantile sketch.
 *
 * The engine ships evenly spaced order statistics rather than raw permuted
 * vectors; smoothing them with a Silverman-bandwidth Gaussian kernel gives
 * the display curve.
 */

export interface DensityCurve {
  xs: number[];
  ys: number[];
}

export function silvermanBandwidth(samples: number[]): number {
  const n = samples.length;
  const mean = samples.reduce((a, b) => a + b, 0) / n;
  const sd = Math.sqrt(samples.reduce((a, b) => a + (b - mean) ** 2, 0) / n);
  const sorted = [...samples].sort((a, b) => a - b);
  const q = (p: number) => sorted[Math.min(n - 1, Math.floor(p * n))];
  const iqr = q(0.75) - q(0.25);
  const spread = Math.min(sd, iqr / 1.34) || sd || 1;
  return 0.9 * spread * Math.pow(n, -1 / 5) || 1;
}

export function kdeCurve(samples: number[], points = 80, pad = 3): DensityCurve {
  if (samples.length === 0) return { xs: [], ys: [] };
  const h = silvermanBandwidth(samples);
  const lo = Math.min(...samples) - pad * h;
  const hi = Math.max(...samples) + pad * h;
  const xs: number[] = [];
  const ys: number[] = [];
  const inv = 1 / (samples.length * h * Math.sqrt(2 * Math.PI));
  for (let k = 0; k < points; k++) {
    const x = lo + ((hi - lo) * k) / (points - 1);
    let acc = 0;
    for (const s of samples) {
      const u = (x - s) / h;
      acc += Math.exp(-0.5 * u * u);
    }
    xs.push(x);
    ys.push(acc * inv);
  }
  return { xs, ys };
}
