/** Minimal linear scale and tick helpers. */

export interface Scale {
  (v: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const fn = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  fn.domain = domain;
  fn.range = range;
  return fn;
}

/** Extend [min, max] of the data by a fraction on both sides. */
export function padExtent(values: number[], pad = 0.05): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (!isFinite(lo)) return [0, 1];
  if (lo === hi) {
    const eps = Math.abs(lo) || 1;
    return [lo - eps * 0.5, hi + eps * 0.5];
  }
  const d = (hi - lo) * pad;
  return [lo - d, hi + d];
}

export function ticks(domain: [number, number], count = 5): number[] {
  const [lo, hi] = domain;
  const span = hi - lo;
  if (span <= 0) return [lo];
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const err = (span / count) / step;
  const mult = err >= 7.5 ? 10 : err >= 3.5 ? 5 : err >= 1.5 ? 2 : 1;
  const s = step * mult;
  const start = Math.ceil(lo / s) * s;
  const out: number[] = [];
  for (let v = start; v <= hi + s * 1e-9; v += s) out.push(Math.round(v / s) * s);
  return out;
}

export function fmt(v: number): string {
  if (v === 0) return "0";
  const av = Math.abs(v);
  if (av >= 1000 || av < 0.001) return v.toExponential(1);
  return String(Math.round(v * 1000) / 1000);
}
