/** Tiny DOM/SVG construction helpers shared by the panels. */

const SVG_NS = "http://www.w3.org/2000/svg";

export function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number> = {},
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, String(v));
  return el;
}

export function htmlEl<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className = "",
  text = "",
): HTMLElementTagNameMap[K] {
  const el = document.createElement(tag);
  if (className) el.className = className;
  if (text) el.textContent = text;
  return el;
}

export function clear(el: Element): void {
  while (el.firstChild) el.removeChild(el.firstChild);
}

/** Map a mouse event to viewBox coordinates (layout-less environments fall
 * back to treating client coordinates as viewBox coordinates). */
export function pointerXY(svg: SVGSVGElement, ev: MouseEvent): [number, number] {
  const rect = svg.getBoundingClientRect();
  const parts = (svg.getAttribute("viewBox") ?? "").split(/\s+/).map(Number);
  const [vbW, vbH] = parts.length === 4 ? [parts[2], parts[3]] : [0, 0];
  const sx = rect.width > 0 && vbW > 0 ? vbW / rect.width : 1;
  const sy = rect.height > 0 && vbH > 0 ? vbH / rect.height : 1;
  return [(ev.clientX - rect.left) * sx, (ev.clientY - rect.top) * sy];
}
