import { describe, expect, it } from "vitest";

import { Store } from "../src/state.js";

const METHODS = ["local-moran", "local-geary", "gi-star"];

function store(): Store {
  return new Store(METHODS, 0.05, 2);
}

describe("Store", () => {
  it("starts at the most recent timestep with no focus", () => {
    const s = store();
    expect(s.get().tIndex).toBe(2);
    expect(s.get().focus).toBeNull();
    expect(s.get().mode).toBe("aggregate");
  });

  it("hover sets and clears focus", () => {
    const s = store();
    s.hover(5);
    expect(s.get().focus).toBe(5);
    s.hoverOut(5);
    expect(s.get().focus).toBeNull();
  });

  it("hover-out of a different location keeps focus (last hover wins)", () => {
    const s = store();
    s.hover(5);
    s.hover(7);
    expect(s.get().focus).toBe(7);
    s.hoverOut(5);
    expect(s.get().focus).toBe(7);
  });

  it("pin persists through hover-out until unpinned", () => {
    const s = store();
    s.togglePin(3);
    expect(s.get().pinned).toBe(true);
    s.hover(9);
    s.hoverOut(9);
    expect(s.get().focus).toBe(3);
    s.togglePin(3); // clicking the pinned location unpins
    expect(s.get().pinned).toBe(false);
    expect(s.get().focus).toBeNull();
  });

  it("clicking another location moves the pin", () => {
    const s = store();
    s.togglePin(3);
    s.togglePin(8);
    expect(s.get().pinned).toBe(true);
    expect(s.get().focus).toBe(8);
  });

  it("notifies subscribers once per change", () => {
    const s = store();
    let calls = 0;
    s.subscribe(() => calls++);
    s.setTimestep(1);
    s.setTimestep(1); // no-op
    s.setMode("gi-star");
    expect(calls).toBe(2);
  });

  it("method toggling preserves canonical order and keeps one method", () => {
    const s = store();
    s.toggleMethod("local-moran");
    expect(s.get().enabledMethods).toEqual(["local-geary", "gi-star"]);
    s.toggleMethod("local-moran");
    expect(s.get().enabledMethods).toEqual(METHODS);
    s.toggleMethod("local-moran");
    s.toggleMethod("local-geary");
    s.toggleMethod("gi-star"); // refused: would leave zero methods
    expect(s.get().enabledMethods).toEqual(["gi-star"]);
  });
});
