/** Central view state: every panel renders from the same
 * (timestep, focus, mode, selection) tuple and subscribes to changes. */

import type { BrushSelection, ColorMode } from "./types.js";

export interface ViewState {
  tIndex: number;
  focus: number | null; // location index
  pinned: boolean;
  brush: BrushSelection | null;
  mode: ColorMode;
  enabledMethods: string[];
  alpha: number;
}

export type Listener = (state: ViewState) => void;

export class Store {
  private state: ViewState;
  private listeners: Listener[] = [];
  private readonly allMethods: string[];

  constructor(methods: string[], alpha: number, lastTimestep: number) {
    this.allMethods = [...methods];
    this.state = {
      tIndex: lastTimestep, // most recent time point by default
      focus: null,
      pinned: false,
      brush: null,
      mode: "aggregate",
      enabledMethods: [...methods],
      alpha,
    };
  }

  get(): ViewState {
    return this.state;
  }

  subscribe(fn: Listener): void {
    this.listeners.push(fn);
  }

  private emit(): void {
    for (const fn of this.listeners) fn(this.state);
  }

  private patch(partial: Partial<ViewState>): void {
    this.state = { ...this.state, ...partial };
    this.emit();
  }

  setTimestep(tIndex: number): void {
    if (tIndex !== this.state.tIndex) this.patch({ tIndex });
  }

  /** Hover focus; ignored while a pin is active. Last hover wins. */
  hover(i: number): void {
    if (!this.state.pinned && this.state.focus !== i) this.patch({ focus: i });
  }

  hoverOut(i: number): void {
    if (!this.state.pinned && this.state.focus === i) this.patch({ focus: null });
  }

  /** Click pins focus; clicking the pinned location unpins it. */
  togglePin(i: number): void {
    if (this.state.pinned && this.state.focus === i) {
      this.patch({ pinned: false, focus: null });
    } else {
      this.patch({ pinned: true, focus: i });
    }
  }

  setBrush(brush: BrushSelection | null): void {
    this.patch({ brush });
  }

  setMode(mode: ColorMode): void {
    if (mode !== this.state.mode) this.patch({ mode });
  }

  toggleMethod(method: string): void {
    const enabled = new Set(this.state.enabledMethods);
    if (enabled.has(method)) {
      if (enabled.size === 1) return; // keep at least one method visible
      enabled.delete(method);
    } else {
      enabled.add(method);
    }
    this.patch({ enabledMethods: this.allMethods.filter((m) => enabled.has(m)) });
  }
}
