/** Deterministic grid layout: one column per color, height t on the vertical axis. */

import type { SeedPayload } from "./types.js";

export const COLUMN_GAP = 120;
export const ROW_GAP = 40;
export const MARGIN = 60;

export interface Point {
  x: number;
  y: number;
}

export interface Grid {
  points: Point[];
  width: number;
  height: number;
}

/** Place vertex k at the column of its color and the row of its height. */
export function gridLayout(seed: SeedPayload): Grid {
  const colors = [...new Set(seed.vertices.map((v) => v.color))].sort((a, b) => a - b);
  const column = new Map(colors.map((c, idx) => [c, idx]));
  const heights = seed.vertices.map((v) => v.t);
  const top = Math.max(...heights, 0);
  const points = seed.vertices.map((v) => ({
    x: MARGIN + (column.get(v.color) ?? 0) * COLUMN_GAP,
    y: MARGIN + (top - v.t) * (ROW_GAP / 2),
  }));
  const width = MARGIN * 2 + (colors.length - 1) * COLUMN_GAP;
  const height = MARGIN * 2 + (top - Math.min(...heights, 0)) * (ROW_GAP / 2);
  return { points, width, height };
}
