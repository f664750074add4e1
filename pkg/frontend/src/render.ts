/** Seed diagram model and its SVG form; pure data in, stable markup out. */

import { gridLayout } from "./layout.js";
import type { Box, SeedPayload } from "./types.js";

export interface VertexGlyph {
  k: number;
  x: number;
  y: number;
  boxed: boolean;
  clickable: boolean;
  label: string;
  coordinate: string;
  tsys: boolean;
}

export interface ArrowGlyph {
  from: number;
  to: number;
  count: number;
}

export interface RenderModel {
  vertices: VertexGlyph[];
  arrows: ArrowGlyph[];
  lambdaOk: boolean;
  lambdaWitness: string | null;
  width: number;
  height: number;
}

export function boxLabel(box: Box): string {
  return box === null ? "?" : `[${box[0]},${box[1]}]`;
}

/** Message for a payload that does not look like a seed, else null. */
export function schemaError(seed: unknown): string | null {
  if (seed === null || typeof seed !== "object") return "seed payload is not an object";
  const record = seed as Partial<SeedPayload>;
  if (!Array.isArray(record.vertices)) return "seed payload has no vertices";
  if (!Array.isArray(record.arrows)) return "seed payload has no arrows";
  if (!Array.isArray(record.ex)) return "seed payload has no exchangeable list";
  if (typeof record.lambda_ok !== "boolean") return "seed payload has no pairing flag";
  return null;
}

export function renderSeed(seed: SeedPayload): RenderModel {
  const grid = gridLayout(seed);
  const exchangeable = new Set(seed.ex);
  const vertices = seed.vertices.map((v, k) => ({
    k,
    x: grid.points[k]?.x ?? 0,
    y: grid.points[k]?.y ?? 0,
    boxed: v.frozen,
    clickable: exchangeable.has(k),
    label: boxLabel(v.box),
    coordinate: `(${v.color},${v.t})`,
    tsys: v.tsys,
  }));
  const grouped = new Map<string, ArrowGlyph>();
  for (const [from, to] of seed.arrows) {
    const key = `${from}>${to}`;
    const entry = grouped.get(key);
    if (entry) entry.count += 1;
    else grouped.set(key, { from, to, count: 1 });
  }
  const arrows = [...grouped.values()].sort((a, b) => a.from - b.from || a.to - b.to);
  return {
    vertices,
    arrows,
    lambdaOk: seed.lambda_ok,
    lambdaWitness: seed.lambda_witness ?? null,
    width: grid.width,
    height: grid.height,
  };
}

const RADIUS = 16;

/** Stable SVG markup: vertices in index order, arrows in sorted order. */
export function toSvg(model: RenderModel): string {
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${model.width} ${model.height}">`,
    `<defs><marker id="tip" markerWidth="8" markerHeight="8" refX="7" refY="4" orient="auto">` +
      `<path d="M0,0 L8,4 L0,8 z"/></marker></defs>`,
  ];
  for (const arrow of model.arrows) {
    const a = model.vertices[arrow.from];
    const b = model.vertices[arrow.to];
    if (!a || !b) continue;
    const dx = b.x - a.x;
    const dy = b.y - a.y;
    const len = Math.hypot(dx, dy) || 1;
    const x1 = a.x + (dx / len) * RADIUS;
    const y1 = a.y + (dy / len) * RADIUS;
    const x2 = b.x - (dx / len) * (RADIUS + 4);
    const y2 = b.y - (dy / len) * (RADIUS + 4);
    const label =
      arrow.count > 1
        ? `<text class="mult" x="${(x1 + x2) / 2}" y="${(y1 + y2) / 2 - 4}">${arrow.count}</text>`
        : "";
    parts.push(
      `<g class="arrow" data-from="${arrow.from}" data-to="${arrow.to}">` +
        `<line x1="${x1}" y1="${y1}" x2="${x2}" y2="${y2}" marker-end="url(#tip)"/>${label}</g>`,
    );
  }
  for (const v of model.vertices) {
    const shape = v.boxed
      ? `<rect x="${v.x - RADIUS}" y="${v.y - RADIUS}" width="${2 * RADIUS}" height="${2 * RADIUS}"/>`
      : `<circle cx="${v.x}" cy="${v.y}" r="${RADIUS}"/>`;
    const classes = ["vertex"];
    if (v.boxed) classes.push("frozen");
    if (v.clickable) classes.push("clickable");
    if (v.tsys) classes.push("tsys");
    parts.push(
      `<g class="${classes.join(" ")}" data-k="${v.k}">${shape}` +
        `<text class="box" x="${v.x}" y="${v.y + 4}">${v.label}</text>` +
        `<text class="coord" x="${v.x}" y="${v.y + RADIUS + 12}">${v.coordinate}</text></g>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}
