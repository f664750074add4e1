import { expect, test } from "vitest";

import { COLUMN_GAP, gridLayout, MARGIN, ROW_GAP } from "../src/layout.js";
import { renderSeed, schemaError, toSvg } from "../src/render.js";
import { canonicalJson } from "../src/state.js";
import { a2Session } from "./fixtures.js";

test("canonical json matches the server encoder byte for byte", () => {
  const value = { b: 1, a: [true, null, "x"], c: { z: 2, y: [1.5, -3] } };
  expect(canonicalJson(value)).toBe('{"a": [true, null, "x"], "b": 1, "c": {"y": [1.5, -3], "z": 2}}');
  expect(canonicalJson([])).toBe("[]");
  expect(canonicalJson({})).toBe("{}");
});

test("grid layout puts colors in columns and heights in rows", () => {
  const seed = a2Session().seed;
  const grid = gridLayout(seed);
  expect(grid.points).toHaveLength(4);
  const byColor = new Map(seed.vertices.map((v, k) => [k, v]));
  for (const [k, v] of byColor) {
    const point = grid.points[k]!;
    expect(point.x).toBe(MARGIN + (v.color - 1) * COLUMN_GAP);
    expect(point.y).toBe(MARGIN + (0 - v.t) * (ROW_GAP / 2));
  }
  expect(grid.width).toBe(MARGIN * 2 + COLUMN_GAP);
  expect(grid.height).toBe(MARGIN * 2 + 3 * (ROW_GAP / 2));
});

test("render model counts vertices, arrows and frozen boxes", () => {
  const model = renderSeed(a2Session().seed);
  expect(model.vertices).toHaveLength(4);
  expect(model.arrows).toHaveLength(5);
  expect(model.arrows.reduce((total, a) => total + a.count, 0)).toBe(5);
  expect(model.vertices.filter((v) => v.boxed).map((v) => v.k)).toEqual([2, 3]);
  expect(model.vertices.filter((v) => v.clickable).map((v) => v.k)).toEqual([0, 1]);
  expect(model.vertices[0]!.label).toBe("[0,0]");
  expect(model.vertices[0]!.tsys).toBe(true);
  expect(model.lambdaOk).toBe(true);
});

test("render model groups repeated arrows into multiplicities", () => {
  const seed = a2Session().seed;
  seed.arrows = [
    [0, 2],
    [0, 2],
    [1, 0],
  ];
  const model = renderSeed(seed);
  expect(model.arrows).toEqual([
    { from: 0, to: 2, count: 2 },
    { from: 1, to: 0, count: 1 },
  ]);
});

test("svg output is stable and marks interactive vertices", () => {
  const model = renderSeed(a2Session().seed);
  const svg = toSvg(model);
  expect(toSvg(renderSeed(a2Session().seed))).toBe(svg);
  expect(svg.match(/<rect /g)).toHaveLength(2);
  expect(svg.match(/<circle /g)).toHaveLength(2);
  expect(svg.match(/class="arrow"/g)).toHaveLength(5);
  expect(svg).toContain('data-k="0"');
  expect(svg).toContain("clickable");
});

test("seed without exchangeable vertices renders nothing clickable", () => {
  const seed = a2Session().seed;
  seed.ex = [];
  const model = renderSeed(seed);
  expect(model.vertices.some((v) => v.clickable)).toBe(false);
  expect(toSvg(model)).not.toContain("clickable");
});

test("schema errors flag payloads that do not look like seeds", () => {
  expect(schemaError(a2Session().seed)).toBeNull();
  expect(schemaError(null)).toMatch(/not an object/);
  expect(schemaError({})).toMatch(/vertices/);
  expect(schemaError({ vertices: [] })).toMatch(/arrows/);
  expect(schemaError({ vertices: [], arrows: [] })).toMatch(/exchangeable/);
  expect(schemaError({ vertices: [], arrows: [], ex: [] })).toMatch(/pairing/);
});
