/** Frozen session payload for a rank-2 seed on the range [-3, 0]. */

import type { SessionPayload } from "../src/types.js";

const A2_SESSION: SessionPayload = {
  session: "s1",
  type: "A2",
  range: [-3, 0],
  chain: {
    start: 0,
    pattern: "LLL",
    range: [-3, 0],
    boxes: [
      [0, 0],
      [-1, -1],
      [-2, 0],
      [-3, -1],
    ],
    movable: [1],
    moves: [{ kind: "permutation", perm: [1, 0, 2, 3], s: 1 }],
  },
  seed: {
    B: [
      [0, -1],
      [1, 0],
      [-1, 1],
      [0, -1],
    ],
    Lambda: [
      [0, -1, 1, 1],
      [1, 0, 0, 1],
      [-1, 0, 0, 1],
      [-1, -1, -1, 0],
    ],
    arrows: [
      [0, 2],
      [1, 0],
      [1, 3],
      [2, 1],
      [3, 2],
    ],
    ex: [0, 1],
    lambda_ok: true,
    vertices: [
      { box: [0, 0], color: 1, frozen: false, pos: 0, t: 0, tsys: true },
      { box: [-1, -1], color: 2, frozen: false, pos: -1, t: -1, tsys: false },
      { box: [-2, 0], color: 1, frozen: true, pos: -2, t: -2, tsys: false },
      { box: [-3, -1], color: 2, frozen: true, pos: -3, t: -3, tsys: false },
    ],
  },
  history: [],
};

export function a2Session(): SessionPayload {
  return structuredClone(A2_SESSION);
}

export function jsonResponse(payload: unknown, status = 200): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}
