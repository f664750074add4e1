/** JSON payload shapes served by the session API. */

export type Box = [number, number] | null;

export interface VertexView {
  pos: number;
  color: number;
  t: number;
  box: Box;
  frozen: boolean;
  tsys: boolean;
}

export interface SeedPayload {
  vertices: VertexView[];
  B: number[][];
  Lambda: number[][];
  ex: number[];
  arrows: [number, number][];
  lambda_ok: boolean;
  lambda_witness?: string;
}

export interface MoveView {
  s: number;
  kind: "permutation" | "mutation";
  perm?: number[];
  tbox?: Box;
  middle?: Box[];
  old?: Box;
  new?: Box;
}

export interface ChainPayload {
  start: number;
  pattern: string;
  range: [number, number];
  boxes: Box[];
  movable: number[];
  moves: MoveView[];
}

export interface HistoryOp {
  op: "mutate" | "boxmove";
  k?: number;
  s?: number;
}

export interface SessionPayload {
  session: string;
  type: string;
  range: [number, number];
  chain: ChainPayload;
  seed: SeedPayload;
  history: HistoryOp[];
  move?: MoveView;
}

export interface TypeInfo {
  label: string;
  rank: number;
  positive_roots: number;
  coxeter: number;
  edges: [number, number][];
}

export interface ConnectPayload {
  session: string;
  plan: number[];
  steps: number;
  target: { start: number; pattern: string };
}
