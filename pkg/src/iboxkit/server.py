"""JSON payload builders and the HTTP API behind the interactive explorer."""

from __future__ import annotations

import itertools
import json
import mimetypes
import random
import re
import threading
from collections import OrderedDict, deque
from dataclasses import replace
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from iboxkit.adm_seq import (
    AdmissibleSeq,
    WindowExhaustedError,
    from_quiver,
    preset_sequence,
    validate,
)
from iboxkit.cartan import TYPE_LABELS, root_data
from iboxkit.chain import (
    Chain,
    box_move,
    boxes,
    chain_range,
    classify_move,
    connect,
    enumerate_chains,
    movable,
    movable_indices,
    move_plan,
    mutation_middle,
    slot_positions,
)
from iboxkit.ibox import IBox, ibox, kr_descriptor
from iboxkit.qchar import FMInconsistent, dimension, kr_character, verify_t_system
from iboxkit.seed import (
    Seed,
    canonical_seed,
    check_lambda_admissible,
    mutate,
    mutation_label,
    permute,
    render_arrows,
    seed_for_chain,
)


class ApiError(Exception):
    """Request failure carrying the HTTP status to report."""

    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status


_SPAN_RE = re.compile(r"^(-?\d+)\.\.(-?\d+)$")
_CHAIN_RE = re.compile(r"^(-?\d+):([LR]*)$")
_ARROW_RE = re.compile(r"^(\d+)>(\d+)$")


def parse_span(text: str) -> tuple[int, int]:
    """Parse an inclusive position span written a..b."""
    m = _SPAN_RE.match(text.strip())
    if not m:
        raise ApiError(400, f"expected a span like -3..0, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise ApiError(400, f"empty span {text!r}")
    return lo, hi


def parse_orientation(text: str) -> tuple[tuple[int, int], ...]:
    """Parse arrows written like 1>2,3>2."""
    arrows = []
    for part in text.split(","):
        m = _ARROW_RE.match(part.strip())
        if not m:
            raise ApiError(400, f"expected arrows like 1>2,3>2, got {part.strip()!r}")
        arrows.append((int(m.group(1)), int(m.group(2))))
    return tuple(arrows)


def parse_chain(seq: AdmissibleSeq, text: str) -> Chain:
    """Parse a chain literal start:pattern, e.g. 0:LLRL."""
    m = _CHAIN_RE.match(text.strip())
    if not m:
        raise ApiError(400, f"expected a chain like 0:LLRL, got {text!r}")
    return Chain(seq, int(m.group(1)), tuple(m.group(2)))


def sequence_from_config(
    label: str | None,
    orientation: str | tuple | None = None,
    window: tuple[int, int] | None = None,
    preset: str | None = None,
    big_n: int | None = None,
    big_w: int | None = None,
) -> AdmissibleSeq:
    """Build the sequence a command or request describes."""
    if not label:
        raise ApiError(400, "missing type label")
    try:
        if preset is not None:
            if orientation is not None or window is not None:
                raise ApiError(400, "a preset fixes orientation and window")
            return preset_sequence(label, preset, N=big_n, W=big_w)
        arrows = (
            parse_orientation(orientation) if isinstance(orientation, str) else orientation
        )
        return from_quiver(label, arrows, window=window)
    except ValueError as err:
        raise ApiError(400, str(err)) from None


def box_json(box: IBox | None) -> list[int] | None:
    return None if box is None else [box.a, box.b]


def sequence_payload(seq: AdmissibleSeq, lo: int, hi: int) -> dict:
    entries = [[k, *seq.pair(k)] for k in range(lo, hi + 1)]
    return {"type": seq.root.label, "window": [lo, hi], "entries": entries}


def chain_payload(chain: Chain) -> dict:
    lo, hi = chain_range(chain)
    moves = []
    for s in movable_indices(chain):
        result = classify_move(chain, s)
        entry: dict = {"s": s, "kind": result.kind}
        if result.kind == "permutation":
            entry["perm"] = list(result.perm)
        else:
            entry["tbox"] = box_json(result.tbox)
            entry["middle"] = [box_json(m) for m in mutation_middle(chain, s)]
            entry["old"] = box_json(result.old_box)
            entry["new"] = box_json(result.new_box)
        moves.append(entry)
    return {
        "start": chain.start,
        "pattern": "".join(chain.pattern),
        "range": [lo, hi],
        "boxes": [box_json(b) for b in boxes(chain)],
        "movable": [m["s"] for m in moves],
        "moves": moves,
    }


def seed_payload(seed: Seed, chain: Chain) -> dict:
    seq = seed.seq
    positions = slot_positions(chain)
    ok, witness = check_lambda_admissible(seed)
    vertices = []
    for k, pos in enumerate(positions):
        color, t = seq.pair(pos)
        frozen = seed.is_frozen(k)
        vertices.append(
            {
                "pos": pos,
                "color": color,
                "t": t,
                "box": box_json(seed.labels[k]),
                "frozen": frozen,
                "tsys": bool(not frozen and mutation_label(seed, k) is not None),
            }
        )
    payload = {
        "vertices": vertices,
        "B": [list(row) for row in seed.bmat],
        "Lambda": [list(row) for row in seed.lam],
        "ex": list(seed.ex),
        "arrows": [list(a) for a in sorted(render_arrows(seed))],
        "lambda_ok": ok,
    }
    if witness is not None:
        payload["lambda_witness"] = list(witness)
    return payload


def qchar_payload(seq: AdmissibleSeq, box: IBox) -> dict:
    char = kr_character(seq, box)
    desc = kr_descriptor(seq, box)
    terms = [
        {"coeff": char[mono], "factors": [[i, t, e] for (i, t), e in mono]}
        for mono in sorted(char)
    ]
    return {
        "box": [box.a, box.b],
        "color": desc.color,
        "count": desc.count,
        "heights": list(desc.heights),
        "dimension": dimension(char),
        "terms": terms,
    }


def verify_report(
    seq: AdmissibleSeq, lo: int, hi: int, inject_lambda_error: bool = False
) -> dict:
    """Aggregated exact checks: sequence, T-systems, pairing, involution, connectivity."""
    checks: list[dict] = []

    def add(name: str, ok: bool, detail: str):
        checks.append({"name": name, "ok": bool(ok), "detail": detail})

    data = seq.root
    try:
        validate(seq)
        ell, h = data.longest_len, data.coxeter_h
        shifts = 0
        for k in range(max(lo, seq.window[0]), min(hi, seq.window[1] - ell) + 1):
            i, t = seq.pair(k)
            si, st = seq.pair(k + ell)
            if si != data.star_of(i) or st != t + h:
                raise ValueError(f"periodicity fails at position {k}")
            shifts += 1
        add("sequence", True, f"conditions hold; {shifts} periodicity shifts checked")
    except ValueError as err:
        add("sequence", False, str(err))

    peak = 6 if data.label in ("A1", "A2", "A3", "A4", "D4", "D5") else 3
    verified, skipped, failure = 0, 0, None
    for a in range(lo, hi + 1):
        if verified >= 40 or failure:
            break
        for b in range(a + 1, min(a + peak, hi) + 1):
            try:
                box = ibox(seq, a, b)
            except ValueError:
                continue
            try:
                ok = verify_t_system(seq, box)
            except (WindowExhaustedError, FMInconsistent):
                skipped += 1
                continue
            except ValueError:
                skipped += 1
                continue
            if not ok:
                failure = [a, b]
                break
            verified += 1
            if verified >= 40:
                break
    if failure:
        add("tsystem", False, f"character identity fails at box {failure}")
    else:
        note = f"verified {verified} boxes"
        if skipped:
            note += f", skipped {skipped}"
        add("tsystem", True, note)

    seed = canonical_seed(seq, lo, hi)
    if inject_lambda_error:
        lam = [list(row) for row in seed.lam]
        lam[0][-1] += 1
        seed = replace(seed, lam=tuple(tuple(row) for row in lam))
    ok, witness = check_lambda_admissible(seed)
    if not ok:
        add(
            "lambda",
            False,
            f"vertex {witness[0]} against exchangeable {witness[1]}: "
            f"got {witness[2]}, want {witness[3]}",
        )
    else:
        bad = None
        for k in seed.ex:
            mok, mwit = check_lambda_admissible(mutate(seed, k))
            if not mok:
                bad = (k, mwit)
                break
        if bad:
            add("lambda", False, f"fails after mutation at {bad[0]}: witness {bad[1]}")
        else:
            add(
                "lambda",
                True,
                f"compatible at the seed and after {len(seed.ex)} single mutations",
            )

    involutive = all(mutate(mutate(seed, k), k) == seed for k in seed.ex)
    add("involution", involutive, f"checked {len(seed.ex)} exchangeable vertices")

    size = hi - lo + 1
    want = 2 ** (size - 1)
    start = Chain(seq, hi, ("L",) * (size - 1))
    if size <= 13:
        seen = {start}
        queue = deque([start])
        sound = True
        while queue:
            cur = queue.popleft()
            for s in movable_indices(cur):
                nxt = box_move(cur, s)
                if box_move(nxt, s) != cur or chain_range(nxt) != (lo, hi):
                    sound = False
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        add(
            "connectivity",
            sound and len(seen) == want,
            f"reached {len(seen)} of {want} chains",
        )
    else:
        rng = random.Random(0)
        sound = True
        for _ in range(10):
            pattern = tuple(rng.choice("LR") for _ in range(size - 1))
            target = Chain(seq, lo + pattern.count("L"), pattern)
            cur = start
            for s in move_plan(cur, target):
                cur = box_move(cur, s)
            if cur != target:
                sound = False
                break
        add("connectivity", sound, "move plans reach 10 sampled chains")

    return {"ok": all(c["ok"] for c in checks), "checks": checks}


class SessionStore:
    """In-memory sessions with least-recently-used eviction."""

    def __init__(self, cap: int = 256):
        self.cap = cap
        self._items: OrderedDict[str, dict] = OrderedDict()
        self._guard = threading.Lock()
        self._ids = itertools.count(1)

    def create(self, state: dict) -> str:
        with self._guard:
            sid = f"s{next(self._ids)}"
            state["lock"] = threading.Lock()
            self._items[sid] = state
            while len(self._items) > self.cap:
                self._items.popitem(last=False)
            return sid

    def get(self, sid) -> dict:
        with self._guard:
            state = self._items.get(sid)
            if state is None:
                raise ApiError(404, f"unknown session {sid!r}")
            self._items.move_to_end(sid)
            return state

    def __len__(self) -> int:
        with self._guard:
            return len(self._items)


def _session_payload(sid: str, state: dict) -> dict:
    return {
        "session": sid,
        "type": state["seq"].root.label,
        "range": list(chain_range(state["chain"])),
        "chain": chain_payload(state["chain"]),
        "seed": seed_payload(state["seed"], state["chain"]),
        "history": [dict(op) for op in state["history"]],
    }


def _require_int(body: dict, key: str) -> int:
    value = body.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ApiError(400, f"field {key!r} must be an integer")
    return value


class ExplorerApi:
    """Maps explorer requests onto the calculus; owns the session table."""

    def __init__(self, session_cap: int = 256):
        self.sessions = SessionStore(session_cap)

    def handle(self, method: str, path: str, params: dict, body: dict):
        routes = {
            ("GET", "/types"): lambda: self.get_types(),
            ("GET", "/sequence"): lambda: self.get_sequence(params),
            ("GET", "/chains"): lambda: self.get_chains(params),
            ("GET", "/seed"): lambda: self.get_seed(params),
            ("GET", "/qchar"): lambda: self.get_qchar(params),
            ("GET", "/verify"): lambda: self.get_verify(params),
            ("POST", "/mutate"): lambda: self.post_mutate(body),
            ("POST", "/boxmove"): lambda: self.post_boxmove(body),
            ("POST", "/connect"): lambda: self.post_connect(body),
        }
        handler = routes.get((method, path))
        if handler is None:
            raise ApiError(404, f"no endpoint {method} {path}")
        return 200, handler()

    def _sequence(self, params: dict) -> AdmissibleSeq:
        window = parse_span(params["window"]) if params.get("window") else None
        big_n = int(params["N"]) if params.get("N") else None
        big_w = int(params["W"]) if params.get("W") else None
        return sequence_from_config(
            params.get("type"),
            orientation=params.get("orientation"),
            window=window,
            preset=params.get("preset"),
            big_n=big_n,
            big_w=big_w,
        )

    def get_types(self) -> dict:
        out = []
        for label in TYPE_LABELS:
            data = root_data(label)
            out.append(
                {
                    "label": label,
                    "rank": data.n,
                    "positive_roots": data.longest_len,
                    "coxeter": data.coxeter_h,
                    "edges": [list(e) for e in data.edges],
                }
            )
        return {"types": out}

    def get_sequence(self, params: dict) -> dict:
        seq = self._sequence(params)
        if params.get("window") or params.get("preset"):
            lo, hi = seq.window if params.get("preset") else parse_span(params["window"])
        else:
            ell = seq.root.longest_len
            lo, hi = 1 - ell, ell
        return sequence_payload(seq, lo, hi)

    def get_chains(self, params: dict) -> dict:
        if not params.get("range"):
            raise ApiError(400, "missing range")
        lo, hi = parse_span(params["range"])
        if hi - lo + 1 > 12:
            raise ApiError(400, "range too large to enumerate")
        seq = self._sequence(params)
        chains = enumerate_chains(seq, lo, hi)
        return {
            "range": [lo, hi],
            "count": len(chains),
            "chains": [
                {"start": c.start, "pattern": "".join(c.pattern)} for c in chains
            ],
        }

    def get_seed(self, params: dict) -> dict:
        seq = self._sequence(params)
        if params.get("chain"):
            chain = parse_chain(seq, params["chain"])
            lo, hi = chain_range(chain)
            if params.get("range") and parse_span(params["range"]) != (lo, hi):
                raise ApiError(400, "range does not match the chain")
            seed = seed_for_chain(seq, chain)
        else:
            if not params.get("range"):
                raise ApiError(400, "missing range")
            lo, hi = parse_span(params["range"])
            chain = Chain(seq, hi, ("L",) * (hi - lo))
            seed = canonical_seed(seq, lo, hi)
        state = {"seq": seq, "chain": chain, "seed": seed, "history": []}
        sid = self.sessions.create(state)
        return _session_payload(sid, state)

    def get_qchar(self, params: dict) -> dict:
        seq = self._sequence(params)
        if not params.get("box"):
            raise ApiError(400, "missing box")
        a, b = parse_span(params["box"])
        return qchar_payload(seq, ibox(seq, a, b))

    def get_verify(self, params: dict) -> dict:
        seq = self._sequence(params)
        if not params.get("range"):
            raise ApiError(400, "missing range")
        lo, hi = parse_span(params["range"])
        inject = params.get("inject") in ("1", "true", "yes")
        return verify_report(seq, lo, hi, inject_lambda_error=inject)

    def post_mutate(self, body: dict) -> dict:
        sid = body.get("session")
        k = _require_int(body, "k")
        state = self.sessions.get(sid)
        with state["lock"]:
            seed = state["seed"]
            if not 0 <= k < seed.size():
                raise ApiError(400, f"vertex {k} out of range")
            if seed.is_frozen(k):
                raise ApiError(409, f"vertex {k} is frozen")
            state["seed"] = mutate(seed, k)
            state["history"].append({"op": "mutate", "k": k})
            return _session_payload(sid, state)

    def post_boxmove(self, body: dict) -> dict:
        sid = body.get("session")
        s = _require_int(body, "s")
        state = self.sessions.get(sid)
        with state["lock"]:
            chain = state["chain"]
            if not movable(chain, s):
                raise ApiError(409, f"box move {s} does not apply to this chain")
            result = classify_move(chain, s)
            if result.kind == "mutation":
                state["seed"] = mutate(state["seed"], s - 1)
            else:
                state["seed"] = permute(state["seed"], result.perm)
            state["chain"] = result.moved
            state["history"].append({"op": "boxmove", "s": s})
            payload = _session_payload(sid, state)
            move: dict = {"s": s, "kind": result.kind}
            if result.perm is not None:
                move["perm"] = list(result.perm)
            if result.tbox is not None:
                move["tbox"] = box_json(result.tbox)
                move["old"] = box_json(result.old_box)
                move["new"] = box_json(result.new_box)
            payload["move"] = move
            return payload

    def post_connect(self, body: dict) -> dict:
        sid = body.get("session")
        state = self.sessions.get(sid)
        target = body.get("target")
        with state["lock"]:
            seq, chain = state["seq"], state["chain"]
            if isinstance(target, str):
                goal = parse_chain(seq, target)
            elif isinstance(target, dict):
                goal = Chain(seq, _require_int(target, "start"), tuple(target.get("pattern", "")))
            else:
                raise ApiError(400, "missing target chain")
            if chain_range(goal) != chain_range(chain):
                raise ApiError(409, "target range differs from the session range")
            plan = connect(chain, goal)
            return {
                "session": sid,
                "plan": list(plan),
                "steps": len(plan),
                "target": {"start": goal.start, "pattern": "".join(goal.pattern)},
            }


_API_PATHS = (
    "/types",
    "/sequence",
    "/chains",
    "/seed",
    "/qchar",
    "/verify",
    "/mutate",
    "/boxmove",
    "/connect",
)


class _Handler(BaseHTTPRequestHandler):
    api: ExplorerApi
    static_dir: Path | None = None

    def log_message(self, fmt, *args):
        pass

    def _send_json(self, status: int, payload) -> None:
        body = json.dumps(payload, sort_keys=True).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self._cors()
        self.end_headers()
        self.wfile.write(body)

    def _cors(self) -> None:
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")

    def _serve_static(self, path: str) -> bool:
        if self.static_dir is None:
            return False
        name = path.lstrip("/") or "index.html"
        target = (self.static_dir / name).resolve()
        root = self.static_dir.resolve()
        if root not in target.parents and target != root:
            return False
        if not target.is_file():
            return False
        body = target.read_bytes()
        ctype = mimetypes.guess_type(target.name)[0] or "application/octet-stream"
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self._cors()
        self.end_headers()
        self.wfile.write(body)
        return True

    def _run(self, method: str) -> None:
        url = urlparse(self.path)
        if method == "GET" and url.path not in _API_PATHS:
            if self._serve_static(url.path):
                return
        params = {key: values[0] for key, values in parse_qs(url.query).items()}
        body: dict = {}
        if method == "POST":
            length = int(self.headers.get("Content-Length") or 0)
            raw = self.rfile.read(length) if length else b""
            try:
                body = json.loads(raw) if raw else {}
            except json.JSONDecodeError:
                self._send_json(400, {"error": "request body is not JSON"})
                return
            if not isinstance(body, dict):
                self._send_json(400, {"error": "request body must be an object"})
                return
        try:
            status, payload = self.api.handle(method, url.path, params, body)
        except ApiError as err:
            self._send_json(err.status, {"error": str(err)})
            return
        except ValueError as err:
            self._send_json(400, {"error": str(err)})
            return
        self._send_json(status, payload)

    def do_GET(self):
        self._run("GET")

    def do_POST(self):
        self._run("POST")

    def do_OPTIONS(self):
        self.send_response(204)
        self._cors()
        self.send_header("Content-Length", "0")
        self.end_headers()


def make_server(
    host: str = "127.0.0.1", port: int = 0, static_dir: str | None = None
) -> ThreadingHTTPServer:
    """Build the explorer server; port 0 picks a free port."""
    handler = type(
        "BoundHandler",
        (_Handler,),
        {
            "api": ExplorerApi(),
            "static_dir": Path(static_dir) if static_dir else None,
        },
    )
    return ThreadingHTTPServer((host, port), handler)


def run_server(host: str, port: int, static_dir: str | None = None) -> None:
    """Serve until interrupted."""
    server = make_server(host, port, static_dir)
    print(f"serving on http://{host}:{server.server_address[1]}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
