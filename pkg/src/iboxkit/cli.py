"""Command-line frontend: sequences, chains, seeds, characters, checks, serving."""

from __future__ import annotations

import argparse
import json
import re
import sys
from collections import Counter
from pathlib import Path

from iboxkit.adm_seq import AdmissibleSeq, validate
from iboxkit.chain import Chain, boxes, connect, envelope, slot_positions
from iboxkit.ibox import ibox
from iboxkit.laurent import Laurent
from iboxkit.qchar import verify_t_system
from iboxkit.seed import Seed, canonical_seed, render_arrows, seed_for_chain
from iboxkit.server import (
    ApiError,
    chain_payload,
    parse_chain,
    parse_span,
    qchar_payload,
    run_server,
    seed_payload,
    sequence_from_config,
    sequence_payload,
    verify_report,
)


def laurent_text(poly: Laurent) -> str:
    """Human form of a sparse Laurent polynomial, terms in exponent order."""
    if not poly:
        return "0"
    parts = []
    for expo in sorted(poly):
        coeff = poly[expo]
        body = "*".join(
            f"x{v}" + (f"^{e}" if e != 1 else "") for v, e in enumerate(expo) if e
        )
        if not body:
            parts.append(str(coeff))
        elif coeff == 1:
            parts.append(body)
        elif coeff == -1:
            parts.append(f"-{body}")
        else:
            parts.append(f"{coeff}*{body}")
    return " + ".join(parts)


def laurent_json(poly: Laurent) -> list:
    return [[list(expo), poly[expo]] for expo in sorted(poly)]


def seed_dot(seed: Seed, chain: Chain) -> str:
    """DOT text for the seed quiver; output is stable under re-runs."""
    seq = seed.seq
    positions = slot_positions(chain)
    lines = ["digraph seed {", "  rankdir=BT;"]
    for k in range(seed.size()):
        color, t = seq.pair(positions[k])
        label = f"{k}: ({color},{t})"
        box = seed.labels[k]
        if box is not None:
            label += f" [{box.a},{box.b}]"
        shape = "box" if seed.is_frozen(k) else "ellipse"
        lines.append(f'  v{k} [label="{label}", shape={shape}];')
    arrows = Counter(render_arrows(seed))
    for u, v in sorted(arrows):
        attr = f' [label="{arrows[(u, v)]}"]' if arrows[(u, v)] > 1 else ""
        lines.append(f"  v{u} -> v{v}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _add_sequence_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--type", required=True, help="Dynkin label like A2, D4, E6")
    p.add_argument("--orientation", help="quiver arrows like 1>2,3>2 (default bipartite)")
    p.add_argument("--window", help="window span a..b")
    p.add_argument("--preset", choices=("CN", "Cminus", "CQ"), help="named window")
    p.add_argument("--N", type=int, dest="big_n", help="block count for preset CN")
    p.add_argument("--W", type=int, dest="big_w", help="width for preset Cminus")


def _sequence(args) -> AdmissibleSeq:
    window = parse_span(args.window) if args.window else None
    return sequence_from_config(
        args.type,
        orientation=args.orientation,
        window=window,
        preset=args.preset,
        big_n=args.big_n,
        big_w=args.big_w,
    )


def cmd_sequence(args) -> int:
    seq = _sequence(args)
    if args.window:
        lo, hi = parse_span(args.window)
    elif args.preset:
        lo, hi = seq.window
    else:
        ell = seq.root.longest_len
        lo, hi = 1 - ell, ell
    validate(seq)
    payload = sequence_payload(seq, lo, hi)
    if args.json:
        print(json.dumps(payload, sort_keys=True))
        return 0
    for k, color, t in payload["entries"]:
        print(f"{k} {color} {t}")
    print(f"valid: window [{lo}, {hi}] passes the sequence conditions")
    return 0


def cmd_chain(args) -> int:
    seq = _sequence(args)
    chain = parse_chain(seq, args.chain)
    payload = chain_payload(chain)
    if args.json:
        print(json.dumps(payload, sort_keys=True))
        return 0
    positions = slot_positions(chain)
    for k, box in enumerate(boxes(chain)):
        color, t = seq.pair(positions[k])
        lo, hi = envelope(chain, k + 1)
        print(
            f"slot {k}: pos {positions[k]} color {color} t {t} "
            f"box [{box.a}, {box.b}] envelope [{lo}, {hi}]"
        )
    movable = payload["movable"]
    print("movable:", " ".join(str(s) for s in movable) if movable else "none")
    for move in payload["moves"]:
        if move["kind"] == "mutation":
            print(
                f"  B_{move['s']}: mutation at T-box {move['tbox']}, "
                f"{move['old']} -> {move['new']}"
            )
        else:
            print(f"  B_{move['s']}: permutation {move['perm']}")
    return 0


def cmd_connect(args) -> int:
    seq = _sequence(args)
    source = parse_chain(seq, args.source)
    target = parse_chain(seq, args.target)
    plan = connect(source, target)
    if args.json:
        print(json.dumps({"moves": list(plan), "steps": len(plan)}, sort_keys=True))
    elif plan:
        print(" ".join(str(s) for s in plan))
    else:
        print("(already there)")
    return 0


def cmd_seed(args) -> int:
    seq = _sequence(args)
    if args.chain:
        chain = parse_chain(seq, args.chain)
        seed = seed_for_chain(seq, chain, track_vars=args.track)
    elif args.range:
        lo, hi = parse_span(args.range)
        chain = Chain(seq, hi, ("L",) * (hi - lo))
        seed = canonical_seed(seq, lo, hi, track_vars=args.track)
    else:
        raise ApiError(400, "need --range or --chain")
    if args.dot:
        text = seed_dot(seed, chain)
        if args.dot == "-":
            print(text, end="")
            return 0
        Path(args.dot).write_text(text)
    payload = seed_payload(seed, chain)
    if args.track:
        payload["x"] = [laurent_json(x) for x in seed.xvars]
    if args.json:
        print(json.dumps(payload, sort_keys=True))
        return 0
    for k, vertex in enumerate(payload["vertices"]):
        role = "frozen" if vertex["frozen"] else "exchangeable"
        box = vertex["box"] if vertex["box"] is not None else "-"
        print(
            f"vertex {k}: pos {vertex['pos']} color {vertex['color']} "
            f"t {vertex['t']} box {box} {role}"
        )
    print(f"lambda_ok: {str(payload['lambda_ok']).lower()}")
    if args.track:
        for k, poly in enumerate(seed.xvars):
            print(f"x{k} = {laurent_text(poly)}")
    return 0


def cmd_qchar(args) -> int:
    seq = _sequence(args)
    a, b = parse_span(args.box)
    box = ibox(seq, a, b)
    if args.tsystem:
        ok = verify_t_system(seq, box)
        print(json.dumps({"box": [a, b], "identity": "tsystem", "ok": ok}, sort_keys=True))
        return 0 if ok else 1
    payload = qchar_payload(seq, box)
    if args.json:
        print(json.dumps(payload, sort_keys=True))
        return 0
    for term in payload["terms"]:
        factors = " ".join(f"Y[{i},{t}]^{e}" for i, t, e in term["factors"])
        print(f"{term['coeff']}  {factors}".rstrip())
    print(f"dimension: {payload['dimension']}")
    return 0


def cmd_verify(args) -> int:
    seq = _sequence(args)
    if args.range:
        lo, hi = parse_span(args.range)
    else:
        lo, hi = 1 - seq.root.longest_len, 0
    report = verify_report(seq, lo, hi, inject_lambda_error=args.inject_lambda_error)
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        for check in report["checks"]:
            mark = "PASS" if check["ok"] else "FAIL"
            print(f"{check['name']}: {mark} ({check['detail']})")
    return 0 if report["ok"] else 1


def cmd_serve(args) -> int:
    run_server(args.host, args.port, args.static)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iboxkit",
        description="Interval calculus on admissible sequences: boxes, chains, seeds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sequence", help="list a sequence as 'k i t' lines")
    _add_sequence_options(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("chain", help="boxes, envelopes and moves of a chain")
    _add_sequence_options(p)
    p.add_argument("chain", help="chain literal like 0:LLRL")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("connect", help="box-move plan from one chain to another")
    _add_sequence_options(p)
    p.add_argument("source", help="chain literal")
    p.add_argument("target", help="chain literal")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_connect)

    p = sub.add_parser("seed", help="seed of a range or chain, optionally as DOT")
    _add_sequence_options(p)
    p.add_argument("--range", help="range span a..b for the canonical chain")
    p.add_argument("--chain", help="chain literal to transport onto")
    p.add_argument("--dot", help="write the quiver as DOT here, '-' for stdout")
    p.add_argument("--track", action="store_true", help="carry cluster variables")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_seed)

    p = sub.add_parser("qchar", help="character dump or exchange identity for a box")
    _add_sequence_options(p)
    p.add_argument("--box", required=True, help="box span a..b")
    p.add_argument("--tsystem", action="store_true", help="check the exchange identity")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_qchar)

    p = sub.add_parser("verify", help="aggregated exact checks over a range")
    _add_sequence_options(p)
    p.add_argument("--range", help="range span a..b (default one block)")
    p.add_argument(
        "--inject-lambda-error",
        action="store_true",
        help="corrupt the pairing to demonstrate failure reporting",
    )
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("serve", help="serve the JSON API for the explorer")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8642)
    p.add_argument("--static", help="directory of explorer assets to serve")
    p.set_defaults(func=cmd_serve)

    return parser


_FUSE_OPTS = ("--window", "--range", "--box", "--chain")
_CHAIN_TOKEN = re.compile(r"^-\d+:[LR]*$")


def _absorb_dashes(argv: list[str]) -> list[str]:
    """Keep argparse from reading span or chain values as option names."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _FUSE_OPTS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        elif _CHAIN_TOKEN.match(tok):
            out.append(" " + tok)
            i += 1
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    args = build_parser().parse_args(_absorb_dashes(list(argv)))
    try:
        return args.func(args)
    except (ApiError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
