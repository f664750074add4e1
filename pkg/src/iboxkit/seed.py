"""Cluster seeds attached to chains: labels, exchange matrix, pairing, variables."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from iboxkit.adm_seq import AdmissibleSeq, WindowExhaustedError, pred, succ
from iboxkit.cartan import Matrix
from iboxkit.chain import Chain, boxes, chain_range, classify_move, move_plan
from iboxkit.ibox import IBox, ibox, kr_descriptor, t_system
from iboxkit.invariants import lambda_kr
from iboxkit.laurent import Laurent, ladd, lconst, lmul, lvar, divexact


@dataclass(frozen=True)
class Seed:
    """Quantizable seed: one vertex per chain slot, in chain order.

    The version and memo fields are bookkeeping for label recovery and do
    not take part in equality: two seeds with the same labels, matrices and
    variables are the same seed however they were reached.
    """

    seq: AdmissibleSeq
    span: tuple[int, int]
    labels: tuple[IBox | None, ...]
    ex: tuple[int, ...]
    bmat: tuple[tuple[int, ...], ...]
    lam: Matrix
    xvars: tuple[Laurent, ...] | None
    frozen_arrows: tuple[tuple[int, int], ...]
    version: tuple[int, ...] = field(default=(), compare=False)
    memo: tuple = field(default=(), compare=False)

    def size(self) -> int:
        return len(self.labels)

    def is_frozen(self, v: int) -> bool:
        return v not in self.ex


def _psi_arrows(seq: AdmissibleSeq, points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Arrows of the height quiver restricted to the given (color, height) points."""
    data = seq.root
    arrows = []
    for u, (iu, tu) in enumerate(points):
        for v, (iv, tv) in enumerate(points):
            if data.distance(iu, iv) == 1 and tv == tu + 1:
                arrows.append((u, v))
            elif iu == iv and tv == tu - 2:
                arrows.append((u, v))
    return arrows


def canonical_seed(
    seq: AdmissibleSeq, lo: int, hi: int, track_vars: bool = False
) -> Seed:
    """Seed of the leftward chain on [lo, hi]; slot k holds the box starting at hi-k."""
    if lo > hi:
        raise ValueError(f"empty range [{lo}, {hi}]")
    chain = Chain(seq, hi, ("L",) * (hi - lo))
    labels = boxes(chain)
    size = hi - lo + 1
    points = [seq.pair(hi - k) for k in range(size)]

    first_of_color: dict[int, int] = {}
    for p in range(lo, hi + 1):
        first_of_color.setdefault(seq.color(p), p)
    frozen = {k for k in range(size) if first_of_color[points[k][0]] == hi - k}
    ex = tuple(k for k in range(size) if k not in frozen)

    arrows = _psi_arrows(seq, points)
    col_of = {v: c for c, v in enumerate(ex)}
    brows = [[0] * len(ex) for _ in range(size)]
    for u, v in arrows:
        if v in col_of:
            brows[u][col_of[v]] += 1
        if u in col_of:
            brows[v][col_of[u]] -= 1
    bmat = tuple(tuple(row) for row in brows)

    descs = [kr_descriptor(seq, box) for box in labels]
    lam = tuple(
        tuple(lambda_kr(seq.root, da, db) for db in descs) for da in descs
    )
    frozen_arrows = tuple(
        sorted((u, v) for u, v in arrows if u in frozen and v in frozen)
    )
    xvars = tuple(lvar(size, v) for v in range(size)) if track_vars else None
    return Seed(
        seq=seq,
        span=(lo, hi),
        labels=labels,
        ex=ex,
        bmat=bmat,
        lam=lam,
        xvars=xvars,
        frozen_arrows=frozen_arrows,
        version=(0,) * size,
        memo=(None,) * size,
    )


def _lpow(a: Laurent, e: int, nvars: int) -> Laurent:
    out = lconst(nvars)
    for _ in range(e):
        out = lmul(out, a)
    return out


def _side_key(
    seed: Seed, column: list[int], versions: tuple[int, ...], positive: bool
) -> frozenset:
    """Multiset key for one exchange side: boxes count by value, unlabeled
    vertices by identity pinned to their current mutation count."""
    side: Counter = Counter()
    for v, b in enumerate(column):
        mult = b if positive else -b
        if mult <= 0:
            continue
        label = seed.labels[v]
        key = label if label is not None else ("vertex", v, versions[v])
        side[key] += mult
    return frozenset(side.items())


def _tsystem_sides(ts) -> tuple[Counter, Counter]:
    head: Counter = Counter()
    for box in ts.head:
        if not box.is_unit():
            head[box] += 1
    socle: Counter = Counter()
    for box in ts.socle:
        socle[box] += 1
    return head, socle


def _tsystem_partner(seed: Seed, k: int, sides_pair: frozenset) -> IBox | None:
    """T-system partner of the box at k when the exchange matches one; else None."""
    label = seed.labels[k]
    if label is None or label.is_unit():
        return None
    seq = seed.seq
    lo, hi = seed.span
    x, y = label.a, label.b
    candidates: list[tuple[IBox, tuple[Counter, Counter]]] = []
    try:
        xm = pred(seq, x)
        if xm >= lo:
            ts = t_system(seq, ibox(seq, xm, y))
            candidates.append((ts.middle[1], _tsystem_sides(ts)))
    except WindowExhaustedError:
        pass
    try:
        yp = succ(seq, y)
        if yp <= hi:
            ts = t_system(seq, ibox(seq, x, yp))
            candidates.append((ts.middle[0], _tsystem_sides(ts)))
    except WindowExhaustedError:
        pass
    for partner, (head, socle) in candidates:
        if frozenset({frozenset(head.items()), frozenset(socle.items())}) == sides_pair:
            return partner
    return None


def _next_label(seed: Seed, k: int, column: list[int]):
    """Label carried by k after mutating there, plus the new memo entry."""
    size = seed.size()
    versions = seed.version or (0,) * size
    memos = seed.memo or (None,) * size
    plus_key = _side_key(seed, column, versions, True)
    minus_key = _side_key(seed, column, versions, False)
    sides_pair = frozenset({plus_key, minus_key})
    if seed.labels[k] is not None:
        partner = _tsystem_partner(seed, k, sides_pair)
        if partner is None:
            return None, (seed.labels[k], sides_pair, versions[k] + 1)
        return partner, None
    kept = memos[k]
    if kept is not None and kept[2] == versions[k] and kept[1] == sides_pair:
        return kept[0], None
    return None, kept


def mutation_label(seed: Seed, k: int) -> IBox | None:
    """Label the vertex would carry after mutating at k; None when not a box."""
    if k not in seed.ex:
        raise ValueError(f"vertex {k} is frozen")
    ck = seed.ex.index(k)
    column = [seed.bmat[v][ck] for v in range(seed.size())]
    return _next_label(seed, k, column)[0]


def mutate(seed: Seed, k: int) -> Seed:
    """Cluster mutation at an exchangeable vertex, updating labels, B, Lambda, x."""
    if k not in seed.ex:
        raise ValueError(f"vertex {k} is frozen")
    size = seed.size()
    ck = seed.ex.index(k)
    column = [seed.bmat[v][ck] for v in range(size)]

    bnew = []
    for v in range(size):
        row = []
        for c, w in enumerate(seed.ex):
            if v == k or w == k:
                row.append(-seed.bmat[v][c])
            else:
                bvk, bkc = column[v], seed.bmat[k][c]
                row.append(seed.bmat[v][c] + (abs(bvk) * bkc + bvk * abs(bkc)) // 2)
        bnew.append(tuple(row))

    ecol = [0 if v == k else max(0, -column[v]) for v in range(size)]
    support = [m for m in range(size) if ecol[m]]
    lam = [list(row) for row in seed.lam]
    for i in range(size):
        lam[i][k] = -seed.lam[i][k] + sum(seed.lam[i][m] * ecol[m] for m in support)
    lam[k] = [
        -lam[k][j] + sum(ecol[m] * lam[m][j] for m in support) for j in range(size)
    ]
    lam = tuple(tuple(row) for row in lam)

    versions = seed.version or (0,) * size
    labels = list(seed.labels)
    new_memo = list(seed.memo or (None,) * size)
    labels[k], new_memo[k] = _next_label(seed, k, column)

    xvars = seed.xvars
    if xvars is not None:
        plus = lconst(size)
        minus = lconst(size)
        for v, b in enumerate(column):
            if b > 0:
                plus = lmul(plus, _lpow(xvars[v], b, size))
            elif b < 0:
                minus = lmul(minus, _lpow(xvars[v], -b, size))
        new_x = divexact(ladd(plus, minus), xvars[k])
        xvars = tuple(new_x if v == k else xvars[v] for v in range(size))

    return Seed(
        seq=seed.seq,
        span=seed.span,
        labels=tuple(labels),
        ex=seed.ex,
        bmat=tuple(bnew),
        lam=lam,
        xvars=xvars,
        frozen_arrows=seed.frozen_arrows,
        version=tuple(
            ver + 1 if v == k else ver for v, ver in enumerate(versions)
        ),
        memo=tuple(new_memo),
    )


def _remap_memo(kept, inv: list[int]):
    if kept is None:
        return None
    label, sides_pair, at_version = kept
    sides = []
    for side in sides_pair:
        entries = []
        for key, mult in side:
            if isinstance(key, tuple) and key and key[0] == "vertex":
                key = ("vertex", inv[key[1]], key[2])
            entries.append((key, mult))
        sides.append(frozenset(entries))
    return (label, frozenset(sides), at_version)


def permute(seed: Seed, perm: tuple[int, ...]) -> Seed:
    """Relabel vertices so that new vertex i carries old vertex perm[i]."""
    size = seed.size()
    if sorted(perm) != list(range(size)):
        raise ValueError("not a permutation of the vertices")
    inv = [0] * size
    for i, p in enumerate(perm):
        inv[p] = i
    ex_old = set(seed.ex)
    ex = tuple(i for i in range(size) if perm[i] in ex_old)
    col_of = {v: c for c, v in enumerate(seed.ex)}
    bmat = tuple(
        tuple(seed.bmat[perm[i]][col_of[perm[w]]] for w in ex) for i in range(size)
    )
    lam = tuple(
        tuple(seed.lam[perm[i]][perm[j]] for j in range(size)) for i in range(size)
    )
    labels = tuple(seed.labels[p] for p in perm)
    xvars = tuple(seed.xvars[p] for p in perm) if seed.xvars is not None else None
    frozen_arrows = tuple(sorted((inv[u], inv[v]) for u, v in seed.frozen_arrows))
    versions = seed.version or (0,) * size
    memos = seed.memo or (None,) * size
    return Seed(
        seq=seed.seq,
        span=seed.span,
        labels=labels,
        ex=ex,
        bmat=bmat,
        lam=lam,
        xvars=xvars,
        frozen_arrows=frozen_arrows,
        version=tuple(versions[p] for p in perm),
        memo=tuple(_remap_memo(memos[p], inv) for p in perm),
    )


def seed_for_chain(seq: AdmissibleSeq, chain: Chain, track_vars: bool = False) -> Seed:
    """Transport the canonical seed of the chain's range onto the chain."""
    lo, hi = chain_range(chain)
    cur = Chain(seq, hi, ("L",) * (hi - lo))
    seed = canonical_seed(seq, lo, hi, track_vars)
    for s in move_plan(cur, chain):
        result = classify_move(cur, s)
        if result.kind == "mutation":
            assert seed.labels[s - 1] == result.old_box
            seed = mutate(seed, s - 1)
            assert seed.labels[s - 1] == result.new_box
        else:
            seed = permute(seed, result.perm)
        cur = result.moved
        assert seed.labels == boxes(cur)
    return seed


def check_lambda_admissible(seed: Seed):
    """Exact compatibility of the pairing with the exchange matrix."""
    size = seed.size()
    for c, kv in enumerate(seed.ex):
        for v in range(size):
            got = sum(seed.lam[v][w] * seed.bmat[w][c] for w in range(size))
            want = -2 if v == kv else 0
            if got != want:
                return False, (v, kv, got, want)
    return True, None


def scratch_lambda(seed: Seed) -> Matrix:
    """Pairing recomputed from the labels alone; labels must all be boxes."""
    descs = []
    for label in seed.labels:
        if label is None:
            raise ValueError("a vertex without a box label has no ladder pairing")
        descs.append(kr_descriptor(seed.seq, label))
    return tuple(
        tuple(lambda_kr(seed.seq.root, da, db) for db in descs) for da in descs
    )


def render_arrows(seed: Seed) -> tuple[tuple[int, int], ...]:
    """Arrow list (with multiplicity) combining the stored B block and frozen arrows."""
    size = seed.size()
    col_of = {v: c for c, v in enumerate(seed.ex)}
    out = []
    for v in range(size):
        for w in range(v + 1, size):
            if w in col_of:
                b = seed.bmat[v][col_of[w]]
            elif v in col_of:
                b = -seed.bmat[w][col_of[v]]
            else:
                continue
            if b > 0:
                out.extend([(v, w)] * b)
            elif b < 0:
                out.extend([(w, v)] * (-b))
    out.extend(seed.frozen_arrows)
    return tuple(out)


def exchange_sides(seed: Seed, k: int) -> tuple[tuple[IBox | None, int], ...]:
    """Label/multiplicity pairs entering the exchange at k, plus side first."""
    if k not in seed.ex:
        raise ValueError(f"vertex {k} is frozen")
    ck = seed.ex.index(k)
    sides = []
    for v in range(seed.size()):
        b = seed.bmat[v][ck]
        if b:
            sides.append((seed.labels[v], b))
    return tuple(sides)
