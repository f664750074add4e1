"""Admissible chains of nested envelopes and the moves connecting them."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from iboxkit.adm_seq import AdmissibleSeq
from iboxkit.ibox import IBox, ibox, ibracket_left, ibracket_right, t_system


@dataclass(frozen=True)
class Chain:
    """Start position plus L/R growth letters; box k lives in envelope k."""

    seq: AdmissibleSeq
    start: int
    pattern: tuple[str, ...]

    def __post_init__(self):
        if any(t not in ("L", "R") for t in self.pattern):
            raise ValueError("pattern letters must be 'L' or 'R'")

    def length(self) -> int:
        return len(self.pattern) + 1


@dataclass(frozen=True)
class MoveResult:
    """What a box move did: a cluster exchange or a relabeling of slots."""

    kind: str
    chain: Chain
    moved: Chain
    index: int
    perm: tuple[int, ...] | None = None
    tbox: IBox | None = None
    old_box: IBox | None = None
    new_box: IBox | None = None


def envelope(chain: Chain, k: int) -> tuple[int, int]:
    """Interval reached after k-1 growth steps, 1 <= k <= length."""
    if not 1 <= k <= chain.length():
        raise ValueError(f"envelope index {k} out of range")
    head = chain.pattern[: k - 1]
    return (chain.start - head.count("L"), chain.start + head.count("R"))


def chain_range(chain: Chain) -> tuple[int, int]:
    return envelope(chain, chain.length())


@lru_cache(maxsize=4096)
def boxes(chain: Chain) -> tuple[IBox, ...]:
    """The nested-bracket boxes c_1, ..., c_l of the chain."""
    seq = chain.seq
    out = [ibox(seq, chain.start, chain.start)]
    x = y = chain.start
    for letter in chain.pattern:
        if letter == "L":
            x -= 1
            out.append(ibracket_right(seq, x, y))
        else:
            y += 1
            out.append(ibracket_left(seq, x, y))
    return tuple(out)


def slot_positions(chain: Chain) -> tuple[int, ...]:
    """Position entering the chain at each slot: slot k adds endpoint pos_k."""
    out = [chain.start]
    x = y = chain.start
    for letter in chain.pattern:
        if letter == "L":
            x -= 1
            out.append(x)
        else:
            y += 1
            out.append(y)
    return tuple(out)


def movable(chain: Chain, s: int) -> bool:
    """Whether the box move B_s applies to this chain."""
    if not 1 <= s <= chain.length() - 1:
        return False
    return s == 1 or chain.pattern[s - 2] != chain.pattern[s - 1]


def movable_indices(chain: Chain) -> tuple[int, ...]:
    return tuple(s for s in range(1, chain.length()) if movable(chain, s))


def box_move(chain: Chain, s: int) -> Chain:
    """Apply B_s: flip the first letter (shifting the start) or swap at s."""
    if not movable(chain, s):
        raise ValueError(f"move {s} is not available on this chain")
    pattern = list(chain.pattern)
    if s == 1:
        start = chain.start + (-1 if pattern[0] == "L" else 1)
        pattern[0] = "R" if pattern[0] == "L" else "L"
        return Chain(chain.seq, start, tuple(pattern))
    pattern[s - 2], pattern[s - 1] = pattern[s - 1], pattern[s - 2]
    return Chain(chain.seq, chain.start, tuple(pattern))


def classify_move(chain: Chain, s: int) -> MoveResult:
    """Run B_s and decide whether it exchanged a box or permuted the chain."""
    moved = box_move(chain, s)
    old = boxes(chain)
    new = boxes(moved)
    if envelope(chain, s + 1) == old[s].interval():
        mutated = [k for k in range(len(old)) if old[k] != new[k]]
        assert mutated == [s - 1]
        return MoveResult(
            kind="mutation",
            chain=chain,
            moved=moved,
            index=s,
            tbox=old[s],
            old_box=old[s - 1],
            new_box=new[s - 1],
        )
    lookup = {box: k for k, box in enumerate(old)}
    perm = tuple(lookup[box] for box in new)
    return MoveResult(kind="permutation", chain=chain, moved=moved, index=s, perm=perm)


def mutation_middle(chain: Chain, s: int) -> tuple[IBox, IBox]:
    """The two exchangeable boxes at a mutation move, from the enclosing T-system."""
    return t_system(chain.seq, boxes(chain)[s]).middle


def enumerate_chains(seq: AdmissibleSeq, lo: int, hi: int) -> list[Chain]:
    """All chains whose envelopes exhaust [lo, hi]."""
    n = hi - lo + 1
    if n < 1:
        raise ValueError(f"empty range [{lo}, {hi}]")
    if n > 20:
        raise ValueError(f"range of {n} positions is too large to enumerate")
    out = []
    for bits in range(2 ** (n - 1)):
        pattern = tuple("L" if bits & (1 << p) else "R" for p in range(n - 1))
        out.append(Chain(seq, lo + pattern.count("L"), pattern))
    return out


def move_plan(source: Chain, target: Chain) -> list[int]:
    """Deterministic move list sending source to target, fixing letters rightmost first."""
    if source.seq != target.seq or chain_range(source) != chain_range(target):
        raise ValueError("chains must share a sequence and a range")
    pattern = list(source.pattern)
    plan: list[int] = []

    def apply(s: int) -> None:
        if s == 1:
            pattern[0] = "R" if pattern[0] == "L" else "L"
        else:
            pattern[s - 2], pattern[s - 1] = pattern[s - 1], pattern[s - 2]
        plan.append(s)

    for p in range(len(pattern), 0, -1):
        if pattern[p - 1] == target.pattern[p - 1]:
            continue
        j = max((q for q in range(1, p) if pattern[q - 1] != pattern[p - 1]), default=0)
        if j == 0:
            apply(1)
            j = 1
        if j == p:
            continue
        for s in range(j + 1, p + 1):
            apply(s)
    assert tuple(pattern) == target.pattern
    return plan


def connect(source: Chain, target: Chain) -> list[int]:
    """Shortest move list between two chains of one range (small ranges only)."""
    if source.seq != target.seq or chain_range(source) != chain_range(target):
        raise ValueError("chains must share a sequence and a range")
    if source.length() > 13:
        return move_plan(source, target)
    seen = {source: None}
    queue = deque([source])
    while queue:
        cur = queue.popleft()
        if cur == target:
            path: list[int] = []
            node = cur
            while seen[node] is not None:
                prev, s = seen[node]
                path.append(s)
                node = prev
            return path[::-1]
        for s in movable_indices(cur):
            nxt = box_move(cur, s)
            if nxt not in seen:
                seen[nxt] = (cur, s)
                queue.append(nxt)
    raise AssertionError("move graph of a range is connected")


@dataclass(frozen=True)
class MaximalityReport:
    """Pairwise commutation of chain boxes plus blockers for every outside box."""

    pairwise_ok: bool
    bad_pair: tuple[IBox, IBox] | None
    maximal_ok: bool
    free_box: IBox | None
    witnesses: tuple[tuple[IBox, IBox], ...]


def maximality_witness(chain: Chain, oracle) -> MaximalityReport:
    """Check chain boxes pairwise commute and every other box in range clashes.

    The oracle is called as oracle(seq, box1, box2) and must decide honestly,
    not just sufficiently, for the maximality half to be meaningful.
    """
    seq = chain.seq
    members = boxes(chain)
    for p in range(len(members)):
        for q in range(p + 1, len(members)):
            if not oracle(seq, members[p], members[q]):
                return MaximalityReport(False, (members[p], members[q]), False, None, ())
    lo, hi = chain_range(chain)
    member_set = set(members)
    witnesses = []
    for x in range(lo, hi + 1):
        for y in range(x, hi + 1):
            if seq.color(x) != seq.color(y):
                continue
            box = ibox(seq, x, y)
            if box in member_set:
                continue
            blocker = next((m for m in members if not oracle(seq, box, m)), None)
            if blocker is None:
                return MaximalityReport(True, None, False, box, tuple(witnesses))
            witnesses.append((box, blocker))
    return MaximalityReport(True, None, True, None, tuple(witnesses))
