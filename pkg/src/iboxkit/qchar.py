"""Characters of height-ladder modules via the iterated expansion algorithm."""

from __future__ import annotations

from iboxkit.adm_seq import AdmissibleSeq
from iboxkit.cartan import RootData
from iboxkit.ibox import IBox, kr_descriptor, t_system

Mono = tuple[tuple[tuple[int, int], int], ...]
Char = dict[Mono, int]

ORACLE_TYPES = ("A1", "A2", "A3", "A4", "D4")

_FM_CACHE: dict[tuple[str, Mono], Char] = {}


class FMInconsistent(Exception):
    """The expansion contradicts itself: a negative excess or a degree clash."""


def mono_from_pairs(pairs) -> Mono:
    acc: dict[tuple[int, int], int] = {}
    for key, e in pairs:
        acc[key] = acc.get(key, 0) + e
    return tuple(sorted((k, e) for k, e in acc.items() if e))


def mono_mul(a: Mono, b: Mono) -> Mono:
    return mono_from_pairs(list(a) + list(b))


def is_dominant(m: Mono) -> bool:
    return all(e >= 0 for _, e in m)


def i_dominant(m: Mono, i: int) -> bool:
    return all(e >= 0 for (j, _), e in m if j == i)


def ainv(data: RootData, i: int, t: int) -> Mono:
    """The inverse of the elementary affinized root monomial at (i, t)."""
    pairs = [((i, t - 1), -1), ((i, t + 1), -1)]
    pairs += [((j, t), 1) for j in data.neighbors(i)]
    return mono_from_pairs(pairs)


def _strings(m: Mono, i: int) -> list[list[int]]:
    """Greedy maximal ladders of the color-i heights, lowest first."""
    counts = {t: e for (j, t), e in m if j == i}
    out = []
    while counts:
        t = min(counts)
        run = []
        while t in counts:
            run.append(t)
            counts[t] -= 1
            if not counts[t]:
                del counts[t]
            t += 2
        out.append(run)
    return out


def _expand_dir(data: RootData, m: Mono, i: int) -> list[tuple[Mono, int, int]]:
    """Terms (monomial, coefficient, added degree) of the rank-one expansion at m."""
    terms: dict[tuple[Mono, int], int] = {(m, 0): 1}
    for run in _strings(m, i):
        ladder = [((), 0)]
        acc: Mono = ()
        for j in range(1, len(run) + 1):
            acc = mono_mul(acc, ainv(data, i, run[len(run) - j] + 1))
            ladder.append((acc, j))
        new: dict[tuple[Mono, int], int] = {}
        for (mono, deg), c in terms.items():
            for extra, j in ladder:
                key = (mono_mul(mono, extra), deg + j)
                new[key] = new.get(key, 0) + c
        terms = new
    return [(mono, c, deg) for (mono, deg), c in terms.items()]


def fm_character(data: RootData, m0: Mono, cap: int = 500_000) -> Char:
    """Character generated from a dominant monomial by iterated ladder expansion.

    Later dominant monomials are kept as ordinary terms; the excess bookkeeping
    expands them only when their multiplicity is not already accounted for.
    """
    cached = _FM_CACHE.get((data.label, m0))
    if cached is not None:
        return cached
    if not is_dominant(m0):
        raise ValueError("expansion needs a dominant starting monomial")
    colors = range(1, data.n + 1)
    chi: Char = {}
    contrib: dict[int, dict[Mono, int]] = {i: {} for i in colors}
    degree_of: dict[Mono, int] = {m0: 0}
    frontier: dict[int, list[Mono]] = {0: [m0]}
    d = 0
    while frontier:
        todo = frontier.pop(d, None)
        if todo is None:
            d += 1
            if d > max(frontier):
                break
            continue
        for m in sorted(set(todo)):
            val = 1 if d == 0 else max(contrib[i].get(m, 0) for i in colors)
            if val == 0:
                continue
            chi[m] = val
            if len(chi) > cap:
                raise ValueError("character exceeds the term cap")
            for i in colors:
                if not i_dominant(m, i):
                    continue
                excess = val - contrib[i].get(m, 0)
                if excess < 0:
                    raise FMInconsistent(f"negative excess at {m} in direction {i}")
                if excess == 0:
                    continue
                bucket = contrib[i]
                for mono, c, extra in _expand_dir(data, m, i):
                    bucket[mono] = bucket.get(mono, 0) + c * excess
                    nd = d + extra
                    seen = degree_of.get(mono)
                    if seen is None:
                        degree_of[mono] = nd
                        frontier.setdefault(nd, []).append(mono)
                    elif seen != nd:
                        raise FMInconsistent(f"degree clash at {mono}")
        d += 1
    _FM_CACHE[(data.label, m0)] = chi
    return chi


def kr_monomial(seq: AdmissibleSeq, box: IBox) -> Mono:
    """Dominant monomial of a box: one token per height of the ladder."""
    desc = kr_descriptor(seq, box)
    if desc.color is None:
        return ()
    return mono_from_pairs([((desc.color, t), 1) for t in desc.heights])


def kr_character(seq: AdmissibleSeq, box: IBox) -> Char:
    return fm_character(seq.root, kr_monomial(seq, box))


def multiply(a: Char, b: Char, cap: int = 10**6) -> Char:
    if len(a) * len(b) > cap:
        raise ValueError("product exceeds the term cap")
    out: Char = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            mono = mono_mul(ma, mb)
            out[mono] = out.get(mono, 0) + ca * cb
    return out


def char_add(a: Char, b: Char) -> Char:
    out = dict(a)
    for mono, c in b.items():
        c2 = out.get(mono, 0) + c
        if c2:
            out[mono] = c2
        else:
            del out[mono]
    return out


def dimension(char: Char) -> int:
    return sum(char.values())


def verify_t_system(seq: AdmissibleSeq, box: IBox) -> bool:
    """Check the exchange identity of a box on actual characters."""
    ts = t_system(seq, box)
    left = multiply(kr_character(seq, ts.middle[0]), kr_character(seq, ts.middle[1]))
    right = multiply(kr_character(seq, ts.head[0]), kr_character(seq, ts.head[1]))
    socle: Char = {(): 1}
    for member in ts.socle:
        socle = multiply(socle, kr_character(seq, member))
    return left == char_add(right, socle)


def simplicity_oracle(seq: AdmissibleSeq, box1: IBox, box2: IBox, cap: int = 500_000) -> bool:
    """Whether the characters of two boxes multiply to a single-headed character."""
    if seq.root.label not in ORACLE_TYPES:
        raise ValueError(f"oracle supports {', '.join(ORACLE_TYPES)}, not {seq.root.label}")
    m1, m2 = kr_monomial(seq, box1), kr_monomial(seq, box2)
    if not m1 or not m2:
        return True
    try:
        combined = fm_character(seq.root, mono_mul(m1, m2), cap)
    except FMInconsistent:
        return False
    product = multiply(fm_character(seq.root, m1), fm_character(seq.root, m2), cap)
    return combined == product
