"""Admissible color-height sequences built from Dynkin quiver orientations."""

from __future__ import annotations

from dataclasses import dataclass

from iboxkit.cartan import RootData, identity, matmul, root_data, word_matrix


class WindowExhaustedError(ValueError):
    """A position operator needed a position outside the sequence window."""


def _as_root(root: RootData | str) -> RootData:
    return root if isinstance(root, RootData) else root_data(root)


@dataclass(frozen=True)
class AdmissibleSeq:
    """Sequence of colors i_k with heights t_k, usable on a finite window.

    Formula-backed sequences store one fundamental block (positions 1..l) and
    extend both ways by i_{k+l} = star(i_k), t_{k+l} = t_k + h.  Loaded
    sequences store an explicit table covering exactly the window.
    """

    root: RootData
    window: tuple[int, int]
    base_word: tuple[int, ...] | None = None
    base_heights: tuple[int, ...] | None = None
    table: tuple[tuple[int, int], ...] | None = None

    def check_position(self, k: int) -> int:
        lo, hi = self.window
        if not lo <= k <= hi:
            raise WindowExhaustedError(f"position {k} outside window [{lo}, {hi}]")
        return k

    def raw_pair(self, k: int) -> tuple[int, int]:
        """(color, height) at position k, ignoring the window for formula sequences."""
        if self.table is not None:
            self.check_position(k)
            return self.table[k - self.window[0]]
        q, r = divmod(k - 1, self.root.longest_len)
        i = self.base_word[r]
        if q % 2:
            i = self.root.star_of(i)
        return i, self.base_heights[r] + q * self.root.coxeter_h

    def pair(self, k: int) -> tuple[int, int]:
        self.check_position(k)
        return self.raw_pair(k)

    def color(self, k: int) -> int:
        return self.pair(k)[0]

    def height(self, k: int) -> int:
        return self.pair(k)[1]

    def positions(self) -> range:
        return range(self.window[0], self.window[1] + 1)


def bipartite_orientation(root: RootData | str) -> tuple[tuple[int, int], ...]:
    """Arrows from nodes at even distance from node 1 toward odd-distance nodes."""
    data = _as_root(root)
    out = []
    for a, b in data.edges:
        out.append((a, b) if data.distance(1, a) % 2 == 0 else (b, a))
    return tuple(out)


def _height_function(data: RootData, arrows: tuple[tuple[int, int], ...]) -> dict[int, int]:
    """Heights decreasing along arrows, shifted so the minimum lands in {1, 2}."""
    drop = {}
    for u, v in arrows:
        drop[frozenset((u, v))] = v
    xi = {1: 0}
    queue = [1]
    while queue:
        cur = queue.pop(0)
        for nxt in data.neighbors(cur):
            if nxt not in xi:
                xi[nxt] = xi[cur] + (-1 if drop[frozenset((cur, nxt))] == nxt else 1)
                queue.append(nxt)
    low = min(xi.values())
    shift = (1 if low % 2 else 2) - low
    return {v: x + shift for v, x in xi.items()}


def from_quiver(
    root: RootData | str,
    orientation: tuple[tuple[int, int], ...] | None = None,
    window: tuple[int, int] | None = None,
) -> AdmissibleSeq:
    """Build the adapted sequence of a quiver orientation and validate it."""
    data = _as_root(root)
    if orientation is None:
        orientation = bipartite_orientation(data)
    arrows = tuple((int(u), int(v)) for u, v in orientation)
    want = {frozenset(e) for e in data.edges}
    got = [frozenset(e) for e in arrows]
    if any(len(e) != 2 for e in got) or len(got) != len(want) or set(got) != want:
        raise ValueError("orientation must orient every Dynkin edge exactly once")

    xi = _height_function(data, arrows)
    h = data.coxeter_h
    entries = sorted(
        (t, v)
        for v in range(1, data.n + 1)
        for t in range(xi[v], xi[data.star_of(v)] + h - 1, 2)
    )
    assert len(entries) == data.longest_len

    if window is None:
        reach = 10 * data.longest_len
        window = (-reach, reach)
    lo, hi = window
    if lo > hi:
        raise ValueError(f"empty window [{lo}, {hi}]")
    seq = AdmissibleSeq(
        root=data,
        window=(lo, hi),
        base_word=tuple(v for _, v in entries),
        base_heights=tuple(t for t, _ in entries),
    )
    validate(seq)
    return seq


def from_table(
    root: RootData | str,
    entries: tuple[tuple[int, int], ...],
    start: int = 1,
) -> AdmissibleSeq:
    """Load an explicit (color, height) table for positions start, start+1, ..."""
    data = _as_root(root)
    table = tuple((int(i), int(t)) for i, t in entries)
    if not table:
        raise ValueError("empty sequence table")
    for i, _ in table:
        if not 1 <= i <= data.n:
            raise ValueError(f"color {i} out of range for {data.label}")
    seq = AdmissibleSeq(root=data, window=(start, start + len(table) - 1), table=table)
    validate(seq)
    return seq


def preset_sequence(
    root: RootData | str,
    name: str,
    N: int | None = None,
    W: int | None = None,
) -> AdmissibleSeq:
    """Named windows over the default bipartite orientation."""
    data = _as_root(root)
    if name == "CN":
        if N is None or N < 1:
            raise ValueError("preset CN needs N >= 1")
        return from_quiver(data, window=(1 - N * data.n, 0))
    if name == "Cminus":
        if W is None or W < 0:
            raise ValueError("preset Cminus needs W >= 0")
        return from_quiver(data, window=(-W, 0))
    if name == "CQ":
        return from_quiver(data, window=(1, data.longest_len))
    raise ValueError(f"unknown preset {name!r}")


def validate(seq: AdmissibleSeq) -> None:
    """Check height parity, color recurrence, neighbor ordering and window words.

    Formula sequences are periodic under k -> k+l (colors through star, heights
    shifted by h), so checking one fundamental span plus one overlap extends to
    every position; tables are checked in full.
    """
    if seq.table is not None:
        _validate_span(seq, seq.window[0], seq.window[1])
    else:
        ell = seq.root.longest_len
        _validate_span(seq, 1 - ell, 2 * ell + 1)


def _validate_span(seq: AdmissibleSeq, lo: int, hi: int) -> None:
    data = seq.root
    pairs = {k: seq.raw_pair(k) for k in range(lo, hi + 1)}

    for k, (i, t) in pairs.items():
        if (t - data.distance(1, i)) % 2:
            raise ValueError(f"height {t} at position {k} has wrong parity for color {i}")

    last_t: dict[int, int] = {}
    for k in range(lo, hi + 1):
        i, t = pairs[k]
        if i in last_t and t != last_t[i] + 2:
            raise ValueError(f"color {i} recurs at position {k} with height step {t - last_t[i]}")
        last_t[i] = t

    for a, b in data.edges:
        prev = None
        for k in range(lo, hi + 1):
            i, t = pairs[k]
            if i not in (a, b):
                continue
            if prev is not None and t <= prev:
                raise ValueError(f"colors {a},{b} out of height order at position {k}")
            prev = t

    ell = data.longest_len
    if hi - lo + 1 >= ell:
        w0 = word_matrix(data, data.longest_word)
        fwd = [identity(data.n)]
        rev = [identity(data.n)]
        for k in range(lo, hi + 1):
            s = data.reflection(pairs[k][0])
            fwd.append(matmul(fwd[-1], s))
            rev.append(matmul(s, rev[-1]))
        for s0 in range(hi - lo + 2 - ell):
            if matmul(rev[s0], fwd[s0 + ell]) != w0:
                raise ValueError(f"window at position {lo + s0} is not a reduced longest word")


def succ(seq: AdmissibleSeq, k: int) -> int:
    """Least position strictly after k with the same color."""
    i = seq.color(k)
    for p in range(k + 1, k + seq.root.longest_len + 1):
        if seq.color(p) == i:
            return p
    raise WindowExhaustedError(f"no recurrence of color {i} after position {k}")


def pred(seq: AdmissibleSeq, k: int) -> int:
    """Greatest position strictly before k with the same color."""
    i = seq.color(k)
    for p in range(k - 1, k - seq.root.longest_len - 1, -1):
        if seq.color(p) == i:
            return p
    raise WindowExhaustedError(f"no recurrence of color {i} before position {k}")


def succ_color(seq: AdmissibleSeq, k: int, j: int) -> int:
    """Least position p >= k with color j (weak)."""
    for p in range(k, k + seq.root.longest_len):
        if seq.color(p) == j:
            return p
    raise WindowExhaustedError(f"no position of color {j} at or after {k}")


def pred_color(seq: AdmissibleSeq, k: int, j: int) -> int:
    """Greatest position p <= k with color j (weak)."""
    for p in range(k, k - seq.root.longest_len, -1):
        if seq.color(p) == j:
            return p
    raise WindowExhaustedError(f"no position of color {j} at or before {k}")


def word_slice(seq: AdmissibleSeq, a: int, b: int) -> tuple[int, ...]:
    """Colors of positions a..b inclusive."""
    return tuple(seq.color(k) for k in range(a, b + 1))
