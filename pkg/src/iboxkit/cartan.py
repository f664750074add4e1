"""Cartan data, reflection representations and longest elements for ADE types."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

Vec = tuple[int, ...]
Matrix = tuple[Vec, ...]

_LABEL_RE = re.compile(r"^([ADE])(\d+)$")
_RANK_BOUNDS = {"A": (1, 8), "D": (4, 8), "E": (6, 8)}

TYPE_LABELS = tuple(
    f"{fam}{n}"
    for fam in "ADE"
    for n in range(_RANK_BOUNDS[fam][0], _RANK_BOUNDS[fam][1] + 1)
)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matvec(m: Matrix, v: Vec) -> Vec:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _edges(family: str, n: int) -> tuple[tuple[int, int], ...]:
    """Edge list of the Dynkin diagram on nodes 1..n."""
    if family == "A":
        return tuple((i, i + 1) for i in range(1, n))
    if family == "D":
        return tuple((i, i + 1) for i in range(1, n - 1)) + ((n - 2, n),)
    edges = [(1, 3), (2, 4), (3, 4), (4, 5), (5, 6)]
    if n >= 7:
        edges.append((6, 7))
    if n == 8:
        edges.append((7, 8))
    return tuple(edges)


@dataclass(frozen=True)
class RootData:
    """Root-system constants for one simply laced type, nodes numbered 1..n."""

    label: str
    n: int
    edges: tuple[tuple[int, int], ...]
    cartan: Matrix
    dist: Matrix
    refl: tuple[Matrix, ...]
    pos_roots: tuple[Vec, ...]
    longest_len: int
    coxeter_h: int
    star: tuple[int, ...]
    longest_word: tuple[int, ...]

    def adjacent(self, i: int, j: int) -> bool:
        return self.cartan[i - 1][j - 1] == -1

    def distance(self, i: int, j: int) -> int:
        return self.dist[i - 1][j - 1]

    def star_of(self, i: int) -> int:
        return self.star[i - 1]

    def reflection(self, i: int) -> Matrix:
        return self.refl[i - 1]

    def neighbors(self, i: int) -> tuple[int, ...]:
        return tuple(j for j in range(1, self.n + 1) if self.adjacent(i, j))


def _positive_roots(n: int, refl: tuple[Matrix, ...]) -> tuple[Vec, ...]:
    """All roots as simple-root coordinate vectors, filtered to the positives."""
    roots: set[Vec] = {tuple(int(i == j) for j in range(n)) for i in range(n)}
    frontier = set(roots)
    while frontier:
        new = set()
        for r in frontier:
            for s in refl:
                img = matvec(s, r)
                if img not in roots:
                    new.add(img)
        roots |= new
        frontier = new
    pos = [r for r in roots if all(c >= 0 for c in r)]
    return tuple(sorted(pos))


def _greedy_longest(n: int, refl: tuple[Matrix, ...], length: int) -> tuple[tuple[int, ...], Matrix]:
    """Reduced word for the longest element, smallest admissible letter first."""
    word = []
    w = identity(n)
    for _ in range(length):
        for i in range(n):
            if all(w[r][i] >= 0 for r in range(n)):
                w = matmul(w, refl[i])
                word.append(i + 1)
                break
        else:
            raise AssertionError("no positive column before reaching the longest element")
    return tuple(word), w


@lru_cache(maxsize=None)
def root_data(label: str) -> RootData:
    """Build (and cache) the root-system data for a type label like "D4"."""
    m = _LABEL_RE.match(label)
    if not m:
        raise ValueError(f"bad type label {label!r}")
    family, n = m.group(1), int(m.group(2))
    lo, hi = _RANK_BOUNDS[family]
    if not lo <= n <= hi:
        raise ValueError(f"rank {n} out of range for type {family} (supported {lo}..{hi})")

    edges = _edges(family, n)
    cartan = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in edges:
        cartan[a - 1][b - 1] = cartan[b - 1][a - 1] = -1

    refl = []
    for i in range(n):
        rows = [list(row) for row in identity(n)]
        rows[i] = [(1 if i == j else 0) - cartan[i][j] for j in range(n)]
        refl.append(tuple(tuple(r) for r in rows))
    refl = tuple(refl)

    dist = [[0 if i == j else -1 for j in range(n)] for i in range(n)]
    for src in range(n):
        queue = [src]
        while queue:
            cur = queue.pop(0)
            for nxt in range(n):
                if cartan[cur][nxt] == -1 and dist[src][nxt] < 0:
                    dist[src][nxt] = dist[src][cur] + 1
                    queue.append(nxt)

    pos = _positive_roots(n, refl)
    length = len(pos)
    assert (2 * length) % n == 0
    h = 2 * length // n

    word, w0 = _greedy_longest(n, refl, length)
    star = [0] * n
    for i in range(n):
        col = tuple(w0[r][i] for r in range(n))
        target = [j for j in range(n) if col[j] == -1]
        assert len(target) == 1 and sum(abs(c) for c in col) == 1
        star[i] = target[0] + 1
    assert sorted(star) == list(range(1, n + 1))

    return RootData(
        label=label,
        n=n,
        edges=edges,
        cartan=tuple(tuple(row) for row in cartan),
        dist=tuple(tuple(row) for row in dist),
        refl=refl,
        pos_roots=pos,
        longest_len=length,
        coxeter_h=h,
        star=tuple(star),
        longest_word=word,
    )


def word_matrix(data: RootData, word: tuple[int, ...]) -> Matrix:
    """Matrix of s_{i1} ... s_{im} acting on simple-root coordinates."""
    w = identity(data.n)
    for i in word:
        w = matmul(w, data.reflection(i))
    return w


def apply_word(data: RootData, word: tuple[int, ...], vec: Vec) -> Vec:
    return matvec(word_matrix(data, word), vec)


def inversion_count(data: RootData, w: Matrix) -> int:
    """Number of positive roots sent to negative roots, i.e. the Weyl length."""
    return sum(all(c <= 0 for c in matvec(w, p)) for p in data.pos_roots)


def is_reduced(data: RootData, word: tuple[int, ...]) -> bool:
    return inversion_count(data, word_matrix(data, word)) == len(word)


def is_longest_word(data: RootData, word: tuple[int, ...]) -> bool:
    """True when the word is a reduced expression of the longest element."""
    if len(word) != data.longest_len:
        return False
    return inversion_count(data, word_matrix(data, word)) == data.longest_len
