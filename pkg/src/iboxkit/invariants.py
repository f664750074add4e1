"""Inverse quantum Cartan series and the skew-symmetric pairing built from it."""

from __future__ import annotations

from iboxkit.cartan import Matrix, RootData, identity
from iboxkit.ibox import KRDescriptor

_SERIES: dict[str, list[Matrix]] = {}


def _dmat(data: RootData, m: int) -> Matrix:
    """Coefficient matrices of z / quantum Cartan, extended on demand.

    With C(z) = (z + 1/z) I + (A - 2I) one has C(z)^-1 = z * sum_m d(m) z^m,
    so d(0) = I and d(m) = -(A - 2I) d(m-1) - d(m-2).
    """
    series = _SERIES.setdefault(data.label, [identity(data.n)])
    n = data.n
    while len(series) <= m:
        prev, prev2 = series[-1], (series[-2] if len(series) > 1 else None)
        nxt = []
        for r in range(n):
            row = []
            for c in range(n):
                val = -sum((data.cartan[r][k] - 2 * (r == k)) * prev[k][c] for k in range(n))
                if prev2 is not None:
                    val -= prev2[r][c]
                row.append(val)
            nxt.append(tuple(row))
        series.append(tuple(nxt))
    return series[m]


def ctilde(data: RootData, i: int, j: int, m: int) -> int:
    """Entry (i, j) of the inverse quantum Cartan matrix at z^m; zero for m <= 0."""
    if m <= 0:
        return 0
    return _dmat(data, m - 1)[i - 1][j - 1]


def ctilde_series(data: RootData, i: int, j: int, upto: int) -> tuple[int, ...]:
    """The values ctilde_ij(1), ..., ctilde_ij(upto)."""
    return tuple(ctilde(data, i, j, m) for m in range(1, upto + 1))


def lambda_fundamental(
    data: RootData,
    ip: tuple[int, int],
    js: tuple[int, int],
    order: int | None = None,
) -> int:
    """Pairing of two fundamental tokens (i, p) and (j, s)."""
    i, p = ip
    j, s = js
    u = p - s
    if order is not None and abs(u) + 1 > order:
        raise ValueError(f"insufficient series order {order} for height gap {u}")
    return (
        ctilde(data, i, j, u - 1)
        - ctilde(data, i, j, u + 1)
        - ctilde(data, i, j, -u - 1)
        + ctilde(data, i, j, -u + 1)
    )


def lambda_kr(
    data: RootData,
    d1: KRDescriptor,
    d2: KRDescriptor,
    order: int | None = None,
) -> int:
    """Bilinear extension of the fundamental pairing to two height ladders."""
    if d1.color is None or d2.color is None:
        return 0
    total = 0
    for p in d1.heights:
        for s in d2.heights:
            total += lambda_fundamental(data, (d1.color, p), (d2.color, s), order)
    return total


def lambda_matrix(data: RootData, descs, order: int | None = None) -> Matrix:
    """Skew matrix of pairings over a list of descriptors."""
    descs = list(descs)
    return tuple(
        tuple(lambda_kr(data, da, db, order) for db in descs) for da in descs
    )
