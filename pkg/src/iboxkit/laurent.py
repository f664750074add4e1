"""Sparse integer Laurent polynomials in a fixed number of variables."""

from __future__ import annotations

TERM_CAP = 10**6

Mono = tuple[int, ...]
Laurent = dict[Mono, int]


def lconst(nvars: int, c: int = 1) -> Laurent:
    return {(0,) * nvars: c} if c else {}

def lvar(nvars: int, v: int, power: int = 1) -> Laurent:
    mono = tuple(power if w == v else 0 for w in range(nvars))
    return {mono: 1}


def ladd(a: Laurent, b: Laurent) -> Laurent:
    out = dict(a)
    for mono, c in b.items():
        c2 = out.get(mono, 0) + c
        if c2:
            out[mono] = c2
        else:
            out.pop(mono, None)
    return out


def lmul(a: Laurent, b: Laurent) -> Laurent:
    if len(a) * len(b) > TERM_CAP:
        raise ValueError("product exceeds the term cap")
    out: Laurent = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            mono = tuple(x + y for x, y in zip(ma, mb))
            c = out.get(mono, 0) + ca * cb
            if c:
                out[mono] = c
            else:
                del out[mono]
    return out


def _shift(a: Laurent, by: Mono) -> Laurent:
    return {tuple(x + s for x, s in zip(mono, by)): c for mono, c in a.items()}


def divexact(num: Laurent, den: Laurent) -> Laurent:
    """Exact Laurent division; raises ValueError when den does not divide num."""
    if not den:
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    if not num:
        return {}
    nvars = len(next(iter(den)))
    num_min = tuple(min(m[v] for m in num) for v in range(nvars))
    den_min = tuple(min(m[v] for m in den) for v in range(nvars))
    work = _shift(num, tuple(-x for x in num_min))
    dpoly = _shift(den, tuple(-x for x in den_min))
    lead = max(dpoly)
    out: Laurent = {}
    while work:
        top = max(work)
        step = tuple(x - y for x, y in zip(top, lead))
        if any(x < 0 for x in step) or work[top] % dpoly[lead]:
            raise ValueError("not an exact Laurent division")
        coeff = work[top] // dpoly[lead]
        out[step] = coeff
        work = ladd(work, _shift({m: -coeff * c for m, c in dpoly.items()}, step))
    offset = tuple(x - y for x, y in zip(num_min, den_min))
    return _shift(out, offset)
