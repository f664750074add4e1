"""Intervals with matching end colors and the T-systems they satisfy."""

from __future__ import annotations

from dataclasses import dataclass

from iboxkit.adm_seq import AdmissibleSeq, pred, pred_color, succ, succ_color


@dataclass(frozen=True)
class IBox:
    """Positions a..b whose end colors agree; a unit box is empty with b = a-1."""

    a: int
    b: int
    color: int | None

    def is_unit(self) -> bool:
        return self.color is None

    def interval(self) -> tuple[int, int]:
        return (self.a, self.b)


@dataclass(frozen=True)
class KRDescriptor:
    """Color, multiplicity and height ladder carried by a box."""

    color: int | None
    count: int
    heights: tuple[int, ...]
    box: IBox


@dataclass(frozen=True)
class TSystem:
    """Socle, middle pair and head pair of the exchange relation at a box."""

    box: IBox
    socle: tuple[IBox, ...]
    middle: tuple[IBox, IBox]
    head: tuple[IBox, IBox]


def ibox(seq: AdmissibleSeq, a: int, b: int) -> IBox:
    """The box [a, b]; b = a-1 gives the unit box at a."""
    if b == a - 1:
        return IBox(a, b, None)
    if b < a:
        raise ValueError(f"interval [{a}, {b}] is neither a box nor a unit")
    ca, cb = seq.color(a), seq.color(b)
    if ca != cb:
        raise ValueError(f"positions {a} and {b} carry colors {ca} != {cb}")
    return IBox(a, b, ca)


def check_box(seq: AdmissibleSeq, box: IBox) -> IBox:
    """Guard against boxes built over a different sequence."""
    if box.is_unit():
        return box
    rebuilt = ibox(seq, box.a, box.b)
    if rebuilt.color != box.color:
        raise ValueError(f"box {box} does not belong to this sequence")
    return box


def content(seq: AdmissibleSeq, box: IBox) -> tuple[int, ...]:
    """Positions inside the box carrying the box color."""
    if box.is_unit():
        return ()
    check_box(seq, box)
    return tuple(k for k in range(box.a, box.b + 1) if seq.color(k) == box.color)


def kr_descriptor(seq: AdmissibleSeq, box: IBox) -> KRDescriptor:
    """Color, count and increasing height ladder of the box content."""
    spots = content(seq, box)
    heights = tuple(seq.height(k) for k in spots)
    return KRDescriptor(color=box.color, count=len(spots), heights=heights, box=box)


def ibracket_right(seq: AdmissibleSeq, a: int, b: int) -> IBox:
    """Largest box starting at a, with the color of a, inside [a, b]."""
    if b == a - 1:
        return IBox(a, b, None)
    if b < a:
        raise ValueError(f"interval [{a}, {b}] is neither a box nor a unit")
    return ibox(seq, a, pred_color(seq, b, seq.color(a)))


def ibracket_left(seq: AdmissibleSeq, a: int, b: int) -> IBox:
    """Largest box ending at b, with the color of b, inside [a, b]."""
    if b == a - 1:
        return IBox(a, b, None)
    if b < a:
        raise ValueError(f"interval [{a}, {b}] is neither a box nor a unit")
    return ibox(seq, succ_color(seq, a, seq.color(b)), b)


def grow_left(seq: AdmissibleSeq, box: IBox) -> IBox:
    """Extend the envelope one step left and re-bracket from the new start."""
    check_box(seq, box)
    return ibracket_right(seq, box.a - 1, box.b)


def grow_right(seq: AdmissibleSeq, box: IBox) -> IBox:
    """Extend the envelope one step right and re-bracket from the new end."""
    check_box(seq, box)
    return ibracket_left(seq, box.a, box.b + 1)


def commutes_sufficient(seq: AdmissibleSeq, box1: IBox, box2: IBox) -> bool:
    """One-sided containment test guaranteeing a commuting pair of boxes."""
    check_box(seq, box1)
    check_box(seq, box2)
    if box1.is_unit() or box2.is_unit():
        return True
    a, b = box1.interval()
    c, d = box2.interval()
    if pred(seq, a) < c and d < succ(seq, b):
        return True
    if pred(seq, c) < a and b < succ(seq, d):
        return True
    return False


def _box_or_unit(seq: AdmissibleSeq, x: int, y: int) -> IBox:
    """Box [x, y], collapsing an empty interval to the unit at x."""
    if y < x:
        return IBox(x, x - 1, None)
    return ibox(seq, x, y)


def t_system(seq: AdmissibleSeq, box: IBox) -> TSystem:
    """Exchange data of a box with at least two runs of its color."""
    check_box(seq, box)
    if box.is_unit() or box.a == box.b:
        raise ValueError(f"box {box} has no T-system: it needs two or more runs")
    a, b, i = box.a, box.b, box.color
    socle = []
    for j in seq.root.neighbors(i):
        lo, hi = succ_color(seq, a, j), pred_color(seq, b, j)
        if lo <= hi:
            socle.append(ibox(seq, lo, hi))
    middle = (ibox(seq, succ(seq, a), b), ibox(seq, a, pred(seq, b)))
    head = (box, _box_or_unit(seq, succ(seq, a), pred(seq, b)))
    return TSystem(box=box, socle=tuple(socle), middle=middle, head=head)
