"""Boxes, brackets, growth steps, commutation test and T-systems."""

import pytest

from iboxkit.adm_seq import WindowExhaustedError, from_quiver
from iboxkit.ibox import (
    IBox,
    commutes_sufficient,
    content,
    grow_left,
    grow_right,
    ibox,
    ibracket_left,
    ibracket_right,
    kr_descriptor,
    t_system,
)


@pytest.fixture
def a2():
    return from_quiver("A2")


@pytest.fixture
def d4():
    return from_quiver("D4")


def test_box_construction(a2):
    box = ibox(a2, 0, 2)
    assert box.color == 1 and not box.is_unit()
    unit = ibox(a2, 5, 4)
    assert unit.is_unit() and unit.color is None
    with pytest.raises(ValueError):
        ibox(a2, 0, 1)
    with pytest.raises(ValueError):
        ibox(a2, 3, 1)


def test_content_and_descriptor(a2):
    box = ibox(a2, 0, 4)
    assert content(a2, box) == (0, 2, 4)
    desc = kr_descriptor(a2, box)
    assert (desc.color, desc.count, desc.heights) == (1, 3, (0, 2, 4))
    unit = ibox(a2, 5, 4)
    assert kr_descriptor(a2, unit) == kr_descriptor(a2, unit)
    assert kr_descriptor(a2, unit).count == 0


def test_cross_sequence_guard(a2):
    other = from_quiver("A2", orientation=((2, 1),))
    box = ibox(a2, 1, 3)
    assert box.color == 2
    with pytest.raises(ValueError):
        content(other, box)


def test_brackets(a2):
    assert ibracket_right(a2, 0, 3) == ibox(a2, 0, 2)
    assert ibracket_right(a2, 0, 4) == ibox(a2, 0, 4)
    assert ibracket_left(a2, 0, 3) == ibox(a2, 1, 3)
    assert ibracket_left(a2, -1, 3) == ibox(a2, -1, 3)
    assert ibracket_right(a2, 2, 1).is_unit()
    with pytest.raises(ValueError):
        ibracket_right(a2, 2, 0)


def test_brackets_d4(d4):
    assert ibracket_right(d4, 1, 7) == ibox(d4, 1, 5)
    assert ibracket_left(d4, 1, 7) == ibox(d4, 3, 7)
    assert ibracket_right(d4, 2, 12) == ibox(d4, 2, 10)


def test_grow_unit_identities(a2):
    unit = ibox(a2, 3, 2)
    assert grow_left(a2, unit) == ibox(a2, 2, 2)
    assert grow_right(a2, unit) == ibox(a2, 3, 3)


def test_grow_proper(a2):
    box = ibox(a2, 0, 2)
    assert grow_left(a2, box) == ibox(a2, -1, 1)
    assert grow_right(a2, box) == ibox(a2, 1, 3)
    assert grow_left(a2, grow_right(a2, box)) == ibox(a2, 0, 2)


def test_commutes_sufficient(a2):
    assert commutes_sufficient(a2, ibox(a2, -2, 0), ibox(a2, -1, -1))
    assert commutes_sufficient(a2, ibox(a2, -2, 2), ibox(a2, 0, 0))
    assert commutes_sufficient(a2, ibox(a2, 0, 2), ibox(a2, 1, 3))
    assert not commutes_sufficient(a2, ibox(a2, 0, 0), ibox(a2, 2, 2))
    assert commutes_sufficient(a2, ibox(a2, 0, 0), ibox(a2, 5, 4))


def test_commutes_needs_window(a2):
    tight = from_quiver("A2", window=(0, 4))
    with pytest.raises(WindowExhaustedError):
        commutes_sufficient(tight, ibox(tight, 0, 2), ibox(tight, 1, 3))


def test_t_system_a2(a2):
    tsys = t_system(a2, ibox(a2, 0, 2))
    assert tsys.socle == (ibox(a2, 1, 1),)
    assert tsys.middle == (ibox(a2, 2, 2), ibox(a2, 0, 0))
    assert tsys.head[0] == ibox(a2, 0, 2)
    assert tsys.head[1].is_unit()


def test_t_system_a2_larger(a2):
    tsys = t_system(a2, ibox(a2, 0, 4))
    assert tsys.socle == (ibox(a2, 1, 3),)
    assert tsys.middle == (ibox(a2, 2, 4), ibox(a2, 0, 2))
    assert tsys.head == (ibox(a2, 0, 4), ibox(a2, 2, 2))


def test_t_system_d4_trivalent(d4):
    tsys = t_system(d4, ibox(d4, 1, 5))
    assert tsys.socle == (ibox(d4, 2, 2), ibox(d4, 3, 3), ibox(d4, 4, 4))
    assert tsys.middle == (ibox(d4, 5, 5), ibox(d4, 1, 1))
    assert tsys.head[0] == ibox(d4, 1, 5)
    assert tsys.head[1].is_unit()


def test_t_system_rejects_single_run(a2):
    with pytest.raises(ValueError):
        t_system(a2, ibox(a2, 0, 0))
    with pytest.raises(ValueError):
        t_system(a2, ibox(a2, 3, 2))


def test_boxes_hashable(a2):
    assert len({ibox(a2, 0, 2), ibox(a2, 0, 2), ibox(a2, 2, 4)}) == 2
    assert IBox(0, -1, None) == IBox(0, -1, None)
