"""Chains, box moves, move classification, enumeration and connectivity."""

import pytest

from iboxkit.adm_seq import from_quiver
from iboxkit.chain import (
    Chain,
    box_move,
    boxes,
    chain_range,
    classify_move,
    connect,
    enumerate_chains,
    envelope,
    maximality_witness,
    movable,
    movable_indices,
    move_plan,
    mutation_middle,
)
from iboxkit.ibox import commutes_sufficient, ibox, t_system


@pytest.fixture
def a2():
    return from_quiver("A2")


def test_chain_boxes(a2):
    chain = Chain(a2, 0, ("L", "L", "L"))
    assert boxes(chain) == (
        ibox(a2, 0, 0),
        ibox(a2, -1, -1),
        ibox(a2, -2, 0),
        ibox(a2, -3, -1),
    )
    assert chain_range(chain) == (-3, 0)
    assert envelope(chain, 1) == (0, 0)
    assert envelope(chain, 3) == (-2, 0)


def test_chain_boxes_mixed(a2):
    chain = Chain(a2, -1, ("R", "L", "L"))
    assert boxes(chain) == (
        ibox(a2, -1, -1),
        ibox(a2, 0, 0),
        ibox(a2, -2, 0),
        ibox(a2, -3, -1),
    )


def test_bad_pattern_rejected(a2):
    with pytest.raises(ValueError):
        Chain(a2, 0, ("L", "X"))


def test_movable(a2):
    chain = Chain(a2, 0, ("L", "L", "L"))
    assert movable_indices(chain) == (1,)
    mixed = Chain(a2, -1, ("R", "L", "L"))
    assert movable_indices(mixed) == (1, 2)
    assert not movable(chain, 0)
    assert not movable(chain, 4)
    with pytest.raises(ValueError):
        box_move(chain, 2)


def test_first_move_shifts_start(a2):
    chain = Chain(a2, 0, ("L", "L", "L"))
    moved = box_move(chain, 1)
    assert moved == Chain(a2, -1, ("R", "L", "L"))
    assert chain_range(moved) == chain_range(chain)
    back = box_move(moved, 1)
    assert back == chain


def test_swap_move(a2):
    chain = Chain(a2, -1, ("R", "L", "L"))
    assert box_move(chain, 2) == Chain(a2, -1, ("L", "R", "L"))


def test_classify_permutation(a2):
    chain = Chain(a2, 0, ("L", "L", "L"))
    result = classify_move(chain, 1)
    assert result.kind == "permutation"
    assert result.perm == (1, 0, 2, 3)
    assert set(boxes(result.moved)) == set(boxes(chain))


def test_classify_mutation(a2):
    chain = Chain(a2, -1, ("R", "L", "L"))
    result = classify_move(chain, 2)
    assert result.kind == "mutation"
    assert result.old_box == ibox(a2, 0, 0)
    assert result.new_box == ibox(a2, -2, -2)
    assert result.tbox == ibox(a2, -2, 0)
    assert set(mutation_middle(chain, 2)) == {result.old_box, result.new_box}
    assert set(t_system(a2, result.tbox).middle) == {result.old_box, result.new_box}


def test_classify_mutation_changes_one_box(a2):
    chain = Chain(a2, -1, ("R", "L", "L"))
    old = boxes(chain)
    new = boxes(classify_move(chain, 2).moved)
    assert [k for k in range(4) if old[k] != new[k]] == [1]


def test_a1_first_move_is_mutation():
    a1 = from_quiver("A1")
    chain = Chain(a1, 0, ("L",))
    result = classify_move(chain, 1)
    assert result.kind == "mutation"
    assert result.old_box == ibox(a1, 0, 0)
    assert result.new_box == ibox(a1, -1, -1)
    assert result.tbox == ibox(a1, -1, 0)


def test_enumerate_chains(a2):
    chains = enumerate_chains(a2, -3, 0)
    assert len(chains) == 8
    assert len(set(chains)) == 8
    for chain in chains:
        assert chain_range(chain) == (-3, 0)
        assert len(boxes(chain)) == 4
    with pytest.raises(ValueError):
        enumerate_chains(a2, 0, 21)
    with pytest.raises(ValueError):
        enumerate_chains(a2, 1, 0)


def test_all_chains_share_frozen_boxes(a2):
    seen = [set(boxes(c)) for c in enumerate_chains(a2, -3, 0)]
    common = set.intersection(*seen)
    assert ibox(a2, -2, 0) in common
    assert ibox(a2, -3, -1) in common


def test_connect_bfs(a2):
    source = Chain(a2, 0, ("L", "L", "L"))
    target = Chain(a2, -3, ("R", "R", "R"))
    path = connect(source, target)
    cur = source
    for s in path:
        cur = box_move(cur, s)
    assert cur == target
    assert connect(source, source) == []


def test_connect_reaches_everything(a2):
    source = Chain(a2, 0, ("L", "L", "L"))
    for target in enumerate_chains(a2, -3, 0):
        cur = source
        for s in connect(source, target):
            cur = box_move(cur, s)
        assert cur == target


def test_connect_rejects_mismatched_ranges(a2):
    with pytest.raises(ValueError):
        connect(Chain(a2, 0, ("L",)), Chain(a2, 0, ("R",)))
    with pytest.raises(ValueError):
        connect(Chain(a2, 0, ("L",)), Chain(a2, 0, ("L", "L")))


def test_move_plan_matches_bfs_targets(a2):
    source = Chain(a2, 0, ("L", "L", "L", "L", "L"))
    for target in enumerate_chains(a2, -5, 0):
        cur = source
        for s in move_plan(source, target):
            assert movable(cur, s)
            cur = box_move(cur, s)
        assert cur == target


def test_move_plan_large_range():
    d4 = from_quiver("D4", window=(-80, 80))
    source = Chain(d4, 0, tuple("L" * 36))
    target = Chain(d4, -20, tuple("R" * 20 + "L" * 16))
    cur = source
    for s in move_plan(source, target):
        assert movable(cur, s)
        cur = box_move(cur, s)
    assert cur == target


def test_connect_delegates_on_large_ranges(a2):
    source = Chain(a2, 0, tuple("L" * 14))
    target = Chain(a2, -14, tuple("R" * 14))
    path = connect(source, target)
    cur = source
    for s in path:
        cur = box_move(cur, s)
    assert cur == target


def test_maximality_witness_with_sufficient_oracle(a2):
    chain = Chain(a2, 0, ("L", "L"))
    report = maximality_witness(chain, commutes_sufficient)
    assert report.pairwise_ok
    assert report.maximal_ok
    assert report.free_box is None
    outside = {pair[0] for pair in report.witnesses}
    assert outside == {ibox(a2, -2, -2)}
    assert report.witnesses == ((ibox(a2, -2, -2), ibox(a2, 0, 0)),)
