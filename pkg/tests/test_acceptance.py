"""End-to-end acceptance checks, one per contract, each with a budget line."""

from __future__ import annotations

import contextlib
import itertools
import random
import time
from collections import deque

from iboxkit.adm_seq import from_quiver, from_table, validate
from iboxkit.cartan import root_data
from iboxkit.chain import (
    Chain,
    box_move,
    boxes,
    chain_range,
    classify_move,
    enumerate_chains,
    movable_indices,
)
from iboxkit.ibox import commutes_sufficient, ibox, t_system
from iboxkit.qchar import dimension, kr_character, simplicity_oracle, verify_t_system
from iboxkit.seed import canonical_seed, check_lambda_admissible, mutate, seed_for_chain


@contextlib.contextmanager
def criterion(name: str, budget: float | None):
    start = time.perf_counter()
    done = False
    try:
        yield
        done = True
    finally:
        elapsed = time.perf_counter() - start
        within = budget is None or elapsed < budget
        status = "PASS" if done and within else "FAIL"
        note = f"budget {budget:.0f}s" if budget is not None else "no budget"
        print(f"[{status}] {name}: {elapsed:.1f}s ({note})")
    assert budget is None or elapsed < budget, f"{name} took {elapsed:.1f}s"


def test_admissible_sequences():
    with criterion("admissible sequences", 10):
        for label in ("A1", "A2", "A3", "A4", "D4", "D5"):
            data = root_data(label)
            ell, h = data.longest_len, data.coxeter_h
            seq = from_quiver(label)
            entries = tuple(seq.pair(k) for k in range(-5 * ell, 5 * ell + 1))
            tabled = from_table(label, entries, start=-5 * ell)
            validate(tabled)
            for k in range(-5 * ell, 4 * ell + 1):
                color, t = seq.pair(k)
                color_up, t_up = seq.pair(k + ell)
                assert color_up == data.star_of(color), (label, k)
                assert t_up == t + h, (label, k)


def test_t_systems():
    with criterion("T-systems", 120):
        checked = 0
        for label in ("A1", "A2", "A3"):
            seq = from_quiver(label)
            for a in range(-6, 1):
                for b in range(a + 1, 1):
                    try:
                        box = ibox(seq, a, b)
                    except ValueError:
                        continue
                    assert verify_t_system(seq, box), (label, a, b)
                    checked += 1
        assert checked >= 30

        d4 = from_quiver("D4")
        d4_checked = 0
        for a in range(-12, 1):
            if d4_checked >= 4:
                break
            for b in range(a + 1, 1):
                if b - a > 6:
                    continue
                try:
                    box = ibox(d4, a, b)
                except ValueError:
                    continue
                assert verify_t_system(d4, box), ("D4", a, b)
                d4_checked += 1
        assert d4_checked >= 3

        a1 = from_quiver("A1")
        assert dimension(kr_character(a1, ibox(a1, 0, 0))) == 2
        assert dimension(kr_character(a1, ibox(a1, -1, -1))) == 2
        assert dimension(kr_character(a1, ibox(a1, -1, 0))) == 3
        a2 = from_quiver("A2")
        assert dimension(kr_character(a2, ibox(a2, 0, 0))) == 3
        assert dimension(kr_character(a2, ibox(a2, -2, -2))) == 3
        assert dimension(kr_character(a2, ibox(a2, -2, 0))) == 6
        assert dimension(kr_character(a2, ibox(a2, -1, -1))) == 3


def test_lambda_admissibility():
    with criterion("lambda admissibility", 60):
        rng = random.Random(20260814)
        for label in ("A1", "A2", "A3", "A4", "D4"):
            seq = from_quiver(label)
            ell = seq.root.longest_len
            for size in (ell, 2 * ell, 3 * ell):
                lo = 1 - size
                seed = canonical_seed(seq, lo, 0)
                ok, witness = check_lambda_admissible(seed)
                assert ok, (label, size, witness)
                for k in seed.ex:
                    ok, witness = check_lambda_admissible(mutate(seed, k))
                    assert ok, (label, size, k, witness)
                for _ in range(20):
                    pattern = tuple(rng.choice("LR") for _ in range(size - 1))
                    chain = Chain(seq, lo + pattern.count("L"), pattern)
                    ok, witness = check_lambda_admissible(seed_for_chain(seq, chain))
                    assert ok, (label, size, chain.start, pattern, witness)


def test_chain_connectivity():
    with criterion("chain connectivity", 30):
        seq = from_quiver("A2")
        for size in range(1, 11):
            lo, hi = 1 - size, 0
            first = Chain(seq, hi, ("L",) * (size - 1))
            seen = {(first.start, first.pattern)}
            queue = deque([first])
            while queue:
                node = queue.popleft()
                for s in movable_indices(node):
                    moved = box_move(node, s)
                    assert chain_range(moved) == (lo, hi)
                    back = box_move(moved, s)
                    assert (back.start, back.pattern) == (node.start, node.pattern)
                    key = (moved.start, moved.pattern)
                    if key not in seen:
                        seen.add(key)
                        queue.append(moved)
            assert len(seen) == 2 ** (size - 1), size


def test_move_dichotomy():
    with criterion("move dichotomy", 30):
        seq = from_quiver("A2")
        moves = 0
        for size in range(1, 9):
            for chain in enumerate_chains(seq, 1 - size, 0):
                old = boxes(chain)
                for s in movable_indices(chain):
                    result = classify_move(chain, s)
                    new = boxes(result.moved)
                    same = set(old) == set(new)
                    if result.kind == "permutation":
                        assert same, (chain.start, chain.pattern, s)
                        assert [old[p] for p in result.perm] == list(new)
                    else:
                        assert not same, (chain.start, chain.pattern, s)
                        changed = [k for k in range(len(old)) if old[k] != new[k]]
                        assert changed == [s - 1]
                        assert set(old) - set(new) == {result.old_box}
                        assert set(new) - set(old) == {result.new_box}
                        ts = t_system(seq, result.tbox)
                        assert {result.old_box, result.new_box} == set(ts.middle)
                    moves += 1
        assert moves > 800


def test_commuting_family():
    with criterion("commuting family", None):
        for label in ("A1", "A2"):
            seq = from_quiver(label)
            unique = set()
            for size in range(1, 9):
                for chain in enumerate_chains(seq, 1 - size, 0):
                    members = boxes(chain)
                    for x in range(len(members)):
                        for y in range(x + 1, len(members)):
                            pair = (members[x], members[y])
                            assert commutes_sufficient(seq, *pair), (label, pair)
                            unique.add(pair)
            assert len(unique) > 100
            for box1, box2 in sorted(
                unique, key=lambda p: (p[0].a, p[0].b, p[1].a, p[1].b)
            ):
                assert simplicity_oracle(seq, box1, box2), (label, box1, box2)


def test_laurent_regression():
    with criterion("Laurent regression", 60):
        seq = from_quiver("A2")
        base = canonical_seed(seq, -3, 0, track_vars=True)
        nvars = len(base.labels)
        for length in range(6):
            for word in itertools.product(base.ex, repeat=length):
                seed = base
                for k in word:
                    seed = mutate(seed, k)
                for poly in seed.xvars:
                    assert poly, ("vanishing variable", word)
                    assert all(c > 0 for c in poly.values()), (word, poly)
                    for v in range(nvars):
                        low = min(expo[v] for expo in poly)
                        if v not in base.ex:
                            assert low >= 0, ("frozen in denominator", word, v)
