"""Verifiers against the canonical counterexamples and brute definitions."""

import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from ggasp import oracle, verify
from ggasp.errors import NotIndividuallyRationalError
from ggasp.generators import canonical
from ggasp.graphs import bits, mask_of
from ggasp.instance import VOID

from conftest import random_test_instance


@pytest.fixture
def stalker():
    return canonical("stalker").instance


@pytest.fixture
def empty_core():
    return canonical("empty_core").instance


@pytest.fixture
def empty_is():
    return canonical("empty_is").instance


def test_feasible(empty_core):
    assert not verify.is_feasible(empty_core, [0, VOID, 0])  # {0,2} disconnected
    assert verify.is_feasible(empty_core, [VOID] * 3)
    assert verify.is_feasible(empty_core, [1, 1, VOID])


def test_individually_rational(stalker):
    assert verify.is_individually_rational(stalker, [0, VOID])
    assert not verify.is_individually_rational(stalker, [VOID, 0])  # (a,1) below void for 1
    assert verify.is_individually_rational(stalker, [VOID, VOID])


def test_ns_deviation_stalker(stalker):
    assert verify.find_ns_deviation(stalker, [VOID, VOID]) == verify.Deviation("NS", 0, 0)
    assert verify.find_ns_deviation(stalker, [0, VOID]) == verify.Deviation("NS", 1, 0)
    # the stalker in: player 0 now wants out, to the void activity
    assert verify.find_ns_deviation(stalker, [0, 0]) == verify.Deviation("NS", 0, VOID)


def test_ns_deviation_absent_for_loner():
    from ggasp.instance import make_instance

    inst = make_instance(1, ["a"], [], [[]])
    assert verify.find_ns_deviation(inst, [VOID]) is None


def test_is_deviation_empty_is_cases(empty_is):
    # every IR feasible assignment admits an IS-deviation; check two rows
    dev = verify.find_is_deviation(empty_is, [2, 2, 2])
    assert dev == verify.Deviation("IS", 0, 0)
    # an IS-deviation exists in the (c, b, a) case as well; replay-check it
    dev = verify.find_is_deviation(empty_is, [2, 1, 0])
    assert dev is not None
    _assert_is_deviation_valid(empty_is, [2, 1, 0], dev)


def test_is_deviation_stalker_rest_point(stalker):
    # 1's join is rejected by 0, and 0 sits at her top alternative
    assert verify.find_is_deviation(stalker, [0, VOID]) is None


def test_core_block_empty_core_rows(empty_core):
    blk = verify.find_core_block(empty_core, [1, 1, VOID])
    assert blk == verify.CoreBlock(frozenset({1, 2}), 0)
    blk = verify.find_core_block(empty_core, [VOID, VOID, VOID])
    assert blk == verify.CoreBlock(frozenset({2}), 1)


def test_core_block_requires_ir(empty_core):
    with pytest.raises(NotIndividuallyRationalError):
        verify.find_core_block(empty_core, [0, VOID, VOID])  # (a,1) unlisted for 0


def _assert_ns_deviation_valid(inst, pi, dev):
    masks = verify.group_masks(inst, pi)
    sizes = {a: m.bit_count() for a, m in masks.items()}
    i = dev.player
    cur = (
        inst.void_ranks[i]
        if pi[i] == VOID
        else inst.rank(i, pi[i], sizes[pi[i]])
    )
    if dev.activity == VOID:
        assert pi[i] != VOID and inst.void_ranks[i] < cur
        return
    m = masks.get(dev.activity, 0)
    assert inst.rank(i, dev.activity, m.bit_count() + 1) < cur
    assert m == 0 or (m & inst.graph.adj_mask[i])


def _assert_is_deviation_valid(inst, pi, dev):
    _assert_ns_deviation_valid(inst, pi, dev)
    if dev.activity == VOID:
        return
    masks = verify.group_masks(inst, pi)
    m = masks.get(dev.activity, 0)
    sz = m.bit_count()
    for j in bits(m):
        assert inst.rank(j, dev.activity, sz + 1) <= inst.rank(j, dev.activity, sz)


def _assert_core_block_valid(inst, pi, blk):
    masks = verify.group_masks(inst, pi)
    sizes = {a: m.bit_count() for a, m in masks.items()}
    S = blk.coalition
    s = len(S)
    assert inst.graph.is_connected_mask(mask_of(S))
    assert masks.get(blk.activity, 0) & ~mask_of(S) == 0  # current group joins
    for i in S:
        cur = inst.void_ranks[i] if pi[i] == VOID else inst.rank(i, pi[i], sizes[pi[i]])
        assert inst.rank(i, blk.activity, s) < cur


@given(seed=st.integers(0, 100_000))
@settings(max_examples=120, deadline=None)
def test_witnesses_replay(seed):
    """Every returned deviation / block replays as a genuine improvement."""
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    inst = random_test_instance(
        rng, n, rng.randint(1, 3), rng.choice(["path", "star", "clique", "general"]), 0.45
    )
    for pi in oracle.enumerate_feasible(inst, budget=20_000):
        dev = verify.find_ns_deviation(inst, pi)
        if dev is not None:
            _assert_ns_deviation_valid(inst, pi, dev)
        dev = verify.find_is_deviation(inst, pi)
        if dev is not None:
            _assert_is_deviation_valid(inst, pi, dev)
        if verify.is_individually_rational(inst, pi):
            blk = verify.find_core_block(inst, pi)
            if blk is not None:
                _assert_core_block_valid(inst, pi, blk)


def _brute_ns_stable(inst, pi):
    """Direct quantifier evaluation of the Nash stability definition."""
    masks = verify.group_masks(inst, pi)
    sizes = {a: m.bit_count() for a, m in masks.items()}
    if not verify.is_individually_rational(inst, pi):
        return False
    for i in range(inst.n):
        cur = inst.void_ranks[i] if pi[i] == VOID else inst.rank(i, pi[i], sizes[pi[i]])
        for a in range(inst.p):
            if a == pi[i]:
                continue
            m = masks.get(a, 0)
            if m and not inst.graph.is_connected_mask(m | (1 << i)):
                continue
            if inst.rank(i, a, m.bit_count() + 1) < cur:
                return False
    return True


def _brute_is_stable(inst, pi):
    masks = verify.group_masks(inst, pi)
    sizes = {a: m.bit_count() for a, m in masks.items()}
    if not verify.is_individually_rational(inst, pi):
        return False
    for i in range(inst.n):
        cur = inst.void_ranks[i] if pi[i] == VOID else inst.rank(i, pi[i], sizes[pi[i]])
        for a in range(inst.p):
            if a == pi[i]:
                continue
            m = masks.get(a, 0)
            if m and not inst.graph.is_connected_mask(m | (1 << i)):
                continue
            sz = m.bit_count()
            if inst.rank(i, a, sz + 1) < cur and all(
                inst.rank(j, a, sz + 1) <= inst.rank(j, a, sz) for j in bits(m)
            ):
                return False
    return True


def _brute_core_stable(inst, pi):
    """Quantify over every connected coalition and activity directly."""
    if not verify.is_individually_rational(inst, pi):
        return False
    masks = verify.group_masks(inst, pi)
    sizes = {a: m.bit_count() for a, m in masks.items()}
    cur = [
        inst.void_ranks[i] if pi[i] == VOID else inst.rank(i, pi[i], sizes[pi[i]])
        for i in range(inst.n)
    ]
    for size in range(1, inst.n + 1):
        for group in combinations(range(inst.n), size):
            gm = mask_of(group)
            if not inst.graph.is_connected_mask(gm):
                continue
            for a in range(inst.p):
                if masks.get(a, 0) & ~gm:
                    continue
                if all(inst.rank(i, a, size) < cur[i] for i in group):
                    return False
    return True


@given(seed=st.integers(0, 100_000))
@settings(max_examples=60, deadline=None)
def test_verifiers_match_brute_definitions(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    inst = random_test_instance(
        rng, n, rng.randint(1, 3), rng.choice(["path", "clique", "general"]), 0.45
    )
    for pi in oracle.enumerate_feasible(inst, budget=20_000):
        # the scan includes the deviation to the void activity, so a non-IR
        # assignment always yields a deviation and the equivalences are exact
        assert (verify.find_ns_deviation(inst, pi) is None) == _brute_ns_stable(inst, pi)
        assert (verify.find_is_deviation(inst, pi) is None) == _brute_is_stable(inst, pi)
        if verify.is_individually_rational(inst, pi):
            assert (verify.find_core_block(inst, pi) is None) == _brute_core_stable(inst, pi)


@given(seed=st.integers(0, 100_000))
@settings(max_examples=60, deadline=None)
def test_is_absent_implies_ns_absent_or_rejected(seed):
    rng = random.Random(seed)
    inst = random_test_instance(rng, rng.randint(1, 5), rng.randint(1, 3), "general", 0.5)
    for pi in oracle.enumerate_feasible(inst, budget=5_000):
        if verify.find_is_deviation(inst, pi) is not None:
            continue
        dev = verify.find_ns_deviation(inst, pi)
        if dev is None:
            continue
        assert dev.activity != VOID  # a void deviation would also be an IS one
        masks = verify.group_masks(inst, pi)
        m = masks.get(dev.activity, 0)
        sz = m.bit_count()
        rejected = any(
            inst.rank(j, dev.activity, sz + 1) > inst.rank(j, dev.activity, sz)
            for j in bits(m)
        )
        assert rejected
