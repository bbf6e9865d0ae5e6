"""Max-flow machinery and the clique solvers."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from ggasp import flow, oracle, verify
from ggasp.errors import DispatchError
from ggasp.generators import canonical
from ggasp.graphs import clique_edges
from ggasp.instance import VOID, make_instance

from conftest import random_test_instance


def test_max_flow_unit_chain():
    net = flow.FlowNetwork(3)
    net.add_arc(0, 1, 1)
    net.add_arc(1, 2, 1)
    assert net.max_flow(0, 2) == 1


def test_max_flow_disconnected_sink():
    net = flow.FlowNetwork(3)
    net.add_arc(0, 1, 5)
    assert net.max_flow(0, 2) == 0


def test_max_flow_two_player_pair():
    # source -> two players -> one activity with capacity 2 -> sink
    net = flow.FlowNetwork(5)
    net.add_arc(0, 1, 1)
    net.add_arc(0, 2, 1)
    net.add_arc(1, 3, 1)
    net.add_arc(2, 3, 1)
    net.add_arc(3, 4, 2)
    assert net.max_flow(0, 4) == 2


def brute_min_cut(num_nodes, arcs, s, t):
    best = None
    others = [v for v in range(num_nodes) if v not in (s, t)]
    for mask in range(1 << len(others)):
        side = {s} | {others[i] for i in range(len(others)) if (mask >> i) & 1}
        cut = sum(cap for u, v, cap in arcs if u in side and v not in side)
        best = cut if best is None else min(best, cut)
    return best


@given(seed=st.integers(0, 100_000))
@settings(max_examples=100, deadline=None)
def test_max_flow_equals_min_cut(seed):
    rng = random.Random(seed)
    num = rng.randint(2, 7)
    arcs = []
    for u in range(num):
        for v in range(num):
            if u != v and rng.random() < 0.35:
                arcs.append((u, v, rng.randint(1, 4)))
    net = flow.FlowNetwork(num)
    for u, v, cap in arcs:
        net.add_arc(u, v, cap)
    assert net.max_flow(0, num - 1) == brute_min_cut(num, arcs, 0, num - 1)


def test_clique_guards():
    path = make_instance(3, ["a"], [(0, 1), (1, 2)], [[], [], []])
    with pytest.raises(DispatchError):
        flow.ns_clique(path)
    big = make_instance(2, list("abcdefg"), [(0, 1)], [[], []])
    with pytest.raises(DispatchError):
        flow.ns_clique(big, max_p=6)


def test_stalker_as_clique():
    inst = canonical("stalker").instance  # two nodes with an edge form K2
    assert flow.ns_clique(inst) is None
    pi = flow.is_clique(inst)
    assert pi == [0, VOID]


def test_pair_both_on_a():
    # both-on-a is Nash stable (all-void is too: neither approves (a, 1))
    inst = make_instance(2, ["a"], [(0, 1)], [[[("a", 2)]], [[("a", 2)]]])
    assert verify.find_ns_deviation(inst, [0, 0]) is None
    pi = flow.ns_clique(inst)
    assert pi is not None and verify.find_ns_deviation(inst, pi) is None


def test_all_void_found_at_zero_vector():
    inst = make_instance(3, ["a", "b"], clique_edges(3), [[], [], []])
    got = flow.is_clique_with_sizes(inst)
    assert got is not None
    pi, f = got
    assert pi == [VOID] * 3 and f == (0, 0)


@given(seed=st.integers(0, 1_000_000))
@settings(max_examples=120, deadline=None)
def test_clique_solvers_match_oracle(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    inst = random_test_instance(rng, n, rng.randint(1, 3), "clique", rng.choice([0.2, 0.4, 0.6]))
    got = flow.ns_clique_with_sizes(inst)
    want = oracle.brute_solve(inst, "ns", budget=300_000)
    assert (got is None) == (want is None)
    if got is not None:
        pi, f = got
        assert verify.is_individually_rational(inst, pi)
        assert verify.find_ns_deviation(inst, pi) is None
        sizes = [0] * inst.p
        for a in pi:
            if a != VOID:
                sizes[a] += 1
        assert tuple(sizes) == f  # decoded group sizes equal the guess
    got = flow.is_clique_with_sizes(inst)
    want = oracle.brute_solve(inst, "is", budget=300_000)
    assert (got is None) == (want is None)
    if got is not None:
        pi, f = got
        assert verify.is_individually_rational(inst, pi)
        assert verify.find_is_deviation(inst, pi) is None
        sizes = [0] * inst.p
        for a in pi:
            if a != VOID:
                sizes[a] += 1
        assert tuple(sizes) == f
