"""Generator families: structure, forward witnesses, reverse spot checks."""

import random

import pytest

from ggasp import generators as G
from ggasp import oracle, treedp, verify
from ggasp.errors import ValidationError
from ggasp.graphs import classify
from ggasp.instance import VOID, dumps, loads

from conftest import (
    brute_colorful,
    brute_exact_cover,
    brute_k_clique,
    brute_max_rainbow_matching,
    brute_maximal_matchings,
    brute_sat,
)

SMALLEST_B2 = (
    (("x", True), ("y", True), ("z", True)),
    (("x", True), ("y", False), ("z", False)),
    (("x", False), ("y", True), ("z", False)),
    (("x", False), ("y", False), ("z", True)),
)


def test_canonical_shapes():
    stalker = G.canonical("stalker").instance
    assert stalker.n == 2 and stalker.p == 1
    ec = G.canonical("empty_core").instance
    assert ec.n == 3 and ec.p == 2 and classify(ec.graph).path
    ei = G.canonical("empty_is").instance
    assert ei.n == 3 and ei.p == 3 and classify(ei.graph).path
    # strict preferences: every tier of the no-IS instance is a singleton
    assert all(len(t) == 1 for order in ei.tiers for t in order)


def test_rainbow_structure_and_validation():
    src = G.EdgeColoredPath(("c1", "c2"), 1)
    gen = G.from_rainbow_matching(src, "ns")
    assert gen.instance.n == 10 and gen.instance.p == 2
    assert classify(gen.instance.graph).path
    with pytest.raises(ValidationError):
        G.EdgeColoredPath(("c1", "c1"), 1)  # improper coloring
    with pytest.raises(ValidationError):
        G.EdgeColoredPath(("c1", "c2"), 3)  # k > #colors


def test_rainbow_witness_and_reverse():
    rng = random.Random(2)
    for _ in range(12):
        m = rng.randint(1, 4)
        colors = []
        for e in range(m):
            options = [c for c in "rgby" if not colors or c != colors[-1]]
            colors.append(rng.choice(options))
        best = brute_max_rainbow_matching(colors)
        for k in range(0, best + 1):
            src = G.EdgeColoredPath(tuple(colors), k)
            for variant in ("ns", "cr_is"):
                gen = G.from_rainbow_matching(src, variant)
                matching = _some_rainbow_matching(colors, k)
                pi = G.rainbow_witness(gen, matching)
                assert verify.is_feasible(gen.instance, pi)
                assert verify.is_individually_rational(gen.instance, pi)
                if variant == "ns":
                    assert verify.find_ns_deviation(gen.instance, pi) is None
                else:
                    assert verify.find_is_deviation(gen.instance, pi) is None
                    assert verify.find_core_block(gen.instance, pi) is None


def _some_rainbow_matching(colors, k):
    m = len(colors)
    for mask in range(1 << m):
        picked = [e for e in range(m) if (mask >> e) & 1]
        if len(picked) != k:
            continue
        if any(b - a < 2 for a, b in zip(picked, picked[1:])):
            continue
        if len({colors[e] for e in picked}) != k:
            continue
        return picked
    raise AssertionError("no rainbow matching of that size")


def test_rainbow_reverse_via_tree_dp():
    # reverse direction on 2-edge paths: NS existence iff a rainbow matching
    # of size >= k exists (checked by the independent matching brute force)
    for colors in (("c1", "c2"), ("a", "b")):
        for k in (0, 1, 2):
            best = brute_max_rainbow_matching(list(colors))
            if k > len(set(colors)):
                continue
            src = G.EdgeColoredPath(colors, k)
            gen = G.from_rainbow_matching(src, "ns")
            exists_dp = treedp.ns_tree(gen.instance) is not None
            exists_oracle = oracle.brute_solve(gen.instance, "ns", budget=10**6) is not None
            assert exists_dp == exists_oracle == (best >= k)


def test_mmm_structure_witness_reverse():
    # single edge, k=1: M = {the edge} is maximal
    src = G.BipartiteMMM(1, 1, ((0, 0),), 1)
    gen = G.from_mmm(src, "ns")
    assert gen.instance.n == 3 and gen.instance.p == 3
    assert classify(gen.instance.graph).star
    pi = G.mmm_witness(gen, [(0, 0)])
    assert verify.find_ns_deviation(gen.instance, pi) is None
    assert oracle.brute_solve(gen.instance, "ns", budget=10**6) is not None

    # k = 0 with a nonempty edge set: the empty matching is not maximal
    src0 = G.BipartiteMMM(2, 1, ((0, 0), (1, 0)), 0)
    gen0 = G.from_mmm(src0, "ns")
    assert oracle.brute_solve(gen0.instance, "ns", budget=10**6) is None
    with pytest.raises(ValidationError):
        G.mmm_witness(gen0, [])  # the empty matching is not maximal


def test_mmm_random_reverse():
    rng = random.Random(4)
    done = 0
    while done < 6:
        left, right = rng.randint(1, 2), rng.randint(1, 3)
        edges = tuple(
            (u, v) for u in range(left) for v in range(right) if rng.random() < 0.7
        )
        if not edges:
            continue
        k = rng.randint(0, min(len(edges), right))
        src = G.BipartiteMMM(left, right, edges, k)
        answer = brute_min_maximal_matching_size(edges) <= k
        for variant in ("ns", "is"):
            gen = G.from_mmm(src, variant)
            got = oracle.brute_solve(gen.instance, variant, budget=4 * 10**6)
            assert (got is not None) == answer, (edges, k, variant)
        done += 1


def brute_min_maximal_matching_size(edges):
    return min(len(m) for m in brute_maximal_matchings(list(edges)))


def test_mmm_witness_validation():
    src = G.BipartiteMMM(2, 2, ((0, 0), (1, 1), (0, 1)), 2)
    gen = G.from_mmm(src, "ns")
    with pytest.raises(ValidationError):
        G.mmm_witness(gen, [(0, 0), (0, 1)])  # not a matching
    pi = G.mmm_witness(gen, [(0, 0), (1, 1)])
    assert verify.find_ns_deviation(gen.instance, pi) is None


def test_b2sat_structure():
    f = G.B2Formula(SMALLEST_B2)
    gen = G.from_b2sat(f, "ns")
    # one 4-player star per clause, two 2-player edges per variable
    assert gen.instance.n == 4 * 3 + 4 * 4 == 28
    assert gen.instance.p == 7 * 3 + 4 == 25
    comps = classify(gen.instance.graph)
    assert comps.max_component == 4
    from ggasp.graphs import connected_components

    assert len(connected_components(gen.instance.graph)) == 4 + 2 * 3  # |C| + 2|X|
    gen2 = G.from_b2sat(f, "cr_is")
    assert classify(gen2.instance.graph).max_component == 3
    with pytest.raises(ValidationError):
        G.B2Formula((("x", True),) * 3)  # malformed clause
    bad = (
        (("x", True), ("x", True), ("y", True)),
        (("x", False), ("x", False), ("y", False)),
    )
    with pytest.raises(ValidationError):
        G.B2Formula(bad)  # y occurs once per sign


def test_b2sat_witnesses():
    f = G.B2Formula(SMALLEST_B2)
    tau = brute_sat(f)
    assert tau is not None
    for variant in ("ns", "cr_is"):
        gen = G.from_b2sat(f, variant)
        pi = G.b2sat_witness(gen, tau)
        assert verify.is_feasible(gen.instance, pi)
        assert verify.is_individually_rational(gen.instance, pi)
        if variant == "ns":
            assert verify.find_ns_deviation(gen.instance, pi) is None
        else:
            assert verify.find_is_deviation(gen.instance, pi) is None
            assert verify.find_core_block(gen.instance, pi) is None
    with pytest.raises(ValidationError):
        G.b2sat_witness(G.from_b2sat(f, "ns"), {v: False for v in f.variables})


def test_x3c_structure_and_witness():
    src = G.X3CInstance(1, ((0, 1, 2),))
    gen = G.from_x3c_star(src)
    assert gen.instance.p == 2 and classify(gen.instance.graph).star
    # dummy counts: beta(i) - |sets(i)| - 2 with beta = 5, 6, 7
    assert gen.instance.n == 3 + 1 + (2 + 3 + 4)
    pi = G.x3c_witness(gen, [0])
    assert verify.find_core_block(gen.instance, pi) is None

    with pytest.raises(ValidationError):
        G.X3CInstance(1, ((0, 1, 2), (0, 1, 2)))  # duplicate sets
    with pytest.raises(ValidationError):
        G.X3CInstance(2, ((0, 1, 2),))  # uncovered elements
    with pytest.raises(ValidationError):
        G.x3c_witness(gen, [])


def test_x3c_clique_witness():
    triples = ((0, 1, 2), (1, 2, 3), (3, 4, 5), (0, 4, 5))
    src = G.X3CInstance(2, triples)
    cover = brute_exact_cover(2, triples)
    assert cover is not None
    gen = G.from_x3c_clique(src)
    assert gen.instance.p == 4 and classify(gen.instance.graph).clique
    pi = G.x3c_witness(gen, cover)
    assert verify.find_core_block(gen.instance, pi) is None


def test_regular_clique_structure_and_witness():
    k3 = G.RegularGraph(3, ((0, 1), (0, 2), (1, 2)))
    for variant, acts in (("ns", 2 + 1 + 2), ("is", 3 * 2 + 1 + 4)):
        gen = G.from_regular_clique(k3, 2, variant)
        assert gen.instance.p == acts
        assert classify(gen.instance.graph).clique
        clique = brute_k_clique(3, k3.edges, 2)
        pi = G.regular_clique_witness(gen, clique)
        assert verify.is_feasible(gen.instance, pi)
        assert verify.is_individually_rational(gen.instance, pi)
        if variant == "ns":
            assert verify.find_ns_deviation(gen.instance, pi) is None
        else:
            assert verify.find_is_deviation(gen.instance, pi) is None


def test_regular_clique_alpha_gaps():
    c4 = G.RegularGraph(4, ((0, 1), (1, 2), (2, 3), (0, 3)))
    gen = G.from_regular_clique(c4, 2, "ns")
    # vertex coalition sizes pairwise differ by at least two (asserted on
    # generation; recheck here from the labels)
    sizes = sorted(
        sum(1 for lbl in gen.players if isinstance(lbl, tuple) and lbl[0] == "dv" and lbl[1] == v)
        for v in range(4)
    )
    assert all(b - a >= 2 for a, b in zip(sizes, sizes[1:]))


def test_regular_clique_rejects_non_clique_witness():
    c4 = G.RegularGraph(4, ((0, 1), (1, 2), (2, 3), (0, 3)))
    assert brute_k_clique(4, c4.edges, 3) is None
    gen = G.from_regular_clique(c4, 3, "ns")
    with pytest.raises(ValidationError):
        G.regular_clique_witness(gen, [0, 1, 2])
    with pytest.raises(ValidationError):
        G.from_regular_clique(c4, 4, "ns")  # degree < k - 1


def test_multicolored_structure_and_witnesses():
    g = G.ColoredGraph(4, ((0, 2), (1, 3)), (0, 0, 1, 1))
    gen = G.from_multicolored(g, "core_mis")
    assert gen.instance.n == 2 * 2 + 4
    ind = brute_colorful(4, g.edges, g.colors, want_clique=False)
    pi = G.multicolored_witness(gen, ind)
    assert verify.find_core_block(gen.instance, pi) is None

    gen2 = G.from_multicolored(g, "nsis_mc")
    assert gen2.instance.n == 3 * 2 + 3 * 1 + 4  # 3h + 3*C(h,2) + 4
    clique = brute_colorful(4, g.edges, g.colors, want_clique=True)
    pi2 = G.multicolored_witness(gen2, clique)
    assert verify.find_ns_deviation(gen2.instance, pi2) is None
    assert verify.find_is_deviation(gen2.instance, pi2) is None


def test_multicolored_player_count_h3():
    g = G.ColoredGraph(6, ((0, 2), (0, 4), (2, 4)), (0, 0, 1, 1, 2, 2))
    gen = G.from_multicolored(g, "nsis_mc")
    assert gen.instance.n == 3 * 3 + 3 * 3 + 4 == 22


def test_multicolored_validation():
    with pytest.raises(ValidationError):
        G.ColoredGraph(3, (), (0, 0, 1))  # unequal classes
    with pytest.raises(ValidationError):
        G.ColoredGraph(4, ((0, 1),), (0, 0, 1, 1))  # intra-color edge


def test_multicolored_core_reverse():
    # h=2, q=1: independent set exists iff the two vertices are not adjacent
    adjacent = G.ColoredGraph(2, ((0, 1),), (0, 1))
    free = G.ColoredGraph(2, (), (0, 1))
    got = oracle.brute_solve(G.from_multicolored(adjacent, "core_mis").instance, "core")
    assert got is None
    got = oracle.brute_solve(G.from_multicolored(free, "core_mis").instance, "core")
    assert got is not None and verify.find_core_block(
        G.from_multicolored(free, "core_mis").instance, got
    ) is None


def test_random_instance_deterministic_and_valid():
    a = G.random_instance(1, 5, 2, "path", 0.5)
    b = G.random_instance(1, 5, 2, "path", 0.5)
    assert a == b and dumps(a) == dumps(b)
    assert loads(dumps(a)) == a
    c = G.random_instance(2, 5, 2, "path", 0.5)
    assert dumps(c) != dumps(a)


def test_random_instance_density_zero():
    inst = G.random_instance(3, 5, 2, "clique", 0.0)
    pi = [VOID] * 5
    for concept in ("ns", "is", "core"):
        assert verify.is_stable(inst, pi, concept)


def test_random_instance_copyable_round_trip():
    inst = G.random_instance(4, 4, 2, "forest", 1.0, copyable=True)
    _, all_copyable = inst.copyable_classes()
    assert all_copyable
    assert loads(dumps(inst)) == inst
