"""Graph toolkit: components, connected subsets, rooting, classification."""

import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from ggasp.errors import BudgetExceededError, ValidationError
from ggasp.graphs import (
    Graph,
    classify,
    clique_edges,
    connected_components,
    connected_subsets,
    count_connected_subsets,
    is_connected_subset,
    largest_connected_superset,
    path_edges,
    root_forest,
    star_edges,
)


def brute_connected_subsets(g: Graph):
    """Independent oracle: filter all 2^n subsets by connectivity."""
    out = set()
    for mask in range(1, 1 << g.n):
        nodes = frozenset(v for v in range(g.n) if (mask >> v) & 1)
        if is_connected_subset(g, nodes):
            out.add(nodes)
    return out


def test_components_stalker_edge():
    g = Graph(2, ((0, 1),))
    assert connected_components(g) == [{0, 1}]


def test_components_edgeless():
    g = Graph(3, ())
    assert connected_components(g) == [{0}, {1}, {2}]


def test_is_connected_subset_path():
    g = Graph(3, tuple(path_edges(3)))
    assert not is_connected_subset(g, {0, 2})
    assert is_connected_subset(g, {0, 1, 2})
    assert is_connected_subset(g, set())  # convention: empty group is fine


def test_largest_connected_superset():
    g = Graph(4, tuple(path_edges(4)))
    assert largest_connected_superset(g, {0, 1, 3}, {0}) == {0, 1}
    assert largest_connected_superset(g, {1, 2}, {1, 2}) == {1, 2}
    star = Graph(3, tuple(star_edges(3)))
    assert largest_connected_superset(star, {1, 2}, {1, 2}) is None


def test_connected_subsets_path3():
    g = Graph(3, tuple(path_edges(3)))
    subs = list(connected_subsets(g))
    assert len(subs) == 6
    assert set(subs) == {
        frozenset(s) for s in ({0}, {1}, {2}, {0, 1}, {1, 2}, {0, 1, 2})
    }
    # lexicographic order of sorted member tuples
    as_tuples = [tuple(sorted(s)) for s in subs]
    assert as_tuples == sorted(as_tuples)


def test_connected_subsets_triangle_and_star():
    # frozen counts, derived by the 2^n brute filter below
    triangle = Graph(3, tuple(clique_edges(3)))
    assert len(brute_connected_subsets(triangle)) == 7
    assert len(list(connected_subsets(triangle))) == 7
    star = Graph(4, tuple(star_edges(4)))
    assert len(brute_connected_subsets(star)) == 11
    assert len(list(connected_subsets(star))) == 11


def test_connected_subsets_caps():
    g = Graph(4, tuple(clique_edges(4)))
    small = list(connected_subsets(g, size_cap=1))
    assert set(small) == {frozenset({v}) for v in range(4)}
    with pytest.raises(BudgetExceededError):
        list(connected_subsets(g, count_cap=3))
    assert count_connected_subsets(g, 3) is None
    assert count_connected_subsets(g, 100) == 15


@given(seed=st.integers(0, 100_000))
@settings(max_examples=60, deadline=None)
def test_connected_subsets_match_brute_filter(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 8)
    edges = tuple((u, v) for u, v in combinations(range(n), 2) if rng.random() < 0.35)
    g = Graph(n, edges)
    enumerated = list(connected_subsets(g))
    assert len(enumerated) == len(set(enumerated)), "duplicates"
    assert set(enumerated) == brute_connected_subsets(g)


def test_root_forest_path():
    g = Graph(3, tuple(path_edges(3)))
    (tree,) = root_forest(g)
    assert tree.root == 0
    assert tree.height[0] == 2 and tree.height[1] == 1 and tree.height[2] == 0
    assert tree.desc(1) == {1, 2}
    assert tree.parent[2] == 1 and tree.parent[0] is None


def test_root_forest_single_node():
    g = Graph(1, ())
    (tree,) = root_forest(g)
    assert tree.root == 0 and tree.height[0] == 0


def test_root_forest_rejects_cycles():
    g = Graph(3, tuple(clique_edges(3)))
    with pytest.raises(ValidationError):
        root_forest(g)


@given(seed=st.integers(0, 100_000))
@settings(max_examples=50, deadline=None)
def test_root_forest_reproduces_edges(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 9)
    edges = tuple(
        (rng.randrange(v), v) for v in range(1, n) if rng.random() < 0.8
    )
    g = Graph(n, edges)
    rebuilt = set()
    for tree in root_forest(g):
        for v, parent in tree.parent.items():
            if parent is not None:
                rebuilt.add((min(v, parent), max(v, parent)))
    assert rebuilt == {(min(u, v), max(u, v)) for u, v in edges}


def test_classify_examples():
    two = classify(Graph(2, ((0, 1),)))
    assert two.clique and two.path and two.star and two.forest
    assert two.max_component == 2 and not two.general

    star = classify(Graph(4, tuple(star_edges(4))))
    assert star.star and star.forest and not star.path and not star.clique

    cycle = classify(Graph(4, ((0, 1), (1, 2), (2, 3), (0, 3))))
    assert cycle.general and cycle.max_component == 4
    assert cycle.kinds() == {"general", "small-components(4)"}


def test_classify_cliques_by_definition():
    for n in range(1, 9):
        assert classify(Graph(n, tuple(clique_edges(n)))).clique
