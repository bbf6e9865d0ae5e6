"""Shared helpers: random instance samplers and independent brute solvers
for the reduction source problems.

The source-problem solvers here are deliberately naive enumerations; they
provide the ground truth that generator reverse-checks compare against and
never share code with the library.
"""

from __future__ import annotations

import random
from itertools import combinations, product

import pytest

from ggasp.graphs import clique_edges, path_edges, star_edges
from ggasp.instance import make_instance


def random_weak_order(rng, names, n, density, tie_void=0.15):
    alts = [(nm, k) for nm in names for k in range(1, n + 1) if rng.random() < density]
    rng.shuffle(alts)
    tiers, cur = [], []
    for alt in alts:
        cur.append(alt)
        if rng.random() < 0.55:
            tiers.append(cur)
            cur = []
    if cur:
        tiers.append(cur)
    if tiers and rng.random() < tie_void:
        tiers[-1].append("VOID")
    return tiers


def random_test_instance(rng, n, p, shape, density, copyable=False):
    if shape == "path":
        edges = path_edges(n)
    elif shape == "star":
        edges = star_edges(n)
    elif shape == "clique":
        edges = clique_edges(n)
    elif shape == "tree":
        edges = [(rng.randrange(v), v) for v in range(1, n)]
    elif shape == "forest":
        edges = [(rng.randrange(v), v) for v in range(1, n) if rng.random() < 0.8]
    elif shape == "two_components" and n >= 2:
        cut = rng.randint(1, n - 1)
        edges = []
        for lo, hi in ((0, cut), (cut, n)):
            nodes = list(range(lo, hi))
            for idx in range(1, len(nodes)):
                edges.append((nodes[rng.randrange(idx)], nodes[idx]))
    else:
        edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < 0.4]
    names = [chr(ord("a") + c) for c in range(p)]
    prefs = [random_weak_order(rng, names, n, density) for _ in range(n)]
    if copyable:
        activities = [(nm, nm.upper(), n) for nm in names]
    else:
        activities = names
    return make_instance(n, activities, edges, prefs)


# -- independent source-problem solvers -------------------------------------


def brute_max_rainbow_matching(colors):
    """Largest rainbow matching on the path whose edge i has colors[i]."""
    m = len(colors)
    best = 0
    for mask in range(1 << m):
        picked = [e for e in range(m) if (mask >> e) & 1]
        if any(b - a < 2 for a, b in zip(picked, picked[1:])):
            continue
        if len({colors[e] for e in picked}) != len(picked):
            continue
        best = max(best, len(picked))
    return best


def brute_maximal_matchings(edges):
    """All maximal matchings of a bipartite graph; endpoints are (left, right)."""
    out = []
    m = len(edges)
    for mask in range(1 << m):
        picked = [edges[e] for e in range(m) if (mask >> e) & 1]
        lefts = [u for u, _ in picked]
        rights = [v for _, v in picked]
        if len(set(lefts)) != len(lefts) or len(set(rights)) != len(rights):
            continue
        lt, rt = set(lefts), set(rights)
        if any(u not in lt and v not in rt for u, v in edges):
            continue
        out.append(picked)
    return out


def brute_min_maximal_matching(edges):
    return min(len(m) for m in brute_maximal_matchings(edges))


def brute_sat(formula):
    names = formula.variables
    for bits in product([False, True], repeat=len(names)):
        tau = dict(zip(names, bits))
        if formula.satisfies(tau):
            return tau
    return None


def brute_exact_cover(k, triples):
    for picked in combinations(range(len(triples)), k):
        flat = [v for j in picked for v in triples[j]]
        if sorted(flat) == list(range(3 * k)):
            return list(picked)
    return None


def brute_k_clique(num_vertices, edges, k):
    es = {(min(u, v), max(u, v)) for u, v in edges}
    for group in combinations(range(num_vertices), k):
        if all((a, b) in es for a, b in combinations(group, 2)):
            return list(group)
    return None


def brute_colorful(num_vertices, edges, colors, want_clique):
    es = {(min(u, v), max(u, v)) for u, v in edges}
    h = max(colors) + 1 if colors else 0
    classes = [[v for v in range(num_vertices) if colors[v] == i] for i in range(h)]
    for combo in product(*classes):
        pairs = list(combinations(sorted(combo), 2))
        if want_clique and all(e in es for e in pairs):
            return list(combo)
        if not want_clique and not any(e in es for e in pairs):
            return list(combo)
    return None


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
