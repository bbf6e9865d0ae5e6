"""Graph machinery shared by every solver.

Node sets are handled as Python-int bitmasks internally (arbitrary width),
exposed as ``set[int]`` or ``frozenset[int]`` at the API boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import BudgetExceededError, ValidationError


def mask_of(nodes: Iterable[int]) -> int:
    m = 0
    for v in nodes:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    _derived: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        adj = [[] for _ in range(self.n)]
        adj_mask = [0] * self.n
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
            adj_mask[u] |= 1 << v
            adj_mask[v] |= 1 << u
        for row in adj:
            row.sort()
        self._derived["adj"] = adj
        self._derived["adj_mask"] = adj_mask

    @property
    def adj(self) -> list[list[int]]:
        return self._derived["adj"]

    @property
    def adj_mask(self) -> list[int]:
        return self._derived["adj_mask"]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    # -- connectivity over bitmasks ------------------------------------

    def component_mask(self, start: int, within: int) -> int:
        """Connected component of ``start`` in the subgraph induced by ``within``."""
        adj_mask = self.adj_mask
        comp = (1 << start) & within
        frontier = comp
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj_mask[v]
            nxt &= within & ~comp
            comp |= nxt
            frontier = nxt
        return comp

    def is_connected_mask(self, mask: int) -> bool:
        if mask == 0:
            return True
        start = (mask & -mask).bit_length() - 1
        return self.component_mask(start, mask) == mask

    def component_masks(self, within: int) -> list[int]:
        comps = []
        rest = within
        while rest:
            start = (rest & -rest).bit_length() - 1
            comp = self.component_mask(start, rest)
            comps.append(comp)
            rest &= ~comp
        return comps


# -- public operations ----------------------------------------------------


def connected_components(graph: Graph) -> list[set[int]]:
    """Partition of all nodes into connected components, by smallest member."""
    return [set(bits(m)) for m in graph.component_masks((1 << graph.n) - 1)]


def is_connected_subset(graph: Graph, nodes: Iterable[int]) -> bool:
    """True iff ``nodes`` induces a connected subgraph; the empty set counts."""
    return graph.is_connected_mask(mask_of(nodes))


def largest_connected_superset(graph: Graph, candidates, required) -> set[int] | None:
    """Maximum-size connected subset of ``candidates`` containing ``required``.

    Returns None when ``required`` is split across components of the induced
    subgraph (or not contained in ``candidates``).  Ties between components
    break toward the one with the smallest member.
    """
    cand = mask_of(candidates)
    req = mask_of(required)
    if req & ~cand:
        return None
    if req:
        start = (req & -req).bit_length() - 1
        comp = graph.component_mask(start, cand)
        if req & ~comp:
            return None
        return set(bits(comp))
    best = 0
    for comp in graph.component_masks(cand):
        if comp.bit_count() > best.bit_count():
            best = comp
    return set(bits(best)) if best else None


def connected_subsets(graph: Graph, size_cap=None, count_cap=None) -> Iterator[frozenset[int]]:
    """All nonempty connected subsets, each exactly once.

    Yields in lexicographic order of the sorted member tuple.  ``size_cap``
    skips larger sets; exceeding ``count_cap`` raises
    :class:`BudgetExceededError`.
    """
    adj_mask = graph.adj_mask
    limit = size_cap if size_cap is not None else graph.n
    count = 0

    def expand(members: tuple[int, ...], mask: int, border: int, forbidden: int, higher: int):
        nonlocal count
        count += 1
        if count_cap is not None and count > count_cap:
            raise BudgetExceededError("connected-subset enumeration exceeded its cap", count)
        yield frozenset(members)
        if len(members) >= limit:
            return
        cands = list(bits(border & ~forbidden))
        for idx, v in enumerate(cands):
            new_border = (border | adj_mask[v]) & ~(mask | (1 << v)) & higher
            yield from expand(
                members + (v,),
                mask | (1 << v),
                new_border,
                forbidden | mask_of(cands[:idx]),
                higher,
            )

    for anchor in range(graph.n):
        higher = ~((1 << (anchor + 1)) - 1)
        yield from expand((anchor,), 1 << anchor, adj_mask[anchor] & higher, 0, higher)


def count_connected_subsets(graph: Graph, cap: int) -> int | None:
    """Number of nonempty connected subsets, or None once it exceeds ``cap``."""
    try:
        n = 0
        for _ in connected_subsets(graph, count_cap=cap):
            n += 1
        return n
    except BudgetExceededError:
        return None


@dataclass
class RootedTree:
    """One tree of a rooted forest: children ordered by index, root = min node."""

    root: int
    parent: dict[int, int | None]
    children: dict[int, list[int]]
    height: dict[int, int]
    desc_mask: dict[int, int]
    postorder: list[int]

    @property
    def nodes(self) -> list[int]:
        return sorted(self.parent)

    def desc(self, v: int) -> set[int]:
        return set(bits(self.desc_mask[v]))


def root_forest(graph: Graph) -> list[RootedTree]:
    """Root every component of a forest at its minimum node.

    Raises :class:`ValidationError` when the graph has a cycle.
    """
    trees = []
    for comp in graph.component_masks((1 << graph.n) - 1):
        root = (comp & -comp).bit_length() - 1
        parent: dict[int, int | None] = {root: None}
        children: dict[int, list[int]] = {}
        order = [root]
        idx = 0
        while idx < len(order):
            v = order[idx]
            idx += 1
            kids = [u for u in graph.adj[v] if u != parent[v]]
            for u in kids:
                if u in parent:
                    raise ValidationError("graph is not a forest")
                parent[u] = v
            children[v] = kids
            order.extend(kids)
        height = {}
        desc_mask = {}
        postorder = list(reversed(order))
        for v in postorder:
            kids = children[v]
            height[v] = 1 + max((height[u] for u in kids), default=-1)
            m = 1 << v
            for u in kids:
                m |= desc_mask[u]
            desc_mask[v] = m
        trees.append(
            RootedTree(
                root=root,
                parent=parent,
                children=children,
                height=height,
                desc_mask=desc_mask,
                postorder=postorder,
            )
        )
    return trees


@dataclass(frozen=True)
class GraphClass:
    clique: bool
    path: bool
    star: bool
    forest: bool
    max_component: int

    @property
    def general(self) -> bool:
        return not (self.clique or self.path or self.star or self.forest)

    def kinds(self) -> set[str]:
        out = {f"small-components({self.max_component})"}
        for name in ("clique", "path", "star", "forest"):
            if getattr(self, name):
                out.add(name)
        if self.general:
            out.add("general")
        return out


def classify(graph: Graph) -> GraphClass:
    n = graph.n
    comps = graph.component_masks((1 << n) - 1)
    max_component = max(c.bit_count() for c in comps)
    connected = len(comps) == 1
    m = len(graph.edges)
    clique = m == n * (n - 1) // 2
    try:
        root_forest(graph)
        forest = True
    except ValidationError:
        forest = False
    path = connected and forest and all(graph.degree(v) <= 2 for v in range(n))
    star = connected and m == n - 1 and any(graph.degree(v) == n - 1 for v in range(n))
    return GraphClass(clique=clique, path=path, star=star, forest=forest, max_component=max_component)


# -- graph builders (used by generators and tests) -------------------------


def path_edges(n: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(n - 1)]


def star_edges(n: int, center: int = 0) -> list[tuple[int, int]]:
    return [(center, v) for v in range(n) if v != center]


def clique_edges(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]
