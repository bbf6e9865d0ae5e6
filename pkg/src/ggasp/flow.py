"""Clique solvers: guess per-activity group sizes, realize them by max flow.

On a clique every subset is connected, so a stability check depends only on
the vector of group sizes ``f``.  For each candidate vector we build a
bipartite network whose player->activity arcs encode "this player accepts
this slot and would not hop anywhere else"; an integral flow saturating all
players decodes straight into a stable assignment.  Individual stability
additionally guesses which groups contain a member who would veto a newcomer
(flag vector ``g``) and routes one veto-witness per flagged group through a
dedicated unit-capacity node.
"""

from __future__ import annotations

from collections import deque
from itertools import product

from .errors import DispatchError
from .graphs import classify
from .instance import VOID, Assignment, Instance

MAX_P_DEFAULT = 6
VECTOR_BUDGET_DEFAULT = 10_000_000  # bound on (n+1)^(p+1) size-vector guesses


class FlowNetwork:
    """Integral max flow via shortest augmenting paths.

    Nodes are integers; arcs carry integer capacities.  Augmentation order
    is fixed by arc insertion order, so flows are deterministic.
    """

    def __init__(self, num_nodes: int):
        self.num_nodes = num_nodes
        self.head: list[list[int]] = [[] for _ in range(num_nodes)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_arc(self, u: int, v: int, capacity: int):
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(capacity)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while True:
            parent_arc = [-1] * self.num_nodes
            parent_arc[s] = -2
            queue = deque([s])
            while queue and parent_arc[t] == -1:
                u = queue.popleft()
                for e in self.head[u]:
                    v = self.to[e]
                    if self.cap[e] > 0 and parent_arc[v] == -1:
                        parent_arc[v] = e
                        queue.append(v)
            if parent_arc[t] == -1:
                return total
            bottleneck = None
            v = t
            while v != s:
                e = parent_arc[v]
                bottleneck = self.cap[e] if bottleneck is None else min(bottleneck, self.cap[e])
                v = self.to[e ^ 1]
            v = t
            while v != s:
                e = parent_arc[v]
                self.cap[e] -= bottleneck
                self.cap[e ^ 1] += bottleneck
                v = self.to[e ^ 1]
            total += bottleneck

    def flow_on(self, e: int) -> int:
        return self.cap[e ^ 1]


def _require_clique(inst: Instance, max_p: int):
    if not classify(inst.graph).clique:
        raise DispatchError("flow solvers need a complete graph")
    if inst.p > max_p:
        raise DispatchError(f"flow solvers are guarded at p <= {max_p}, got {inst.p}")
    if (inst.n + 1) ** (inst.p + 1) > VECTOR_BUDGET_DEFAULT:
        raise DispatchError(
            f"(n+1)^(p+1) = {(inst.n + 1) ** (inst.p + 1)} size vectors exceed the flow budget"
        )


def _size_vectors(inst: Instance):
    """All f: activities -> [0, n] with sum <= n, colexicographic order,
    pruned when some group size exceeds its weak-acceptance count.
    """
    n, p = inst.n, inst.p
    rank = inst.rank
    vr = inst.void_ranks
    accept_count = [
        [0] * (n + 1) for _ in range(p)
    ]
    for a in range(p):
        for s in range(1, n + 1):
            accept_count[a][s] = sum(1 for i in range(n) if rank(i, a, s) <= vr[i])
    for rev in product(range(n + 1), repeat=p):
        f = rev[::-1]
        if sum(f) > n:
            continue
        if any(f[a] and accept_count[a][f[a]] < f[a] for a in range(p)):
            continue
        yield f


def _solve_with_arcs(inst: Instance, f, arc_targets, flagged=frozenset()):
    """Build the network for one size guess and decode a saturating flow.

    ``arc_targets(i)`` yields the columns player ``i`` may occupy; a column
    is (kind, activity) with kind "group", "veto" or "void".  Groups in
    ``flagged`` reserve one of their slots for a veto witness.
    """
    n = inst.n
    columns = {}

    def column_id(key):
        if key not in columns:
            columns[key] = len(columns)
        return columns[key]

    arcs = []
    for i in range(n):
        for key in arc_targets(i):
            arcs.append((i, column_id(key)))
    caps = {}
    f_void = n - sum(f)
    for key, cid in columns.items():
        kind, a = key
        if kind == "void":
            caps[cid] = f_void
        elif kind == "veto":
            caps[cid] = 1
        else:
            caps[cid] = f[a] - 1 if a in flagged else f[a]

    source = n + len(columns)
    sink = source + 1
    net = FlowNetwork(sink + 1)
    for i in range(n):
        net.add_arc(source, i, 1)
    arc_ids = []
    for i, cid in arcs:
        arc_ids.append((i, cid, len(net.to)))
        net.add_arc(i, n + cid, 1)
    for key, cid in columns.items():
        net.add_arc(n + cid, sink, caps[cid])
    if net.max_flow(source, sink) != n:
        return None
    pi: Assignment = [VOID] * n
    col_activity = {cid: key for key, cid in columns.items()}
    for i, cid, e in arc_ids:
        if net.flow_on(e) == 1:
            kind, a = col_activity[cid]
            pi[i] = VOID if kind == "void" else a
    return pi


def ns_clique_with_sizes(inst: Instance, max_p: int = MAX_P_DEFAULT):
    """Nash stable assignment plus the witnessing size vector, or None."""
    _require_clique(inst, max_p)
    n, p = inst.n, inst.p
    rank = inst.rank
    vr = inst.void_ranks
    for f in _size_vectors(inst):
        def targets(i):
            hop = [rank(i, b, f[b] + 1) for b in range(p)]
            for a in range(p):
                if f[a] == 0:
                    continue
                r = rank(i, a, f[a])
                if r > vr[i]:
                    continue
                if any(hop[b] < r for b in range(p) if b != a):
                    continue
                yield ("group", a)
            if not any(hop[b] < vr[i] for b in range(p)):
                yield ("void", VOID)

        pi = _solve_with_arcs(inst, f, targets)
        if pi is not None:
            return pi, f
    return None


def ns_clique(inst: Instance, max_p: int = MAX_P_DEFAULT) -> Assignment | None:
    """Nash stable assignment on a clique, or None; exact."""
    found = ns_clique_with_sizes(inst, max_p)
    return None if found is None else found[0]


def is_clique_with_sizes(inst: Instance, max_p: int = MAX_P_DEFAULT):
    """Individually stable assignment plus the witnessing size vector.

    Iterates (f, g) guesses; groups flagged in ``g`` must contain a member
    strictly preferring the current size to one more, which shields them
    from incoming deviations.
    """
    _require_clique(inst, max_p)
    n, p = inst.n, inst.p
    rank = inst.rank
    vr = inst.void_ranks
    for f in _size_vectors(inst):
        flagged_candidates = [a for a in range(p) if f[a] >= 1]
        for gmask in range(1 << len(flagged_candidates)):
            flagged = {flagged_candidates[b] for b in range(len(flagged_candidates)) if (gmask >> b) & 1}
            open_groups = [b for b in range(p) if b not in flagged]

            def targets(i):
                hop = [rank(i, b, f[b] + 1) for b in range(p)]
                for a in range(p):
                    if f[a] == 0:
                        continue
                    r = rank(i, a, f[a])
                    if r > vr[i]:
                        continue
                    if any(hop[b] < r for b in open_groups if b != a):
                        continue
                    yield ("group", a)
                    if a in flagged and rank(i, a, f[a]) < rank(i, a, f[a] + 1):
                        yield ("veto", a)
                if not any(hop[b] < vr[i] for b in open_groups):
                    yield ("void", VOID)

            pi = _solve_with_arcs(inst, f, targets, frozenset(flagged))
            if pi is not None:
                return pi, f
    return None


def is_clique(inst: Instance, max_p: int = MAX_P_DEFAULT) -> Assignment | None:
    """Individually stable assignment on a clique, or None; exact."""
    found = is_clique_with_sizes(inst, max_p)
    return None if found is None else found[0]
