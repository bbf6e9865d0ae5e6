"""Polynomial solvers for forests whose activities are all copyable.

With at least ``n`` interchangeable copies of every activity class, several
groups can run the same class at once.  Core and individually stable
assignments then always exist and are built constructively; Nash stability
may still fail (the stalker game), but is decidable by a tree DP.

All three solvers share the same two-phase skeleton: a bottom-up pass over
a rooted tree that computes, for every node, what its subtree can secure,
and a top-down pass that carves the tree into groups and hands each group
a fresh copy of its class.
"""

from __future__ import annotations

from .errors import DispatchError
from .graphs import RootedTree, bits, classify, root_forest
from .instance import VOID, Assignment, Instance


def _require_copyable_forest(inst: Instance):
    _, all_copyable = inst.copyable_classes()
    if not all_copyable:
        raise DispatchError("copyable solvers need every activity class to have >= n copies")
    if not classify(inst.graph).forest:
        raise DispatchError("copyable solvers need an acyclic graph")


class _CopyPool:
    """Hands out fresh, pairwise-distinct copies per equivalence class."""

    def __init__(self, inst: Instance):
        classes, _ = inst.copyable_classes()
        self.free = [sorted(cls, reverse=True) for cls in classes]
        self.class_of = inst.class_of

    def take(self, rep: int) -> int:
        return self.free[self.class_of(rep)].pop()


def _rank_fn(inst: Instance):
    # inst.rank already resolves VOID and impossible sizes.
    return inst.rank


# -- core ------------------------------------------------------------------


def core_copyable(inst: Instance) -> Assignment:
    """Core stable assignment; total under the copyable-forest precondition.

    Bottom-up, each node claims the best alternative ``(a, k)`` for which a
    connected ``k``-subset of its subtree (through itself) exists whose
    members all weakly prefer ``(a, k)`` to what they already secured.
    Top-down, surviving subtree roots freeze their claims onto fresh copies.
    """
    _require_copyable_forest(inst)
    pi: Assignment = [VOID] * inst.n
    pool = _CopyPool(inst)
    for tree in root_forest(inst.graph):
        guarantee_S, guarantee_a = _core_guarantees(inst, tree)
        _top_down(tree, guarantee_S, guarantee_a, pool, pi)
    return pi


def _core_guarantees(inst: Instance, tree: RootedTree):
    """Bottom-up phase: per node, the best coalition and class it can secure."""
    r = _rank_fn(inst)
    reps = inst.class_representatives()
    g = inst.graph
    guarantee_S = {v: 1 << v for v in tree.parent}
    guarantee_a = {v: VOID for v in tree.parent}
    own_rank = {v: r(v, VOID, 1) for v in tree.parent}
    for i in tree.postorder:
        desc = tree.desc_mask[i]
        dsize = desc.bit_count()
        for a in reps:
            for k in range(1, dsize + 1):
                mine = r(i, a, k)
                if mine >= own_rank[i]:
                    continue  # not a strict improvement for i
                agree = 0
                for j in bits(desc):
                    if r(j, a, k) <= own_rank[j]:
                        agree |= 1 << j
                if not (agree >> i) & 1:
                    continue
                comp = g.component_mask(i, agree)
                if comp.bit_count() < k:
                    continue
                from .verify import _trim

                guarantee_S[i] = _trim(g, comp, 1 << i, k)
                guarantee_a[i] = a
                own_rank[i] = mine
    return guarantee_S, guarantee_a


def _top_down(tree: RootedTree, S, a, pool: _CopyPool, pi: Assignment):
    remaining = tree.desc_mask[tree.root]
    while remaining:
        # Subroots: remaining nodes whose parent is gone (or the tree root).
        sub = [
            v
            for v in bits(remaining)
            if tree.parent[v] is None or not (remaining >> tree.parent[v]) & 1
        ]
        r0 = min(sub)
        members = S[r0]
        act = a[r0]
        copy = VOID if act == VOID else pool.take(act)
        for v in bits(members):
            pi[v] = copy
        remaining &= ~members


# -- individual stability --------------------------------------------------


def is_copyable(inst: Instance) -> Assignment:
    """Individually stable assignment; total under the precondition.

    Bottom-up, each node joins its favourite child coalition among those
    that would accept it (or starts its favourite activity alone when that
    beats every join), then greedily admits boundary players as long as the
    whole coalition consents and the newcomer strictly gains.
    """
    _require_copyable_forest(inst)
    r = _rank_fn(inst)
    reps = [VOID] + inst.class_representatives()
    pi: Assignment = [VOID] * inst.n
    pool = _CopyPool(inst)
    for tree in root_forest(inst.graph):
        S = {v: 1 << v for v in tree.parent}
        act = {v: VOID for v in tree.parent}
        for i in tree.postorder:
            # Children whose coalitions would accept i joining.
            joinable = []
            for j in tree.children[i]:
                if act[j] == VOID:
                    continue
                size = S[j].bit_count()
                if all(r(m, act[j], size + 1) <= r(m, act[j], size) for m in bits(S[j])):
                    joinable.append(j)
            best_single = min(reps, key=lambda b: r(i, b, 1))
            best_join = None
            for j in joinable:
                score = r(i, act[j], S[j].bit_count() + 1)
                if best_join is None or score < r(i, act[best_join], S[best_join].bit_count() + 1):
                    best_join = j
            if best_join is None or r(i, best_single, 1) < r(
                i, act[best_join], S[best_join].bit_count() + 1
            ):
                S[i], act[i] = 1 << i, best_single
            else:
                S[i], act[i] = S[best_join] | (1 << i), act[best_join]
            # Growth loop: admit willing boundary players while all consent.
            while act[i] != VOID:
                size = S[i].bit_count()
                if any(r(m, act[i], size + 1) > r(m, act[i], size) for m in bits(S[i])):
                    break
                candidate = None
                for m in sorted(bits(S[i])):
                    for j in tree.children.get(m, []):
                        if (S[i] >> j) & 1:
                            continue
                        if r(j, act[i], size + 1) < r(j, act[j], S[j].bit_count()):
                            candidate = j if candidate is None else min(candidate, j)
                if candidate is None:
                    break
                S[i] |= 1 << candidate
        _top_down(tree, S, act, pool, pi)
    return pi


# -- Nash stability --------------------------------------------------------


def ns_copyable(inst: Instance) -> Assignment | None:
    """Nash stable assignment, or None when none exists.

    Tree DP over states (node, child prefix, alternative ``(a, k)``, group
    members ``t`` inside the subtree).  A child is merged into its parent's
    group with a size split, or separated: the child's subtree then hosts a
    full group of its own and neither endpoint of the edge may want to hop
    across it.
    """
    _require_copyable_forest(inst)
    r = _rank_fn(inst)
    pi: Assignment = [VOID] * inst.n
    pool = _CopyPool(inst)
    for tree in root_forest(inst.graph):
        solved = _ns_component(inst, tree, r)
        if solved is None:
            return None
        for group, rep in solved:
            copy = VOID if rep == VOID else pool.take(rep)
            for v in group:
                pi[v] = copy
    return pi


def _ns_component(inst: Instance, tree: RootedTree, r):
    alts, full, plans = _ns_tables(inst, tree, r)
    root = tree.root
    witness = None
    for (a, k) in alts:
        if full[root][(a, k)][k] is not None:
            witness = (a, k)
            break
    if witness is None:
        return None

    # Reconstruct groups by replaying fold steps backwards.
    groups: list[tuple[list[int], int]] = []

    def build(i: int, a: int, k: int, t: int, group: list[int]):
        group.append(i)
        steps = plans[i]
        for j, table in reversed(steps):
            entry = table[(a, k)][t]
            if entry[0] == "merge":
                x = entry[1]
                build(j, a, k, x, group)
                t -= x
            else:
                b, l = entry[1]
                sub: list[int] = []
                build(j, b, l, l, sub)
                groups.append((sub, b))
        # t is now 1 and covered by the node itself

    top: list[int] = []
    a, k = witness
    build(root, a, k, k, top)
    groups.append((top, a))
    assert sum(len(g) for g, _ in groups) == tree.desc_mask[tree.root].bit_count()
    return groups


def _ns_tables(inst: Instance, tree: RootedTree, r):
    comp_size = tree.desc_mask[tree.root].bit_count()
    reps = inst.class_representatives()
    alts = [(VOID, 1)] + [(a, k) for a in reps for k in range(1, comp_size + 1)]
    # best rank among size-1 alternatives, per node: no deviation to a fresh
    # copy or to the void activity may improve on (a, k).
    best1 = {}
    for v in tree.parent:
        best1[v] = min(r(v, b, 1) for b in [VOID] + reps)

    full: dict[int, dict] = {}  # node -> {(a, k): [None] + plans per t}
    plans: dict[int, list] = {}  # node -> per fold step witness tables

    for i in tree.postorder:
        cur = {}
        for (a, k) in alts:
            row = [None] * (k + 1)
            if r(i, a, k) <= best1[i]:
                row[1] = ("init",)
            cur[(a, k)] = row
        steps = []
        for j in tree.children[i]:
            child = full[j]
            nxt = {}
            sep_memo = {}
            for (a, k) in alts:
                old = cur[(a, k)]
                row = [None] * (k + 1)
                # merge: move x of the child's subtree into i's (a, k) group
                if a != VOID:
                    child_row = child[(a, k)]
                    for t in range(2, k + 1):
                        if row[t] is not None:
                            continue
                        for x in range(1, min(t, len(child_row))):
                            if t - x <= k and old[t - x] is not None and x < len(child_row) and child_row[x] is not None:
                                row[t] = ("merge", x)
                                break
                # separate: the child's subtree hosts its own (b, l) group
                key = (a, k)
                if key not in sep_memo:
                    choice = None
                    for (b, l) in alts:
                        crow = child[(b, l)]
                        if crow[l] is None:
                            continue
                        if b != VOID and r(i, a, k) > r(i, b, l + 1):
                            continue
                        if a != VOID and r(j, b, l) > r(j, a, k + 1):
                            continue
                        choice = (b, l)
                        break
                    sep_memo[key] = choice
                if sep_memo[key] is not None:
                    for t in range(1, k + 1):
                        if row[t] is None and old[t] is not None:
                            row[t] = ("sep", sep_memo[key])
                nxt[(a, k)] = row
            cur = nxt
            steps.append((j, cur))
        full[i] = cur
        plans[i] = steps
    return alts, full, plans
