"""Tree dynamic programs: exact Nash/individual stability on forests,
parameterized by the number of activities.

A state ``(i, B, B', (a, k), t)`` asks whether the subtree of ``i`` can be
assigned exactly the activities ``B'`` (out of the global guess ``B``) so
that ``i`` plays ``a`` in a group of eventual size ``k`` with ``t`` of its
members inside the subtree, nobody in the subtree prefers starting an
unused activity alone, and no deviation crosses a settled edge.  Because a
group doing ``b != a`` lies entirely inside one child subtree, an internal
node enumerates ordered partitions of ``B' - {a}`` over its children and
fills a small prefix table: each child either is void, contributes members
to ``i``'s group, hosts the next part, or both hosts the next part and
contributes members.

Nash stability needs one table of this shape.  Individual stability needs
three (joiners must be accepted): "possibly stable" (the group might still
admit someone), "definitely stable" (a member vetoes growth) and "weakly
stable" (nobody reachable wants in), with the veto tracked as one extra
bit during the child fold.

Forests hand each component's table answers to the small-component
combiner.
"""

from __future__ import annotations

from itertools import permutations

from .errors import DispatchError
from .fpt import combine_components
from .graphs import bits, root_forest
from .instance import VOID, Assignment, Instance

MAX_P_DEFAULT = 10


def ordered_partitions(mask: int):
    """Every ordered partition of the bits of ``mask`` into nonempty parts.

    Set partitions come from restricted-growth strings, each then emitted in
    every part order (lexicographic permutation order); first witness wins
    downstream, so the order is part of the solver's determinism.
    """
    elements = list(bits(mask))
    if not elements:
        yield ()
        return
    u = len(elements)

    def rgs(idx, used_blocks, assign):
        if idx == u:
            parts = [0] * used_blocks
            for e, b in zip(elements, assign):
                parts[b] |= 1 << e
            yield tuple(parts)
            return
        for b in range(used_blocks + 1):
            yield from rgs(idx + 1, max(used_blocks, b + 1), assign + [b])

    for parts in rgs(1, 1, [0]):
        if len(parts) == 1:
            yield parts
        else:
            for perm in permutations(parts):
                yield perm


def _check_guard(inst: Instance, max_p: int):
    if inst.p > max_p:
        raise DispatchError(f"tree solver guarded at p <= {max_p}, got {inst.p}")


def ns_tree(inst: Instance, max_p: int = MAX_P_DEFAULT) -> Assignment | None:
    """Nash stable assignment on a forest, or None; exact."""
    _check_guard(inst, max_p)
    trees = root_forest(inst.graph)  # raises on cycles
    solver = _NsSolver(inst, trees)
    comps = [sorted(t.parent) for t in trees]
    return combine_components(inst, comps, solver.local)


def is_tree(inst: Instance, max_p: int = MAX_P_DEFAULT) -> Assignment | None:
    """Individually stable assignment on a forest, or None; exact."""
    _check_guard(inst, max_p)
    trees = root_forest(inst.graph)
    solver = _IsSolver(inst, trees)
    comps = [sorted(t.parent) for t in trees]
    return combine_components(inst, comps, solver.local)


class _TreeSolverBase:
    def __init__(self, inst: Instance, trees):
        self.inst = inst
        self.trees = trees
        self.tree_of = {}
        for tree in trees:
            for v in tree.parent:
                self.tree_of[v] = tree
        self.rank = inst.rank
        self.vr = inst.void_ranks
        self.memo: dict = {}
        self._best_out = {}

    def best_out1(self, i: int, b_mask: int) -> int:
        """Best rank among the void alternative and (b, 1) for unused b."""
        key = (i, b_mask)
        if key not in self._best_out:
            best = self.vr[i]
            for b in range(self.inst.p):
                if not (b_mask >> b) & 1:
                    r = self.rank(i, b, 1)
                    if r < best:
                        best = r
            self._best_out[key] = best
        return self._best_out[key]

    def screen(self, i, b_mask, bp_mask, a, k, t):
        """Cheap validity and pruning checks shared by both programs."""
        tree = self.tree_of[i]
        dsize = tree.desc_mask[i].bit_count()
        if a == VOID:
            if k != 1 or t != 1:
                return False
            rest = bp_mask
        else:
            if not (bp_mask >> a) & 1 or not (1 <= t <= k):
                return False
            rest = bp_mask & ~(1 << a)
        if t > dsize or rest.bit_count() + t > dsize:
            return False
        r_own = self.vr[i] if a == VOID else self.rank(i, a, k)
        if r_own > self.best_out1(i, b_mask):
            return False
        return True

    def part_alternatives(self, part_mask: int, dj: int):
        """Candidate (b, x) root alternatives for a child hosting a part."""
        for b in bits(part_mask):
            for x in range(1, dj + 1):
                yield b, x
        yield VOID, 1

    def root_alternatives(self, q_mask: int, comp_size: int):
        yield VOID, 1
        for a in bits(q_mask):
            for k in range(1, comp_size + 1):
                yield a, k


class _NsSolver(_TreeSolverBase):
    def local(self, idx: int, q_mask: int, b_mask: int):
        tree = self.trees[idx]
        comp_size = tree.desc_mask[tree.root].bit_count()
        for a, k in self.root_alternatives(q_mask, comp_size):
            if self.entry(tree.root, b_mask, q_mask, a, k, k) is not None:
                out: dict[int, int] = {}
                self.reconstruct(tree.root, b_mask, q_mask, a, k, k, out)
                return out
        return None

    def entry(self, i, b_mask, bp_mask, a, k, t):
        key = (i, b_mask, bp_mask, a, k, t)
        if key in self.memo:
            return self.memo[key]
        plan = self._compute(i, b_mask, bp_mask, a, k, t)
        self.memo[key] = plan
        return plan

    def _compute(self, i, b_mask, bp_mask, a, k, t):
        if not self.screen(i, b_mask, bp_mask, a, k, t):
            return None
        tree = self.tree_of[i]
        children = tree.children[i]
        if not children:
            expected = 0 if a == VOID else 1 << a
            return ("leaf",) if bp_mask == expected and t == 1 else None
        rest = bp_mask if a == VOID else bp_mask & ~(1 << a)
        rank = self.rank
        for parts in ordered_partitions(rest):
            if len(parts) > len(children):
                continue
            m = len(parts)
            states: dict[tuple[int, int], tuple] = {(0, 0): ()}
            for j in children:
                dj = tree.desc_mask[j].bit_count()
                new: dict[tuple[int, int], tuple] = {}
                void_ok = None
                for (q, level) in sorted(states):
                    chain = states[(q, level)]
                    # child stays void
                    if void_ok is None:
                        void_ok = self.entry(j, b_mask, 0, VOID, 1, 1) is not None and (
                            a == VOID or self.vr[j] <= rank(j, a, k + 1)
                        )
                    if void_ok and (q, level) not in new:
                        new[(q, level)] = chain + (("void",),)
                    # child feeds x members into i's (a, k) group
                    if a != VOID:
                        for x in range(1, min(t - 1 - level, dj) + 1):
                            tgt = (q, level + x)
                            if tgt not in new and self.entry(j, b_mask, 1 << a, a, k, x):
                                new[tgt] = chain + (("a", x),)
                    # child hosts the next part (optionally plus a-members)
                    if q < m:
                        part = parts[q]
                        tgt = (q + 1, level)
                        if tgt not in new:
                            for b, x in self.part_alternatives(part, dj):
                                if self.entry(j, b_mask, part, b, x, x) is None:
                                    continue
                                if b != VOID and rank(i, a, k) > rank(i, b, x + 1):
                                    continue
                                ra = self.vr[j] if b == VOID else rank(j, b, x)
                                if a != VOID and ra > rank(j, a, k + 1):
                                    continue
                                new[tgt] = chain + (("part", q, b, x),)
                                break
                        if a != VOID:
                            for x in range(1, min(t - 1 - level, dj) + 1):
                                tgt = (q + 1, level + x)
                                if tgt not in new and self.entry(
                                    j, b_mask, part | (1 << a), a, k, x
                                ):
                                    new[tgt] = chain + (("part_a", q, x),)
                states = new
                if not states:
                    break
            chain = states.get((m, t - 1))
            if chain is not None:
                return ("internal", parts, chain)
        return None

    def reconstruct(self, i, b_mask, bp_mask, a, k, t, out):
        out[i] = a
        plan = self.memo[(i, b_mask, bp_mask, a, k, t)]
        if plan[0] == "leaf":
            return
        _, parts, chain = plan
        tree = self.tree_of[i]
        for j, step in zip(tree.children[i], chain):
            if step[0] == "void":
                self.reconstruct(j, b_mask, 0, VOID, 1, 1, out)
            elif step[0] == "a":
                self.reconstruct(j, b_mask, 1 << a, a, k, step[1], out)
            elif step[0] == "part":
                _, q, b, x = step
                self.reconstruct(j, b_mask, parts[q], b, x, x, out)
            else:
                _, q, x = step
                self.reconstruct(j, b_mask, parts[q] | (1 << a), a, k, x, out)


class _IsSolver(_TreeSolverBase):
    PS, DS, WS = 0, 1, 2

    def local(self, idx: int, q_mask: int, b_mask: int):
        tree = self.trees[idx]
        comp_size = tree.desc_mask[tree.root].bit_count()
        for a, k in self.root_alternatives(q_mask, comp_size):
            plans = self.entry(tree.root, b_mask, q_mask, a, k, k)
            table = self.DS if plans[self.DS] is not None else (
                self.WS if plans[self.WS] is not None else None
            )
            if table is not None:
                out: dict[int, int] = {}
                self.reconstruct(tree.root, b_mask, q_mask, a, k, k, table, out)
                return out
        return None

    def entry(self, i, b_mask, bp_mask, a, k, t):
        key = (i, b_mask, bp_mask, a, k, t)
        if key in self.memo:
            return self.memo[key]
        plans = self._compute(i, b_mask, bp_mask, a, k, t)
        self.memo[key] = plans
        return plans

    def _compute(self, i, b_mask, bp_mask, a, k, t):
        rank = self.rank
        if not self.screen(i, b_mask, bp_mask, a, k, t):
            return (None, None, None)
        i_vetoes = a == VOID or rank(i, a, k) < rank(i, a, k + 1)
        tree = self.tree_of[i]
        children = tree.children[i]
        if not children:
            expected = 0 if a == VOID else 1 << a
            if bp_mask != expected or t != 1:
                return (None, None, None)
            leaf = ("leaf",)
            return (leaf, leaf if i_vetoes else None, leaf)
        rest = bp_mask if a == VOID else bp_mask & ~(1 << a)
        ps = ds = ws = None
        for parts in ordered_partitions(rest):
            if len(parts) > len(children):
                continue
            m = len(parts)
            if ps is None or (ds is None and not i_vetoes):
                tp_chain, td_chain = self._fold_pd(i, b_mask, a, k, t, parts, children, tree)
                if ps is None and tp_chain is not None:
                    ps = ("internal", parts, tp_chain)
                if ds is None and td_chain is not None and not i_vetoes:
                    ds = ("internal", parts, td_chain)
            if ws is None:
                tw_chain = self._fold_w(i, b_mask, a, k, t, parts, children, tree)
                if tw_chain is not None:
                    ws = ("internal", parts, tw_chain)
            if ps is not None and ws is not None and (ds is not None or i_vetoes):
                break
        if i_vetoes:
            ds = ps
        return (ps, ds, ws)

    def _part_choice(self, i, j, b_mask, a, k, part, dj, need_j_side):
        """Child hosts ``part``: pick its root alternative and table.

        The hosted group must reject newcomers (child DS) or nobody may
        want in: the child table WS handles its own subtree and node ``i``
        is screened here.  ``need_j_side`` additionally keeps ``j`` from
        hopping into ``i``'s group (used by the weakly-stable fold).
        """
        rank = self.rank
        for b, x in self.part_alternatives(part, dj):
            plans = self.entry(j, b_mask, part, b, x, x)
            if need_j_side and a != VOID:
                ra = self.vr[j] if b == VOID else rank(j, b, x)
                if ra > rank(j, a, k + 1):
                    continue
            if plans[self.DS] is not None:
                return ("part", None, b, x, self.DS)
            if plans[self.WS] is not None:
                if b == VOID or rank(i, a, k) <= rank(i, b, x + 1):
                    return ("part", None, b, x, self.WS)
        return None

    def _fold_pd(self, i, b_mask, a, k, t, parts, children, tree):
        """Merged fold for the possibly/definitely stable tables.

        State (parts placed, members fed to ``i``'s group, veto seen).
        """
        rank = self.rank
        m = len(parts)
        states: dict[tuple[int, int, int], tuple] = {(0, 0, 0): ()}
        for j in children:
            dj = tree.desc_mask[j].bit_count()
            new: dict[tuple[int, int, int], tuple] = {}
            void_ok = self.entry(j, b_mask, 0, VOID, 1, 1)[self.PS] is not None
            part_steps = {}
            for (q, level, veto) in sorted(states):
                chain = states[(q, level, veto)]
                if void_ok and (q, level, veto) not in new:
                    new[(q, level, veto)] = chain + (("void",),)
                if a != VOID:
                    for x in range(1, min(t - 1 - level, dj) + 1):
                        plans = self.entry(j, b_mask, 1 << a, a, k, x)
                        if plans[self.PS] is not None:
                            tgt = (q, level + x, veto)
                            if tgt not in new:
                                new[tgt] = chain + (("a", x, self.PS),)
                        if not veto and plans[self.DS] is not None:
                            tgt = (q, level + x, 1)
                            if tgt not in new:
                                new[tgt] = chain + (("a", x, self.DS),)
                if q < m:
                    part = parts[q]
                    if q not in part_steps:
                        part_steps[q] = self._part_choice(
                            i, j, b_mask, a, k, part, dj, need_j_side=False
                        )
                    step = part_steps[q]
                    if step is not None:
                        tgt = (q + 1, level, veto)
                        if tgt not in new:
                            new[tgt] = chain + ((step[0], q, step[2], step[3], step[4]),)
                    if a != VOID:
                        for x in range(1, min(t - 1 - level, dj) + 1):
                            plans = self.entry(j, b_mask, part | (1 << a), a, k, x)
                            if plans[self.PS] is not None:
                                tgt = (q + 1, level + x, veto)
                                if tgt not in new:
                                    new[tgt] = chain + (("part_a", q, x, self.PS),)
                            if not veto and plans[self.DS] is not None:
                                tgt = (q + 1, level + x, 1)
                                if tgt not in new:
                                    new[tgt] = chain + (("part_a", q, x, self.DS),)
            states = new
            if not states:
                break
        tp = states.get((m, t - 1, 0))
        if tp is None:
            tp = states.get((m, t - 1, 1))
        td = states.get((m, t - 1, 1))
        return tp, td

    def _fold_w(self, i, b_mask, a, k, t, parts, children, tree):
        """Fold for the weakly stable table: nobody adjacent to ``i``'s
        group from below may want to join it."""
        rank = self.rank
        m = len(parts)
        states: dict[tuple[int, int], tuple] = {(0, 0): ()}
        for j in children:
            dj = tree.desc_mask[j].bit_count()
            new: dict[tuple[int, int], tuple] = {}
            void_ok = self.entry(j, b_mask, 0, VOID, 1, 1)[self.PS] is not None and (
                a == VOID or self.vr[j] <= rank(j, a, k + 1)
            )
            part_steps = {}
            for (q, level) in sorted(states):
                chain = states[(q, level)]
                if void_ok and (q, level) not in new:
                    new[(q, level)] = chain + (("void",),)
                if a != VOID:
                    for x in range(1, min(t - 1 - level, dj) + 1):
                        tgt = (q, level + x)
                        if tgt not in new and self.entry(j, b_mask, 1 << a, a, k, x)[
                            self.WS
                        ] is not None:
                            new[tgt] = chain + (("a", x, self.WS),)
                if q < m:
                    part = parts[q]
                    if q not in part_steps:
                        part_steps[q] = self._part_choice(
                            i, j, b_mask, a, k, part, dj, need_j_side=True
                        )
                    step = part_steps[q]
                    if step is not None:
                        tgt = (q + 1, level)
                        if tgt not in new:
                            new[tgt] = chain + ((step[0], q, step[2], step[3], step[4]),)
                    if a != VOID:
                        for x in range(1, min(t - 1 - level, dj) + 1):
                            tgt = (q + 1, level + x)
                            if tgt not in new and self.entry(
                                j, b_mask, part | (1 << a), a, k, x
                            )[self.WS] is not None:
                                new[tgt] = chain + (("part_a", q, x, self.WS),)
            states = new
            if not states:
                break
        return states.get((m, t - 1))

    def reconstruct(self, i, b_mask, bp_mask, a, k, t, table, out):
        out[i] = a
        plan = self.memo[(i, b_mask, bp_mask, a, k, t)][table]
        if plan[0] == "leaf":
            return
        _, parts, chain = plan
        tree = self.tree_of[i]
        for j, step in zip(tree.children[i], chain):
            if step[0] == "void":
                self.reconstruct(j, b_mask, 0, VOID, 1, 1, self.PS, out)
            elif step[0] == "a":
                self.reconstruct(j, b_mask, 1 << a, a, k, step[1], step[2], out)
            elif step[0] == "part":
                _, q, b, x, tbl = step
                self.reconstruct(j, b_mask, parts[q], b, x, x, tbl, out)
            else:
                _, q, x, tbl = step
                self.reconstruct(j, b_mask, parts[q] | (1 << a), a, k, x, tbl, out)
