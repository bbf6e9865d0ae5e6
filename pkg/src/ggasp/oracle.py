"""Brute-force ground truth: enumerate feasible assignments, test each one.

Enumeration assigns activities player by player.  Two prunes keep it
usable: a partial group must stay connectable through still-unassigned
players, and when a player opens a previously unused activity, only the
lowest-indexed unused member of its equivalence class may be chosen
(assignments differing only by renaming copies inside one class are
enumerated once).

The stability test is the verify module's predicate; there is no second
implementation of any concept here.
"""

from __future__ import annotations

from .concepts import Concept
from .errors import BudgetExceededError
from .instance import VOID, Assignment, Instance
from . import verify

DEFAULT_BUDGET = 20_000_000


def enumerate_feasible(inst: Instance, budget: int | None = DEFAULT_BUDGET, ir_prune: bool = False):
    """Yield every feasible assignment exactly once (copies collapsed).

    Deterministic DFS order: players by index, the void choice first, then
    activities by index.  ``budget`` caps search-tree node visits; going
    over raises :class:`BudgetExceededError`.

    With ``ir_prune`` a player is never assigned an activity she ranks
    below the void alternative at every size.  Such branches contain no
    individually rational assignment, hence no stable one of any concept;
    the solvers use this, counting tests do not.
    """
    n, p = inst.n, inst.p
    g = inst.graph
    adj_mask = g.adj_mask
    classes, _ = inst.copyable_classes()
    class_of = [inst.class_of(a) for a in range(p)]
    if ir_prune:
        rank = inst.rank
        vr = inst.void_ranks
        # ok_sizes[i][a]: bit s set iff player i weakly accepts (a, s).
        ok_sizes = [
            [
                sum(1 << s for s in range(1, n + 1) if rank(i, a, s) <= vr[i])
                for a in range(p)
            ]
            for i in range(n)
        ]
        can_use = [[m != 0 for m in row] for row in ok_sizes]
    else:
        ok_sizes = can_use = None
    size_window = [None] * p  # AND of members' ok_sizes for open groups
    pi = [VOID] * n
    group_mask = [0] * p
    connected_now = [True] * p
    used = [False] * p
    # Lowest unused activity per class, maintained as a sorted list stack.
    free_stack = [sorted(cls, reverse=True) for cls in classes]
    visits = 0

    def viable(i: int) -> bool:
        # Every open group must have all members in one component of the
        # graph induced by the group plus the players not yet assigned,
        # and (under ir_prune) a reachable size every member accepts.
        future = (~0 << (i + 1)) & ((1 << n) - 1)
        remaining = n - 1 - i
        deficit = 0
        for a in range(p):
            m = group_mask[a]
            if not m:
                continue
            if ok_sizes is not None:
                lo = m.bit_count()
                reach = ((1 << (lo + remaining + 1)) - (1 << lo)) & size_window[a]
                if not reach:
                    return False
                # smallest acceptable size still reachable -> member deficit
                deficit += (reach & -reach).bit_length() - 1 - lo
                if deficit > remaining:
                    return False
            if not connected_now[a]:
                anchor = (m & -m).bit_length() - 1
                if m & ~g.component_mask(anchor, m | future):
                    return False
        return True

    def choices(i: int):
        yield VOID
        allowed_fresh = {stack[-1] for stack in free_stack if stack}
        usable = can_use[i] if can_use is not None else None
        for a in range(p):
            if usable is not None and not usable[a]:
                continue
            if used[a] or a in allowed_fresh:
                yield a

    def rec(i: int):
        nonlocal visits
        visits += 1
        if budget is not None and visits > budget:
            raise BudgetExceededError("oracle enumeration exceeded its budget", visits)
        if i == n:
            yield list(pi)
            return
        bit = 1 << i
        for a in choices(i):
            if a == VOID:
                if viable(i):
                    yield from rec(i + 1)
                continue
            prev_mask = group_mask[a]
            prev_conn = connected_now[a]
            prev_window = size_window[a]
            fresh = not used[a]
            group_mask[a] = prev_mask | bit
            connected_now[a] = prev_conn and (prev_mask == 0 or bool(prev_mask & adj_mask[i]))
            if not connected_now[a]:
                connected_now[a] = g.is_connected_mask(group_mask[a])
            if ok_sizes is not None:
                mine = ok_sizes[i][a]
                size_window[a] = mine if prev_mask == 0 else (prev_window & mine)
            pi[i] = a
            if fresh:
                used[a] = True
                free_stack[class_of[a]].pop()
            if viable(i):
                yield from rec(i + 1)
            if fresh:
                used[a] = False
                free_stack[class_of[a]].append(a)
            pi[i] = VOID
            group_mask[a] = prev_mask
            connected_now[a] = prev_conn
            size_window[a] = prev_window

    yield from rec(0)


def brute_solve(inst: Instance, concept, budget: int | None = DEFAULT_BUDGET) -> Assignment | None:
    """First stable assignment in enumeration order, or None after an
    exhaustive scan.  Budget overruns raise; they never read as absence.
    """
    concept = Concept.parse(concept)
    for pi in enumerate_feasible(inst, budget, ir_prune=True):
        if _stable(inst, pi, concept):
            return pi
    return None


def brute_solve_many(inst: Instance, concepts, budget: int | None = DEFAULT_BUDGET):
    """One shared enumeration answering several concepts at once."""
    wanted = [Concept.parse(c) for c in concepts]
    found: dict[Concept, Assignment | None] = {c: None for c in wanted}
    missing = set(wanted)
    for pi in enumerate_feasible(inst, budget, ir_prune=True):
        for c in list(missing):
            if _stable(inst, pi, c):
                found[c] = pi
                missing.discard(c)
        if not missing:
            break
    return found


def _stable(inst: Instance, pi: Assignment, concept: Concept) -> bool:
    # Enumeration already guarantees feasibility.
    if not verify.is_individually_rational(inst, pi):
        return False
    if concept is Concept.NASH:
        return verify.find_ns_deviation(inst, pi) is None
    if concept is Concept.INDIVIDUAL:
        return verify.find_is_deviation(inst, pi) is None
    return verify.find_core_block(inst, pi) is None
