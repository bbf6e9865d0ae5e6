"""Standalone core-stability solvers.

``core_single_activity`` handles any graph when there is exactly one
non-void activity: take the largest size ``s`` such that the players who
would weakly accept ``(a, s)`` contain a connected set of at least ``s``
members, and carve out exactly ``s`` of them.  The result is always core
stable, so this solver is total.

``core_connected_subsets`` decides the core on any instance whose number
of connected subsets is small (paths in particular): assign each activity
a connected subset or nobody, enforce disjointness, and test each
candidate with the core verifier.
"""

from __future__ import annotations

from .errors import BudgetExceededError, DispatchError
from .graphs import bits, connected_subsets
from .instance import VOID, Assignment, Instance
from . import verify

SUBSET_BUDGET = 10_000_000


def core_single_activity(inst: Instance) -> Assignment:
    if inst.p != 1:
        raise DispatchError(f"needs exactly one non-void activity, got {inst.p}")
    g = inst.graph
    rank = inst.rank
    vr = inst.void_ranks
    best = None  # (s, member mask)
    for s in range(1, inst.n + 1):
        accept = 0
        for i in range(inst.n):
            if rank(i, 0, s) <= vr[i]:
                accept |= 1 << i
        for comp in g.component_masks(accept):
            if comp.bit_count() >= s:
                best = (s, comp)
                break
    pi = [VOID] * inst.n
    if best is not None:
        s, comp = best
        chosen = verify._trim(g, comp, comp & -comp, s)
        for i in bits(chosen):
            pi[i] = 0
    return pi


def core_connected_subsets(inst: Instance, budget: int = SUBSET_BUDGET) -> Assignment | None:
    """Exact core decision by enumerating per-activity connected subsets.

    Candidates that fail individual rationality for some member are skipped
    up front (core stability implies IR).  Exceeding the candidate budget
    raises :class:`BudgetExceededError`.
    """
    g = inst.graph
    rank = inst.rank
    vr = inst.void_ranks
    subsets = list(connected_subsets(g))
    subset_masks = []
    for sub in subsets:
        m = 0
        for v in sub:
            m |= 1 << v
        subset_masks.append(m)
    per_activity: list[list[int]] = []
    for a in range(inst.p):
        ok = [None]  # "nobody does a" comes first
        for m in subset_masks:
            s = m.bit_count()
            if all(rank(i, a, s) <= vr[i] for i in bits(m)):
                ok.append(m)
        per_activity.append(ok)

    count = 0
    pi = [VOID] * inst.n

    def assign(mask: int, a: int):
        for i in bits(mask):
            pi[i] = a

    def clear(mask: int):
        for i in bits(mask):
            pi[i] = VOID

    def rec(a: int, taken: int):
        nonlocal count
        if a == inst.p:
            count += 1
            if count > budget:
                raise BudgetExceededError("connected-subset search exceeded its budget", count)
            if verify.find_core_block(inst, pi) is None:
                return list(pi)
            return None
        for m in per_activity[a]:
            if m is None:
                result = rec(a + 1, taken)
                if result is not None:
                    return result
                continue
            if m & taken:
                continue
            assign(m, a)
            result = rec(a + 1, taken | m)
            clear(m)
            if result is not None:
                return result
        return None

    return rec(0, 0)
