"""Stability verifiers: feasibility, IR, deviations, and core blocking.

Every solver's output is certified here; the brute-force oracle uses these
predicates as its one and only notion of stability.

Deviation scans are deterministic: players in index order, then target
activities in index order with the void activity last.  Core blocking
follows the polynomial procedure of scanning coalition sizes in ascending
order and activities in index order within each size, which reproduces the
blocking pairs of the bundled counterexamples.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotIndividuallyRationalError
from .graphs import bits
from .instance import VOID, Assignment, Instance


@dataclass(frozen=True)
class Deviation:
    kind: str  # "NS" or "IS"
    player: int
    activity: int  # target activity id, or VOID


@dataclass(frozen=True)
class CoreBlock:
    coalition: frozenset[int]
    activity: int


def group_masks(inst: Instance, pi: Assignment) -> dict[int, int]:
    masks: dict[int, int] = {}
    for i, a in enumerate(pi):
        if a != VOID:
            masks[a] = masks.get(a, 0) | (1 << i)
    return masks


def is_feasible(inst: Instance, pi: Assignment) -> bool:
    """True iff every non-void group induces a connected subgraph."""
    g = inst.graph
    return all(g.is_connected_mask(m) for m in group_masks(inst, pi).values())


def _current_ranks(inst: Instance, pi: Assignment, sizes: dict[int, int]) -> list[int]:
    rank = inst.rank
    vr = inst.void_ranks
    return [
        vr[i] if a == VOID else rank(i, a, sizes[a]) for i, a in enumerate(pi)
    ]


def is_individually_rational(inst: Instance, pi: Assignment) -> bool:
    """Every engaged player weakly prefers her alternative to staying alone."""
    masks = group_masks(inst, pi)
    sizes = {a: m.bit_count() for a, m in masks.items()}
    rank = inst.rank
    vr = inst.void_ranks
    for i, a in enumerate(pi):
        if a != VOID and rank(i, a, sizes[a]) > vr[i]:
            return False
    return True


def find_ns_deviation(inst: Instance, pi: Assignment) -> Deviation | None:
    """First NS-deviation in scan order, or None.

    A deviation moves one player to a non-void activity whose group she can
    feasibly join and strictly prefers at its new size, or to the void
    activity when she strictly prefers staying alone.  Absence of any such
    deviation is exactly Nash stability (the void case covers IR).
    """
    masks = group_masks(inst, pi)
    sizes = {a: m.bit_count() for a, m in masks.items()}
    rank = inst.rank
    vr = inst.void_ranks
    adj_mask = inst.graph.adj_mask
    cur = _current_ranks(inst, pi, sizes)
    for i in range(inst.n):
        ci = cur[i]
        nbr = adj_mask[i]
        for a in range(inst.p):
            if a == pi[i]:
                continue
            m = masks.get(a, 0)
            if m and not (m & nbr):
                continue  # joining would disconnect the group
            if rank(i, a, m.bit_count() + 1) < ci:
                return Deviation("NS", i, a)
        if pi[i] != VOID and vr[i] < ci:
            return Deviation("NS", i, VOID)
    return None


def find_is_deviation(inst: Instance, pi: Assignment) -> Deviation | None:
    """First IS-deviation in scan order: an NS-deviation every member of the
    joined group accepts (weakly prefers the grown group to the current one).
    """
    masks = group_masks(inst, pi)
    sizes = {a: m.bit_count() for a, m in masks.items()}
    rank = inst.rank
    vr = inst.void_ranks
    adj_mask = inst.graph.adj_mask
    cur = _current_ranks(inst, pi, sizes)
    for i in range(inst.n):
        ci = cur[i]
        nbr = adj_mask[i]
        for a in range(inst.p):
            if a == pi[i]:
                continue
            m = masks.get(a, 0)
            if m and not (m & nbr):
                continue
            sz = m.bit_count()
            if rank(i, a, sz + 1) >= ci:
                continue
            if all(rank(j, a, sz + 1) <= rank(j, a, sz) for j in bits(m)):
                return Deviation("IS", i, a)
        if pi[i] != VOID and vr[i] < ci:
            return Deviation("IS", i, VOID)
    return None


def find_core_block(inst: Instance, pi: Assignment) -> CoreBlock | None:
    """First strongly blocking (coalition, activity) pair, or None.

    For each group size ``s`` (ascending) and activity ``a`` (index order),
    collect the players strictly preferring ``(a, s)`` to their current
    alternative and look for a connected component of that set which
    contains ``a``'s current group and has at least ``s`` members; trim it
    to exactly ``s`` while keeping the group inside and connectivity.

    Requires an individually rational assignment; raises
    :class:`NotIndividuallyRationalError` otherwise.
    """
    masks = group_masks(inst, pi)
    sizes = {a: m.bit_count() for a, m in masks.items()}
    rank = inst.rank
    vr = inst.void_ranks
    cur = _current_ranks(inst, pi, sizes)
    for i, a in enumerate(pi):
        if a != VOID and cur[i] > vr[i]:
            raise NotIndividuallyRationalError(i)
    g = inst.graph
    n, p = inst.n, inst.p
    for s in range(1, n + 1):
        for a in range(p):
            strict = 0
            for i in range(n):
                if rank(i, a, s) < cur[i]:
                    strict |= 1 << i
            if strict.bit_count() < s:
                continue
            base = masks.get(a, 0)
            if base & ~strict or base.bit_count() > s:
                continue  # the current group must join in and fit in size s
            if base:
                anchor = (base & -base).bit_length() - 1
                comp = g.component_mask(anchor, strict)
                if base & ~comp or comp.bit_count() < s:
                    continue
                coalition = _trim(g, comp, base, s)
                return CoreBlock(frozenset(bits(coalition)), a)
            for comp in g.component_masks(strict):
                if comp.bit_count() >= s:
                    coalition = _trim(g, comp, comp & -comp, s)
                    return CoreBlock(frozenset(bits(coalition)), a)
    return None


def _trim(g, comp: int, keep: int, s: int) -> int:
    """Connected sub-coalition of ``comp`` of size exactly ``s`` containing
    ``keep``: grow outward from ``keep`` in BFS order, smallest index first.
    """
    chosen = keep
    if chosen.bit_count() > s:
        raise AssertionError("kept core exceeds requested size")
    frontier = sorted(bits(chosen))
    adj_mask = g.adj_mask
    while chosen.bit_count() < s:
        nxt = 0
        for v in frontier:
            nxt |= adj_mask[v]
        nxt &= comp & ~chosen
        add = sorted(bits(nxt))
        needed = s - chosen.bit_count()
        for v in add[:needed]:
            chosen |= 1 << v
        frontier = add[:needed]
        if not add:
            raise AssertionError("component too small to trim to size")
    return chosen


def is_stable(inst: Instance, pi: Assignment, concept) -> bool:
    """Uniform stability predicate used by the oracle and the CLI."""
    from .concepts import Concept

    c = Concept(concept)
    if not is_feasible(inst, pi):
        return False
    if not is_individually_rational(inst, pi):
        return False
    if c is Concept.NASH:
        return find_ns_deviation(inst, pi) is None
    if c is Concept.INDIVIDUAL:
        return find_is_deviation(inst, pi) is None
    return find_core_block(inst, pi) is None
