"""Fixed-parameter solvers for graphs with small connected components.

The driver guesses the set ``B`` of activities used anywhere, then walks the
components in order, maintaining which part of ``B`` has been spent.  A
player can only deviate to an activity used inside her own component (a
group elsewhere is unreachable) or to one nobody uses at all, so a
per-component check against the spent set and the complement of ``B`` is
exact.  The same combiner also stitches per-tree answers together for the
tree dynamic programs.
"""

from __future__ import annotations

from itertools import product

from .concepts import Concept
from .errors import DispatchError
from .graphs import bits
from .instance import VOID, Assignment, Instance

MAX_COMPONENT_DEFAULT = 6
MAX_P_DEFAULT = 14


def submasks(mask: int):
    """All submasks of ``mask`` in ascending integer order."""
    subs = []
    sub = mask
    while True:
        subs.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return sorted(subs)


def combine_components(inst: Instance, comps, local_solver, max_used=None):
    """Exact composition across components.

    ``comps`` is a list of node lists.  ``local_solver(idx, q_mask, b_mask)``
    must return a stable partial assignment of exactly the activities in
    ``q_mask`` to component ``idx`` (threat set = activities outside
    ``b_mask``), or None.  Returns a full assignment or None.
    """
    cap = max_used if max_used is not None else inst.n
    local_cache: dict = {}

    def local_solver_cached(idx, q_mask, b_mask):
        key = (idx, q_mask, b_mask)
        if key not in local_cache:
            local_cache[key] = local_solver(idx, q_mask, b_mask)
        return local_cache[key]

    rank = inst.rank
    vr = inst.void_ranks
    comp_usable = []
    for comp in comps:
        m = 0
        for a in range(inst.p):
            if any(
                rank(i, a, s) <= vr[i] for i in comp for s in range(1, len(comp) + 1)
            ):
                m |= 1 << a
        comp_usable.append(m)
    all_usable = 0
    for m in comp_usable:
        all_usable |= m
    last = len(comps) - 1
    for b_mask in submasks(all_usable):
        if b_mask.bit_count() > cap:
            continue
        layer: dict[int, tuple | None] = {0: None}
        layers: list[dict[int, tuple]] = []
        for idx, comp in enumerate(comps):
            new: dict[int, tuple] = {}
            limit = len(comp)
            for used in sorted(layer):
                if idx == last:
                    q_choices = [b_mask & ~used]  # everything left must be spent
                else:
                    q_choices = submasks(b_mask & ~used & comp_usable[idx])
                for q_mask in q_choices:
                    if (
                        q_mask & ~comp_usable[idx]
                        or q_mask.bit_count() > limit
                        or (used | q_mask) in new
                    ):
                        continue
                    local = local_solver_cached(idx, q_mask, b_mask)
                    if local is not None:
                        new[used | q_mask] = (used, local)
            layers.append(new)
            layer = new
            if not layer:
                break
        if layer and b_mask in layer:
            pi: Assignment = [VOID] * inst.n
            cursor = b_mask
            for idx in range(len(comps) - 1, -1, -1):
                prev, local = layers[idx][cursor]
                for player, act in local.items():
                    pi[player] = act
                cursor = prev
            return pi
    return None


def solve_small_components(
    inst: Instance,
    concept,
    max_component: int = MAX_COMPONENT_DEFAULT,
    max_p: int = MAX_P_DEFAULT,
) -> Assignment | None:
    concept = Concept.parse(concept)
    if concept is Concept.CORE:
        return core_small_components(inst, max_component=max_component, max_p=max_p)
    return _small_components(inst, concept, max_component, max_p)


def core_small_components(
    inst: Instance,
    max_component: int = MAX_COMPONENT_DEFAULT,
    max_p: int = MAX_P_DEFAULT,
) -> Assignment | None:
    return _small_components(inst, Concept.CORE, max_component, max_p)


def _small_components(inst, concept, max_component, max_p):
    comps = [sorted(bits(m)) for m in inst.graph.component_masks((1 << inst.n) - 1)]
    if max(len(c) for c in comps) > max_component:
        raise DispatchError(
            f"component of size {max(len(c) for c in comps)} exceeds the guard {max_component}"
        )
    if inst.p > max_p:
        raise DispatchError(f"p={inst.p} exceeds the small-components guard {max_p}")
    cache: dict = {}

    def local(idx, q_mask, b_mask):
        key = (idx, q_mask, b_mask)
        if key not in cache:
            cache[key] = _local_component(inst, comps[idx], q_mask, b_mask, concept)
        return cache[key]

    return combine_components(inst, comps, local)


def _local_component(inst, comp, q_mask, b_mask, concept):
    """First stable assignment of exactly ``q_mask`` to one component.

    Stability is local: individual rationality, feasibility, no deviation
    to a group inside the component, and no deviation to (or, for the core,
    block with) an activity outside ``b_mask``.
    """
    g = inst.graph
    rank = inst.rank
    vr = inst.void_ranks
    acts = list(bits(q_mask))
    outside = [b for b in range(inst.p) if not (b_mask >> b) & 1]
    choices = []
    for i in comp:
        ok = [VOID]
        for a in acts:
            if any(rank(i, a, s) <= vr[i] for s in range(1, len(comp) + 1)):
                ok.append(a)
        choices.append(ok)
    adj = g.adj_mask
    for combo in product(*choices):
        used = set(c for c in combo if c != VOID)
        if len(used) != len(acts):
            continue
        masks: dict[int, int] = {}
        for node, a in zip(comp, combo):
            if a != VOID:
                masks[a] = masks.get(a, 0) | (1 << node)
        if any(not g.is_connected_mask(m) for m in masks.values()):
            continue
        sizes = {a: m.bit_count() for a, m in masks.items()}
        cur = {}
        ok = True
        for node, a in zip(comp, combo):
            r = vr[node] if a == VOID else rank(node, a, sizes[a])
            if r > vr[node]:
                ok = False
                break
            cur[node] = r
        if not ok:
            continue
        if concept is Concept.CORE:
            if not _core_blocked(inst, comp, masks, cur, acts, outside):
                return {node: a for node, a in zip(comp, combo)}
            continue
        accept = concept is Concept.INDIVIDUAL
        stable = True
        for node, a in zip(comp, combo):
            ci = cur[node]
            for b in acts:
                if b == a:
                    continue
                m = masks[b]
                if not (m & adj[node]):
                    continue
                sz = sizes[b]
                if rank(node, b, sz + 1) < ci:
                    if not accept or all(
                        rank(j, b, sz + 1) <= rank(j, b, sz) for j in bits(m)
                    ):
                        stable = False
                        break
            if not stable:
                break
            for b in outside:
                if rank(node, b, 1) < ci:
                    stable = False
                    break
            if not stable:
                break
        if stable:
            return {node: a for node, a in zip(comp, combo)}
    return None


def _core_blocked(inst, comp, masks, cur, acts, outside) -> bool:
    g = inst.graph
    rank = inst.rank
    for s in range(1, len(comp) + 1):
        for b in acts + outside:
            strict = 0
            for node in comp:
                if rank(node, b, s) < cur[node]:
                    strict |= 1 << node
            if strict.bit_count() < s:
                continue
            base = masks.get(b, 0)
            if base & ~strict or base.bit_count() > s:
                continue
            if base:
                anchor = (base & -base).bit_length() - 1
                m = g.component_mask(anchor, strict)
                if not (base & ~m) and m.bit_count() >= s:
                    return True
            else:
                if any(m.bit_count() >= s for m in g.component_masks(strict)):
                    return True
    return False
