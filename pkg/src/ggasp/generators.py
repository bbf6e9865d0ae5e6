"""Instance factories: canonical counterexamples, hardness-reduction
constructions, and a seeded random-instance sampler.

Every reduction family ships a forward-witness builder that turns a
solution of the source problem into an assignment of the generated
instance; tests certify those assignments with the stability verifiers,
which machine-checks the constructive direction of each reduction at any
scale.  Generators validate their source problems strictly and assert the
structural counts (player/activity totals, size bijections) they promise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .errors import ValidationError
from .graphs import clique_edges, path_edges, star_edges
from .instance import VOID, Assignment, Instance, make_instance


@dataclass(frozen=True)
class Generated:
    """A generated instance plus the source-object naming maps."""

    instance: Instance
    family: str
    variant: str | None
    players: dict = field(default_factory=dict)       # label -> player index
    activities: dict = field(default_factory=dict)    # label -> activity name
    source: object = None

    def player(self, label) -> int:
        return self.players[label]

    def activity_id(self, label) -> int:
        return self.instance.activity_id(self.activities[label])


def _dedup_tiers(tiers):
    """Keep only the best (first) occurrence of each alternative."""
    seen = set()
    out = []
    for tier in tiers:
        kept = [alt for alt in tier if alt not in seen and not seen.add(alt)]
        if kept:
            out.append(kept)
    return out


# -- canonical counterexamples ---------------------------------------------


def canonical(name: str) -> Generated:
    """The bundled two- and three-player instances with no stable outcome."""
    if name == "stalker":
        inst = make_instance(
            2, ["a"], [(0, 1)], [[[("a", 1)]], [[("a", 2)]]]
        )
    elif name == "empty_core":
        inst = make_instance(
            3,
            ["a", "b"],
            path_edges(3),
            [
                [[("b", 2)], [("a", 3)]],
                [[("a", 2)], [("b", 2)], [("a", 3)]],
                [[("a", 3)], [("b", 1)], [("a", 2)]],
            ],
        )
    elif name == "empty_is":
        inst = make_instance(
            3,
            ["a", "b", "c"],
            path_edges(3),
            [
                [[("b", 2)], [("a", 1)], [("c", 3)], [("c", 2)], [("c", 1)]],
                [[("c", 3)], [("c", 2)], [("a", 2)], [("b", 2)], [("b", 1)]],
                [[("c", 3)], [("a", 2)], [("a", 1)]],
            ],
        )
    else:
        raise ValidationError(f"unknown canonical instance {name!r}")
    return Generated(inst, "canonical", name)


def canonical_copyable(name: str, copies: int | None = None) -> Generated:
    """Canonical instances with every activity made copyable."""
    base = canonical(name).instance
    copies = copies if copies is not None else base.n
    acts = [(e.name, e.name.upper(), copies) for e in base.entries]
    prefs = []
    for order in base.tiers:
        prefs.append(
            [
                [
                    "VOID" if alt.activity == VOID else (base.activity_name(alt.activity), alt.size)
                    for alt in tier
                ]
                for tier in order
            ]
        )
    inst = make_instance(base.n, acts, base.edges, prefs)
    return Generated(inst, "canonical_copyable", name)


# -- paths: rainbow matching ------------------------------------------------


@dataclass(frozen=True)
class EdgeColoredPath:
    """A path on ``len(colors) + 1`` vertices; edge i joins i and i+1."""

    colors: tuple[str, ...]
    k: int

    def __post_init__(self):
        if len(self.colors) < 1:
            raise ValidationError("rainbow source needs at least one edge")
        for c1, c2 in zip(self.colors, self.colors[1:]):
            if c1 == c2:
                raise ValidationError("edge coloring is not proper: adjacent edges share a color")
        palette = sorted(set(self.colors))
        if not (0 <= self.k <= len(palette)):
            raise ValidationError("k must lie between 0 and the number of colors")

    @property
    def num_vertices(self) -> int:
        return len(self.colors) + 1

    @property
    def palette(self) -> list[str]:
        return sorted(set(self.colors))


def from_rainbow_matching(src: EdgeColoredPath, variant: str = "ns") -> Generated:
    """Path instance whose stability mirrors rainbow matchings of size >= k.

    The source path gets an edge player inserted in the middle of every
    edge; to its right hang ``q - k`` garbage collectors and, per color,
    a two-player no-NS gadget (``ns`` variant) or a three-player no-IS /
    empty-core gadget with two private activities (``cr_is`` variant).
    """
    if variant not in ("ns", "cr_is"):
        raise ValidationError(f"unknown rainbow variant {variant!r}")
    q = len(src.palette)
    players: dict = {}
    order = []

    def add(label):
        players[label] = len(order)
        order.append(label)

    nv = src.num_vertices
    for v in range(nv):
        add(("v", v))
        if v < nv - 1:
            add(("e", v))
    for j in range(q - src.k):
        add(("g", j))
    gadget = 2 if variant == "ns" else 3
    # When no garbage collector separates the graph from the gadgets, the
    # last vertex player is adjacent to the first gadget.  Its one approved
    # color must not be that gadget's color, or a size-3 group straddling
    # the boundary can freeze the three-player gadget into stability.
    last_color = src.colors[-1]
    gadget_order = sorted(src.palette, key=lambda c: (c == last_color, c))
    for c in gadget_order:
        for r in range(1, gadget + 1):
            add(("gadget", c, r))
    n = len(order)
    edges = path_edges(n)

    acts: list = list(src.palette)
    activities = {("color", c): c for c in src.palette}
    if variant == "cr_is":
        for c in src.palette:
            acts += [f"a({c})", f"b({c})"]
            activities[("a", c)] = f"a({c})"
            activities[("b", c)] = f"b({c})"

    prefs: list = [None] * n
    for v in range(nv):
        near = [src.colors[e] for e in (v - 1, v) if 0 <= e < nv - 1]
        tier = sorted({(c, 3) for c in near})
        prefs[players[("v", v)]] = [tier]
    for e in range(nv - 1):
        prefs[players[("e", e)]] = [[(src.colors[e], 3)]]
    for j in range(q - src.k):
        prefs[players[("g", j)]] = [[(c, 1) for c in src.palette]]
    for c in src.palette:
        if variant == "ns":
            prefs[players[("gadget", c, 1)]] = [[(c, 1)]]
            prefs[players[("gadget", c, 2)]] = [[(c, 2)]]
        else:
            a, b = f"a({c})", f"b({c})"
            prefs[players[("gadget", c, 1)]] = [
                [(b, 2)], [(a, 1)], [(c, 3)], [(c, 2)], [(c, 1)]
            ]
            prefs[players[("gadget", c, 2)]] = [
                [(c, 3)], [(c, 2)], [(a, 2)], [(b, 2)], [(b, 1)]
            ]
            prefs[players[("gadget", c, 3)]] = [[(c, 3)], [(a, 2)], [(a, 1)]]

    inst = make_instance(n, acts, edges, prefs)
    expected = nv + (nv - 1) + (q - src.k) + gadget * q
    assert inst.n == expected and inst.p == len(acts)
    return Generated(inst, "rainbow", variant, players, activities, src)


def rainbow_witness(gen: Generated, matching: list[int]) -> Assignment:
    """Assignment built from a rainbow matching of size >= k (edge indices)."""
    src: EdgeColoredPath = gen.source
    matching = sorted(set(matching))
    if len(matching) < src.k:
        raise ValidationError("matching smaller than k")
    for e in matching:
        if not (0 <= e < src.num_vertices - 1):
            raise ValidationError(f"unknown edge {e}")
    for e1, e2 in zip(matching, matching[1:]):
        if e2 - e1 < 2:
            raise ValidationError("edges are adjacent: not a matching")
    chosen = matching[: src.k]
    if len({src.colors[e] for e in chosen}) != len(chosen):
        raise ValidationError("matching is not rainbow")
    inst = gen.instance
    pi: Assignment = [VOID] * inst.n
    used = set()
    for e in chosen:
        c = src.colors[e]
        used.add(c)
        aid = inst.activity_id(c)
        pi[gen.players[("v", e)]] = aid
        pi[gen.players[("e", e)]] = aid
        pi[gen.players[("v", e + 1)]] = aid
    leftover = [c for c in src.palette if c not in used]
    for j, c in enumerate(leftover):
        pi[gen.players[("g", j)]] = inst.activity_id(c)
    if gen.variant == "cr_is":
        for c in src.palette:
            aid = inst.activity_id(f"a({c})")
            pi[gen.players[("gadget", c, 2)]] = aid
            pi[gen.players[("gadget", c, 3)]] = aid
    return pi


# -- stars: minimum maximal matching ----------------------------------------


@dataclass(frozen=True)
class BipartiteMMM:
    """Bipartite graph (left x right) with a matching-size threshold k."""

    left: int
    right: int
    edges: tuple[tuple[int, int], ...]
    k: int

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.left and 0 <= v < self.right):
                raise ValidationError(f"bad bipartite edge ({u}, {v})")
            if (u, v) in seen:
                raise ValidationError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        if not (0 <= self.k <= len(self.edges)):
            raise ValidationError("k must lie between 0 and |E|")
        if self.k > self.right:
            raise ValidationError("k larger than the right side never binds the gadget sizes")


def from_mmm(src: BipartiteMMM, variant: str = "ns") -> Generated:
    """Star instance whose stability mirrors maximal matchings of size <= k."""
    if variant not in ("ns", "is"):
        raise ValidationError(f"unknown mmm variant {variant!r}")
    players: dict = {"center": 0}
    order = ["center"]
    for v in range(src.right):
        players[("v", v)] = len(order)
        order.append(("v", v))
    tail = ["s"] if variant == "ns" else ["s1", "s2"]
    for label in tail:
        players[label] = len(order)
        order.append(label)
    n = len(order)
    edges = star_edges(n, center=0)

    u_name = [f"u{u}" for u in range(src.left)]
    acts = list(u_name) + (["a", "b"] if variant == "ns" else ["a", "x", "y", "z"])
    activities = {("u", u): u_name[u] for u in range(src.left)}
    size_a = src.right - src.k + 1

    prefs: list = [None] * n
    for v in range(src.right):
        nbrs = sorted({u for u, w in src.edges if w == v})
        tiers = []
        if nbrs:
            tiers.append([(u_name[u], 1) for u in nbrs])
        tiers.append([("a", size_a)])
        prefs[players[("v", v)]] = tiers
    if variant == "ns":
        prefs[players["center"]] = [[("a", size_a)], [("b", 1)]]
        prefs[players["s"]] = [[("b", 2)]]
    else:
        prefs[players["center"]] = [
            [("a", size_a)], [("z", 3)], [("z", 2)], [("x", 2)], [("y", 2)], [("y", 1)]
        ]
        prefs[players["s1"]] = [[("y", 2)], [("x", 1)], [("z", 3)], [("z", 2)], [("z", 1)]]
        prefs[players["s2"]] = [[("z", 3)], [("x", 2)], [("x", 1)]]

    inst = make_instance(n, acts, edges, prefs)
    assert inst.n == 1 + src.right + len(tail) and inst.p == src.left + (2 if variant == "ns" else 4)
    return Generated(inst, "mmm", variant, players, activities, src)


def mmm_witness(gen: Generated, matching: list[tuple[int, int]]) -> Assignment:
    """Assignment built from a maximal matching of size <= k."""
    src: BipartiteMMM = gen.source
    matching = sorted(set(tuple(e) for e in matching))
    for e in matching:
        if e not in set(src.edges):
            raise ValidationError(f"unknown edge {e}")
    lefts = [u for u, _ in matching]
    rights = [v for _, v in matching]
    if len(set(lefts)) != len(lefts) or len(set(rights)) != len(rights):
        raise ValidationError("not a matching")
    if len(matching) > src.k:
        raise ValidationError(f"matching has more than k={src.k} edges")
    matched_l, matched_r = set(lefts), set(rights)
    for u, v in src.edges:
        if u not in matched_l and v not in matched_r:
            raise ValidationError(f"matching is not maximal: edge ({u}, {v}) is free")
    inst = gen.instance
    pi: Assignment = [VOID] * inst.n
    for u, v in matching:
        pi[gen.players[("v", v)]] = inst.activity_id(f"u{u}")
    a_id = inst.activity_id("a")
    pi[gen.players["center"]] = a_id
    unmatched = [v for v in range(src.right) if v not in matched_r]
    for v in unmatched[: src.right - src.k]:
        pi[gen.players[("v", v)]] = a_id
    if gen.variant == "is":
        pi[gen.players["s1"]] = inst.activity_id("x")
    return pi


# -- small components: (3,B2)-SAT -------------------------------------------


@dataclass(frozen=True)
class B2Formula:
    """3-CNF where every variable occurs exactly twice positively and twice
    negatively.  A clause is a triple of (variable name, is_positive)."""

    clauses: tuple[tuple[tuple[str, bool], ...], ...]

    def __post_init__(self):
        counts: dict[str, list[int]] = {}
        for clause in self.clauses:
            if len(clause) != 3:
                raise ValidationError("every clause must have exactly three literals")
            for var, positive in clause:
                counts.setdefault(var, [0, 0])[0 if positive else 1] += 1
        for var, (pos, neg) in counts.items():
            if (pos, neg) != (2, 2):
                raise ValidationError(
                    f"variable {var!r} occurs {pos}x positively / {neg}x negatively; needs 2/2"
                )
        if not counts:
            raise ValidationError("formula needs at least one clause")

    @property
    def variables(self) -> list[str]:
        seen: list[str] = []
        for clause in self.clauses:
            for var, _ in clause:
                if var not in seen:
                    seen.append(var)
        return seen

    def occurrence_names(self) -> list[tuple[str, ...]]:
        """Per clause, the occurrence-activity name of each literal slot."""
        counter: dict[tuple[str, bool], int] = {}
        out = []
        for clause in self.clauses:
            row = []
            for var, positive in clause:
                idx = counter.get((var, positive), 0) + 1
                counter[(var, positive)] = idx
                row.append(f"{var}+{idx}" if positive else f"{var}-{idx}")
            out.append(tuple(row))
        return out

    def satisfies(self, assignment: dict[str, bool]) -> bool:
        return all(
            any(assignment[var] == positive for var, positive in clause)
            for clause in self.clauses
        )


def from_b2sat(src: B2Formula, variant: str = "ns") -> Generated:
    """Small-component instance mirroring satisfiability of the formula.

    ``ns``: components of size at most 4 (a two-player edge per literal
    sign, a four-player star per clause).  ``cr_is``: components of size at
    most 3 (three-player stars), using the no-IS gadget pattern.
    """
    if variant not in ("ns", "cr_is"):
        raise ValidationError(f"unknown b2sat variant {variant!r}")
    variables = src.variables
    occ = src.occurrence_names()
    players: dict = {}
    order: list = []
    edges: list[tuple[int, int]] = []

    def add(label):
        players[label] = len(order)
        order.append(label)
        return players[label]

    def star(center_label, leaf_labels):
        c = add(center_label)
        for leaf in leaf_labels:
            edges.append((c, add(leaf)))

    acts: list[str] = []
    activities: dict = {}
    prefs_by_label: dict = {}

    if variant == "ns":
        for x in variables:
            p1, p2 = add(("p", x, 1)), add(("p", x, 2))
            edges.append((p1, p2))
            q1, q2 = add(("np", x, 1)), add(("np", x, 2))
            edges.append((q1, q2))
        for j in range(len(src.clauses)):
            star(("s", j), [("c", j, r) for r in (1, 2, 3)])
        for x in variables:
            acts += [x, f"{x}+1", f"{x}+2", f"{x}-1", f"{x}-2", f"a+({x})", f"a-({x})"]
            prefs_by_label[("p", x, 1)] = [
                [(x, 2)], [(x, 1)], [(f"{x}+1", 1)], [(f"{x}+2", 2)], [(f"a+({x})", 1)]
            ]
            prefs_by_label[("p", x, 2)] = [
                [(x, 2)], [(f"{x}+2", 1)], [(f"{x}+1", 2)], [(f"a+({x})", 2)]
            ]
            prefs_by_label[("np", x, 1)] = [
                [(x, 2)], [(x, 1)], [(f"{x}-1", 1)], [(f"{x}-2", 2)], [(f"a-({x})", 1)]
            ]
            prefs_by_label[("np", x, 2)] = [
                [(x, 2)], [(f"{x}-2", 1)], [(f"{x}-1", 2)], [(f"a-({x})", 2)]
            ]
        for j, clause in enumerate(src.clauses):
            acts.append(f"cl{j}")
            lits = occ[j]
            for r in (1, 2, 3):
                prefs_by_label[("c", j, r)] = [[(lits[r - 1], 1)], [(f"cl{j}", 2)]]
            prefs_by_label[("s", j)] = [
                [(lits[0], 2), (lits[1], 2), (lits[2], 2), (f"cl{j}", 2)]
            ]
    else:
        for x in variables:
            star(("v", x, 2), [("v", x, 1), ("v", x, 3)])
            star(("p", x, 2), [("p", x, 1), ("p", x, 3)])
            star(("np", x, 2), [("np", x, 1), ("np", x, 3)])
        for j in range(len(src.clauses)):
            star(("c", j, 2), [("c", j, 1), ("c", j, 3)])
        for x in variables:
            y, z = f"y({x})", f"z({x})"
            ap, bp, cp = f"a+({x})", f"b+({x})", f"c+({x})"
            an, bn, cn = f"a-({x})", f"b-({x})", f"c-({x})"
            acts += [x, f"{x}+1", f"{x}+2", f"{x}-1", f"{x}-2", y, z, ap, bp, cp, an, bn, cn]
            prefs_by_label[("v", x, 1)] = [[(y, 2)], [(x, 1)], [(z, 3)], [(z, 2)], [(z, 1)]]
            prefs_by_label[("v", x, 2)] = [[(z, 3)], [(z, 2)], [(x, 2)], [(y, 2)], [(y, 1)]]
            prefs_by_label[("v", x, 3)] = [[(z, 3)], [(x, 2)], [(x, 1)]]
            prefs_by_label[("p", x, 1)] = [
                [(x, 3), (f"{x}+1", 1)], [(bp, 2)], [(ap, 1)], [(cp, 3)], [(cp, 2)], [(cp, 1)]
            ]
            prefs_by_label[("p", x, 2)] = [
                [(x, 3), (f"{x}+2", 1)], [(cp, 3)], [(cp, 2)], [(ap, 2)], [(bp, 2)], [(bp, 1)]
            ]
            prefs_by_label[("p", x, 3)] = [[(x, 3)], [(cp, 3)], [(ap, 2)], [(ap, 1)]]
            prefs_by_label[("np", x, 1)] = [
                [(x, 3), (f"{x}-1", 1)], [(bn, 2)], [(an, 1)], [(cn, 3)], [(cn, 2)], [(cn, 1)]
            ]
            prefs_by_label[("np", x, 2)] = [
                [(x, 3), (f"{x}-2", 1)], [(cn, 3)], [(cn, 2)], [(an, 2)], [(bn, 2)], [(bn, 1)]
            ]
            prefs_by_label[("np", x, 3)] = [[(x, 3)], [(cn, 3)], [(an, 2)], [(an, 1)]]
        for j in range(len(src.clauses)):
            l1, l2, l3 = occ[j]
            prefs_by_label[("c", j, 1)] = [
                [(l2, 2)], [(l1, 1)], [(l3, 3)], [(l3, 2)], [(l3, 1)]
            ]
            prefs_by_label[("c", j, 2)] = [
                [(l3, 3)], [(l3, 2)], [(l1, 2)], [(l2, 2)], [(l2, 1)]
            ]
            prefs_by_label[("c", j, 3)] = [[(l3, 3)], [(l1, 2)], [(l1, 1)]]

    for x in variables:
        activities[("var", x)] = x
    prefs = [None] * len(order)
    for label, tiers in prefs_by_label.items():
        prefs[players[label]] = tiers
    inst = make_instance(len(order), acts, edges, prefs)
    if variant == "ns":
        assert inst.n == 4 * len(variables) + 4 * len(src.clauses)
        assert inst.p == 7 * len(variables) + len(src.clauses)
    else:
        assert inst.n == 9 * len(variables) + 3 * len(src.clauses)
        assert inst.p == 13 * len(variables)
    return Generated(inst, "b2sat", variant, players, activities, src)


def b2sat_witness(gen: Generated, assignment: dict[str, bool]) -> Assignment:
    """Assignment built from a satisfying truth assignment."""
    src: B2Formula = gen.source
    if set(assignment) != set(src.variables):
        raise ValidationError("assignment must cover exactly the formula's variables")
    if not src.satisfies(assignment):
        raise ValidationError("assignment does not satisfy the formula")
    inst = gen.instance
    aid = inst.activity_id
    occ = gen.source.occurrence_names()
    pi: Assignment = [VOID] * inst.n
    used: set[str] = set()
    if gen.variant == "ns":
        for x in src.variables:
            if assignment[x]:
                pi[gen.players[("p", x, 1)]] = aid(f"{x}+1")
                pi[gen.players[("p", x, 2)]] = aid(f"{x}+2")
                used.update({f"{x}+1", f"{x}+2"})
                for r in (1, 2):
                    pi[gen.players[("np", x, r)]] = aid(x)
            else:
                pi[gen.players[("np", x, 1)]] = aid(f"{x}-1")
                pi[gen.players[("np", x, 2)]] = aid(f"{x}-2")
                used.update({f"{x}-1", f"{x}-2"})
                for r in (1, 2):
                    pi[gen.players[("p", x, r)]] = aid(x)
        for j, clause in enumerate(src.clauses):
            sat = [r for r in (1, 2, 3) if assignment[clause[r - 1][0]] == clause[r - 1][1]]
            lead = sat[0]
            pi[gen.players[("c", j, lead)]] = aid(f"cl{j}")
            pi[gen.players[("s", j)]] = aid(f"cl{j}")
            for r in (1, 2, 3):
                if r == lead:
                    continue
                name = occ[j][r - 1]
                if name not in used:
                    pi[gen.players[("c", j, r)]] = aid(name)
                    used.add(name)
    else:
        for x in src.variables:
            for r in (1, 2, 3):
                pi[gen.players[("v", x, r)]] = aid(f"z({x})")
            if assignment[x]:
                pi[gen.players[("p", x, 1)]] = aid(f"{x}+1")
                pi[gen.players[("p", x, 2)]] = aid(f"{x}+2")
                pi[gen.players[("p", x, 3)]] = aid(f"a+({x})")
                used.update({f"{x}+1", f"{x}+2"})
                for r in (1, 2, 3):
                    pi[gen.players[("np", x, r)]] = aid(x)
            else:
                pi[gen.players[("np", x, 1)]] = aid(f"{x}-1")
                pi[gen.players[("np", x, 2)]] = aid(f"{x}-2")
                pi[gen.players[("np", x, 3)]] = aid(f"a-({x})")
                used.update({f"{x}-1", f"{x}-2"})
                for r in (1, 2, 3):
                    pi[gen.players[("p", x, r)]] = aid(x)
        for j in range(len(src.clauses)):
            l1, l2, l3 = occ[j]
            if l3 not in used and l1 in used:
                for r in (1, 2, 3):
                    pi[gen.players[("c", j, r)]] = aid(l3)
                used.add(l3)
            elif l1 not in used and l3 in used:
                pi[gen.players[("c", j, 2)]] = aid(l1)
                pi[gen.players[("c", j, 3)]] = aid(l1)
                used.add(l1)
            elif l1 not in used and l3 not in used:
                # both end slots free: the first clause player parks alone on
                # its literal; the singleton rejects joiners, so nobody moves
                pi[gen.players[("c", j, 1)]] = aid(l1)
                used.add(l1)
            elif l2 not in used:
                pi[gen.players[("c", j, 1)]] = aid(l2)
                pi[gen.players[("c", j, 2)]] = aid(l2)
                used.add(l2)
    return pi


# -- exact cover by 3-sets ---------------------------------------------------


@dataclass(frozen=True)
class X3CInstance:
    """Universe [0, 3k) and a family of distinct 3-element subsets."""

    k: int
    triples: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValidationError("k must be at least 1")
        seen = set()
        covered = set()
        for t in self.triples:
            t = tuple(sorted(t))
            if len(set(t)) != 3:
                raise ValidationError(f"{t} is not a 3-element set")
            if any(not (0 <= v < 3 * self.k) for v in t):
                raise ValidationError(f"{t} leaves the universe")
            if t in seen:
                raise ValidationError(f"duplicate set {t}")
            seen.add(t)
            covered.update(t)
        if covered != set(range(3 * self.k)):
            raise ValidationError("every universe element must appear in some set")

    def element_sets(self, v: int) -> list[int]:
        return [j for j, t in enumerate(self.triples) if v in t]

    def is_exact_cover(self, picked: list[int]) -> bool:
        chosen = [self.triples[j] for j in picked]
        flat = [v for t in chosen for v in t]
        return len(picked) == self.k and sorted(flat) == list(range(3 * self.k))


def _beta(i: int, k: int) -> int:
    return i + 3 * k + 2  # element index i is 0-based here; values >= 3 and distinct


def from_x3c_star(src: X3CInstance) -> Generated:
    """Two-activity star whose core mirrors exact coverability.

    Exact cover => core stable holds for every ``k`` (the witness builder
    is verifier-checked).  The converse needs ``k >= 3``: for smaller ``k``
    the parked-coalition alternative ``(a, k+1)`` collides with the
    three-player gadget's own sizes and the blocking threats lose their
    teeth, so a coverless instance may still have a nonempty core.
    """
    k, m = src.k, len(src.triples)
    players: dict = {"center": 0}
    order: list = ["center"]

    def add(label):
        players[label] = len(order)
        order.append(label)

    add("x1")
    add("x2")
    for j in range(m):
        add(("set", j))
    dummy_counts = []
    for i in range(3 * k):
        count = _beta(i, k) - len(src.element_sets(i)) - 2
        if count < 0:
            raise ValidationError(
                f"element {i} appears in too many sets for its coalition size"
            )
        dummy_counts.append(count)
        for d in range(count):
            add(("dummy", i, d))
    n = len(order)
    edges = star_edges(n, center=0)

    all_beta = [("b", _beta(i, k)) for i in range(3 * k)]
    assert len({b for _, b in all_beta}) == 3 * k and min(b for _, b in all_beta) >= 3

    prefs: list = [None] * n
    prefs[players["x1"]] = [[("b", 2)], [("a", 3)]]
    prefs[players["center"]] = _dedup_tiers(
        [[("a", 2)], [("b", 2)], [("a", 3)], all_beta, [("a", k + 1)]]
    )
    prefs[players["x2"]] = _dedup_tiers([[("a", 3)], all_beta, [("b", 1)], [("a", 2)]])
    for j, t in enumerate(src.triples):
        bj = [("b", _beta(i, k)) for i in sorted(t)]
        prefs[players[("set", j)]] = _dedup_tiers([[("a", k + 1)], bj])
    for i in range(3 * k):
        for d in range(dummy_counts[i]):
            prefs[players[("dummy", i, d)]] = [[("b", _beta(i, k))]]

    inst = make_instance(n, ["a", "b"], edges, prefs)
    assert inst.n == 3 + m + sum(dummy_counts) and inst.p == 2
    return Generated(inst, "x3c_star", None, players, {"a": "a", "b": "b"}, src)


def from_x3c_clique(src: X3CInstance) -> Generated:
    """Four-activity clique whose core mirrors exact coverability.

    As with the star variant, the cover => stable direction holds for all
    ``k`` while the converse is only guaranteed from ``k >= 3`` on, where
    ``(c2, k)`` and ``(c1, m-k)`` stay clear of the gadget sizes.
    """
    k, m = src.k, len(src.triples)
    if m <= k:
        raise ValidationError("needs more sets than k (some set must stay off the cover)")
    players: dict = {}
    order: list = []

    def add(label):
        players[label] = len(order)
        order.append(label)

    for name in ("x1", "x2", "x3"):
        add(name)
    for j in range(m):
        add(("set", j))
    dummy_counts = []
    for i in range(3 * k):
        count = _beta(i, k) - len(src.element_sets(i))
        if count < 0:
            raise ValidationError(
                f"element {i} appears in too many sets for its coalition size"
            )
        dummy_counts.append(count)
        for d in range(count):
            add(("dummy", i, d))
    n = len(order)
    edges = clique_edges(n)

    prefs: list = [None] * n
    prefs[players["x1"]] = [[("c1", 2), ("c2", 2)], [("a", 3)]]
    prefs[players["x2"]] = [[("a", 2)], [("c1", 2), ("c2", 2)], [("a", 3)]]
    prefs[players["x3"]] = [[("a", 3)], [("c1", 1), ("c2", 1)], [("a", 2)]]
    for j, t in enumerate(src.triples):
        bj = [("b", _beta(i, k)) for i in sorted(t)]
        prefs[players[("set", j)]] = _dedup_tiers([[("c2", k)], bj, [("c1", m - k)]])
    for i in range(3 * k):
        for d in range(dummy_counts[i]):
            prefs[players[("dummy", i, d)]] = [[("b", _beta(i, k))]]

    inst = make_instance(n, ["a", "b", "c1", "c2"], edges, prefs)
    assert inst.n == 3 + m + sum(dummy_counts) and inst.p == 4
    return Generated(inst, "x3c_clique", None, players, {}, src)


def x3c_witness(gen: Generated, cover: list[int]) -> Assignment:
    """Assignment built from an exact cover (list of set indices)."""
    src: X3CInstance = gen.source
    cover = sorted(set(cover))
    if not src.is_exact_cover(cover):
        raise ValidationError("not an exact cover")
    inst = gen.instance
    pi: Assignment = [VOID] * inst.n
    if gen.family == "x3c_star":
        a_id = inst.activity_id("a")
        pi[gen.players["center"]] = a_id
        for j in cover:
            pi[gen.players[("set", j)]] = a_id
        pi[gen.players["x2"]] = inst.activity_id("b")
    else:
        a_id = inst.activity_id("a")
        for name in ("x1", "x2", "x3"):
            pi[gen.players[name]] = a_id
        c1, c2 = inst.activity_id("c1"), inst.activity_id("c2")
        for j in range(len(src.triples)):
            pi[gen.players[("set", j)]] = c2 if j in cover else c1
    return pi


# -- cliques: k-clique in regular graphs ------------------------------------


@dataclass(frozen=True)
class RegularGraph:
    num_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        deg = [0] * self.num_vertices
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices) or u == v:
                raise ValidationError(f"bad edge ({u}, {v})")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValidationError(f"duplicate edge ({u}, {v})")
            seen.add(key)
            deg[u] += 1
            deg[v] += 1
        if self.num_vertices == 0 or len(set(deg)) > 1:
            raise ValidationError("graph must be regular and nonempty")

    @property
    def degree(self) -> int:
        return 0 if not self.edges else 2 * len(self.edges) // self.num_vertices

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted((min(u, v), max(u, v)) for u, v in self.edges)

    def is_clique_of(self, vertices: list[int]) -> bool:
        es = set(self.sorted_edges())
        return all(
            (min(u, v), max(u, v)) in es for u, v in combinations(sorted(set(vertices)), 2)
        )


def from_regular_clique(src: RegularGraph, k: int, variant: str = "ns") -> Generated:
    """Complete-graph instance whose stability mirrors k-clique existence.

    Coalition sizes encode vertices (``alpha``) and edges (``beta``);
    spacing of the alpha values keeps distinct vertex coalitions from
    interfering.  ``ns`` adds a stalker on a private activity; ``is``
    replaces it with no-IS gadgets per vertex activity and a stabilizer.
    """
    if variant not in ("ns", "is"):
        raise ValidationError(f"unknown regular-clique variant {variant!r}")
    nv, delta = src.num_vertices, src.degree
    if k < 1:
        raise ValidationError("k must be at least 1")
    if delta < k - 1:
        raise ValidationError("degree must be at least k - 1")
    if variant == "ns" and nv <= k:
        raise ValidationError("needs more vertices than k (the parked coalition is nonempty)")
    sedges = src.sorted_edges()
    num_edge_acts = k * (k - 1) // 2
    if variant == "ns":
        alpha = {v: 2 * (v + 1) + nv for v in range(nv)}
    else:
        alpha = {v: (v + 1) * (k + 3) + nv for v in range(nv)}
    beta = {e: 2 * (j + 1) for j, e in enumerate(sedges)}

    players: dict = {}
    order: list = []

    def add(label):
        players[label] = len(order)
        order.append(label)

    for v in range(nv):
        add(("v", v))
        for d in range(alpha[v] - delta + k - 2):
            add(("dv", v, d))
    for (u, v) in sedges:
        add(("e", u, v))
        add(("e", v, u))
        for d in range(beta[(u, v)] - 2):
            add(("de", u, v, d))
    if variant == "ns":
        add("s")
    else:
        for i in range(k):
            for r in (1, 2, 3):
                add(("ngadget", i, r))
        add("g")
        for r in (1, 2, 3):
            add(("ggadget", r))
    n = len(order)

    if variant == "ns":
        vx = [f"a{i}" for i in range(k)]
        acts = vx + [f"b{j}" for j in range(num_edge_acts)] + ["c", "d"]
    else:
        vx = [f"a{i}.1" for i in range(k)]
        acts = (
            [f"a{i}.{r}" for i in range(k) for r in (1, 2, 3)]
            + [f"b{j}" for j in range(num_edge_acts)]
            + ["d", "x", "y", "z"]
        )
    edge_acts = [f"b{j}" for j in range(num_edge_acts)]

    prefs: list = [None] * n
    for v in range(nv):
        if variant == "ns":
            tier = [("c", nv - k), ("d", 1)] + [(a, alpha[v]) for a in vx]
            prefs[players[("v", v)]] = [sorted(set(tier))]
            dtier = [(a, alpha[v]) for a in vx] + [(a, alpha[v] + 1) for a in vx]
        else:
            tier = [(a, s) for a in vx for s in range(alpha[v], alpha[v] + k + 1)]
            prefs[players[("v", v)]] = [tier]
            dtier = tier
        for d in range(alpha[v] - delta + k - 2):
            prefs[players[("dv", v, d)]] = [sorted(set(dtier))]
    for (u, v) in sedges:
        b = beta[(u, v)]
        etier = [(a, b) for a in edge_acts]
        for (w, o) in ((u, v), (v, u)):
            if variant == "ns":
                mine = [(a, alpha[w]) for a in vx] + [(a, alpha[w] + 1) for a in vx]
            else:
                mine = [(a, s) for a in vx for s in range(alpha[w], alpha[w] + k + 1)]
            prefs[players[("e", w, o)]] = [sorted(set(mine + etier))]
        for d in range(b - 2):
            prefs[players[("de", u, v, d)]] = [etier] if etier else []
    if variant == "ns":
        prefs[players["s"]] = [[("d", 2)]]
    else:
        gt = sorted(
            {(a, s) for a in vx for v in range(nv) for s in range(alpha[v] + 2, alpha[v] + k + 1)}
        )
        prefs[players["g"]] = ([gt] if gt else []) + [[("d", 4)]]
        for i in range(k):
            a1, a2, a3 = f"a{i}.1", f"a{i}.2", f"a{i}.3"
            prefs[players[("ngadget", i, 1)]] = [
                [(a2, 2)], [(a1, 1)], [(a3, 3)], [(a3, 2)], [(a3, 1)]
            ]
            prefs[players[("ngadget", i, 2)]] = [
                [(a3, 3)], [(a3, 2)], [(a1, 2)], [(a2, 2)], [(a2, 1)]
            ]
            prefs[players[("ngadget", i, 3)]] = [[(a3, 3)], [(a1, 2)], [(a1, 1)]]
        prefs[players[("ggadget", 1)]] = [
            [("d", 4)], [("y", 2)], [("z", 1)], [("x", 3)], [("x", 2)], [("x", 1)]
        ]
        prefs[players[("ggadget", 2)]] = [
            [("d", 4)], [("x", 3)], [("x", 2)], [("z", 2)], [("y", 2)], [("y", 1)]
        ]
        prefs[players[("ggadget", 3)]] = [[("d", 4)], [("x", 3)], [("z", 2)], [("z", 1)]]

    inst = make_instance(n, acts, clique_edges(n), prefs)
    expected_p = (k if variant == "ns" else 3 * k) + num_edge_acts + (2 if variant == "ns" else 4)
    assert inst.p == expected_p
    alphas = sorted(alpha.values())
    assert all(b - a >= 2 for a, b in zip(alphas, alphas[1:]))
    return Generated(inst, "regular_clique", variant, players, {}, src)


def regular_clique_witness(gen: Generated, clique: list[int], k: int | None = None) -> Assignment:
    """Assignment built from a k-clique of the source graph."""
    src: RegularGraph = gen.source
    S = sorted(set(clique))
    if not src.is_clique_of(S):
        raise ValidationError("vertices do not form a clique")
    inst = gen.instance
    variant = gen.variant
    vx_name = (lambda i: f"a{i}") if variant == "ns" else (lambda i: f"a{i}.1")
    k_needed = sum(1 for lbl in gen.players if isinstance(lbl, tuple) and lbl[0] == "ngadget") // 3
    if variant == "ns":
        k_needed = len([x for x in range(inst.p)]) - 0  # overwritten below
        k_needed = len([nm for nm in (inst.activity_name(a) for a in range(inst.p)) if nm.startswith("a") and nm[1:].isdigit()])
    if len(S) != k_needed:
        raise ValidationError(f"clique must have exactly {k_needed} vertices")
    aid = inst.activity_id
    pi: Assignment = [VOID] * inst.n
    nbr: dict[int, set[int]] = {v: set() for v in range(src.num_vertices)}
    for u, v in src.sorted_edges():
        nbr[u].add(v)
        nbr[v].add(u)
    if variant == "ns":
        c_id = aid("c")
        for v in range(src.num_vertices):
            if v not in S:
                pi[gen.players[("v", v)]] = c_id
    for idx, v in enumerate(S):
        a_id = aid(vx_name(idx))
        pi[gen.players[("v", v)]] = a_id
        d = 0
        while ("dv", v, d) in gen.players:
            pi[gen.players[("dv", v, d)]] = a_id
            d += 1
        for u in sorted(nbr[v]):
            if u not in S:
                pi[gen.players[("e", v, u)]] = a_id
    inner = [e for e in src.sorted_edges() if e[0] in S and e[1] in S]
    for j, (u, v) in enumerate(sorted(inner)):
        b_id = aid(f"b{j}")
        pi[gen.players[("e", u, v)]] = b_id
        pi[gen.players[("e", v, u)]] = b_id
        d = 0
        while ("de", u, v, d) in gen.players:
            pi[gen.players[("de", u, v, d)]] = b_id
            d += 1
    if variant == "is":
        d_id = aid("d")
        pi[gen.players["g"]] = d_id
        for r in (1, 2, 3):
            pi[gen.players[("ggadget", r)]] = d_id
        for i in range(len(S)):
            a3 = aid(f"a{i}.3")
            for r in (1, 2, 3):
                pi[gen.players[("ngadget", i, r)]] = a3
    return pi


# -- few players: multicolored independent set / clique ----------------------


@dataclass(frozen=True)
class ColoredGraph:
    """Vertex-colored graph with equal color classes and no intra-color edges."""

    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    colors: tuple[int, ...]

    def __post_init__(self):
        if len(self.colors) != self.num_vertices:
            raise ValidationError("need one color per vertex")
        h = self.num_colors
        sizes = [self.colors.count(i) for i in range(h)]
        if len(set(sizes)) > 1 or (sizes and sizes[0] == 0):
            raise ValidationError("color classes must be equal-sized and nonempty")
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices) or u == v:
                raise ValidationError(f"bad edge ({u}, {v})")
            if self.colors[u] == self.colors[v]:
                raise ValidationError(f"edge ({u}, {v}) joins two vertices of one color")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValidationError(f"duplicate edge ({u}, {v})")
            seen.add(key)

    @property
    def num_colors(self) -> int:
        return max(self.colors) + 1 if self.colors else 0

    def class_vertices(self, i: int) -> list[int]:
        return [v for v in range(self.num_vertices) if self.colors[v] == i]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted((min(u, v), max(u, v)) for u, v in self.edges)

    def adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in set(self.sorted_edges())


def _edge_name(e: tuple[int, int]) -> str:
    return f"e{e[0]}-{e[1]}"


def from_multicolored(src: ColoredGraph, variant: str = "core_mis") -> Generated:
    """Clique instance with very few players.

    ``core_mis``: 2h + 4 players; core stability mirrors a colorful
    independent set.  ``nsis_mc``: 3h + 3*C(h,2) + 4 players; Nash and
    individual stability mirror a colorful clique.
    """
    if variant not in ("core_mis", "nsis_mc"):
        raise ValidationError(f"unknown multicolored variant {variant!r}")
    h = src.num_colors
    if h < 1:
        raise ValidationError("need at least one color")
    sedges = src.sorted_edges()
    vnames = {v: f"v{v}" for v in range(src.num_vertices)}
    enames = {e: _edge_name(e) for e in sedges}

    players: dict = {}
    order: list = []

    def add(label):
        players[label] = len(order)
        order.append(label)

    def incident(v):
        return [e for e in sedges if v in e]

    if variant == "core_mis":
        for i in range(h):
            add(("p", i, 1))
            add(("p", i, 2))
        add("g")
        for r in (1, 2, 3):
            add(("ggadget", r))
        n = len(order)
        acts = [vnames[v] for v in range(src.num_vertices)]
        acts += [enames[e] for e in sedges]
        acts += ["a", "b", "c", "d"]
        prefs: list = [None] * n
        for i in range(h):
            cls = src.class_vertices(i)
            asc, desc = cls, list(reversed(cls))
            for which, vorder in ((1, asc), (2, desc)):
                tiers = []
                for v in vorder:
                    inc = [(enames[e], 5) for e in incident(v)]
                    if inc:
                        tiers.append(inc)
                    tiers.append([(vnames[v], 2)])
                prefs[players[("p", i, which)]] = tiers
        etier = [(enames[e], 5) for e in sedges]
        prefs[players["g"]] = ([etier] if etier else []) + [[("d", 4)]]
        prefs[players[("ggadget", 1)]] = [[("d", 4)], [("b", 2)], [("a", 3)]]
        prefs[players[("ggadget", 2)]] = [[("d", 4)], [("a", 2)], [("b", 2)], [("a", 3)]]
        prefs[players[("ggadget", 3)]] = [[("d", 4)], [("a", 3)], [("b", 1)], [("a", 2)]]
        inst = make_instance(n, acts, clique_edges(n), prefs)
        assert inst.n == 2 * h + 4
    else:
        for i in range(h):
            for r in (1, 2, 3):
                add(("p", i, r))
        pairs = list(combinations(range(h), 2))
        for (i, j) in pairs:
            for r in (1, 2, 3):
                add(("q", i, j, r))
        add("g")
        for r in (1, 2, 3):
            add(("ggadget", r))
        n = len(order)
        acts = [vnames[v] for v in range(src.num_vertices)]
        acts += [enames[e] for e in sedges]
        for i in range(h):
            acts += [f"ca{i}", f"cb{i}", f"cc{i}"]
        for (i, j) in pairs:
            acts += [f"pa{i}-{j}", f"pb{i}-{j}", f"pc{i}-{j}"]
        acts += ["d", "x", "y", "z"]
        prefs = [None] * n

        def color_tiers(i, vorder):
            tiers = []
            for v in vorder:
                tiers.append([(vnames[v], 2)])
                inc = [(enames[e], s) for e in incident(v) for s in (3, 4, 5)]
                if inc:
                    tiers.append(inc)
            return tiers

        for i in range(h):
            cls = src.class_vertices(i)
            ca, cb, cc = f"ca{i}", f"cb{i}", f"cc{i}"
            prefs[players[("p", i, 1)]] = color_tiers(i, cls) + [
                [(cb, 2)], [(ca, 1)], [(cc, 3)], [(cc, 2)], [(cc, 1)]
            ]
            prefs[players[("p", i, 2)]] = color_tiers(i, list(reversed(cls))) + [
                [(cc, 3)], [(cc, 2)], [(ca, 2)], [(cb, 2)], [(cb, 1)]
            ]
            prefs[players[("p", i, 3)]] = [[(cc, 3)], [(ca, 2)], [(ca, 1)]]
        for (i, j) in pairs:
            between = [
                e for e in sedges if {src.colors[e[0]], src.colors[e[1]]} == {i, j}
            ]
            pa, pb, pc = f"pa{i}-{j}", f"pb{i}-{j}", f"pc{i}-{j}"
            etier = [(enames[e], s) for e in between for s in (2, 3, 4, 5)]
            head = [etier] if etier else []
            prefs[players[("q", i, j, 1)]] = head + [
                [(pb, 2)], [(pa, 1)], [(pc, 3)], [(pc, 2)], [(pc, 1)]
            ]
            prefs[players[("q", i, j, 2)]] = head + [
                [(pc, 3)], [(pc, 2)], [(pa, 2)], [(pb, 2)], [(pb, 1)]
            ]
            prefs[players[("q", i, j, 3)]] = [[(pc, 3)], [(pa, 2)], [(pa, 1)]]
        etier = [(enames[e], s) for e in sedges for s in (4, 5)]
        prefs[players["g"]] = ([etier] if etier else []) + [[("d", 4)]]
        prefs[players[("ggadget", 1)]] = [
            [("d", 4)], [("y", 2)], [("z", 1)], [("x", 3)], [("x", 2)], [("x", 1)]
        ]
        prefs[players[("ggadget", 2)]] = [
            [("d", 4)], [("x", 3)], [("x", 2)], [("z", 2)], [("y", 2)], [("y", 1)]
        ]
        prefs[players[("ggadget", 3)]] = [[("d", 4)], [("x", 3)], [("z", 2)], [("z", 1)]]
        inst = make_instance(n, acts, clique_edges(n), prefs)
        assert inst.n == 3 * h + 3 * len(pairs) + 4
    activities = {("vertex", v): vnames[v] for v in range(src.num_vertices)}
    activities.update({("edge", e): enames[e] for e in sedges})
    return Generated(inst, "multicolored", variant, players, activities, src)


def multicolored_witness(gen: Generated, vertices: list[int]) -> Assignment:
    """Assignment built from a colorful independent set / clique."""
    src: ColoredGraph = gen.source
    chosen = sorted(set(vertices))
    h = src.num_colors
    if len(chosen) != h or sorted(src.colors[v] for v in chosen) != list(range(h)):
        raise ValidationError("need exactly one vertex of every color")
    by_color = {src.colors[v]: v for v in chosen}
    inst = gen.instance
    aid = inst.activity_id
    pi: Assignment = [VOID] * inst.n
    d_id = aid("d")
    pi[gen.players["g"]] = d_id
    for r in (1, 2, 3):
        pi[gen.players[("ggadget", r)]] = d_id
    if gen.variant == "core_mis":
        for u, v in combinations(chosen, 2):
            if src.adjacent(u, v):
                raise ValidationError("vertices are not independent")
        for i in range(h):
            v_id = aid(f"v{by_color[i]}")
            pi[gen.players[("p", i, 1)]] = v_id
            pi[gen.players[("p", i, 2)]] = v_id
    else:
        for u, v in combinations(chosen, 2):
            if not src.adjacent(u, v):
                raise ValidationError("vertices do not form a clique")
        for i in range(h):
            v_id = aid(f"v{by_color[i]}")
            pi[gen.players[("p", i, 1)]] = v_id
            pi[gen.players[("p", i, 2)]] = v_id
            pi[gen.players[("p", i, 3)]] = aid(f"ca{i}")
        for (i, j) in combinations(range(h), 2):
            u, v = sorted((by_color[i], by_color[j]))
            e_id = aid(_edge_name((u, v)))
            pi[gen.players[("q", i, j, 1)]] = e_id
            pi[gen.players[("q", i, j, 2)]] = e_id
            pi[gen.players[("q", i, j, 3)]] = aid(f"pa{i}-{j}")
    return pi


# -- random instances --------------------------------------------------------

GRAPH_CLASSES = ("path", "star", "tree", "forest", "clique", "two_components", "general")


def random_instance(
    seed: int,
    n: int,
    p: int,
    graph_class: str = "general",
    preference_density: float = 0.5,
    copyable: bool = False,
) -> Instance:
    """Seed-deterministic random instance of a requested graph class.

    ``preference_density`` is the probability that a given (activity, size)
    alternative is approved.  With ``copyable`` every activity becomes a
    class of ``n`` interchangeable copies (``p`` then counts classes).
    """
    if graph_class not in GRAPH_CLASSES:
        raise ValidationError(f"unknown graph class {graph_class!r}")
    if n < 1 or p < 0:
        raise ValidationError("need n >= 1 and p >= 0")
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = []
    if graph_class == "path":
        edges = path_edges(n)
    elif graph_class == "star":
        edges = star_edges(n)
    elif graph_class == "clique":
        edges = clique_edges(n)
    elif graph_class == "tree":
        edges = [(rng.randrange(v), v) for v in range(1, n)]
    elif graph_class == "forest":
        edges = [(rng.randrange(v), v) for v in range(1, n) if rng.random() < 0.8]
    elif graph_class == "two_components":
        if n < 2:
            raise ValidationError("two components need at least two players")
        cut = rng.randint(1, n - 1)
        for part in (range(0, cut), range(cut, n)):
            nodes = list(part)
            for idx, v in enumerate(nodes[1:], start=1):
                edges.append((nodes[rng.randrange(idx)], v))
            for u, v in combinations(nodes, 2):
                if (u, v) not in edges and rng.random() < 0.25:
                    edges.append((u, v))
    else:
        for v in range(1, n):
            if rng.random() < 0.85:
                edges.append((rng.randrange(v), v))
        for u, v in combinations(range(n), 2):
            if (u, v) not in edges and rng.random() < 0.2:
                edges.append((u, v))

    names = [chr(ord("a") + c) if c < 26 else f"act{c}" for c in range(p)]
    prefs = []
    for _ in range(n):
        alts = [
            (nm, k)
            for nm in names
            for k in range(1, n + 1)
            if rng.random() < preference_density
        ]
        rng.shuffle(alts)
        tiers: list[list] = []
        cur: list = []
        for alt in alts:
            cur.append(alt)
            if rng.random() < 0.55:
                tiers.append(cur)
                cur = []
        if cur:
            tiers.append(cur)
        # occasionally tie the tail of the list with the void alternative
        if tiers and rng.random() < 0.15:
            tiers[-1].append("VOID")
        prefs.append(tiers)
    if copyable:
        activities = [(nm, nm.upper(), n) for nm in names]
    else:
        activities = list(names)
    return make_instance(n, activities, edges, prefs)
