"""Domain model: players, activities, anonymous preferences and assignments.

An instance consists of ``n`` players on a social graph, a roster of
activities, and one weak order per player over *alternatives* ``(activity,
group size)``.  The distinguished void alternative ``(void, 1)`` means
"stay alone and do nothing"; any number of players may hold it at once.

Activities are dense integer ids.  A roster entry may declare ``copies``,
in which case the entry expands to that many pairwise-equivalent concrete
activities sharing one preference row (copy ``j`` of entry ``x`` is named
``x#j``).  Entries may also carry an equivalence-class label; two entries
with the same label must be interchangeable in every preference query,
which is validated on construction.

Alternatives not listed in a player's preference rank in a single
synthetic bottom tier, strictly below every listed tier (and hence below
the void alternative, which every normalized order lists).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .errors import ValidationError
from .graphs import Graph

#: Activity id of the void activity.
VOID = -1

#: Rank given to alternatives whose size exceeds ``n`` (no such group can
#: form, so they compare below everything, including unlisted entries).
IMPOSSIBLE_RANK = 1 << 30

LESS, EQUAL, GREATER = -1, 0, 1


class Alternative(NamedTuple):
    activity: int  # concrete activity id, or VOID
    size: int


ALT_VOID = Alternative(VOID, 1)

# Assignments are plain lists: pi[player] is a concrete activity id or VOID.
Assignment = list


@dataclass(frozen=True)
class ActivityEntry:
    """One roster line: a named activity, possibly replicated ``copies`` times."""

    name: str
    label: str | None = None
    copies: int = 1


@dataclass(frozen=True, eq=True)
class Instance:
    """A validated, immutable problem instance.

    ``tiers[i]`` is player ``i``'s weak order: a tuple of indifference
    tiers, each a tuple of :class:`Alternative` (``ALT_VOID`` for the void
    alternative).  Alternatives of copies are stored on the entry's first
    copy; all copies share the row.
    """

    n: int
    entries: tuple[ActivityEntry, ...]
    edges: tuple[tuple[int, int], ...]
    tiers: tuple[tuple[tuple[Alternative, ...], ...], ...]

    # Derived caches, excluded from equality/repr.
    _derived: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        self._validate()
        self._build()

    # -- construction ------------------------------------------------

    def _validate(self):
        if self.n < 1:
            raise ValidationError("instance needs at least one player")
        names = set()
        for entry in self.entries:
            if not entry.name or entry.name == "VOID" or "#" in entry.name:
                raise ValidationError(f"bad activity name {entry.name!r}")
            if entry.name in names:
                raise ValidationError(f"duplicate activity name {entry.name!r}")
            if entry.copies < 1:
                raise ValidationError(f"activity {entry.name!r}: copies must be >= 1")
            names.add(entry.name)
        seen_edges = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
                raise ValidationError(f"bad edge ({u}, {v})")
            if (min(u, v), max(u, v)) in seen_edges:
                raise ValidationError(f"duplicate edge ({u}, {v})")
            seen_edges.add((min(u, v), max(u, v)))
        if len(self.tiers) != self.n:
            raise ValidationError("need exactly one preference order per player")

    def _build(self):
        d = self._derived
        # Concrete activity ids, entry lookup and names.
        entry_of, names = [], []
        first_copy = []
        for idx, entry in enumerate(self.entries):
            first_copy.append(len(entry_of))
            for j in range(entry.copies):
                entry_of.append(idx)
                names.append(entry.name if entry.copies == 1 else f"{entry.name}#{j + 1}")
        p = len(entry_of)
        d["p"] = p
        d["entry_of"] = entry_of
        d["first_copy"] = first_copy
        d["names"] = names
        d["aid_of_name"] = {name: aid for aid, name in enumerate(names)}
        d["graph"] = Graph(self.n, self.edges)

        # Rank tables: rank[i][entry][size] with size in 0..n+1 (0 unused,
        # n+1 is an impossible-size sentinel).  Unlisted alternatives share
        # one synthetic tier below all listed ones.
        name_to_entry = {e.name: i for i, e in enumerate(self.entries)}
        ranks, void_ranks = [], []
        for i, player_tiers in enumerate(self.tiers):
            bottom = len(player_tiers)
            row = [[bottom] * (self.n + 2) for _ in range(len(self.entries))]
            for e in range(len(self.entries)):
                row[e][0] = IMPOSSIBLE_RANK
                row[e][self.n + 1] = IMPOSSIBLE_RANK
            void_rank = None
            seen: set[Alternative] = set()
            for level, tier in enumerate(player_tiers):
                if not tier:
                    raise ValidationError(f"player {i}: empty preference tier")
                for alt in tier:
                    if alt in seen:
                        raise ValidationError(f"player {i}: alternative {alt} listed twice")
                    seen.add(alt)
                    if alt.activity == VOID:
                        if alt.size != 1:
                            raise ValidationError(f"player {i}: void alternative must have size 1")
                        void_rank = level
                    else:
                        if not (0 <= alt.activity < p):
                            raise ValidationError(f"player {i}: unknown activity id {alt.activity}")
                        if alt.activity != first_copy[entry_of[alt.activity]]:
                            raise ValidationError(
                                f"player {i}: preferences must reference an entry's first copy"
                            )
                        if not (1 <= alt.size <= self.n):
                            raise ValidationError(f"player {i}: size {alt.size} out of range")
                        row[entry_of[alt.activity]][alt.size] = level
            if void_rank is None:
                raise ValidationError(f"player {i}: preference order must place the void alternative")
            ranks.append(row)
            void_ranks.append(void_rank)
        d["rank"] = ranks
        d["void_rank"] = void_ranks

        # Semantic equivalence classes over entries, then concrete ids.
        classes = self._entry_classes(ranks)
        label_of = {}
        for cls in classes:
            labels = {self.entries[e].label for e in cls if self.entries[e].label is not None}
            for e in cls:
                label_of[e] = labels
        for i, e in enumerate(self.entries):
            if e.label is None:
                continue
            for j, f in enumerate(self.entries):
                if j <= i or f.label != e.label:
                    continue
                if not self._entries_equivalent(ranks, i, j):
                    raise ValidationError(
                        f"activities {e.name!r} and {f.name!r} share class {e.label!r} "
                        "but their preference rows differ"
                    )
        aid_classes = []
        for cls in classes:
            aids = sorted(a for a in range(p) if entry_of[a] in cls)
            aid_classes.append(tuple(aids))
        aid_classes.sort(key=lambda c: c[0])
        d["classes"] = tuple(aid_classes)
        class_of = [0] * p
        for ci, cls in enumerate(aid_classes):
            for a in cls:
                class_of[a] = ci
        d["class_of"] = class_of
        d["all_copyable"] = all(len(c) >= self.n for c in aid_classes) if aid_classes else True

    def _entries_equivalent(self, ranks, e1, e2) -> bool:
        return all(row[e1][1 : self.n + 1] == row[e2][1 : self.n + 1] for row in ranks)

    def _entry_classes(self, ranks) -> list[list[int]]:
        classes: list[list[int]] = []
        for e in range(len(self.entries)):
            for cls in classes:
                if self._entries_equivalent(ranks, cls[0], e):
                    cls.append(e)
                    break
            else:
                classes.append([e])
        return classes

    # -- basic accessors ----------------------------------------------

    @property
    def p(self) -> int:
        """Number of concrete non-void activities."""
        return self._derived["p"]

    @property
    def void_ranks(self) -> list[int]:
        """Per-player tier index of the void alternative."""
        return self._derived["void_rank"]

    @property
    def graph(self) -> Graph:
        return self._derived["graph"]

    def activity_name(self, aid: int) -> str:
        return "VOID" if aid == VOID else self._derived["names"][aid]

    def activity_id(self, name: str) -> int:
        if name == "VOID":
            return VOID
        try:
            return self._derived["aid_of_name"][name]
        except KeyError:
            raise ValidationError(f"unknown activity {name!r}") from None

    def entry_index(self, aid: int) -> int:
        return self._derived["entry_of"][aid]

    # -- preference queries -------------------------------------------

    def rank(self, player: int, activity: int, size: int) -> int:
        """Tier index of ``(activity, size)`` for ``player``; lower is better.

        Accepts ``size == n + 1`` (returns the impossible-rank sentinel) so
        that deviation guards can query "one more than a full group".
        """
        if activity == VOID:
            return self._derived["void_rank"][player] if size == 1 else IMPOSSIBLE_RANK
        return self._derived["rank"][player][self._derived["entry_of"][activity]][size]

    def _check_alt(self, alt: Alternative):
        if alt.activity == VOID:
            if alt.size != 1:
                raise ValidationError("the void activity only forms groups of size 1")
            return
        if not (0 <= alt.activity < self.p):
            raise ValidationError(f"unknown activity id {alt.activity}")
        if not (1 <= alt.size <= self.n):
            raise ValidationError(f"group size {alt.size} out of range 1..{self.n}")

    def compare(self, player: int, x: Alternative, y: Alternative) -> int:
        """Total preorder: GREATER if ``player`` strictly prefers ``x`` to ``y``."""
        if not (0 <= player < self.n):
            raise ValidationError(f"unknown player {player}")
        x, y = Alternative(*x), Alternative(*y)
        self._check_alt(x)
        self._check_alt(y)
        rx = self.rank(player, x.activity, x.size)
        ry = self.rank(player, y.activity, y.size)
        if rx < ry:
            return GREATER
        if rx > ry:
            return LESS
        return EQUAL

    def approves(self, player: int, alt: Alternative) -> bool:
        """True iff ``player`` strictly prefers ``alt`` to staying alone."""
        return self.compare(player, alt, ALT_VOID) == GREATER

    # -- copyable classes ---------------------------------------------

    def copyable_classes(self) -> tuple[tuple[tuple[int, ...], ...], bool]:
        """Partition of concrete activities into equivalence classes.

        Returns ``(classes, all_copyable)`` where ``all_copyable`` is true
        iff every class has at least ``n`` members.
        """
        return self._derived["classes"], self._derived["all_copyable"]

    def class_of(self, aid: int) -> int:
        return self._derived["class_of"][aid]

    def class_representatives(self) -> list[int]:
        return [cls[0] for cls in self._derived["classes"]]


# -- serialization ------------------------------------------------------

_TOP_KEYS = {"players", "edges", "activities", "preferences"}
_ACT_KEYS = {"name", "class", "copies"}


def _parse_tier(inst_names, entry_first, n, raw_tier, player):
    tier = []
    if not isinstance(raw_tier, list):
        raise ValidationError(f"player {player}: tier must be a list")
    for item in raw_tier:
        if item == "VOID":
            tier.append(ALT_VOID)
        elif isinstance(item, list) and len(item) == 2 and isinstance(item[0], str):
            name, size = item
            if name not in inst_names:
                raise ValidationError(f"player {player}: unknown activity {name!r}")
            if not isinstance(size, int):
                raise ValidationError(f"player {player}: size must be an integer")
            tier.append(Alternative(entry_first[name], size))
        else:
            raise ValidationError(f"player {player}: bad tier item {item!r}")
    return tier


def loads(text: str) -> Instance:
    """Parse an instance document; strict: unknown fields are rejected."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ValidationError("top-level document must be an object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ValidationError(f"unknown top-level fields: {sorted(unknown)}")
    for key in ("players", "activities", "preferences"):
        if key not in doc:
            raise ValidationError(f"missing field {key!r}")
    n = doc["players"]
    if not isinstance(n, int):
        raise ValidationError("players must be an integer")

    entries = []
    for raw in doc["activities"]:
        if not isinstance(raw, dict):
            raise ValidationError("activity entries must be objects")
        bad = set(raw) - _ACT_KEYS
        if bad:
            raise ValidationError(f"unknown activity fields: {sorted(bad)}")
        if "name" not in raw:
            raise ValidationError("activity entry without a name")
        entries.append(
            ActivityEntry(raw["name"], raw.get("class"), raw.get("copies", 1))
        )

    # `first copy` concrete id per entry name, for preference references.
    entry_first, acc = {}, 0
    for e in entries:
        entry_first[e.name] = acc
        acc += e.copies
    names = set(entry_first)

    raw_edges = doc.get("edges", [])
    edges = []
    for raw in raw_edges:
        if not (isinstance(raw, list) and len(raw) == 2 and all(isinstance(x, int) for x in raw)):
            raise ValidationError(f"bad edge {raw!r}")
        edges.append((min(raw), max(raw)))
    edges.sort()

    prefs_raw = doc["preferences"]
    if not isinstance(prefs_raw, list) or len(prefs_raw) != n:
        raise ValidationError("preferences must list exactly one order per player")
    tiers = []
    for player, raw_order in enumerate(prefs_raw):
        if not isinstance(raw_order, list):
            raise ValidationError(f"player {player}: preference order must be a list of tiers")
        order = [_parse_tier(names, entry_first, n, t, player) for t in raw_order]
        if not any(ALT_VOID in t for t in order):
            order.append([ALT_VOID])  # void defaults to the bottom listed tier
        tiers.append(tuple(_normalize_tier(t) for t in order))

    return Instance(n=n, entries=tuple(entries), edges=tuple(edges), tiers=tuple(tiers))


def _normalize_tier(tier) -> tuple[Alternative, ...]:
    return tuple(sorted(set(tier), key=lambda a: (a.activity != VOID, a.activity, a.size)))


def load(path) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())


def dumps(inst: Instance) -> str:
    """Serialize an instance; ``loads(dumps(x)) == x`` and output is canonical."""
    acts = []
    for e in inst.entries:
        raw = {"name": e.name}
        if e.label is not None:
            raw["class"] = e.label
        if e.copies != 1:
            raw["copies"] = e.copies
        acts.append(raw)
    prefs = []
    for order in inst.tiers:
        raw_order = []
        for tier in order:
            raw_tier = []
            for alt in tier:
                if alt.activity == VOID:
                    raw_tier.append("VOID")
                else:
                    raw_tier.append([inst.entries[inst.entry_index(alt.activity)].name, alt.size])
            raw_order.append(raw_tier)
        prefs.append(raw_order)
    compact = lambda obj: json.dumps(obj, separators=(", ", ": "))
    lines = [
        "{",
        f'  "players": {inst.n},',
        f'  "edges": {compact([list(e) for e in inst.edges])},',
        f'  "activities": {compact(acts)},',
        '  "preferences": [',
    ]
    for idx, raw_order in enumerate(prefs):
        comma = "," if idx + 1 < len(prefs) else ""
        lines.append(f"    {compact(raw_order)}{comma}")
    lines += ["  ]", "}"]
    return "\n".join(lines) + "\n"


def dump(inst: Instance, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(inst))


def make_instance(n, activities, edges, preferences) -> Instance:
    """Programmatic constructor used by generators and tests.

    ``activities``: sequence of names, or ``(name, label, copies)`` tuples.
    ``preferences``: per player, a list of tiers; each tier lists
    ``(name, size)`` pairs or the string ``"VOID"``.  A missing void tier
    is appended at the bottom.
    """
    entries = []
    for spec in activities:
        if isinstance(spec, str):
            entries.append(ActivityEntry(spec))
        else:
            name, label, copies = spec
            entries.append(ActivityEntry(name, label, copies))
    entry_first, acc = {}, 0
    for e in entries:
        entry_first[e.name] = acc
        acc += e.copies
    tiers = []
    for raw_order in preferences:
        order = []
        for raw_tier in raw_order:
            tier = []
            for item in raw_tier:
                if item == "VOID":
                    tier.append(ALT_VOID)
                else:
                    name, size = item
                    tier.append(Alternative(entry_first[name], size))
            order.append(tier)
        if not any(ALT_VOID in t for t in order):
            order.append([ALT_VOID])
        tiers.append(tuple(_normalize_tier(t) for t in order))
    edges = tuple(sorted((min(u, v), max(u, v)) for u, v in edges))
    return Instance(n=n, entries=tuple(entries), edges=edges, tiers=tuple(tiers))


# -- assignments ---------------------------------------------------------


def assignment_to_json(inst: Instance, pi: Sequence[int]) -> dict:
    return {"assignment": {str(i): inst.activity_name(a) for i, a in enumerate(pi)}}


def assignment_from_json(inst: Instance, doc: dict) -> Assignment:
    if set(doc) != {"assignment"}:
        raise ValidationError("assignment document must have exactly the 'assignment' field")
    mapping = doc["assignment"]
    pi = [VOID] * inst.n
    seen = set()
    for key, name in mapping.items():
        try:
            i = int(key)
        except ValueError:
            raise ValidationError(f"bad player index {key!r}") from None
        if not (0 <= i < inst.n) or i in seen:
            raise ValidationError(f"bad or duplicate player index {key!r}")
        seen.add(i)
        pi[i] = inst.activity_id(name)
    if len(seen) != inst.n:
        raise ValidationError("assignment must cover every player")
    return pi


def groups(inst: Instance, pi: Sequence[int]) -> dict[int, list[int]]:
    """Non-void groups of an assignment: activity id -> sorted members."""
    out: dict[int, list[int]] = {}
    for i, a in enumerate(pi):
        if a != VOID:
            out.setdefault(a, []).append(i)
    return out


def fingerprint(inst: Instance) -> str:
    import hashlib

    return hashlib.sha256(dumps(inst).encode()).hexdigest()[:16]
