"""Legendrian Reidemeister rewrites on Gauss diagrams.

The catalog (``a``/``b`` are visit tags, ``K`` a cusp mark)::

    R1L   [x_a, K, K', x_b]                  one kink, two new cusps
    R2L   [y_a, z_a] ... [z_b, y_b]          sign(y) = -sign(z)
          [y_a, K, z_a] ... [z_b, y_b]       fold variant around an existing cusp
    R3L   three sites [x y], [x z], [y z] of adjacent ends; each site is swapped

Insertions are admitted only where the rewrite happens inside the current
Carter surface, i.e. where the move does not force a handle to be added.
That is the setting in which parity is preserved; see ``_is_local``.
Deletions are exact inverses of insertions.  Purely virtual moves are
invisible on Gauss diagrams and have no representation here.

Moves keep chord ids stable: inserted chords get fresh ids and no
relabeling happens, so parities can be compared chord by chord across a move.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .carter import carter_surface
from .gauss import ChordEnd, Cusp, Event, GaussDiagram, GaussError

__all__ = [
    "KINDS",
    "INSERT_KINDS",
    "MoveError",
    "StaleInstance",
    "PatternMismatch",
    "MoveInstance",
    "R1_VARIANTS",
    "R2_VARIANTS",
    "applicable_moves",
    "apply_move",
    "inverse_sites",
    "involved_chords",
    "fuzz_sequence",
]

KINDS = ("R1L_insert", "R1L_delete", "R2L_insert", "R2L_delete", "R3L")
INSERT_KINDS = ("R1L_insert", "R2L_insert")


class MoveError(GaussError):
    pass


class StaleInstance(MoveError):
    pass


class PatternMismatch(MoveError):
    pass


# R1L variants: (sign of the new chord, first cusp kind, second cusp kind).
R1_VARIANTS = ((1, 1, -1), (1, -1, 1), (-1, 1, -1), (-1, -1, 1))

# R2L variants: (sign of y, block order or fold placement).
#   "AB": [y_a, z_a] at gap i, [z_b, y_b] at gap j  (A first when i == j)
#   "BA": same gaps, B first when i == j
#   "foldA": A wraps the cusp at event i, B at gap j
#   "foldB": B wraps the cusp at event i, A at gap j
R2_VARIANTS = tuple((s, mode) for s in (1, -1) for mode in ("AB", "BA", "foldA", "foldB"))


@dataclass(frozen=True)
class MoveInstance:
    """A rewrite at a fixed site of the diagram it was enumerated on.

    ``site`` holds event positions (gaps for insertions, chord ids for
    deletions and R3L); ``variant`` indexes the kind's pattern table.
    """

    kind: str
    site: tuple
    variant: int
    source: GaussDiagram

    def describe(self) -> str:
        return f"{self.kind} site={list(self.site)} variant={self.variant}"


def _fresh_ids(d: GaussDiagram, k: int) -> list[int]:
    top = max(d.chords(), default=0)
    return [top + 1 + i for i in range(k)]


def _gaps(d: GaussDiagram) -> range:
    return range(max(len(d.events), 1))


def _insert_at(events: list[Event], inserts: dict[int, list[Event]]) -> tuple[Event, ...]:
    """Place ``inserts[g]`` immediately before original event ``g``."""
    out: list[Event] = []
    n = len(events)
    for g in range(n):
        out.extend(inserts.get(g, ()))
        out.append(events[g])
    out.extend(inserts.get(n, ()))
    return tuple(out)


# ---- raw rewrites (no legality checks) -------------------------------------

def _r1_insert(d: GaussDiagram, gap: int, variant: int) -> GaussDiagram:
    sign, k1, k2 = R1_VARIANTS[variant]
    (x,) = _fresh_ids(d, 1)
    block = [ChordEnd(x, sign, "a"), Cusp(k1), Cusp(k2), ChordEnd(x, sign, "b")]
    return GaussDiagram(_insert_at(list(d.events), {gap: block}))


def _r2_insert(d: GaussDiagram, i: int, j: int, variant: int) -> GaussDiagram:
    sy, mode = R2_VARIANTS[variant]
    y, z = _fresh_ids(d, 2)
    ya, za = ChordEnd(y, sy, "a"), ChordEnd(z, -sy, "a")
    zb, yb = ChordEnd(z, -sy, "b"), ChordEnd(y, sy, "b")
    ev = list(d.events)
    if mode in ("AB", "BA"):
        if i == j:
            blocks = [ya, za, zb, yb] if mode == "AB" else [zb, yb, ya, za]
            return GaussDiagram(_insert_at(ev, {i: blocks}))
        return GaussDiagram(_insert_at(ev, {i: [ya, za], j: [zb, yb]}))
    first, second = (ya, za) if mode == "foldA" else (zb, yb)
    other = [zb, yb] if mode == "foldA" else [ya, za]
    # Wrap the cusp at event i; the other block goes before original event j
    # (before the wrapped block if j == i, after it if j == i + 1).
    out: list[Event] = []
    n = len(ev)
    for g in range(n):
        if g == j:
            out.extend(other)
        if g == i:
            out.extend([first, ev[g], second])
        else:
            out.append(ev[g])
    return GaussDiagram(tuple(out))


def _swap_sites(d: GaussDiagram, sites: Iterable[tuple[int, int]]) -> GaussDiagram:
    ev = list(d.events)
    for p, q in sites:
        ev[p], ev[q] = ev[q], ev[p]
    return GaussDiagram(tuple(ev))


def _drop(d: GaussDiagram, chords: Iterable[int]) -> GaussDiagram:
    gone = set(chords)
    return GaussDiagram(tuple(e for e in d.events
                              if not (isinstance(e, ChordEnd) and e.id in gone)))


def _drop_kink(d: GaussDiagram, x: int) -> GaussDiagram:
    """Remove the block ``[x_a, K, K', x_b]`` (chord and both cusps)."""
    n = len(d.events)
    p = d.events.index(next(e for e in d.events if _is_end(e, x, "a")))
    gone = {(p + k) % n for k in range(4)}
    return GaussDiagram(tuple(e for q, e in enumerate(d.events) if q not in gone))


# ---- pattern recognition ----------------------------------------------------

def _next(n: int, p: int) -> int:
    return (p + 1) % n


def _is_end(e: Event, v: int, visit: str) -> bool:
    return isinstance(e, ChordEnd) and e.id == v and e.visit == visit


def _r1_delete_sites(d: GaussDiagram) -> Iterator[tuple[int, int]]:
    """(chord, variant) pairs for kinks [x_a, K, K', x_b] with K != K'."""
    ev, n = d.events, len(d.events)
    if n < 4:
        return
    for p, e in enumerate(ev):
        if not (isinstance(e, ChordEnd) and e.visit == "a"):
            continue
        c1, c2, eb = ev[_next(n, p)], ev[(p + 2) % n], ev[(p + 3) % n]
        if (isinstance(c1, Cusp) and isinstance(c2, Cusp) and c1.kind != c2.kind
                and _is_end(eb, e.id, "b")):
            yield e.id, R1_VARIANTS.index((e.sign, c1.kind, c2.kind))


def _pair_block(d: GaussDiagram, first: ChordEnd, second_id: int, second_visit: str
                ) -> str | None:
    """How ``first`` is followed by the given end: "tight", "fold" (one cusp between) or None."""
    ev, n = d.events, len(d.events)
    p = ev.index(first)
    if _is_end(ev[_next(n, p)], second_id, second_visit):
        return "tight"
    if n > 2 and isinstance(ev[_next(n, p)], Cusp) and _is_end(ev[(p + 2) % n], second_id, second_visit):
        return "fold"
    return None


def _r2_delete_sites(d: GaussDiagram) -> Iterator[tuple[int, int]]:
    ends = {(e.id, e.visit): e for e in d.events if isinstance(e, ChordEnd)}
    for y in d.chords():
        for z in d.chords():
            if y == z or d.sign(y) != -d.sign(z):
                continue
            a = _pair_block(d, ends[(y, "a")], z, "a")
            b = _pair_block(d, ends[(z, "b")], y, "b")
            if a is None or b is None or (a == "fold" and b == "fold"):
                continue
            yield y, z


def _adjacent_pairs(d: GaussDiagram) -> list[tuple[int, int]]:
    ev, n = d.events, len(d.events)
    out = []
    if n < 2:
        return out
    for p in range(n):
        q = _next(n, p)
        if q == p:
            continue
        a, b = ev[p], ev[q]
        if isinstance(a, ChordEnd) and isinstance(b, ChordEnd) and a.id != b.id:
            out.append((p, q))
    return out


def _triangles(d: GaussDiagram) -> list[tuple[tuple[int, int, int], tuple[tuple[int, int], ...]]]:
    """Chord triples with three disjoint adjacency sites covering all six ends."""
    ev = d.events
    pairs = _adjacent_pairs(d)
    by_chords: dict[frozenset[int], list[tuple[int, int]]] = {}
    for p, q in pairs:
        by_chords.setdefault(frozenset((ev[p].id, ev[q].id)), []).append((p, q))
    out = []
    for x, y, z in combinations(d.chords(), 3):
        for sxy in by_chords.get(frozenset((x, y)), ()):
            for sxz in by_chords.get(frozenset((x, z)), ()):
                for syz in by_chords.get(frozenset((y, z)), ()):
                    used = {*sxy, *sxz, *syz}
                    if len(used) == 6:
                        out.append(((x, y, z), (sxy, sxz, syz)))
    return out


# ---- legality ---------------------------------------------------------------

def _is_local(before: GaussDiagram, after: GaussDiagram) -> bool:
    """The rewrite fits in the current surface: the Carter genus is unchanged."""
    return carter_surface(before).genus == carter_surface(after).genus


def _edge_at_gap(d: GaussDiagram, gap: int) -> int:
    """Edge of the circle containing the gap before event ``gap``."""
    k = sum(1 for e in d.events[:gap] if isinstance(e, ChordEnd))
    return (k - 1) % (2 * d.chord_count)


def _r2_local(d: GaussDiagram, dart_face: dict[int, int], i: int, j: int, variant: int) -> bool:
    """Both strands border the face that will hold the new bigon.

    With ``sign(y) = +`` the bigon sits on the side traced by forward darts,
    otherwise on the side of backward darts.  Equivalent to
    ``_is_local(d, _r2_insert(d, i, j, variant))``, without rebuilding anything.
    """
    if d.chord_count == 0:
        return _is_local(d, _r2_insert(d, i, j, variant))
    sy, mode = R2_VARIANTS[variant]
    side = 0 if sy > 0 else 1
    ea, eb = (_edge_at_gap(d, j), _edge_at_gap(d, i)) if mode == "foldB" else \
        (_edge_at_gap(d, i), _edge_at_gap(d, j))
    return dart_face[2 * ea + side] == dart_face[2 * eb + side]


def _site_edge(d: GaussDiagram, site: tuple[int, int]) -> int:
    """Edge index joining the two adjacent chord ends of an R3 site."""
    p, q = site
    first = p if (p + 1) % len(d.events) == q else q
    return sum(1 for e in d.events[:first] if isinstance(e, ChordEnd))


def _r3_is_local(d: GaussDiagram, sites: tuple[tuple[int, int], ...]) -> bool:
    """The three site edges bound a triangular face of the Carter surface."""
    want = sorted(_site_edge(d, s) for s in sites)
    return any(len(f.darts) == 3 and sorted(f.edges) == want
               for f in carter_surface(d).faces)


# ---- public API -------------------------------------------------------------

def applicable_moves(d: GaussDiagram, kinds: Iterable[str] = KINDS) -> list[MoveInstance]:
    """Every catalog rewrite applicable to ``d``, in a deterministic order."""
    kinds = set(kinds)
    unknown = kinds - set(KINDS)
    if unknown:
        raise ValueError(f"unknown move kind(s): {sorted(unknown)}")
    out: list[MoveInstance] = []
    if "R1L_insert" in kinds:
        for g in _gaps(d):
            for var in range(len(R1_VARIANTS)):
                out.append(MoveInstance("R1L_insert", (g,), var, d))
    if "R1L_delete" in kinds:
        for x, var in _r1_delete_sites(d):
            out.append(MoveInstance("R1L_delete", (x,), var, d))
    if "R2L_insert" in kinds:
        n = len(d.events)
        dart_face = {x: k for k, f in enumerate(carter_surface(d).faces) for x in f.darts}
        for var, (_, mode) in enumerate(R2_VARIANTS):
            if mode in ("AB", "BA"):
                sites = [(i, j) for i in _gaps(d) for j in _gaps(d)]
                if mode == "BA":
                    sites = [(i, j) for i, j in sites if i == j]
            else:
                sites = [(i, j) for i in range(n) if isinstance(d.events[i], Cusp)
                         for j in range(n)]
            for i, j in sites:
                if _r2_local(d, dart_face, i, j, var):
                    out.append(MoveInstance("R2L_insert", (i, j), var, d))
    if "R2L_delete" in kinds:
        for y, z in _r2_delete_sites(d):
            if _is_local(d, _drop(d, (y, z))):
                out.append(MoveInstance("R2L_delete", (y, z), 0, d))
    if "R3L" in kinds:
        for var, (triple, sites) in enumerate(_triangles(d)):
            if _r3_is_local(d, sites) and _r3_is_local(_swap_sites(d, sites), sites):
                out.append(MoveInstance("R3L", triple, var, d))
    return out


def apply_move(d: GaussDiagram, m: MoveInstance) -> GaussDiagram:
    if m.source != d:
        raise StaleInstance(f"{m.describe()} was enumerated on a different diagram")
    if m.kind == "R1L_insert":
        return _r1_insert(d, m.site[0], m.variant)
    if m.kind == "R2L_insert":
        return _r2_insert(d, m.site[0], m.site[1], m.variant)
    if m.kind == "R1L_delete":
        if (m.site[0], m.variant) not in set(_r1_delete_sites(d)):
            raise PatternMismatch(m.describe())
        return _drop_kink(d, m.site[0])
    if m.kind == "R2L_delete":
        if tuple(m.site) not in set(_r2_delete_sites(d)):
            raise PatternMismatch(m.describe())
        return _drop(d, m.site)
    if m.kind == "R3L":
        tri = _triangles(d)
        if m.variant >= len(tri) or tri[m.variant][0] != tuple(m.site):
            raise PatternMismatch(m.describe())
        return _swap_sites(d, tri[m.variant][1])
    raise PatternMismatch(f"unknown kind {m.kind!r}")


def involved_chords(before: GaussDiagram, after: GaussDiagram, m: MoveInstance) -> frozenset[int]:
    """Chords created, destroyed or reordered by ``m``."""
    if m.kind in ("R3L", "R1L_delete", "R2L_delete"):
        return frozenset(m.site)
    return frozenset(after.chords()) - frozenset(before.chords())


def inverse_sites(before: GaussDiagram, after: GaussDiagram, m: MoveInstance) -> MoveInstance:
    """The instance on ``after`` undoing ``m``."""
    if m.kind == "R3L":
        for var, (triple, _) in enumerate(_triangles(after)):
            if triple == tuple(m.site):
                return MoveInstance("R3L", triple, var, after)
    elif m.kind == "R1L_insert":
        (x,) = involved_chords(before, after, m)
        return MoveInstance("R1L_delete", (x,), m.variant, after)
    elif m.kind == "R2L_insert":
        y, z = sorted(involved_chords(before, after, m))
        return MoveInstance("R2L_delete", (y, z), 0, after)
    raise PatternMismatch(f"no inverse recorded for {m.describe()}")


def fuzz_sequence(d: GaussDiagram, n: int, seed: int | None = None,
                  kinds: Iterable[str] = KINDS) -> list[tuple[MoveInstance, GaussDiagram]]:
    """``n`` random applicable moves applied in turn; the full trajectory."""
    rng = random.Random(seed)
    kinds = tuple(k for k in KINDS if k in set(kinds))
    out = []
    for _ in range(n):
        moves: list[MoveInstance] = []
        # Pick a kind first so cheap insertions do not drown the rarer moves.
        order = list(kinds)
        rng.shuffle(order)
        for kind in order:
            moves = applicable_moves(d, [kind])
            if moves:
                break
        if not moves:
            moves = applicable_moves(d, ["R1L_insert"])
        m = rng.choice(moves)
        d = apply_move(d, m)
        out.append((m, d))
    return out
