"""Generalized Gauss diagrams of virtual Legendrian fronts.

A diagram is a cyclic sequence of events read along the knot: chord ends
(one per passage through a classical crossing) and cusp marks.  Virtual
crossings leave no trace at this level.

Text format, one diagram per line::

    X1+a,X2+a,X1+b,X2+b     # virtual trefoil
    K+,K-                   # chordless front with two cusps

Chord end tokens are ``X<id><sign><visit>``; cusps are ``K+``/``K-``;
``V<n>`` tokens (virtual crossings of a planar picture) are accepted and
dropped.
"""

from __future__ import annotations

import logging
import random
import re
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

log = logging.getLogger(__name__)

__all__ = [
    "ChordEnd",
    "Cusp",
    "Event",
    "GaussDiagram",
    "GaussError",
    "BadToken",
    "UnpairedChord",
    "SignMismatch",
    "UnknownChord",
    "parse",
    "parse_counting",
    "serialize",
    "validate",
    "canonical_form",
    "rotate",
    "relabel",
    "chord_halves",
    "erase_chord",
    "remove_chords",
    "random_diagram",
]


class GaussError(ValueError):
    """Base class for malformed diagram input."""


class BadToken(GaussError):
    pass


class UnpairedChord(GaussError):
    pass


class SignMismatch(GaussError):
    pass


class UnknownChord(GaussError):
    pass


@dataclass(frozen=True)
class ChordEnd:
    id: int
    sign: int  # +1 or -1
    visit: str  # "a" or "b"

    def token(self) -> str:
        return f"X{self.id}{'+' if self.sign > 0 else '-'}{self.visit}"


@dataclass(frozen=True)
class Cusp:
    kind: int  # +1 or -1

    def token(self) -> str:
        return "K+" if self.kind > 0 else "K-"


Event = Union[ChordEnd, Cusp]


def _event_key(e: Event) -> tuple:
    # Lexicographic order on tokens, with chord ids compared numerically.
    if isinstance(e, Cusp):
        return ("K", "+" if e.kind > 0 else "-")
    return ("X", e.id, "+" if e.sign > 0 else "-", e.visit)


@dataclass(frozen=True)
class GaussDiagram:
    """Immutable cyclic event sequence.  Construct through :func:`validate`
    or :func:`parse` to get the structural checks."""

    events: tuple[Event, ...] = ()

    @property
    def chord_count(self) -> int:
        return sum(1 for e in self.events if isinstance(e, ChordEnd)) // 2

    @property
    def cusp_count(self) -> int:
        return sum(1 for e in self.events if isinstance(e, Cusp))

    def chords(self) -> list[int]:
        return sorted({e.id for e in self.events if isinstance(e, ChordEnd)})

    def chord_ends(self) -> list[ChordEnd]:
        """Chord ends in circle order; index ``i`` here is the tail of edge ``i``."""
        return [e for e in self.events if isinstance(e, ChordEnd)]

    def end_indices(self, v: int) -> tuple[int, int]:
        """Indices among the chord ends of the ``a`` and ``b`` passages of ``v``."""
        ia = ib = None
        for i, e in enumerate(self.chord_ends()):
            if e.id == v:
                if e.visit == "a":
                    ia = i
                else:
                    ib = i
        if ia is None or ib is None:
            raise UnknownChord(v)
        return ia, ib

    def event_positions(self, v: int) -> tuple[int, int]:
        """Positions in ``events`` of the ``a`` and ``b`` passages of ``v``."""
        pa = pb = None
        for i, e in enumerate(self.events):
            if isinstance(e, ChordEnd) and e.id == v:
                if e.visit == "a":
                    pa = i
                else:
                    pb = i
        if pa is None or pb is None:
            raise UnknownChord(v)
        return pa, pb

    def sign(self, v: int) -> int:
        for e in self.events:
            if isinstance(e, ChordEnd) and e.id == v:
                return e.sign
        raise UnknownChord(v)

    def __str__(self) -> str:
        return serialize(self)


def validate(events: Iterable[Event]) -> GaussDiagram:
    events = tuple(events)
    seen: dict[int, list[ChordEnd]] = {}
    for e in events:
        if isinstance(e, ChordEnd):
            if e.id < 1 or e.sign not in (1, -1) or e.visit not in ("a", "b"):
                raise BadToken(repr(e))
            seen.setdefault(e.id, []).append(e)
        elif isinstance(e, Cusp):
            if e.kind not in (1, -1):
                raise BadToken(repr(e))
        else:
            raise BadToken(repr(e))
    for cid, ends in seen.items():
        if len(ends) != 2 or {x.visit for x in ends} != {"a", "b"}:
            raise UnpairedChord(f"chord {cid} has {len(ends)} end(s)"
                                if len(ends) != 2 else
                                f"chord {cid} needs one 'a' and one 'b' end")
        if ends[0].sign != ends[1].sign:
            raise SignMismatch(f"chord {cid} ends carry different signs")
    return GaussDiagram(events)


_CHORD_RE = re.compile(r"X([1-9][0-9]*)([+-])([ab])")
_VIRTUAL_RE = re.compile(r"V[0-9]+")


def parse_counting(text: str) -> tuple[GaussDiagram, int]:
    """Parse one line; return the diagram and the number of dropped ``V`` tokens."""
    line = text.split("#", 1)[0].strip()
    if not line:
        return GaussDiagram(), 0
    events: list[Event] = []
    dropped = 0
    for tok in line.split(","):
        tok = tok.strip()
        m = _CHORD_RE.fullmatch(tok)
        if m:
            events.append(ChordEnd(int(m[1]), 1 if m[2] == "+" else -1, m[3]))
        elif tok == "K+":
            events.append(Cusp(1))
        elif tok == "K-":
            events.append(Cusp(-1))
        elif _VIRTUAL_RE.fullmatch(tok):
            dropped += 1
        else:
            raise BadToken(f"bad token {tok!r}")
    return validate(events), dropped


def parse(text: str) -> GaussDiagram:
    d, dropped = parse_counting(text)
    if dropped:
        log.warning("dropped %d virtual crossing token(s)", dropped)
    return d


def serialize(d: GaussDiagram) -> str:
    return ",".join(e.token() for e in d.events)


def rotate(d: GaussDiagram, k: int) -> GaussDiagram:
    n = len(d.events)
    if n == 0:
        return d
    k %= n
    return GaussDiagram(d.events[k:] + d.events[:k])


def relabel(events: Sequence[Event]) -> tuple[Event, ...]:
    """Renumber chords 1..c in order of first occurrence."""
    mapping: dict[int, int] = {}
    out: list[Event] = []
    for e in events:
        if isinstance(e, ChordEnd):
            new = mapping.setdefault(e.id, len(mapping) + 1)
            out.append(ChordEnd(new, e.sign, e.visit))
        else:
            out.append(e)
    return tuple(out)


def canonical_form(d: GaussDiagram) -> GaussDiagram:
    """Minimum over base-point rotations of the first-occurrence relabeling.

    Reflections are not quotiented out.
    """
    n = len(d.events)
    if n == 0:
        return d
    best = None
    best_key = None
    for k in range(n):
        cand = relabel(d.events[k:] + d.events[:k])
        key = [_event_key(e) for e in cand]
        if best_key is None or key < best_key:
            best, best_key = cand, key
    return GaussDiagram(best)


def chord_halves(d: GaussDiagram, v: int) -> tuple[frozenset[int], frozenset[int]]:
    """Edge sets of the two loops obtained by cutting the circle at ``v``.

    Edge ``i`` runs from chord end ``i`` to chord end ``i + 1`` (cyclically);
    the first half starts at the ``a`` passage.
    """
    ia, ib = d.end_indices(v)
    m = 2 * d.chord_count
    first = set()
    i = ia
    while i != ib:
        first.add(i)
        i = (i + 1) % m
    return frozenset(first), frozenset(range(m)) - frozenset(first)


def remove_chords(d: GaussDiagram, chords: Iterable[int]) -> GaussDiagram:
    """Drop the given chords, keeping every other event and every id."""
    gone = set(chords)
    missing = gone - set(d.chords())
    if missing:
        raise UnknownChord(min(missing))
    return GaussDiagram(tuple(e for e in d.events
                              if not (isinstance(e, ChordEnd) and e.id in gone)))


def erase_chord(d: GaussDiagram, v: int) -> GaussDiagram:
    return canonical_form(remove_chords(d, [v]))


def random_diagram(c: int, cusps: int = 0, seed: int | None = None) -> GaussDiagram:
    """Uniform random chord pairing with random signs, visits and cusp marks."""
    if c < 0 or cusps < 0:
        raise ValueError("counts must be nonnegative")
    rng = random.Random(seed)
    slots = [i for i in range(1, c + 1) for _ in (0, 1)]
    rng.shuffle(slots)
    signs = {i: rng.choice((1, -1)) for i in range(1, c + 1)}
    first_visit = {i: rng.choice("ab") for i in range(1, c + 1)}
    events: list[Event] = []
    seen: set[int] = set()
    for i in slots:
        if i in seen:
            visit = "b" if first_visit[i] == "a" else "a"
        else:
            visit = first_visit[i]
            seen.add(i)
        events.append(ChordEnd(i, signs[i], visit))
    for _ in range(cusps):
        events.insert(rng.randrange(len(events) + 1), Cusp(rng.choice((1, -1))))
    return validate(relabel(events))
