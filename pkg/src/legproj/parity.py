"""Even/odd crossings from the pasted-cycle group and from surface homology.

Two routes, meant to agree:

* ``parity_gd``: a crossing is even iff its generator vanishes in the group
  spanned by the crossings modulo one relation per pasted cycle (the
  face-corner rows of :func:`carter.face_crossing_matrix`).
* ``parity_homological``: a crossing is even iff the loop from its ``a`` to
  its ``b`` passage is 0 or the whole knot in H1 of the Carter surface.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from . import gf2
from .carter import CarterSurface, carter_surface, face_crossing_matrix
from .gauss import GaussDiagram, chord_halves

__all__ = [
    "EVEN",
    "ODD",
    "InternalInconsistency",
    "ParityAssignment",
    "half_vector",
    "parity_gd",
    "parity_homological",
    "homology_class",
    "cross_check",
    "parities",
]

EVEN = "even"
ODD = "odd"


class InternalInconsistency(RuntimeError):
    """Two computations that must agree did not; this is a bug, not bad input."""


@dataclass(frozen=True)
class ParityAssignment:
    values: Mapping[int, str]
    method: str  # "GD" or "homological"
    # even chord -> indices of the relation rows whose sum certifies it
    witness: Mapping[int, tuple[int, ...]] = field(default_factory=dict)

    def odd(self) -> frozenset[int]:
        return frozenset(v for v, p in self.values.items() if p == ODD)

    def even(self) -> frozenset[int]:
        return frozenset(v for v, p in self.values.items() if p == EVEN)

    def all_even(self) -> bool:
        return not self.odd()


def half_vector(d: GaussDiagram, v: int, which: int = 0) -> int:
    out = 0
    for e in chord_halves(d, v)[which]:
        out |= 1 << e
    return out


def parity_gd(d: GaussDiagram, surface: CarterSurface | None = None) -> ParityAssignment:
    s = surface or carter_surface(d)
    rows = face_crossing_matrix(s)
    values, witness = {}, {}
    for j, v in enumerate(s.graph.chords):
        w = gf2.span_witness(1 << j, rows)
        values[v] = ODD if w is None else EVEN
        if w is not None:
            witness[v] = w
    return ParityAssignment(values, "GD", witness)


def parity_homological(d: GaussDiagram, surface: CarterSurface | None = None) -> ParityAssignment:
    """Witness indices refer to the face list, with index ``F`` standing for [K]."""
    s = surface or carter_surface(d)
    rows = s.face_boundaries() + [s.knot_class()]
    values, witness = {}, {}
    for v in s.graph.chords:
        w = gf2.span_witness(half_vector(d, v), rows)
        values[v] = ODD if w is None else EVEN
        if w is not None:
            witness[v] = w
    return ParityAssignment(values, "homological", witness)


def homology_class(d: GaussDiagram, v: int, surface: CarterSurface | None = None) -> int:
    """Canonical representative of the loop class of ``v`` in H1(F; Z2)/[K].

    This is the full homological parity; zero exactly when ``v`` is even.
    """
    s = surface or carter_surface(d)
    q = gf2.quotient_classes(s.cycle_basis(), s.face_boundaries() + [s.knot_class()])
    return q.reduce(half_vector(d, v))


def cross_check(d: GaussDiagram, strict: bool = False) -> bool:
    s = carter_surface(d)
    a, b = parity_gd(d, s), parity_homological(d, s)
    ok = dict(a.values) == dict(b.values)
    if not ok and strict:
        raise InternalInconsistency(f"parity methods disagree on {d}: "
                                    f"GD odd={sorted(a.odd())}, "
                                    f"homological odd={sorted(b.odd())}")
    return ok


def parities(d: GaussDiagram, check: bool = True) -> ParityAssignment:
    """Homological parity, asserting agreement with the group route."""
    s = carter_surface(d)
    h = parity_homological(d, s)
    if check:
        g = parity_gd(d, s)
        if dict(g.values) != dict(h.values):
            raise InternalInconsistency(f"parity methods disagree on {d}")
    return h
