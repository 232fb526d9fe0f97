"""The parity projection ``upr`` and checks of its invariance.

``upr`` repeatedly builds the Carter surface and erases every odd chord (turns
the crossing virtual) until all remaining chords are even.  Chord ids are
kept, so the result's chords are literally a subset of the input's.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .carter import canonical_genus, carter_surface
from .gauss import GaussDiagram, canonical_form, remove_chords
from .moves import MoveInstance, applicable_moves, apply_move, involved_chords
from .parity import EVEN, ParityAssignment, homology_class, parities

__all__ = [
    "ProjectionTrace",
    "Verdict",
    "upr_step",
    "upr",
    "verify_move_invariance",
    "arc_number",
    "crossing_stats",
    "genus_stats",
    "move_parity_checks",
]


@dataclass(frozen=True)
class ProjectionTrace:
    # (diagram, its parity, chords erased from it)
    stages: tuple[tuple[GaussDiagram, ParityAssignment, frozenset[int]], ...]
    result: GaussDiagram


def upr_step(d: GaussDiagram) -> GaussDiagram:
    return remove_chords(d, parities(d).odd())


def upr(d: GaussDiagram) -> ProjectionTrace:
    stages = []
    while True:
        p = parities(d)
        odd = p.odd()
        stages.append((d, p, odd))
        if not odd:
            return ProjectionTrace(tuple(stages), d)
        d = remove_chords(d, odd)


@dataclass(frozen=True)
class Verdict:
    passed: bool
    branch: str  # "identity", "equal", "same_move" or "mismatch"
    before: GaussDiagram
    after: GaussDiagram
    detail: dict = field(default_factory=dict)


def _restrict(d: GaussDiagram, keep: frozenset[int]) -> GaussDiagram:
    return remove_chords(d, set(d.chords()) - keep)


def _same_move_downstream(d: GaussDiagram, m: MoveInstance, r: GaussDiagram,
                          after: GaussDiagram) -> MoveInstance | None:
    """The catalog move on ``r = upr(d)`` induced by ``m``, if ``m``'s chords survive.

    The induced rewrite is ``after`` restricted to the chords of ``r`` plus
    those touched by ``m``; it must also be an applicable catalog move on ``r``.
    """
    keep = frozenset(r.chords())
    touched = involved_chords(d, after, m)
    if m.kind in ("R1L_delete", "R2L_delete", "R3L") and not touched <= keep:
        return None
    if m.kind in ("R1L_delete", "R2L_delete"):
        target = _restrict(after, keep - touched)
    else:
        target = _restrict(after, keep | touched)
    want = canonical_form(target)
    for cand in applicable_moves(r, [m.kind]):
        if canonical_form(apply_move(r, cand)) == want:
            return cand
    return None


def verify_move_invariance(d: GaussDiagram, m: MoveInstance | None) -> Verdict:
    """Projections before and after ``m`` agree, or differ by the same move.

    ``m=None`` stands for the identity move.
    """
    r = upr(d).result
    if m is None:
        return Verdict(True, "identity", r, r)
    after = apply_move(d, m)
    r2 = upr(after).result
    c1, c2 = canonical_form(r), canonical_form(r2)
    if c1 == c2:
        return Verdict(True, "equal", r, r2)
    induced = _same_move_downstream(d, m, r, after)
    if induced is not None and canonical_form(apply_move(r, induced)) == c2:
        return Verdict(True, "same_move", r, r2, {"induced": induced.describe()})
    return Verdict(False, "mismatch", r, r2, {"move": m.describe()})


def arc_number(d: GaussDiagram) -> int:
    """Fewest arcs cutting the circle so that no arc holds both ends of a chord.

    Greedy maximal extension from each of the possible first cuts; the
    minimum over starts is optimal on a circle.
    """
    ends = [e.id for e in d.chord_ends()]
    m = len(ends)
    if m == 0:
        return 1
    best = m
    for start in range(m):
        arcs, pos, covered = 0, 0, 0
        while covered < m:
            arcs += 1
            inside: set[int] = set()
            while covered < m:
                v = ends[(start + pos) % m]
                if v in inside:
                    break
                inside.add(v)
                pos += 1
                covered += 1
        best = min(best, arcs)
    return best


def crossing_stats(d: GaussDiagram) -> dict:
    return {"c": d.chord_count, "arc_number": arc_number(d)}


def genus_stats(d: GaussDiagram) -> dict:
    """Carter and canonical genus before and after projection (recorded, not asserted)."""
    r = upr(d).result
    return {
        "carter_genus": carter_surface(d).genus,
        "canonical_genus": canonical_genus(d),
        "projected_canonical_genus": canonical_genus(r),
    }


def move_parity_checks(d: GaussDiagram, m: MoveInstance) -> dict[str, bool]:
    """Parity behaviour of ``m`` on its own crossings and on the bystanders.

    ``r3_equal`` (all three crossings of an R3L triple share a parity) is
    reported but does not hold in general.  What does hold is ``r3_sum_zero``:
    the three loop classes sum to zero in H1/[K] (so exactly one odd crossing
    is impossible) and each of the three keeps its parity.
    """
    after = apply_move(d, m)
    p, q = parities(d).values, parities(after).values
    touched = involved_chords(d, after, m)
    out = {"uninvolved": all(p[v] == q[v] for v in p if v not in touched and v in q)}
    if m.kind == "R1L_insert":
        (x,) = touched
        out["r1_even"] = q[x] == EVEN
    elif m.kind == "R1L_delete":
        (x,) = touched
        out["r1_even"] = p[x] == EVEN
    elif m.kind in ("R2L_insert", "R2L_delete"):
        y, z = sorted(touched)
        src = q if m.kind == "R2L_insert" else p
        out["r2_equal"] = src[y] == src[z]
    elif m.kind == "R3L":
        tri = sorted(touched)
        out["r3_equal"] = len({p[v] for v in tri}) == 1
        total = 0
        for v in tri:
            total ^= homology_class(d, v)
        out["r3_sum_zero"] = total == 0 and all(p[v] == q[v] for v in tri)
    return out
