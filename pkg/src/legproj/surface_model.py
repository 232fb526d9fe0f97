"""Homology-only model of a diagram drawn on a closed surface.

Each edge of the diagram carries a class in H1(F; Z2) = GF(2)^(2g) with the
intersection form.  Crossing parity is read off from the loop classes, and
the surface can be stabilized by a fresh handle or destabilized along a class
that misses the projection.

Model files::

    genus 2
    diagram X1+a,X1+b
    edge 1 = 1000
    edge 2 = 0010

The ``diagram`` line is optional and defaults to the one-crossing curve
``X1+a,X1+b``.  Edges are numbered from 1 in circle order (edge ``i`` leaves the ``i``-th
chord end).  Unlisted edges carry the zero class.  Bitstrings list
coordinates in the order m1, l1, m2, l2, ...
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from . import gf2
from .gauss import GaussDiagram, chord_halves, parse
from .parity import EVEN, ODD

__all__ = [
    "ModelError",
    "ZeroClass",
    "PairingObstruction",
    "SymplecticSurfaceModel",
    "parity_in_model",
    "trivial_stabilize",
    "destabilize_along",
    "parse_model",
    "format_model",
    "meridian_pair_model",
]

DEFAULT_DIAGRAM = "X1+a,X1+b"


class ModelError(ValueError):
    pass


class ZeroClass(ModelError):
    pass


class PairingObstruction(ModelError):
    pass


@dataclass(frozen=True)
class SymplecticSurfaceModel:
    space: gf2.SymplecticSpace
    edge_classes: Mapping[int, int]  # 0-based edge index -> class
    diagram: GaussDiagram

    def __post_init__(self):
        m = 2 * self.diagram.chord_count if self.diagram.chord_count else 1
        for e, x in self.edge_classes.items():
            if not 0 <= e < m:
                raise ModelError(f"edge {e + 1} is not an edge of the diagram")
            if x >> self.space.dim:
                raise ModelError(f"class of edge {e + 1} does not fit genus {self.space.genus}")

    @property
    def genus(self) -> int:
        return self.space.genus

    def edge_class(self, e: int) -> int:
        return self.edge_classes.get(e, 0)

    def knot_class(self) -> int:
        out = 0
        for x in self.edge_classes.values():
            out ^= x
        return out

    def half_class(self, v: int, which: int = 0) -> int:
        out = 0
        for e in chord_halves(self.diagram, v)[which]:
            out ^= self.edge_class(e)
        return out


def parity_in_model(m: SymplecticSurfaceModel, v: int) -> str:
    h = m.half_class(v)
    return EVEN if h in (0, m.knot_class()) else ODD


def trivial_stabilize(m: SymplecticSurfaceModel) -> SymplecticSurfaceModel:
    """Add a handle inside a disk of the complement: one new hyperbolic pair."""
    g = m.space.genus + 1
    return SymplecticSurfaceModel(gf2.SymplecticSpace.standard(g), dict(m.edge_classes), m.diagram)


def _symplectic_basis(space: gf2.SymplecticSpace, vectors: list[int]) -> list[tuple[int, int]]:
    """Symplectic Gram-Schmidt on the span of ``vectors``, in the given order."""
    pairs = []
    todo = [v for v in vectors if v]
    while todo:
        u = todo.pop(0)
        w = next((x for x in todo if space.pair(u, x)), None)
        if w is None:
            # u is in the radical of what is left; it cannot start a pair
            continue
        todo.remove(w)
        pairs.append((u, w))
        todo = [y ^ (space.pair(y, w) * u) ^ (space.pair(y, u) * w) for y in todo]
        todo = [y for y in todo if y]
    return pairs


def destabilize_along(m: SymplecticSurfaceModel, a: int) -> SymplecticSurfaceModel:
    """Cut the surface along a curve of class ``a`` that avoids the projection.

    The new H1 is ``a^perp / <a>`` with the induced form.
    """
    if a == 0:
        raise ZeroClass("cannot destabilize along the zero class")
    s = m.space
    for e, x in sorted(m.edge_classes.items()):
        if s.pair(a, x):
            raise PairingObstruction(f"edge {e + 1} meets the class {gf2.to_bits(a, s.dim)}")
    perp = gf2.orthogonal_complement(s, a)
    b = next(1 << i for i in range(s.dim) if s.pair(a, 1 << i))

    def drop_a(x: int) -> int:
        # x in a^perp; remove the a-component using the partner b
        return x ^ (s.pair(x, b) * a)

    pairs = _symplectic_basis(s, [drop_a(x) for x in perp])
    if 2 * len(pairs) != s.dim - 2:
        raise gf2.GF2Error("induced form is degenerate")

    def coords(x: int) -> int:
        y = drop_a(x)
        out = 0
        for k, (u, w) in enumerate(pairs):
            out |= s.pair(y, w) << (2 * k)
            out |= s.pair(y, u) << (2 * k + 1)
        return out

    new = {e: coords(x) for e, x in m.edge_classes.items()}
    return SymplecticSurfaceModel(gf2.SymplecticSpace.standard(len(pairs)), new, m.diagram)


def parse_model(text: str) -> SymplecticSurfaceModel:
    genus = None
    diagram = None
    classes: dict[int, str] = {}
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "genus":
            genus = int(rest)
        elif key == "diagram":
            diagram = parse(rest)
        elif key == "edge":
            idx, eq, bits = rest.partition("=")
            if not eq:
                raise ModelError(f"line {n}: expected 'edge <i> = <bits>'")
            classes[int(idx) - 1] = bits.strip()
        else:
            raise ModelError(f"line {n}: unknown directive {key!r}")
    if genus is None:
        raise ModelError("missing 'genus' header")
    if diagram is None:
        diagram = parse(DEFAULT_DIAGRAM)
    dim = 2 * genus
    edge_classes = {}
    for e, bits in classes.items():
        if len(bits) != dim:
            raise ModelError(f"edge {e + 1}: expected {dim} bits, got {len(bits)}")
        edge_classes[e] = gf2.from_bits(bits)
    return SymplecticSurfaceModel(gf2.SymplecticSpace.standard(genus), edge_classes, diagram)


def format_model(m: SymplecticSurfaceModel) -> str:
    lines = [f"genus {m.genus}", f"diagram {m.diagram}"]
    for e in sorted(m.edge_classes):
        lines.append(f"edge {e + 1} = {gf2.to_bits(m.edge_classes[e], m.space.dim)}")
    return "\n".join(lines) + "\n"


def meridian_pair_model() -> SymplecticSurfaceModel:
    """Genus 2, one crossing; its two loops carry the meridians m1 and m2."""
    return parse_model("genus 2\ndiagram X1+a,X1+b\nedge 1 = 1000\nedge 2 = 0010\n")
