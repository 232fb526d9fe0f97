"""Canonical (Carter) surface of a Gauss diagram and its Seifert-style genus.

The band neighborhood of the front is a ribbon graph: one 4-valent vertex per
chord, one edge per arc of the circle between consecutive chord ends.  Edge
``e`` runs from chord end ``e`` to chord end ``e + 1``.  Half-edges (darts)
are numbered ``2e`` (leaving the tail of ``e``) and ``2e + 1`` (leaving its
head).

Rotation convention, fixed project-wide: at a ``+`` chord the cyclic order of
the four darts is ``(a-in, b-out, a-out, b-in)``; at a ``-`` chord it is the
reverse.  Swapping the visit tags of a chord is the same as flipping its sign.

Cusps play no role here.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import gf2
from .gauss import GaussDiagram

__all__ = [
    "RibbonGraph",
    "FaceTrace",
    "CarterSurface",
    "build_ribbon",
    "trace_faces",
    "carter_surface",
    "face_crossing_matrix",
    "seifert_circles",
    "canonical_genus",
]


@dataclass(frozen=True)
class RibbonGraph:
    chords: tuple[int, ...]  # vertex i is chord chords[i]
    n_edges: int
    dart_vertex: tuple[int, ...]
    sigma: tuple[int, ...]  # next dart counterclockwise at the same vertex

    @property
    def n_vertices(self) -> int:
        # A chordless circle still needs one 0-cell.
        return len(self.chords) if self.chords else 1

    def rotation(self, v: int) -> tuple[int, ...]:
        """Darts at vertex ``v`` in cyclic order, starting from the smallest."""
        start = min(d for d, w in enumerate(self.dart_vertex) if w == v)
        out = [start]
        d = self.sigma[start]
        while d != start:
            out.append(d)
            d = self.sigma[d]
        return tuple(out)


@dataclass(frozen=True)
class FaceTrace:
    darts: tuple[int, ...]
    corners: tuple[int, ...]  # chord id of the vertex turned at after each dart

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(d // 2 for d in self.darts)

    def boundary(self) -> int:
        """Edge vector of the face boundary (edges met twice cancel)."""
        out = 0
        for e in self.edges:
            out ^= 1 << e
        return out

    def corner_word(self) -> str:
        return " ".join(str(c) for c in self.corners)


@dataclass(frozen=True)
class CarterSurface:
    graph: RibbonGraph
    faces: tuple[FaceTrace, ...]

    @property
    def V(self) -> int:
        return self.graph.n_vertices

    @property
    def E(self) -> int:
        return self.graph.n_edges

    @property
    def F(self) -> int:
        return len(self.faces)

    @property
    def euler_characteristic(self) -> int:
        return self.V - self.E + self.F

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic) // 2

    def face_boundaries(self) -> list[int]:
        return [f.boundary() for f in self.faces]

    def knot_class(self) -> int:
        return (1 << self.E) - 1

    def edge_boundary_map(self) -> list[int]:
        """Image of each edge under the cellular boundary, as a vertex vector."""
        g = self.graph
        return [(1 << g.dart_vertex[2 * e]) ^ (1 << g.dart_vertex[2 * e + 1])
                for e in range(self.E)]

    def cycle_basis(self) -> list[int]:
        return gf2.kernel(self.edge_boundary_map())

    def homology_rank(self) -> int:
        """dim H1(F; Z2), from the chain complex rather than from chi."""
        return len(self.cycle_basis()) - gf2.rank(self.face_boundaries())


def build_ribbon(d: GaussDiagram) -> RibbonGraph:
    ends = d.chord_ends()
    m = len(ends)
    if m == 0:
        # One loop edge on a single pseudo-vertex, darts 0 and 1 adjacent.
        return RibbonGraph((), 1, (0, 0), (1, 0))
    chords = tuple(d.chords())
    index = {v: i for i, v in enumerate(chords)}
    dart_vertex = [0] * (2 * m)
    sigma = [0] * (2 * m)
    for e in range(m):
        dart_vertex[2 * e] = index[ends[e].id]
        dart_vertex[2 * e + 1] = index[ends[(e + 1) % m].id]
    for v in chords:
        ia, ib = d.end_indices(v)
        a_out, b_out = 2 * ia, 2 * ib
        a_in, b_in = 2 * ((ia - 1) % m) + 1, 2 * ((ib - 1) % m) + 1
        cyc = [a_in, b_out, a_out, b_in]
        if d.sign(v) < 0:
            cyc.reverse()
        for k in range(4):
            sigma[cyc[k]] = cyc[(k + 1) % 4]
    return RibbonGraph(chords, m, tuple(dart_vertex), tuple(sigma))


def trace_faces(g: RibbonGraph) -> tuple[FaceTrace, ...]:
    """Orbits of ``dart -> sigma(opposite(dart))``, i.e. the pasted cycles."""
    n = len(g.sigma)
    seen = [False] * n
    faces = []
    for start in range(n):
        if seen[start]:
            continue
        darts, corners = [], []
        d = start
        while not seen[d]:
            seen[d] = True
            darts.append(d)
            nxt = g.sigma[d ^ 1]
            if g.chords:
                corners.append(g.chords[g.dart_vertex[nxt]])
            d = nxt
        faces.append(FaceTrace(tuple(darts), tuple(corners)))
    return tuple(faces)


def carter_surface(d: GaussDiagram) -> CarterSurface:
    g = build_ribbon(d)
    return CarterSurface(g, trace_faces(g))


def face_crossing_matrix(s: CarterSurface) -> list[int]:
    """One row per face; bit ``j`` = corners at the ``j``-th chord, mod 2."""
    col = {v: j for j, v in enumerate(s.graph.chords)}
    rows = []
    for f in s.faces:
        r = 0
        for v in f.corners:
            r ^= 1 << col[v]
        rows.append(r)
    return rows


def seifert_circles(d: GaussDiagram) -> list[list[int]]:
    """Ovals of the oriented smoothing, each as a cycle of edge indices.

    Arriving at a crossing along one strand, the smoothed curve leaves along
    the other strand.
    """
    ends = d.chord_ends()
    m = len(ends)
    partner = [0] * m
    for v in d.chords():
        ia, ib = d.end_indices(v)
        partner[ia], partner[ib] = ib, ia
    seen = [False] * m
    circles = []
    for start in range(m):
        if seen[start]:
            continue
        cyc = []
        e = start
        while not seen[e]:
            seen[e] = True
            cyc.append(e)
            e = partner[(e + 1) % m]
        circles.append(cyc)
    return circles


def canonical_genus(d: GaussDiagram) -> int:
    """Genus of the band surface from the oriented smoothing, summed over components."""
    if d.chord_count == 0:
        return 0
    circles = seifert_circles(d)
    m = 2 * d.chord_count
    oval_of = {}
    for k, cyc in enumerate(circles):
        for e in cyc:
            oval_of[e] = k
    parent = list(range(len(circles)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    # The band at a chord joins the ovals through its two smoothed corners.
    for v in d.chords():
        ia, ib = d.end_indices(v)
        r1, r2 = find(oval_of[(ia - 1) % m]), find(oval_of[(ib - 1) % m])
        parent[r1] = r2

    # Surface boundary: each edge's copy continues across the band side to
    # the next edge of the knot, so boundary circles are cycles of e -> e + 1.
    boundary_seen = [False] * m
    boundary_count: dict[int, int] = {}
    for start in range(m):
        if boundary_seen[start]:
            continue
        e = start
        while not boundary_seen[e]:
            boundary_seen[e] = True
            e = (e + 1) % m
        root = find(oval_of[start])
        boundary_count[root] = boundary_count.get(root, 0) + 1

    ovals: dict[int, int] = {}
    bands: dict[int, int] = {}
    for k in range(len(circles)):
        ovals[find(k)] = ovals.get(find(k), 0) + 1
    for v in d.chords():
        root = find(oval_of[(d.end_indices(v)[0] - 1) % m])
        bands[root] = bands.get(root, 0) + 1
    total = 0
    for root, s in ovals.items():
        chi = s - bands.get(root, 0)
        total += (2 - chi - boundary_count.get(root, 0)) // 2
    return total
