"""Voronoi cell of a planar lattice as an explicit convex polygon.

The cell around the origin is cut out by the perpendicular bisectors of
finitely many short lattice vectors: the canonical minima pair, its
negatives, and (unless the pair is orthogonal) the pair's difference.
The result is an origin-symmetric hexagon, or a rectangle when the minima
pair is orthogonal, with area det and in-radius lambda1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import Lattice, MinimaPair, PlaneVector, successive_minima

# |cos theta| below this collapses the two sliver edges of the hexagon.
RIGHT_ANGLE_TOL = 1e-9

CONTAINS_TOL = 1e-9


@dataclass(frozen=True, slots=True)
class VoronoiCell:
    """Counterclockwise vertex list plus the vectors whose bisectors cut it."""

    vertices: tuple[PlaneVector, ...]
    relevant: tuple[PlaneVector, ...]


def relevant_vectors(m: MinimaPair) -> list[PlaneVector]:
    """Lattice vectors whose bisectors support the cell edges, sorted by angle.

    For an orthogonal minima pair only +-v1, +-v2 contribute; otherwise the
    difference pair +-(v1 - v2) cuts two more edges.
    """
    vs = [m.v1, m.v2, -m.v1, -m.v2]
    if m.v1.dot(m.v2) > RIGHT_ANGLE_TOL * m.lambda1 * m.lambda2:
        w = m.v1 - m.v2
        vs.append(w)
        vs.append(-w)
    vs.sort(key=lambda v: math.atan2(v.y, v.x))
    return vs


def _bisector_intersection(w1: PlaneVector, w2: PlaneVector) -> PlaneVector:
    # Solve w1.y = |w1|^2/2, w2.y = |w2|^2/2 for y.
    c1 = 0.5 * w1.norm_sq()
    c2 = 0.5 * w2.norm_sq()
    d = w1.cross(w2)
    return PlaneVector((c1 * w2.y - c2 * w1.y) / d, (w1.x * c2 - w2.x * c1) / d)


def voronoi_cell(L: Lattice) -> VoronoiCell:
    """Voronoi cell of the origin: the points at least as close to 0 as to
    any other lattice point.

    Vertices are intersections of bisectors of angularly adjacent relevant
    vectors, listed counterclockwise starting from the vertex with the
    largest polar angle below pi (ties to the smaller radius).
    """
    rel = relevant_vectors(successive_minima(L))
    k = len(rel)
    verts = [_bisector_intersection(rel[i], rel[(i + 1) % k]) for i in range(k)]

    start = 0
    best_key = (-math.inf, 0.0)
    for i, v in enumerate(verts):
        ang = math.atan2(v.y, v.x)
        if ang < math.pi:
            key = (ang, -v.norm_sq())
            if key > best_key:
                best_key = key
                start = i
    verts = verts[start:] + verts[:start]
    return VoronoiCell(vertices=tuple(verts), relevant=tuple(rel))


def cell_area(c: VoronoiCell) -> float:
    """Shoelace area of the vertex polygon; equals the lattice determinant."""
    n = len(c.vertices)
    s = 0.0
    for i in range(n):
        s += c.vertices[i].cross(c.vertices[(i + 1) % n])
    return 0.5 * abs(s)


def cell_in_radius(c: VoronoiCell) -> float:
    """Distance from the origin to the nearest edge line; equals lambda1/2."""
    n = len(c.vertices)
    best = math.inf
    for i in range(n):
        p = c.vertices[i]
        q = c.vertices[(i + 1) % n]
        u = q - p
        best = min(best, abs(p.cross(u)) / u.norm())
    return best


def cell_contains(c: VoronoiCell, p: PlaneVector, tol: float = CONTAINS_TOL) -> bool:
    """True when p lies inside the cell or on its boundary (within tol)."""
    return containment_margin(c, p) <= tol


def containment_margin(c: VoronoiCell, p: PlaneVector) -> float:
    """Worst normalized half-plane excess of p over the cell's edges.

    Negative inside, ~zero on the boundary, positive outside; each edge
    margin is scaled by the squared norm of its supporting vector, so the
    value is invariant under dilation of cell and point together.
    """
    worst = -math.inf
    for w in c.relevant:
        worst = max(worst, (p.dot(w) - 0.5 * w.norm_sq()) / w.norm_sq())
    return worst
