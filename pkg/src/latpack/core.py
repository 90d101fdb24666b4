"""Planar lattice geometry: bases, minimal-vector reduction, packing density.

A lattice is generated by two independent column vectors. The reduction
returns a canonical pair of vectors realizing the two successive minima;
everything else (density, well-roundedness, similarity coordinates) is
derived from that pair.

All operations are pure functions on immutable values. Length/angle
comparisons use relative tolerance 1e-9, degeneracy checks 1e-12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    CollinearVectors,
    DegenerateBasis,
    IterationLimit,
    NotWellRounded,
    ZeroVector,
)

DEFAULT_TOL = 1e-9
DEGENERACY_TOL = 1e-12
MAX_REDUCE_ITERATIONS = 256

# Highest packing density any planar lattice attains, pi / (2*sqrt(3)).
OPTIMAL_DENSITY = math.pi / (2.0 * math.sqrt(3.0))

THETA_MIN = math.pi / 3.0
THETA_MAX = math.pi / 2.0


@dataclass(frozen=True, slots=True)
class PlaneVector:
    """Vector in the plane; components must be finite."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite vector components ({self.x}, {self.y})")
        # Coerce to float and collapse -0.0 so equal vectors serialize equally.
        object.__setattr__(self, "x", float(self.x) + 0.0)
        object.__setattr__(self, "y", float(self.y) + 0.0)

    def norm_sq(self) -> float:
        return self.x * self.x + self.y * self.y

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y)

    def dot(self, other: PlaneVector) -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: PlaneVector) -> float:
        return self.x * other.y - self.y * other.x

    def scaled(self, factor: float) -> PlaneVector:
        return PlaneVector(factor * self.x, factor * self.y)

    def __neg__(self) -> PlaneVector:
        return PlaneVector(-self.x, -self.y)

    def __sub__(self, other: PlaneVector) -> PlaneVector:
        return PlaneVector(self.x - other.x, self.y - other.y)


@dataclass(frozen=True, slots=True)
class Basis:
    """Ordered pair of generator vectors (columns of the basis matrix)."""

    x1: PlaneVector
    x2: PlaneVector

    def __post_init__(self) -> None:
        # Degeneracy cutoff scales with the squared longer column.
        eps = DEGENERACY_TOL * max(self.x1.norm_sq(), self.x2.norm_sq())
        if abs(self.x1.cross(self.x2)) <= eps:
            raise DegenerateBasis(
                f"columns ({self.x1.x}, {self.x1.y}) and ({self.x2.x}, {self.x2.y}) "
                "are numerically collinear"
            )


@dataclass(frozen=True, slots=True)
class Lattice:
    """A basis together with its cached determinant and Gram matrix."""

    basis: Basis
    det: float
    gram: tuple[tuple[float, float], tuple[float, float]]


@dataclass(frozen=True, slots=True)
class MinimaPair:
    """Canonical pair of lattice vectors realizing the successive minima.

    Invariants: ||v1|| = lambda1 <= lambda2 = ||v2||, v1.v2 >= 0, and the
    angle theta between the vectors lies in [pi/3, pi/2]. The pair always
    generates the lattice it was reduced from.
    """

    v1: PlaneVector
    v2: PlaneVector
    lambda1: float
    lambda2: float
    theta: float


@dataclass(frozen=True, slots=True)
class DensityReport:
    """Packing density of a lattice plus the quantities it derives from.

    delta = pi * lambda1^2 / (4 * det); gap is the (clamped nonnegative)
    distance to the optimal planar density pi/(2*sqrt(3)).
    """

    lambda1: float
    lambda2: float
    det: float
    theta: float
    delta: float
    well_rounded: bool
    gap: float


@dataclass(frozen=True, slots=True)
class ShapePoint:
    """Similarity-class coordinates: s = lambda2/lambda1 >= 1, theta in [pi/3, pi/2]."""

    s: float
    theta: float


def make_lattice(b: Basis) -> Lattice:
    """Build a lattice from a nondegenerate basis, caching det and Gram matrix."""
    g11 = b.x1.norm_sq()
    g22 = b.x2.norm_sq()
    g12 = b.x1.dot(b.x2)
    return Lattice(basis=b, det=abs(b.x1.cross(b.x2)), gram=((g11, g12), (g12, g22)))


def angle_between(v1: PlaneVector, v2: PlaneVector) -> float:
    """Angle in [0, pi] between two nonzero vectors, stable near 0 and pi."""
    if v1.norm_sq() == 0.0 or v2.norm_sq() == 0.0:
        raise ZeroVector("angle undefined for zero vectors")
    return math.atan2(abs(v1.cross(v2)), v1.dot(v2))


def _lead_positive(v: PlaneVector) -> PlaneVector:
    """Flip sign so the first nonzero coordinate is positive."""
    if v.x < 0.0 or (v.x == 0.0 and v.y < 0.0):
        return -v
    return v


def normalize_pair(v1: PlaneVector, v2: PlaneVector) -> tuple[PlaneVector, PlaneVector]:
    """Adjust signs so the pair has nonnegative inner product.

    A negative inner product is fixed by flipping v2. When the inner
    product is exactly zero the convention is: each vector gets a positive
    leading coordinate. Raises CollinearVectors for dependent input.
    """
    if abs(v1.cross(v2)) <= DEGENERACY_TOL * v1.norm() * v2.norm():
        raise CollinearVectors("vectors are numerically collinear")
    d = v1.dot(v2)
    if d < 0.0:
        v2 = -v2
    elif d == 0.0:
        v1 = _lead_positive(v1)
        v2 = _lead_positive(v2)
    return v1, v2


def _canonical_pair(v1: PlaneVector, v2: PlaneVector) -> tuple[PlaneVector, PlaneVector]:
    """Order by norm, normalize signs, break exact norm ties lexicographically."""
    if v1.norm_sq() > v2.norm_sq():
        v1, v2 = v2, v1
    v1, v2 = normalize_pair(v1, v2)
    # On an exact norm tie, put the lexicographically larger (x, y) first.
    if v1.norm_sq() == v2.norm_sq() and (v1.x, v1.y) < (v2.x, v2.y):
        v1, v2 = v2, v1
    return v1, v2


def _pair_from_vectors(v1: PlaneVector, v2: PlaneVector) -> MinimaPair:
    v1, v2 = _canonical_pair(v1, v2)
    return MinimaPair(
        v1=v1,
        v2=v2,
        lambda1=v1.norm(),
        lambda2=v2.norm(),
        theta=math.atan2(abs(v1.cross(v2)), v1.dot(v2)),
    )


def lagrange_reduce(b: Basis) -> MinimaPair:
    """Reduce a basis to the canonical pair realizing both successive minima.

    Classical two-dimensional reduction: keep the shorter vector, subtract
    the nearest-integer multiple of it from the longer one, swap when the
    order inverts, stop when the longer vector can no longer shrink. Each
    swap strictly shrinks the pair, so the iteration cap only trips on
    pathological input.
    """
    a1x, a1y = b.x1.x, b.x1.y
    a2x, a2y = b.x2.x, b.x2.y
    n1 = a1x * a1x + a1y * a1y
    n2 = a2x * a2x + a2y * a2y
    if n1 > n2:
        a1x, a1y, a2x, a2y = a2x, a2y, a1x, a1y
        n1, n2 = n2, n1
    for _ in range(MAX_REDUCE_ITERATIONS):
        mu = round((a1x * a2x + a1y * a2y) / n1)
        if mu:
            a2x -= mu * a1x
            a2y -= mu * a1y
            n2 = a2x * a2x + a2y * a2y
        if n2 >= n1:
            break
        a1x, a1y, a2x, a2y = a2x, a2y, a1x, a1y
        n1, n2 = n2, n1
    else:
        raise IterationLimit(f"reduction did not settle in {MAX_REDUCE_ITERATIONS} steps")
    return _pair_from_vectors(PlaneVector(a1x, a1y), PlaneVector(a2x, a2y))


def successive_minima(L: Lattice) -> MinimaPair:
    """Successive minima of the lattice, realized by a canonical vector pair."""
    return lagrange_reduce(L.basis)


def packing_density(L: Lattice, tol: float = DEFAULT_TOL) -> DensityReport:
    """Packing density delta = pi*lambda1^2/(4*det) with derived quantities."""
    m = lagrange_reduce(L.basis)
    delta = math.pi * m.lambda1 * m.lambda1 / (4.0 * L.det)
    return DensityReport(
        lambda1=m.lambda1,
        lambda2=m.lambda2,
        det=L.det,
        theta=m.theta,
        delta=delta,
        well_rounded=m.lambda2 - m.lambda1 <= tol * m.lambda2,
        gap=max(0.0, OPTIMAL_DENSITY - delta),
    )


def packing_radius(L: Lattice) -> float:
    """Radius of the largest disk inscribed in the Voronoi cell: lambda1/2."""
    return 0.5 * successive_minima(L).lambda1


def _check_tol(tol: float) -> None:
    if not 0.0 < tol <= 1e-3:
        raise ValueError(f"tolerance {tol!r} outside (0, 1e-3]")


def is_well_rounded(L: Lattice, tol: float = DEFAULT_TOL) -> bool:
    """True when both successive minima agree to relative tolerance tol."""
    _check_tol(tol)
    m = successive_minima(L)
    return m.lambda2 - m.lambda1 <= tol * m.lambda2


def wr_round(L: Lattice) -> Lattice:
    """Shrink the longer minima vector onto the shorter one's length.

    The result is well-rounded with both minima equal to lambda1(L), keeps
    the input's minima angle, and its density never drops below the input's
    (strictly rises unless the input was already well-rounded).
    """
    m = successive_minima(L)
    return make_lattice(Basis(m.v1, m.v2.scaled(m.lambda1 / m.lambda2)))


def theta_invariant(L: Lattice, tol: float = DEFAULT_TOL) -> float:
    """Angle between minimal vectors of a well-rounded lattice.

    A complete similarity invariant on well-rounded lattices; satisfies
    sin(theta) = pi / (4 * delta). Raises NotWellRounded otherwise.
    """
    _check_tol(tol)
    m = successive_minima(L)
    if m.lambda2 - m.lambda1 > tol * m.lambda2:
        raise NotWellRounded(
            f"minima differ: lambda1={m.lambda1!r}, lambda2={m.lambda2!r}"
        )
    return m.theta


def shape_parameters(L: Lattice) -> ShapePoint:
    """Similarity-class coordinates (lambda2/lambda1, theta) of the lattice."""
    m = successive_minima(L)
    return ShapePoint(s=m.lambda2 / m.lambda1, theta=m.theta)


def is_similar(A: Lattice, B: Lattice, tol: float = DEFAULT_TOL) -> bool:
    """True when the two lattices agree in shape coordinates within tol.

    Equivalent to similarity under dilation plus an orthogonal map
    (rotations and reflections both allowed).
    """
    sa = shape_parameters(A)
    sb = shape_parameters(B)
    return abs(sa.s - sb.s) <= tol * max(1.0, sa.s, sb.s) and abs(
        sa.theta - sb.theta
    ) <= tol * max(1.0, sa.theta, sb.theta)


def hexagonal() -> Lattice:
    """The hexagonal lattice with basis (1, 0), (1/2, sqrt(3)/2)."""
    return make_lattice(
        Basis(PlaneVector(1.0, 0.0), PlaneVector(0.5, math.sqrt(3.0) / 2.0))
    )


def change_of_basis(
    b: Basis, m: MinimaPair
) -> tuple[tuple[float, float], tuple[float, float]]:
    """Coordinates of the minima pair in the original basis.

    Returns U with (v1 v2) = X U as a row-major 2x2 tuple. When the pair
    generates the same lattice, U is integral with determinant +-1 up to
    floating point noise.
    """
    d = b.x1.cross(b.x2)
    u11 = (b.x2.y * m.v1.x - b.x2.x * m.v1.y) / d
    u21 = (b.x1.x * m.v1.y - b.x1.y * m.v1.x) / d
    u12 = (b.x2.y * m.v2.x - b.x2.x * m.v2.y) / d
    u22 = (b.x1.x * m.v2.y - b.x1.y * m.v2.x) / d
    return ((u11, u12), (u21, u22))
