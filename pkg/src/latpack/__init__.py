"""Planar lattice circle packing toolkit."""

from .core import (
    DEFAULT_TOL,
    OPTIMAL_DENSITY,
    Basis,
    DensityReport,
    Lattice,
    MinimaPair,
    PlaneVector,
    ShapePoint,
    angle_between,
    change_of_basis,
    hexagonal,
    is_similar,
    is_well_rounded,
    lagrange_reduce,
    make_lattice,
    normalize_pair,
    packing_density,
    packing_radius,
    shape_parameters,
    successive_minima,
    theta_invariant,
    wr_round,
)
from .errors import (
    BoundOverflow,
    CollinearVectors,
    DegenerateBasis,
    InvalidStep,
    IterationLimit,
    LatticeError,
    NotWellRounded,
    ZeroVector,
)
from .oracle import (
    EnumerationBound,
    GridSearchResult,
    brute_minima,
    enumerate_vectors,
    enumeration_bound,
    grid_search_density,
    random_lattice,
)
from .voronoi import (
    VoronoiCell,
    cell_area,
    cell_contains,
    cell_in_radius,
    containment_margin,
    relevant_vectors,
    voronoi_cell,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "OPTIMAL_DENSITY",
    "Basis",
    "BoundOverflow",
    "CollinearVectors",
    "DegenerateBasis",
    "DensityReport",
    "EnumerationBound",
    "GridSearchResult",
    "InvalidStep",
    "IterationLimit",
    "Lattice",
    "LatticeError",
    "MinimaPair",
    "NotWellRounded",
    "PlaneVector",
    "ShapePoint",
    "VoronoiCell",
    "ZeroVector",
    "angle_between",
    "brute_minima",
    "cell_area",
    "cell_contains",
    "cell_in_radius",
    "change_of_basis",
    "containment_margin",
    "enumerate_vectors",
    "enumeration_bound",
    "grid_search_density",
    "hexagonal",
    "is_similar",
    "is_well_rounded",
    "lagrange_reduce",
    "make_lattice",
    "normalize_pair",
    "packing_density",
    "packing_radius",
    "random_lattice",
    "relevant_vectors",
    "shape_parameters",
    "successive_minima",
    "theta_invariant",
    "voronoi_cell",
    "wr_round",
]
