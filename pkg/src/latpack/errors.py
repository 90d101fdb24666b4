"""Exception types shared across the package."""


class LatticeError(Exception):
    """Base class for all lattice geometry errors."""


class DegenerateBasis(LatticeError):
    """Basis columns are numerically linearly dependent."""


class CollinearVectors(LatticeError):
    """A vector pair that should be independent is (numerically) collinear."""


class ZeroVector(LatticeError):
    """An operation received a zero vector where a nonzero one is required."""


class IterationLimit(LatticeError):
    """Basis reduction failed to converge; input is pathological."""


class NotWellRounded(LatticeError):
    """The lattice's two successive minima differ beyond tolerance."""


class BoundOverflow(LatticeError):
    """Enumeration would require more than the allowed coefficient range."""


class InvalidStep(LatticeError):
    """Grid step outside the supported range."""
