"""Exact hyperbolic invariants of vectors and mirror pairs.

All distance and angle data stays in squared / rational form (cosh^2 of
the distance, the reciprocal pairing against a cusp, squared horoball
radii), so the whole pipeline remains free of square roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import DomainError
from .lattice import Lattice, norm, pair


class VectorClass(Enum):
    TIMELIKE_SAME_CONE = "timelike-same-cone"
    TIMELIKE_OPPOSITE_CONE = "timelike-opposite-cone"
    LIGHTLIKE_SAME_CONE = "lightlike-same-cone"
    LIGHTLIKE_OPPOSITE_CONE = "lightlike-opposite-cone"
    SPACELIKE = "spacelike"


class MirrorRelation(Enum):
    INTERSECTING = "intersecting"
    PARALLEL_AT_INFINITY = "parallel-at-infinity"
    ULTRAPARALLEL = "ultraparallel"


def classify_vector(lattice: Lattice, x, orient) -> VectorClass:
    """Position of x relative to the light cone, oriented by a timelike vector."""
    if norm(lattice, orient) >= 0:
        raise DomainError("orientation vector must be timelike")
    nx = norm(lattice, x)
    if nx > 0:
        return VectorClass.SPACELIKE
    if all(c == 0 for c in x):
        raise DomainError("zero vector has no light-cone class")
    same = pair(lattice, x, orient) < 0
    if nx < 0:
        return VectorClass.TIMELIKE_SAME_CONE if same else VectorClass.TIMELIKE_OPPOSITE_CONE
    return VectorClass.LIGHTLIKE_SAME_CONE if same else VectorClass.LIGHTLIKE_OPPOSITE_CONE


def cosh2(lattice: Lattice, x, y) -> Fraction:
    """cosh^2 of the hyperbolic distance between the rays of x and y.

    Scale invariant in each argument; >= 1 with equality iff the rays agree.
    """
    nx, ny = norm(lattice, x), norm(lattice, y)
    if nx >= 0 or ny >= 0:
        raise DomainError("cosh2 needs two timelike vectors")
    s = pair(lattice, x, y)
    if s >= 0:
        raise DomainError("vectors lie in opposite half-cones")
    return Fraction(s * s, nx * ny)


def classify_mirrors(lattice: Lattice, d1, d2) -> MirrorRelation:
    """Relative position of two mirrors from the determinant of their Gram pair."""
    n1, n2 = norm(lattice, d1), norm(lattice, d2)
    if n1 <= 0 or n2 <= 0:
        raise DomainError("mirror vectors must be spacelike")
    s = pair(lattice, d1, d2)
    disc = n1 * n2 - s * s
    if disc > 0:
        return MirrorRelation.INTERSECTING
    if disc == 0:
        return MirrorRelation.PARALLEL_AT_INFINITY
    return MirrorRelation.ULTRAPARALLEL


@dataclass(frozen=True)
class HoroInvariants:
    theta: Fraction | None
    r_squared: Fraction


def horo_invariants(lattice: Lattice, c, d) -> HoroInvariants:
    """Cusp data of a mirror: squared horoball radius, and the reciprocal
    angle -1/S(c,d) when the wall has norm 2 (the only normalization in
    which that quantity is rational)."""
    if norm(lattice, c) != 0 or all(x == 0 for x in c):
        raise DomainError("cusp vector must be nonzero isotropic")
    nd = norm(lattice, d)
    if nd <= 0:
        raise DomainError("wall vector must be spacelike")
    s = pair(lattice, c, d)
    if s == 0:
        raise DomainError("mirror passes through the cusp; angle undefined")
    if s > 0:
        raise DomainError("cusp must lie on the nonpositive side of the wall")
    theta = Fraction(-1, s) if nd == 2 else None
    return HoroInvariants(theta=theta, r_squared=Fraction(s * s, nd))


def theta_identity_check(t1, t2, t12) -> Fraction:
    """Predicted -S(d1,d2) for norm-2 walls with reciprocal angles t1, t2
    and minimal tangent-wall angle t12 (0 for walls sharing a tangency)."""
    t1, t2, t12 = Fraction(t1), Fraction(t2), Fraction(t12)
    if t1 <= 0 or t2 <= 0:
        raise DomainError("reciprocal angles must be positive")
    if t12 < 0:
        raise DomainError("tangent-wall angle cannot be negative")
    return 4 * (t1 + t12) * (t2 + t12) / (t1 * t2) - 2
