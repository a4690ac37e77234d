"""Integral symmetric bilinear forms, their invariants and reflections.

A lattice is a free Z-module with a fixed basis and an integer Gram
matrix.  Vectors are coordinate tuples in that basis; rational vectors
use fractions.Fraction entries.  Isometries are integer matrices acting
on column vectors (column j = image of the j-th basis vector).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd

from . import linalg
from .errors import DegenerateFormError, DimensionError, DomainError


@dataclass(frozen=True)
class Lattice:
    gram: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if any(len(row) != n for row in g):
            raise DimensionError("gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise DegenerateFormError("gram matrix must be symmetric")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def to_dict(self):
        return {"name": self.name, "gram": [list(row) for row in self.gram]}


@dataclass(frozen=True)
class LatticeInvariants:
    signature: tuple[int, int]
    even: bool
    determinant: int
    smith_divisors: tuple[int, ...]
    exponent_aS: int


def lattice_from_dict(data, name=None) -> Lattice:
    return Lattice(gram=tuple(tuple(row) for row in data["gram"]),
                   name=name if name is not None else data.get("name", ""))


def load_lattice(path) -> Lattice:
    with open(path) as fh:
        return lattice_from_dict(json.load(fh))


def _check_dim(lattice, v):
    if len(v) != lattice.rank:
        raise DimensionError(
            f"vector of length {len(v)} against lattice of rank {lattice.rank}")


def pair(lattice: Lattice, x, y):
    """The bilinear form S(x, y), exact (int or Fraction)."""
    _check_dim(lattice, x)
    _check_dim(lattice, y)
    return sum(xi * sum(g * yj for g, yj in zip(row, y))
               for xi, row in zip(x, lattice.gram))


def norm(lattice: Lattice, x):
    return pair(lattice, x, x)


def invariants(lattice: Lattice) -> LatticeInvariants:
    """Signature, parity, determinant and discriminant-group data.

    The signature comes from an exact symmetric diagonalization over the
    rationals, the divisor chain from the integer Smith normal form; the
    discriminant-group exponent is the largest Smith divisor.
    """
    d = linalg.det(lattice.gram)
    if d == 0:
        raise DegenerateFormError("gram matrix is degenerate")
    pos, neg, _ = linalg.signature(lattice.gram)
    divisors = linalg.smith_divisors(lattice.gram)
    even = all(lattice.gram[i][i] % 2 == 0 for i in range(lattice.rank))
    return LatticeInvariants(
        signature=(pos, neg),
        even=even,
        determinant=d,
        smith_divisors=divisors,
        exponent_aS=max(divisors),
    )


def is_hyperbolic(lattice: Lattice) -> bool:
    pos, neg, zero = linalg.signature(lattice.gram)
    return zero == 0 and neg == 1 and pos == lattice.rank - 1


def a_delta(lattice: Lattice, d) -> int:
    """Largest a such that d/a still pairs integrally with the whole lattice.

    Equals the gcd of the pairings of d with the basis vectors; the input
    must be primitive (reduce with linalg.primitive first).
    """
    _check_dim(lattice, d)
    if all(x == 0 for x in d):
        raise DomainError("zero vector")
    if linalg.content(d) != 1:
        raise DomainError("a_delta expects a primitive vector")
    g = 0
    for row in lattice.gram:
        g = gcd(g, abs(linalg.dot(row, d)))
    return g


def is_crystallographic(lattice: Lattice, d) -> bool:
    """True iff the reflection in d maps the lattice to itself."""
    _check_dim(lattice, d)
    nd = norm(lattice, d)
    if nd <= 0:
        raise DomainError(f"reflection vector must have positive norm, got {nd}")
    return all((2 * linalg.dot(row, d)) % nd == 0 for row in lattice.gram)


def reflection(lattice: Lattice, d):
    """Integer matrix of x -> x - (2 S(x,d) / S(d,d)) d."""
    if not is_crystallographic(lattice, d):
        raise DomainError(f"{tuple(d)} is not crystallographic; reflection is not integral")
    nd = norm(lattice, d)
    gd = linalg.mat_vec(lattice.gram, d)  # row j: S(e_j, d)
    n = lattice.rank
    return tuple(
        tuple((1 if i == j else 0) - (2 * d[i] * gd[j]) // nd for j in range(n))
        for i in range(n)
    )


def apply_isometry(g, x):
    """g acting on a column vector x."""
    return tuple(sum(row[j] * x[j] for j in range(len(x))) for row in g)


def is_isometry(lattice: Lattice, g) -> bool:
    """True iff g^T gram g = gram and det g = +-1."""
    n = lattice.rank
    if len(g) != n or any(len(row) != n for row in g):
        raise DimensionError("isometry matrix size must match the lattice rank")
    gt = linalg.transpose(g)
    if linalg.mat_mul(gt, linalg.mat_mul(lattice.gram, g)) != tuple(
            tuple(row) for row in lattice.gram):
        return False
    return linalg.det(g) in (1, -1)


def int_inverse(g):
    """Inverse of an integer matrix with determinant +-1."""
    inv = linalg.inverse(g)
    return tuple(tuple(int(x) for x in row) for row in inv)


def scaled(lattice: Lattice, m: int) -> Lattice:
    return Lattice(gram=tuple(tuple(m * x for x in row) for row in lattice.gram),
                   name=f"{lattice.name}({m})" if lattice.name else "")


def timelike_vector(lattice: Lattice):
    """Some integer vector of negative norm (exact construction).

    Pulls back a negative entry of a rational diagonalization; raises if
    the form is positive semidefinite.
    """
    basis, diag = linalg.diagonalizing_basis(lattice.gram)
    for row, d in zip(basis, diag):
        if d < 0:
            return linalg.clear_denominators(row)
    raise DomainError("lattice has no timelike vectors")
