"""Truncated one-variable integer power series: eta powers, the cusp
identity between ray multiplicities and product exponents, and the
isotropic-ray multiset of a corrected root system.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import DomainError


@dataclass(frozen=True)
class PowerSeries:
    """Integer coefficients c_0 .. c_N of a series truncated at degree N."""
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i):
        return self.coeffs[i]

    @classmethod
    def one(cls, n):
        return cls((1,) + (0,) * n)

    def __add__(self, other):
        self._match(other)
        return PowerSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._match(other)
        return PowerSeries(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        self._match(other)
        n = self.truncation
        out = [0] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                out[i + j] += a * other.coeffs[j]
        return PowerSeries(tuple(out))

    def inverse(self):
        """Reciprocal of a unit-leading series, exact over the integers."""
        if self.coeffs[0] not in (1, -1):
            raise DomainError("only unit-leading series can be inverted over Z")
        n = self.truncation
        lead = self.coeffs[0]
        out = [lead] + [0] * n
        for i in range(1, n + 1):
            acc = sum(self.coeffs[j] * out[i - j] for j in range(1, i + 1))
            out[i] = -lead * acc
        return PowerSeries(tuple(out))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = PowerSeries.one(self.truncation)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def _match(self, other):
        if self.truncation != other.truncation:
            raise DomainError("series truncations differ")


def binomial_series(exponent: int, step: int, n: int) -> PowerSeries:
    """(1 - q^step)^exponent truncated at degree n, for any integer exponent."""
    out = [0] * (n + 1)
    if exponent >= 0:
        for j in range(0, min(exponent, n // step) + 1):
            out[j * step] = (-1) ** j * comb(exponent, j)
    else:
        for j in range(0, n // step + 1):
            out[j * step] = comb(-exponent + j - 1, j)
    return PowerSeries(tuple(out))


def eta_power(e: int, n: int) -> PowerSeries:
    """prod_{m >= 1} (1 - q^m)^e up to degree n, exact."""
    if n < 0:
        raise DomainError("truncation must be nonnegative")
    out = PowerSeries.one(n)
    for m in range(1, n + 1):
        out = out * binomial_series(e, m, n)
    return out


def ramanujan_tau(n: int):
    """tau(1..n) from the 24th eta power shifted by one degree."""
    series = eta_power(24, max(n - 1, 0))
    return list(series.coeffs[:n])


def cusp_identity(direction: str, coeffs, n: int):
    """Solve 1 - sum_t m(t) q^t = prod_k (1 - q^k)^{tau(k)} in either direction.

    coeffs lists tau(1..n) (direction "tau_to_m") or m(1..n) ("m_to_tau");
    the triangular system is exactly solvable over the integers both ways.
    """
    coeffs = [int(c) for c in list(coeffs)[:n]] + [0] * max(0, n - len(coeffs))
    if direction == "tau_to_m":
        prod = PowerSeries.one(n)
        for k in range(1, n + 1):
            prod = prod * binomial_series(coeffs[k - 1], k, n)
        return [-prod[t] for t in range(1, n + 1)]
    if direction == "m_to_tau":
        lhs = PowerSeries((1,) + tuple(-c for c in coeffs))
        tau = []
        partial = PowerSeries.one(n)
        for k in range(1, n + 1):
            tk = partial[k] - lhs[k]
            tau.append(tk)
            partial = partial * binomial_series(tk, k, n)
        return tau
    raise DomainError(f"unknown direction {direction!r}")


@dataclass(frozen=True)
class RayMultiset:
    """Multiples of a primitive isotropic vector with their multiplicities."""
    a0: tuple[int, ...]
    entries: tuple[tuple[int, int], ...]  # (multiple t, multiplicity)


def build_H_ray(tau, a0, n: int) -> RayMultiset:
    """Isotropic-ray slice of the corrected simple-root multiset:
    t*a0 carries multiplicity tau(t) for 1 <= t <= n (zero entries dropped).
    Multiplicities may be negative (superalgebra conventions pass through)."""
    tau = list(tau)
    entries = tuple((t, int(tau[t - 1])) for t in range(1, min(n, len(tau)) + 1)
                    if tau[t - 1] != 0)
    return RayMultiset(a0=tuple(a0), entries=entries)


def corrected_denominator_ray_check(tau, m, n: int) -> bool:
    """Does the pair (tau, m) satisfy the one-variable cusp identity to degree n?"""
    return cusp_identity("tau_to_m", tau, n) == [int(c) for c in list(m)[:n]] + [0] * max(0, n - len(m))
