"""Exact Chern-class calculus for concrete polarized families.

The supported families (projective spaces, smooth hypersurfaces, smooth
complete intersections) all have cohomology generated in low degrees by
the restricted hyperplane class h, so total Chern classes live in the
rank-1 truncated polynomial ring Q[h]/(h^{n+1}) where n = dim X.  The
pushforward to a point evaluates the degree-n coefficient against the
fundamental class: h^n integrates to deg(X).

All arithmetic is exact rational; any invariant that fails to come out
an integer is a convention bug and raises, never rounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .errors import ValidationError
from .variety_bounds import VarietyInvariants


@dataclass(frozen=True)
class TruncSeries:
    """Polynomial in the hyperplane class, truncated above degree len(coeffs)-1."""

    coeffs: Tuple[Fraction, ...]

    @classmethod
    def from_ints(cls, values, order: int) -> "TruncSeries":
        padded = list(values)[: order + 1]
        padded += [0] * (order + 1 - len(padded))
        return cls(tuple(Fraction(v) for v in padded))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs[: n + 1 - i]):
                out[i + j] += a * b
        return TruncSeries(tuple(out))

    def inverse(self) -> "TruncSeries":
        a0 = self.coeffs[0]
        if a0 == 0:
            raise ValidationError("series with zero constant term is not invertible")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = 1 / a0
        for k in range(1, n + 1):
            acc = Fraction(0)
            for i in range(1, k + 1):
                acc += self.coeffs[i] * out[k - i]
            out[k] = -acc / a0
        return TruncSeries(tuple(out))

    def pow(self, e: int) -> "TruncSeries":
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = one(self.order)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if k <= self.order else Fraction(0)


def one(order: int) -> TruncSeries:
    return TruncSeries.from_ints([1], order)


def binomial_series(scalar: int, exponent: int, order: int) -> TruncSeries:
    """(1 + scalar*h)^exponent, truncated; exponent may be negative."""
    return TruncSeries.from_ints([1, scalar], order).pow(exponent)


PROJECTIVE_SPACE = "projective_space"
HYPERSURFACE = "hypersurface"
COMPLETE_INTERSECTION = "complete_intersection"


@dataclass(frozen=True)
class FamilySpec:
    """A polarized family member: dimension n plus ambient multidegree.

    degrees is empty for projective space, one entry for a hypersurface
    in P^{n+1}, and one entry per equation for a complete intersection in
    P^{n+r}.  Smoothness of a generic member is assumed.  The
    polarization is always O(1) restricted to the variety.
    """

    kind: str
    n: int
    degrees: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"dimension must be >= 1, got {self.n}")
        if self.kind == PROJECTIVE_SPACE:
            if self.degrees:
                raise ValidationError("projective space takes no degrees")
        elif self.kind == HYPERSURFACE:
            if len(self.degrees) != 1:
                raise ValidationError("a hypersurface has exactly one degree")
        elif self.kind == COMPLETE_INTERSECTION:
            if not self.degrees:
                raise ValidationError("a complete intersection needs degrees")
        else:
            raise ValidationError(f"unknown family kind {self.kind!r}")
        if any(delta < 1 for delta in self.degrees):
            raise ValidationError("all degrees must be >= 1")

    @property
    def codimension(self) -> int:
        return len(self.degrees)

    @property
    def ambient_dim(self) -> int:
        return self.n + self.codimension

    @property
    def degree(self) -> int:
        """Degree in the ambient projective space: product of the multidegree."""
        return math.prod(self.degrees) if self.degrees else 1


def projective_space(n: int) -> FamilySpec:
    return FamilySpec(PROJECTIVE_SPACE, n)


def hypersurface(n: int, delta: int) -> FamilySpec:
    return FamilySpec(HYPERSURFACE, n, (delta,))


def complete_intersection(n: int, degrees) -> FamilySpec:
    return FamilySpec(COMPLETE_INTERSECTION, n, tuple(degrees))


def section_of(spec: FamilySpec) -> FamilySpec:
    """The hyperplane-section family: same equations, one dimension lower."""
    if spec.n < 2:
        raise ValidationError("sections of curves leave the supported families")
    if spec.kind == PROJECTIVE_SPACE:
        return projective_space(spec.n - 1)
    return FamilySpec(spec.kind, spec.n - 1, spec.degrees)


def chern_total_dual_cotangent(spec: FamilySpec) -> TruncSeries:
    """Total Chern class of the tangent sheaf, as a series in h.

    From the Euler sequence and adjunction: (1+h)^{N+1} / prod(1 + delta*h)
    for a complete intersection of multidegree (delta_j) in P^N, truncated
    at dim X.
    """
    series = binomial_series(1, spec.ambient_dim + 1, spec.n)
    for delta in spec.degrees:
        series = series * binomial_series(delta, -1, spec.n)
    return series


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"{what} came out non-integral: {x}")
    return int(x)


def euler_characteristic(spec: FamilySpec) -> int:
    """Topological Euler characteristic: the top tangent Chern number."""
    top = chern_total_dual_cotangent(spec).coefficient(spec.n)
    return _as_int(spec.degree * top, "Euler characteristic")


def c_invariant(spec: FamilySpec, i: int) -> int:
    """Pushforward of c(T_X) * c(L)^{-i} * c_1(L)^i.

    Multiplying by h^i shifts degrees, so the degree-n coefficient of the
    full product is the degree-(n-i) coefficient of c(T_X) * (1+h)^{-i},
    scaled by deg(X).
    """
    if not 1 <= i <= spec.n - 1:
        raise ValidationError(f"i must lie in 1..{spec.n - 1}, got {i}")
    series = chern_total_dual_cotangent(spec) * binomial_series(1, -i, spec.n)
    return _as_int(spec.degree * series.coefficient(spec.n - i),
                   f"section characteristic c_{i}")


def betti_vector(spec: FamilySpec) -> Tuple[int, ...]:
    """Betti numbers b_1..b_n of the family member.

    Below the middle degree the cohomology agrees with projective space
    (weak Lefschetz), above it by duality; the middle number is recovered
    from the Euler characteristic.
    """
    chi = euler_characteristic(spec)
    n = spec.n
    # alternating sum over all degrees except the middle, b_i = 1 for even i
    off_middle = sum(1 for i in range(0, 2 * n + 1) if i % 2 == 0 and i != n)
    b_middle = (-1) ** n * (chi - off_middle)
    if b_middle < 0:
        raise ArithmeticError(f"middle Betti number came out negative: {b_middle}")
    return tuple((1 if i % 2 == 0 else 0) if i < n else b_middle
                 for i in range(1, n + 1))


def invariants_of(spec: FamilySpec) -> VarietyInvariants:
    """Bundle the Betti and section-characteristic vectors into bound input."""
    return VarietyInvariants(
        n=spec.n,
        b=betti_vector(spec),
        c=tuple(c_invariant(spec, i) for i in range(1, spec.n)),
    )
