"""Bounds attached to the numerical invariants of a polarized variety.

Inputs are the half Betti vector (b_1, ..., b_n) and the hyperplane
Euler characteristics (c_1, ..., c_{n-1}) of a smooth projective
geometrically connected variety of dimension n.  From these the derived
vector of middle Betti numbers of iterated hyperplane sections is
computed, the product bound over its entries, and the invariant
transport to a hyperplane section (which leaves the first n-1 derived
entries untouched).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .compat_bounds import DEFAULT_SCAN_DEPTH, ScanCertificate, c_d_stable
from .errors import DimensionTooSmallError, NegativeBettiError, ValidationError
from .numtheory import FACTORED_ONE, FactoredInt


@dataclass(frozen=True)
class VarietyInvariants:
    """Dimension n, Betti vector b (indices 1..n), section characteristics c (1..n-1).

    b_0 = 1 is implicit throughout (geometric connectedness); the full
    Betti vector in degrees 0..2n is reconstructed on demand by Poincare
    duality b_{2n-i} = b_i.
    """

    n: int
    b: Tuple[int, ...]
    c: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"dimension must be >= 1, got {self.n}")
        if len(self.b) != self.n:
            raise ValidationError(
                f"expected {self.n} Betti entries, got {len(self.b)}")
        if len(self.c) != self.n - 1:
            raise ValidationError(
                f"expected {self.n - 1} section characteristics, got {len(self.c)}")
        for i, bi in enumerate(self.b, start=1):
            if bi < 0:
                raise ValidationError(f"b_{i} = {bi} is negative")

    def full_betti(self) -> Tuple[int, ...]:
        """Betti numbers in degrees 0..2n, expanded by duality."""
        lower = (1,) + self.b
        upper = tuple(lower[self.n - k] for k in range(1, self.n + 1))
        return lower + upper

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * bi for i, bi in enumerate(self.full_betti()))


@dataclass(frozen=True)
class DVector:
    """Derived middle Betti numbers of the iterated section chain, indices 1..n."""

    entries: Tuple[int, ...]


@dataclass(frozen=True)
class BoundReport:
    """Factored index bound with its per-section breakdown."""

    d_vector: DVector
    factors: Tuple[FactoredInt, ...]
    product: FactoredInt
    certificates: Tuple[ScanCertificate, ...]


def d_vector(inv: VarietyInvariants) -> DVector:
    """Middle Betti numbers d_j of the (n-j)-fold hyperplane sections.

    d_j = (-1)^j (c_{n-j} - 2 sum_{i=0}^{j-1} (-1)^i b_i) for j < n, with
    b_0 = 1, and d_n = b_n.  A negative entry is a hard validation error:
    for geometric input each entry is an actual Betti number.
    """
    full_b = (1,) + inv.b
    entries = []
    alternating = 0  # sum_{i=0}^{j-1} (-1)^i b_i
    for j in range(1, inv.n):
        alternating += (-1) ** (j - 1) * full_b[j - 1]
        d_j = (-1) ** j * (inv.c[inv.n - j - 1] - 2 * alternating)
        if d_j < 0:
            raise NegativeBettiError(j, d_j)
        entries.append(d_j)
    entries.append(inv.b[-1])
    return DVector(tuple(entries))


def bound(inv: VarietyInvariants, p: int, h: Optional[int] = None,
          scan_depth: int = DEFAULT_SCAN_DEPTH) -> BoundReport:
    """Product of the certified gcd constants over the first h derived entries."""
    if h is None:
        h = inv.n
    if not 1 <= h <= inv.n:
        raise ValidationError(f"h must lie in 1..{inv.n}, got {h}")
    dv = d_vector(inv)
    factors = []
    certs = []
    product = FACTORED_ONE
    for d_j in dv.entries[:h]:
        value, cert = c_d_stable(d_j, p, scan_depth)
        factors.append(value)
        certs.append(cert)
        product = product * value
    return BoundReport(d_vector=dv, factors=tuple(factors),
                       product=product, certificates=tuple(certs))


def euler_char_section(inv: VarietyInvariants, j: int) -> int:
    """Euler characteristic of a j-fold hyperplane section.

    j = 0 is the variety itself (expanded by duality); 1 <= j <= n-1 is
    read off the stored c vector.
    """
    if j == 0:
        return inv.euler_characteristic()
    if not 1 <= j <= inv.n - 1:
        raise ValidationError(f"section index must lie in 0..{inv.n - 1}, got {j}")
    return inv.c[j - 1]


def descend(inv: VarietyInvariants) -> VarietyInvariants:
    """Invariants of a smooth hyperplane section.

    The section has dimension n-1, inherits b_i for i <= n-2 (weak
    Lefschetz plus duality), gets its middle Betti number from the
    derived vector, and a j-fold section of the section is a (j+1)-fold
    section of the variety, so the c vector simply shifts.
    """
    if inv.n < 2:
        raise DimensionTooSmallError(
            "cannot take a hyperplane section of a curve's invariants")
    dv = d_vector(inv)
    b_new = inv.b[: inv.n - 2] + (dv.entries[inv.n - 2],)
    return VarietyInvariants(n=inv.n - 1, b=b_new, c=inv.c[1:])
