"""Gcd of the per-prime GL orders over all primes distinct from p.

The gcd runs over an infinite index set, so a finite scan alone proves
nothing.  The scan therefore carries a certificate: for every odd prime q
surviving the gcd, the minimal q-valuation of a per-prime order over all
primes ell is attained whenever ell is a primitive root modulo q^2 (by
lifting the exponent, v_q(ell^i - 1) = v_q(ell^e - 1) + v_q(i/e) where e
is the order of ell mod q, and a primitive root mod q^2 makes both terms
minimal).  For q = 2 the valuation depends only on ell mod 8, so covering
all four odd residue classes mod 8 certifies the minimum.  A scan whose
witnesses satisfy these conditions has provably reached the infinite gcd.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

from .errors import UnstableCertificateError
from .group_orders import c_ell_d_int
from .numtheory import (
    FACTORED_ONE,
    FactoredInt,
    PrimeIter,
    factorize,
    is_prime,
    phi_inverse_set,
    valuation,
)

DEFAULT_SCAN_DEPTH = 100


@dataclass(frozen=True)
class ScanCertificate:
    """Audit record of one gcd scan.

    witnesses maps each candidate prime q to the scanned prime ell at
    which the minimal q-valuation was attained (for odd q, a primitive
    root mod q^2 whenever one was scanned).
    """

    d: int
    excluded_p: Optional[int]
    primes_scanned: int
    candidate_primes_q: Tuple[int, ...]
    witnesses: Tuple[Tuple[int, int], ...]
    stable: bool


def _multiplicative_order(a: int, modulus: int) -> int:
    group_order = 1
    for r, e in factorize(modulus).items():
        group_order *= r ** (e - 1) * (r - 1)
    order = group_order
    for r in factorize(group_order):
        while order % r == 0 and pow(a, order // r, modulus) == 1:
            order //= r
    return order


def _is_primitive_root_mod_q2(ell: int, q: int) -> bool:
    if ell % q == 0:
        return False
    return _multiplicative_order(ell, q * q) == q * (q - 1)


@lru_cache(maxsize=None)
def _c_d_cached(d: int, p: Optional[int], scan_depth: int):
    scanned = PrimeIter(exclusions=(p,) if p is not None else ()).take(scan_depth)
    if d == 0:
        cert = ScanCertificate(d=d, excluded_p=p, primes_scanned=scan_depth,
                               candidate_primes_q=(), witnesses=(), stable=True)
        return FACTORED_ONE, cert

    values = {ell: c_ell_d_int(ell, d) for ell in scanned}
    g = 0
    for v in values.values():
        g = math.gcd(g, v)

    candidates = tuple(sorted(factorize(g))) if g > 1 else ()
    witnesses = {}
    stable = True
    for q in candidates:
        v_min = valuation(g, q)
        if q == 2:
            # v_2 of the order depends only on ell mod 8; full coverage of
            # the odd residue classes certifies the minimum
            covered = {ell % 8 for ell in scanned if ell % 2 == 1}
            if not {1, 3, 5, 7} <= covered:
                stable = False
            witnesses[q] = next(ell for ell in scanned
                                if valuation(values[ell], q) == v_min)
        else:
            witness = next((ell for ell in scanned
                            if _is_primitive_root_mod_q2(ell, q)), None)
            if witness is None:
                stable = False
                witness = next(ell for ell in scanned
                               if valuation(values[ell], q) == v_min)
            else:
                # a primitive root attains the global minimum; the scanned
                # gcd can therefore not sit above it
                assert valuation(values[witness], q) == v_min
            witnesses[q] = witness

    cert = ScanCertificate(
        d=d,
        excluded_p=p,
        primes_scanned=scan_depth,
        candidate_primes_q=candidates,
        witnesses=tuple(sorted(witnesses.items())),
        stable=stable,
    )
    return FactoredInt.from_int(g), cert


def c_d(d: int, p: Optional[int] = None,
        scan_depth: int = DEFAULT_SCAN_DEPTH) -> Tuple[FactoredInt, ScanCertificate]:
    """Gcd of the per-prime constants over the first scan_depth primes != p.

    When the returned certificate is stable the value equals the true
    gcd over all primes distinct from p.  An unstable certificate is
    reported as such, never silently passed off as certified.
    """
    if d < 0:
        raise ValueError(f"dimension must be >= 0, got {d}")
    if scan_depth < 2:
        raise ValueError(f"scan_depth must be >= 2, got {scan_depth}")
    if p is not None and not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return _c_d_cached(d, p, scan_depth)


def c_d_stable(d: int, p: Optional[int] = None,
               scan_depth: int = DEFAULT_SCAN_DEPTH) -> Tuple[FactoredInt, ScanCertificate]:
    """Like c_d but raises UnstableCertificateError unless certified."""
    value, cert = c_d(d, p, scan_depth)
    if not cert.stable:
        raise UnstableCertificateError(cert)
    return value, cert


def p_part_c_d(d: int, p: int, scan_depth: int = DEFAULT_SCAN_DEPTH) -> FactoredInt:
    """p-part of the certified gcd taken over primes ell != p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    value, _ = c_d_stable(d, p, scan_depth)
    return value.p_part(p)


@dataclass(frozen=True)
class RefinedBound:
    """Tame/wild refinement for a d-dimensional representation.

    tame_set lists every possible order i of a tame generator (those with
    phi(i) <= d); tame_max and tame_lcm are the two ways of combining
    them.  wild_part is a power of p bounding the wild image.
    """

    d: int
    p: int
    tame_max: int
    tame_set: Tuple[int, ...]
    tame_lcm: int
    wild_part: FactoredInt


def refined_bound(d: int, p: int, scan_depth: int = DEFAULT_SCAN_DEPTH) -> RefinedBound:
    if d < 1:
        raise ValueError(f"refined_bound needs d >= 1, got {d}")
    tame = tuple(phi_inverse_set(d))
    return RefinedBound(
        d=d,
        p=p,
        tame_max=max(tame),
        tame_set=tame,
        tame_lcm=math.lcm(*tame),
        wild_part=p_part_c_d(d, p, scan_depth),
    )
