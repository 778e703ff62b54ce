"""Exact integer primitives.

Deterministic primality (64-bit range), factorization by trial division
plus Brent-cycle Pollard rho, factored nonnegative integers, Euler's
totient and the enumeration of its inverse image, p-adic valuations, and
an excluding prime iterator.

Everything here is pure and exact; FactoredInt is immutable and safe to
share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Set, Tuple, Union

# Deterministic Miller-Rabin witness set for n < 2^64 (Sinclair / Jaeschke).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

PRIMALITY_LIMIT = 2 ** 64

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(n: int) -> bool:
    """Deterministic primality for 0 <= n < 2**64.

    Inputs at or above 2**64 are rejected outright: this library never
    returns a probabilistic "prime" verdict.
    """
    if n < 0:
        raise ValueError("primality is defined for nonnegative integers")
    if n >= PRIMALITY_LIMIT:
        raise ValueError(f"primality check limited to n < 2**64, got {n}")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """Brent-cycle Pollard rho; returns a nontrivial factor of composite odd n."""
    if n % 2 == 0:
        return 2
    x0, c, m = 2, 1, 128
    while True:
        y, r, q = x0, 1, 1
        g = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        c += 1


def factorize(n: int) -> Dict[int, int]:
    """Full prime factorization of n >= 1 as {prime: exponent}.

    Every reported prime is certified by the deterministic test, so any
    cofactor whose primality cannot be decided (>= 2**64) raises rather
    than being accepted on faith.
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}; need n >= 1")
    factors: Dict[int, int] = {}
    for p in _SMALL_PRIMES:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    # trial division a bit beyond the wheel primes
    p = 49
    while p * p <= n and p < 10_000:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if m >= PRIMALITY_LIMIT:
            # is_prime would raise anyway; make the failure mode explicit
            raise ValueError(
                f"cofactor {m} exceeds the deterministic primality range")
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return factors


@dataclass(frozen=True)
class FactoredInt:
    """Nonnegative integer held as a sorted tuple of (prime, exponent) pairs.

    The empty tuple denotes 1.  This is the only representation used for
    bound constants, which routinely exceed machine words by hundreds of
    digits; expansion to a plain int is available but never required.
    """

    factors: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        last = 1
        for p, e in self.factors:
            if p <= last:
                raise ValueError("factors must be sorted by strictly increasing prime")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            if e < 1:
                raise ValueError(f"exponent of {p} must be >= 1, got {e}")
            last = p

    @classmethod
    def from_dict(cls, factors: Dict[int, int]) -> "FactoredInt":
        return cls(tuple(sorted((p, e) for p, e in factors.items() if e > 0)))

    @classmethod
    def from_int(cls, n: int) -> "FactoredInt":
        return cls.from_dict(factorize(n))

    def as_dict(self) -> Dict[int, int]:
        return dict(self.factors)

    def value(self) -> int:
        v = 1
        for p, e in self.factors:
            v *= p ** e
        return v

    def digit_count(self) -> int:
        bits = sum(e * p.bit_length() for p, e in self.factors)
        # cheap upper estimate is enough for display decisions on huge values
        if bits > 10_000:
            return int(bits * math.log10(2)) + 1
        return len(str(self.value()))

    def __mul__(self, other: "FactoredInt") -> "FactoredInt":
        merged = self.as_dict()
        for p, e in other.factors:
            merged[p] = merged.get(p, 0) + e
        return FactoredInt.from_dict(merged)

    def valuation(self, q: int) -> int:
        for p, e in self.factors:
            if p == q:
                return e
        return 0

    def p_part(self, q: int) -> "FactoredInt":
        e = self.valuation(q)
        return FactoredInt(((q, e),)) if e else FactoredInt()

    def gcd(self, other: "FactoredInt") -> "FactoredInt":
        out = {}
        mine = self.as_dict()
        for p, e in other.factors:
            m = min(mine.get(p, 0), e)
            if m:
                out[p] = m
        return FactoredInt.from_dict(out)

    def divides(self, other: "FactoredInt") -> bool:
        theirs = other.as_dict()
        return all(theirs.get(p, 0) >= e for p, e in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


FACTORED_ONE = FactoredInt()


def gcd_factored(a: FactoredInt, b: FactoredInt) -> FactoredInt:
    """Keywise minimum of exponents; agrees with the Euclidean gcd of values."""
    return a.gcd(b)


def primes() -> Iterator[int]:
    """Unbounded increasing prime generator (incremental sieve)."""
    yield 2
    composites: Dict[int, int] = {}
    n = 3
    while True:
        step = composites.pop(n, None)
        if step is None:
            yield n
            composites[n * n] = 2 * n
        else:
            m = n + step
            while m in composites:
                m += step
            composites[m] = step
        n += 2


class PrimeIter:
    """Increasing prime iterator that skips an exclusion set.

    Used as the index set of gcd scans over primes distinct from the
    residue characteristic.
    """

    def __init__(self, exclusions: Optional[Iterable[int]] = None):
        self.exclusions: Set[int] = set(exclusions or ())
        for p in self.exclusions:
            if not is_prime(p):
                raise ValueError(f"exclusion {p} is not prime")
        self._gen = primes()

    def __iter__(self) -> "PrimeIter":
        return self

    def __next__(self) -> int:
        p = next(self._gen)
        while p in self.exclusions:
            p = next(self._gen)
        return p

    def take(self, count: int) -> List[int]:
        return [next(self) for _ in range(count)]


def euler_phi(i: int) -> int:
    """Count of units mod i, from the factorization of i."""
    if i < 1:
        raise ValueError(f"euler_phi needs i >= 1, got {i}")
    phi = 1
    for p, e in factorize(i).items():
        phi *= p ** (e - 1) * (p - 1)
    return phi


def totient_sieve(limit: int) -> List[int]:
    """phi(i) for 0 <= i <= limit, by the usual multiplicative sieve."""
    phi = list(range(limit + 1))
    for p in range(2, limit + 1):
        if phi[p] == p:  # p prime
            for m in range(p, limit + 1, p):
                phi[m] -= phi[m] // p
    return phi


def phi_inverse_set(d: int) -> List[int]:
    """All i with phi(i) <= d, sorted.

    phi(i) >= sqrt(i/2) for every i >= 1, so phi(i) <= d forces
    i <= 2*d**2 and scanning that far is exhaustive.
    """
    if d < 1:
        raise ValueError(f"phi_inverse_set needs d >= 1, got {d}")
    limit = 2 * d * d
    phi = totient_sieve(limit)
    return [i for i in range(1, limit + 1) if phi[i] <= d]


def valuation(n: Union[int, FactoredInt], q: int) -> int:
    """Exact q-adic valuation of n >= 1 for a prime q."""
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    if isinstance(n, FactoredInt):
        return n.valuation(q)
    if n < 1:
        raise ValueError(f"valuation needs n >= 1, got {n}")
    v = 0
    while n % q == 0:
        n //= q
        v += 1
    return v
