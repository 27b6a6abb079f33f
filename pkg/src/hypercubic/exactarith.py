"""Exact integer utilities shared by every counting module.

All integer quantities are plain Python ints (arbitrary precision), so the
arithmetic here is exact by construction and there is no overflow to guard.

The canonical representative of a point (mu : lambda) of the rational
projective line is fixed once, package-wide, as

    mu >= 1,   or   (mu, lambda) = (0, 1),

with gcd(mu, lambda) = 1.  Every module that sums or counts over the
projective line enumerates this set, so each point is seen exactly once.
"""

from __future__ import annotations

import math
from typing import Iterator, NamedTuple


class PrimitivePair(NamedTuple):
    """Canonical primitive representative (mu, lam) of a projective-line point."""

    mu: int
    lam: int

    def is_canonical(self) -> bool:
        if math.gcd(self.mu, self.lam) != 1:
            return False
        return self.mu >= 1 or (self.mu, self.lam) == (0, 1)

    @property
    def norm_sq(self) -> int:
        return self.mu * self.mu + self.lam * self.lam


def canonical_pair(t0: int, t1: int) -> PrimitivePair:
    """Reduce an arbitrary nonzero integer pair to its canonical representative."""
    if t0 == 0 and t1 == 0:
        raise ValueError("(0, 0) does not represent a projective point")
    g = math.gcd(t0, t1)
    mu, lam = t0 // g, t1 // g
    if mu < 0 or (mu == 0 and lam < 0):
        mu, lam = -mu, -lam
    return PrimitivePair(mu, lam)


def isqrt(n: int) -> int:
    """floor(sqrt(n)), exactly: the r with r*r <= n < (r+1)*(r+1)."""
    if n < 0:
        raise ValueError(f"isqrt of negative value {n}")
    return math.isqrt(n)


def moebius(n: int) -> int:
    """Moebius function of n >= 1, by trial-division factorization."""
    if n <= 0:
        raise ValueError(f"moebius undefined for {n}")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1 if p == 2 else 2
    if n > 1:
        result = -result
    return result


def moebius_sieve(limit: int) -> list[int]:
    """Table m with m[n] = moebius(n) for 1 <= n <= limit (m[0] unused).

    Linear sieve; used where many consecutive values are needed (the
    primitivity inversion inside the fiber counters).
    """
    if limit < 1:
        raise ValueError(f"moebius_sieve needs limit >= 1, got {limit}")
    mob = [0] * (limit + 1)
    mob[1] = 1
    primes: list[int] = []
    is_comp = bytearray(limit + 1)
    for i in range(2, limit + 1):
        if not is_comp[i]:
            primes.append(i)
            mob[i] = -1
        for p in primes:
            ip = i * p
            if ip > limit:
                break
            is_comp[ip] = 1
            if i % p == 0:
                mob[ip] = 0
                break
            mob[ip] = -mob[i]
    return mob


def is_squarefree(a: int) -> bool:
    """True iff no prime square divides |a|; a must be nonzero."""
    if a == 0:
        raise ValueError("squarefreeness undefined for 0")
    n = abs(a)
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return False
        else:
            p += 1 if p == 2 else 2
    return True


def gcd_decompose(a: int, mu: int) -> tuple[int, int, int]:
    """Split off the common factor: d = gcd(|a|, |mu|), mu = mu1*d, a = a1*d."""
    if a == 0 or mu == 0:
        raise ValueError(f"gcd_decompose needs nonzero inputs, got a={a}, mu={mu}")
    d = math.gcd(a, mu)
    return d, mu // d, a // d


def primitive_pairs(radius_sq: int) -> Iterator[PrimitivePair]:
    """All canonical pairs with mu^2 + lam^2 <= radius_sq.

    Deterministic order: mu ascending, then lam ascending, so any consumer
    that folds over the stream is reproducible byte-for-byte.
    """
    if radius_sq < 0:
        raise ValueError(f"radius_sq must be >= 0, got {radius_sq}")
    if radius_sq >= 1:
        yield PrimitivePair(0, 1)
    mu = 1
    gcd = math.gcd
    while mu * mu <= radius_sq:
        lmax = math.isqrt(radius_sq - mu * mu)
        for lam in range(-lmax, lmax + 1):
            if gcd(mu, lam) == 1:
                yield PrimitivePair(mu, lam)
        mu += 1
