"""Leading-constant series and exact-count vs prediction comparisons.

The counting functions obey, as B grows,

  ruled surface:   N(V, B) ~ (pi/(4*zeta(2))) * (4 + S_a) * B^2,
                   S_a = sum over primitive (mu, lam), mu != 0, of
                         gcd(a, mu) / sqrt(f_a(mu, lam)),
                   f_a = (lam^2 + mu^2) * (lam^2 mu^2 + (mu^2 + a lam^2)^2)

  threefold:       N(V, B) ~ (pi/(3*zeta(3))) * S * B^3,
                   S = sum over all primitive (mu, lam) of 1/sqrt(f),
                   f = (lam^2 + mu^2) * (lam^2 mu^2 + mu^4 + lam^4)

with pi/(4*zeta(2)) = 3/(2*pi) exactly.  This module evaluates truncations
of the two series over the disk mu^2 + lam^2 <= R^2 together with a tail
bound that provably dominates the discarded terms, and packages the
exact-count comparison used by the convergence reports.

Summation is deterministic: terms are generated in a fixed order (mu
ascending, lam ascending within each row), each row is reduced by numpy's
pairwise sum, and rows are combined with math.fsum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from . import fibration, oracle
from .exactarith import is_squarefree
from .forms import KIND_CAYLEY, KIND_THREEFOLD, SurfaceSpec


@dataclass(frozen=True)
class SeriesTruncation:
    """Partial sum over the disk mu^2 + lam^2 <= radius_sq, with a tail estimate."""

    radius: int
    radius_sq: int
    partial_sum: float
    tail_bound: float
    terms_used: int


@dataclass(frozen=True)
class CountReport:
    surface: SurfaceSpec
    b: int
    exact_count: int
    predicted: float
    rel_error: float
    method: str


def f_cayley(a: int, mu: int, lam: int) -> int:
    """Series weight of the ruled surface; requires mu != 0."""
    if mu == 0:
        raise ValueError("the surface series excludes mu = 0")
    mu2, lam2 = mu * mu, lam * lam
    return (lam2 + mu2) * (lam2 * mu2 + (mu2 + a * lam2) ** 2)


def f_threefold(mu: int, lam: int) -> int:
    """Series weight of the threefold."""
    if mu == 0 and lam == 0:
        raise ValueError("(0, 0) is not a projective point")
    mu2, lam2 = mu * mu, lam * lam
    return (lam2 + mu2) * (lam2 * mu2 + mu2 * mu2 + lam2 * lam2)


def _resolve_radius(radius: Optional[int], radius_sq: Optional[int]) -> tuple[int, int]:
    if (radius is None) == (radius_sq is None):
        raise ValueError("give exactly one of radius, radius_sq")
    if radius_sq is None:
        if radius < 1:
            raise ValueError(f"radius must be >= 1, got {radius}")
        return radius, radius * radius
    if radius_sq < 1:
        raise ValueError(f"radius_sq must be >= 1, got {radius_sq}")
    return math.isqrt(radius_sq), radius_sq


def _tail_cayley(a: int, r: float) -> float:
    # Term bound: with u = mu^2, v = lam^2, r2 = u + v, the weight satisfies
    # f/r2 = u*v + (u + a*v)^2.  For a > 0, u + a*v >= r2, so each term is at
    # most |a|/r2^(3/2).  For a < 0, either |u - |a|v| >= r2/(2(1+|a|)), or
    # v >= r2/(2(1+|a|)) and u >= r2/4, so f/r2 >= r2^2/(4(1+|a|)^2) and each
    # term is at most 2|a|(1+|a|)/r2^(3/2).  Comparing the lattice sum of
    # 1/r^3 outside radius R with its integral 2*pi/R (ratio < 1.25 for
    # R >= 10, denominator margin 0.9) gives sum <= 9/R, hence the constants
    # C1 = 9 (all a) and the extra C2 = 18 times |a|(1+|a|) when a < 0.
    c1, c2 = 9.0, 18.0
    t = c1 * abs(a) / r
    if a < 0:
        t += c2 * abs(a) * (1 + abs(a)) / r
    return t


def _tail_threefold(r: float) -> float:
    # Each term is at most sqrt(2)/r^3 (since mu^4 + lam^4 + mu^2 lam^2
    # >= (mu^2 + lam^2)^2 / 2), the lattice tail of 1/r^3 beyond R compares
    # to 2*pi/R, and a factor 2 covers the comparison slack.
    return 2.0 * (2.0 * math.sqrt(2.0) * math.pi) / r


def series_cayley(
    a: int, radius: Optional[int] = None, *, radius_sq: Optional[int] = None
) -> SeriesTruncation:
    """Truncated surface series: both signs of every pair, mu != 0."""
    if a == 0 or not is_squarefree(a):
        raise ValueError(f"coefficient must be nonzero squarefree, got {a}")
    r, rsq = _resolve_radius(radius, radius_sq)
    rows: list[float] = []
    terms = 0
    for mu in range(1, math.isqrt(rsq) + 1):
        mu2 = mu * mu
        lmax = math.isqrt(rsq - mu2)
        lam = np.arange(-lmax, lmax + 1, dtype=np.int64)
        lam = lam[np.gcd(mu, lam) == 1]
        if lam.size == 0:
            continue
        lam2 = lam.astype(np.float64) ** 2
        f = (lam2 + mu2) * (lam2 * mu2 + (mu2 + a * lam2) ** 2)
        rows.append(math.gcd(a, mu) * float(np.sum(1.0 / np.sqrt(f))))
        terms += int(lam.size)
    partial = 2.0 * math.fsum(rows)
    return SeriesTruncation(r, rsq, partial, _tail_cayley(a, math.sqrt(rsq)), 2 * terms)


def series_threefold(
    radius: Optional[int] = None, *, radius_sq: Optional[int] = None
) -> SeriesTruncation:
    """Truncated threefold series: both signs of every pair, mu = 0 included."""
    r, rsq = _resolve_radius(radius, radius_sq)
    rows: list[float] = [1.0]  # canonical pair (0, 1), weight f = 1
    terms = 1
    for mu in range(1, math.isqrt(rsq) + 1):
        mu2 = mu * mu
        lmax = math.isqrt(rsq - mu2)
        lam = np.arange(-lmax, lmax + 1, dtype=np.int64)
        lam = lam[np.gcd(mu, lam) == 1]
        if lam.size == 0:
            continue
        lam2 = lam.astype(np.float64) ** 2
        f = (lam2 + mu2) * (lam2 * mu2 + float(mu2) * mu2 + lam2 * lam2)
        rows.append(float(np.sum(1.0 / np.sqrt(f))))
        terms += int(lam.size)
    partial = 2.0 * math.fsum(rows)
    return SeriesTruncation(r, rsq, partial, _tail_threefold(math.sqrt(rsq)), 2 * terms)


@lru_cache(maxsize=None)
def zeta3(terms: int = 10_000) -> float:
    """zeta(3) by Euler-Maclaurin: sum_{n<=N} n^-3 + N^-2/2 - N^-3/2 + N^-4/4."""
    if terms < 10:
        raise ValueError("too few terms for the correction to hold 1e-12")
    head = math.fsum(n**-3 for n in range(1, terms + 1))
    n = float(terms)
    return head + 0.5 / (n * n) - 0.5 / (n**3) + 0.25 / (n**4)


SURFACE_PREFACTOR = 3.0 / (2.0 * math.pi)  # pi/(4*zeta(2)) with zeta(2) = pi^2/6


def threefold_prefactor() -> float:
    return math.pi / (3.0 * zeta3())


def leading_constant_cayley(
    a: int, radius: Optional[int] = None, *, radius_sq: Optional[int] = None
) -> float:
    """(3/(2*pi)) * (4 + truncated surface series)."""
    s = series_cayley(a, radius, radius_sq=radius_sq)
    return SURFACE_PREFACTOR * (4.0 + s.partial_sum)


def leading_constant_threefold(
    radius: Optional[int] = None, *, radius_sq: Optional[int] = None
) -> float:
    """(pi/(3*zeta(3))) * truncated threefold series."""
    s = series_threefold(radius, radius_sq=radius_sq)
    return threefold_prefactor() * s.partial_sum


def compare(
    spec: SurfaceSpec,
    b: int,
    radius: int,
    method: str = "fiber",
    constant: Optional[float] = None,
) -> CountReport:
    """Exact count against the truncated-constant prediction; reports, never asserts."""
    if method not in ("fiber", "brute"):
        raise ValueError(f"method must be fiber or brute, got {method!r}")
    if spec.kind == KIND_CAYLEY:
        exponent = 2
        if constant is None:
            constant = leading_constant_cayley(spec.a, radius)
    elif spec.kind == KIND_THREEFOLD:
        exponent = 3
        if constant is None:
            constant = leading_constant_threefold(radius)
    else:
        raise ValueError(f"no asymptotic prediction for surface kind {spec.kind!r}")
    if method == "fiber":
        exact = fibration.total_count(spec, b)
    else:
        exact = oracle.count(spec, b)
    predicted = constant * float(b) ** exponent
    rel_error = abs(exact - predicted) / predicted
    return CountReport(spec, b, exact, predicted, rel_error, method)
