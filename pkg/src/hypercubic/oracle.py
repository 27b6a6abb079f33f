"""Brute-force enumeration of rational points of bounded height.

This is the ground truth the fibration counter is tested against: scan the
whole integer box, keep exact solutions of the defining cubic off the line
{t0 = t1 = 0}, and reduce to canonical primitive representatives (first
nonzero coordinate positive).  Complexity is O(B^(n+1)) by design; the
point of this module is independence from the fast counter, not speed.

The box scan is vectorized with int64 arrays.  Every run first proves, from
B and the surface coefficient, that no intermediate can reach 2^63; if the
bound fails the run aborts rather than risk silent wraparound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .exactarith import PrimitivePair, canonical_pair
from .forms import KIND_CAYLEY, KIND_THREEFOLD, SurfaceSpec

_INT64_MAX = 2**63 - 1


@dataclass(frozen=True, order=True)
class ProjPoint:
    """Canonical primitive integer representative of a rational projective point."""

    coords: tuple[int, ...]

    @staticmethod
    def of_primitive(coords: Iterable[int]) -> "ProjPoint":
        """Wrap coordinates that must already be primitive and canonical."""
        c = tuple(int(x) for x in coords)
        if not any(c):
            raise ValueError("all-zero tuple is not a projective point")
        if math.gcd(*c) != 1:
            raise ValueError(f"tuple {c} is not primitive")
        first = next(x for x in c if x)
        if first < 0:
            raise ValueError(f"tuple {c} is not canonical (first nonzero coordinate negative)")
        return ProjPoint(c)

    @staticmethod
    def canonicalize(coords: Iterable[int]) -> "ProjPoint":
        """Divide out the gcd and fix the sign of the first nonzero coordinate."""
        c = tuple(int(x) for x in coords)
        if not any(c):
            raise ValueError("all-zero tuple is not a projective point")
        g = math.gcd(*c)
        c = tuple(x // g for x in c)
        first = next(x for x in c if x)
        if first < 0:
            c = tuple(-x for x in c)
        return ProjPoint(c)

    @property
    def norm_sq(self) -> int:
        return sum(x * x for x in self.coords)


@dataclass(frozen=True)
class HeightBound:
    """Height cutoff B; the condition H(t) <= B is evaluated exactly as sum(t_i^2) <= b_sq."""

    b: int

    def __post_init__(self) -> None:
        if self.b < 1:
            raise ValueError(f"height bound must be a positive integer, got {self.b}")

    @property
    def b_sq(self) -> int:
        return self.b * self.b


def as_bound(b: "HeightBound | int") -> HeightBound:
    return b if isinstance(b, HeightBound) else HeightBound(int(b))


def _require_countable(spec: SurfaceSpec) -> None:
    if spec.kind not in (KIND_CAYLEY, KIND_THREEFOLD):
        raise ValueError(f"point counting is defined for the cayley and threefold families, not {spec.kind!r}")


def _guard_int64(bound: HeightBound, spec: SurfaceSpec) -> None:
    # Largest intermediates: the cubic's value and the squared norm.
    b = bound.b
    if spec.kind == KIND_CAYLEY:
        worst = b**3 * (2 + abs(spec.a))
    else:
        worst = 3 * b**3
    worst = max(worst, 5 * b * b)
    if worst > _INT64_MAX:
        raise OverflowError(
            f"box scan at B={b} would exceed the exact int64 range; refusing to risk wraparound"
        )


def _collect(columns: list[np.ndarray]) -> list[tuple[int, ...]]:
    if columns[0].size == 0:
        return []
    g = columns[0]
    for col in columns[1:]:
        g = np.gcd(g, col)
    keep = g == 1
    stacked = np.stack([col[keep] for col in columns], axis=1)
    return [tuple(int(x) for x in row) for row in stacked]


def _enumerate_cayley(a: int, bound: HeightBound) -> list[tuple[int, ...]]:
    b, b_sq = bound.b, bound.b_sq
    t = np.arange(-b, b + 1, dtype=np.int64)
    t1 = t[:, None, None]
    t2 = t[None, :, None]
    t3 = t[None, None, :]
    t1sq = t1 * t1
    prod12 = t1 * t2
    a_t1sq = a * t1sq
    norm123 = t1sq + t2 * t2 + t3 * t3

    found: list[tuple[int, ...]] = []
    for t0 in range(0, b + 1):
        if t0 == 0:
            # Canonical reps with t0 = 0 need t1 >= 1; t0 = t1 = 0 is the
            # excluded non-normal line.
            sl = slice(b + 1, None)
            f = t3 * a_t1sq[sl]
            mask = (f == 0) & (norm123[sl] <= b_sq)
            idx = np.argwhere(mask)
            cols = [
                np.zeros(len(idx), dtype=np.int64),
                t[idx[:, 0] + b + 1],
                t[idx[:, 1]],
                t[idx[:, 2]],
            ]
        else:
            f = t0 * prod12 + t3 * (t0 * t0 + a_t1sq)
            mask = (f == 0) & (norm123 + t0 * t0 <= b_sq)
            idx = np.argwhere(mask)
            cols = [
                np.full(len(idx), t0, dtype=np.int64),
                t[idx[:, 0]],
                t[idx[:, 1]],
                t[idx[:, 2]],
            ]
        found.extend(_collect(cols))
    return found


def _enumerate_threefold(bound: HeightBound) -> list[tuple[int, ...]]:
    b, b_sq = bound.b, bound.b_sq
    t = np.arange(-b, b + 1, dtype=np.int64)
    t2 = t[:, None, None]
    t3 = t[None, :, None]
    t4 = t[None, None, :]
    norm234 = t2 * t2 + t3 * t3 + t4 * t4

    found: list[tuple[int, ...]] = []
    for t0 in range(0, b + 1):
        t1_lo = 1 if t0 == 0 else -b
        for t1 in range(t1_lo, b + 1):
            head = t0 * t0 + t1 * t1
            if head > b_sq:
                continue
            f = (t0 * t0) * t2 + (t1 * t1) * t3 + (t0 * t1) * t4
            mask = (f == 0) & (norm234 <= b_sq - head)
            idx = np.argwhere(mask)
            cols = [
                np.full(len(idx), t0, dtype=np.int64),
                np.full(len(idx), t1, dtype=np.int64),
                t[idx[:, 0]],
                t[idx[:, 1]],
                t[idx[:, 2]],
            ]
            found.extend(_collect(cols))
    return found


def enumerate_points(spec: SurfaceSpec, bound: "HeightBound | int") -> list[ProjPoint]:
    """All points of V = W minus {t0 = t1 = 0} with height at most B.

    Each projective point appears exactly once, as its canonical primitive
    tuple; output sorted lexicographically.
    """
    _require_countable(spec)
    bound = as_bound(bound)
    _guard_int64(bound, spec)
    if spec.kind == KIND_CAYLEY:
        raw = _enumerate_cayley(spec.a, bound)
    else:
        raw = _enumerate_threefold(bound)
    return [ProjPoint(c) for c in sorted(raw)]


def count(spec: SurfaceSpec, bound: "HeightBound | int") -> int:
    """N(V, B) by exhaustive search."""
    return len(enumerate_points(spec, bound))


def counts_up_to(spec: SurfaceSpec, b_max: int) -> list[int]:
    """[N(V, 1), ..., N(V, b_max)] from a single enumeration at b_max."""
    pts = enumerate_points(spec, HeightBound(b_max))
    norms = sorted(p.norm_sq for p in pts)
    out: list[int] = []
    i = 0
    for b in range(1, b_max + 1):
        b_sq = b * b
        while i < len(norms) and norms[i] <= b_sq:
            i += 1
        out.append(i)
    return out


def fiber_of(p: ProjPoint, spec: SurfaceSpec) -> PrimitivePair:
    """The projective-line point under a given surface point: (t0 : t1), canonical."""
    _require_countable(spec)
    if len(p.coords) != spec.num_vars:
        raise ValueError(f"point has {len(p.coords)} coordinates, expected {spec.num_vars}")
    t0, t1 = p.coords[0], p.coords[1]
    if t0 == 0 and t1 == 0:
        raise ValueError("point lies on the non-normal line {t0 = t1 = 0}; it has no fiber")
    return canonical_pair(t0, t1)
