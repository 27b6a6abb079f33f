"""Exact point counts through the fibration into linear subspaces.

Both counted hypersurfaces fiber over the projective line via
y = (t0 : t1).  On each fiber the points of height <= B biject with
primitive integer tuples in a region cut out by a positive definite
quadratic form:

  ruled surface, y = (mu : lam), mu != 0, with d = gcd(a, mu), mu = mu1*d,
  a = a1*d:
      (mu^2 + lam^2)*tau0^2 + g*tau3^2 <= B^2,
      g = (mu1*lam)^2 + (mu1^2*d + a1*lam^2)^2,
      via (tau0, tau3) -> (mu*tau0, lam*tau0, -(mu1^2*d + a1*lam^2)*tau3,
                           (mu1*lam)*tau3)

  ruled surface, y = (0 : 1):
      tau0^2 + tau3^2 <= B^2, via (tau0, tau3) -> (0, tau0, tau3, 0)

  threefold, any canonical y, with A = mu^2 + lam^2:
      A*(tau0^2 + tau2^2 + tau3^2) + 2*mu*lam*tau2*tau3 <= B^2,
      via (tau0, tau2, tau3) -> (mu*tau0, lam*tau0, lam*tau2, mu*tau3,
                                 -mu*tau2 - lam*tau3)

In every case the projective count is #{tau : tau0 >= 1, gcd(tau) = 1,
Q(tau) <= B^2}.  Two routes compute it:

  route="direct"  enumerate tuples, filtering by gcd.  Faithful to the
                  definition, cost proportional to the number of points.
  route="mobius"  Moebius inversion over the gcd: since Q is integer valued
                  and Q(k*tau) = k^2 Q(tau), the count equals
                  sum_k moebius(k) * #{tau : tau0 >= 1, Q(tau) <= floor(B^2/k^2)},
                  and the inner unrestricted counts reduce to O(1) integer
                  square roots per lattice line.  Exact, and the only viable
                  route when a single fiber holds ~1e9 points.
  route="auto"    the one-point-window shortcut, then "mobius".

The one-point windows are exact: a non-base point of a surface fiber has
height^2 >= A + g (it needs tau3 != 0), and of a threefold fiber
height^2 >= 2A (it needs (tau2, tau3) != (0, 0), and the minimum of the
binary part over nonzero (tau2, tau3) is exactly A because |mu*lam| <= A/2).
So count = 1 iff A <= B^2 < A + g, resp. A <= B^2 < 2A.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional

from .exactarith import PrimitivePair, gcd_decompose, moebius_sieve
from .forms import KIND_CAYLEY, KIND_THREEFOLD, SurfaceSpec
from .oracle import HeightBound, ProjPoint, as_bound

_ROUTES = ("auto", "direct", "mobius")


@dataclass(frozen=True)
class FiberData:
    """Derived constants of one fiber's quadratic form."""

    y: PrimitivePair
    norm_sq: int  # A = mu^2 + lam^2
    # ruled surface, mu != 0
    d: Optional[int] = None
    mu1: Optional[int] = None
    a1: Optional[int] = None
    g: Optional[int] = None
    # threefold
    cross: Optional[int] = None  # 2*mu*lam

    @property
    def zero_mu(self) -> bool:
        return self.y.mu == 0


@dataclass(frozen=True)
class FiberCount:
    y: PrimitivePair
    count: int
    min_height_sq: Optional[int]


def _require_canonical(y: PrimitivePair) -> PrimitivePair:
    y = PrimitivePair(*y)
    if not y.is_canonical():
        raise ValueError(f"{y} is not a canonical primitive pair")
    return y


def fiber_data(spec: SurfaceSpec, y: PrimitivePair) -> FiberData:
    """Quadratic-form constants of the fiber over y."""
    y = _require_canonical(y)
    mu, lam = y
    if spec.kind == KIND_CAYLEY:
        if mu == 0:
            return FiberData(y, norm_sq=1, g=1)
        d, mu1, a1 = gcd_decompose(spec.a, mu)
        g = (mu1 * lam) ** 2 + (mu1 * mu1 * d + a1 * lam * lam) ** 2
        return FiberData(y, norm_sq=mu * mu + lam * lam, d=d, mu1=mu1, a1=a1, g=g)
    if spec.kind == KIND_THREEFOLD:
        return FiberData(y, norm_sq=mu * mu + lam * lam, cross=2 * mu * lam)
    raise ValueError(f"no fibration for surface kind {spec.kind!r}")


def fiber_param(
    spec: SurfaceSpec, y: PrimitivePair, tau: tuple[int, ...]
) -> tuple[int, ...]:
    """Ambient integer point of the fiber parameterization at tau.

    The image satisfies the defining cubic exactly and lies on fiber y.
    Surface fibers take tau = (tau0, tau3); y = (0 : 1) uses the special map
    (0, tau0, tau3, 0).  Threefold fibers take tau = (tau0, tau2, tau3).
    """
    y = _require_canonical(y)
    mu, lam = y
    if spec.kind == KIND_CAYLEY:
        if len(tau) != 2:
            raise ValueError(f"surface fibers take (tau0, tau3), got {tau}")
        tau0, tau3 = tau
        if mu == 0:
            return (0, tau0, tau3, 0)
        d, mu1, a1 = gcd_decompose(spec.a, mu)
        return (
            mu * tau0,
            lam * tau0,
            -(mu1 * mu1 * d + a1 * lam * lam) * tau3,
            (mu1 * lam) * tau3,
        )
    if spec.kind == KIND_THREEFOLD:
        if len(tau) != 3:
            raise ValueError(f"threefold fibers take (tau0, tau2, tau3), got {tau}")
        tau0, tau2, tau3 = tau
        return (
            mu * tau0,
            lam * tau0,
            lam * tau2,
            mu * tau3,
            -mu * tau2 - lam * tau3,
        )
    raise ValueError(f"no fibration for surface kind {spec.kind!r}")


# ---------------------------------------------------------------------------
# Unrestricted (all-tuple) region counts: O(1) integer work per lattice line.
# ---------------------------------------------------------------------------


def _binary_all(A: int, g: int, Y: int) -> int:
    # #{(tau0 >= 1, tau3) : A*tau0^2 + g*tau3^2 <= Y}
    isqrt = math.isqrt
    total = 0
    for tau0 in range(1, isqrt(Y // A) + 1):
        total += 2 * isqrt((Y - A * tau0 * tau0) // g) + 1
    return total


def _ternary_all(A: int, c: int, P: int, Y: int) -> int:
    # #{(tau0 >= 1, tau2, tau3) : A*(tau0^2+tau2^2+tau3^2) + 2c*tau2*tau3 <= Y},
    # P = A^2 - c^2 > 0.  For fixed tau0, tau3 the tau2 interval comes from
    # (A*tau2 + c*tau3)^2 <= A*Z - P*tau3^2 with Z the remaining budget, so a
    # single integer square root counts the whole line; +/-tau3 give equal
    # counts (negate tau2), so only tau3 >= 0 is walked.
    isqrt = math.isqrt
    total = 0
    for tau0 in range(1, isqrt(Y // A) + 1):
        z_cap = A * (Y - A * tau0 * tau0)
        s0 = isqrt(z_cap)
        total += 2 * (s0 // A) + 1
        for tau3 in range(1, isqrt(z_cap // P) + 1):
            s = isqrt(z_cap - P * tau3 * tau3)
            ct3 = c * tau3
            total += 2 * ((s - ct3) // A + (s + ct3) // A + 1)
    return total


def _binary_prim(A: int, g: int, X: int, mob: list[int]) -> int:
    # Moebius inversion of _binary_all over the tuple gcd.
    if A > X:
        return 0
    total = 0
    k = 1
    while A * k * k <= X:
        m = mob[k]
        if m:
            total += m * _binary_all(A, g, X // (k * k))
        k += 1
    return total


def _ternary_prim(A: int, c: int, X: int, mob: list[int]) -> int:
    if A > X:
        return 0
    P = A * A - c * c
    total = 0
    k = 1
    while A * k * k <= X:
        m = mob[k]
        if m:
            total += m * _ternary_all(A, c, P, X // (k * k))
        k += 1
    return total


# ---------------------------------------------------------------------------
# Direct enumeration (gcd filtering), also used to list fiber points.
# ---------------------------------------------------------------------------


def _iter_binary_prim(A: int, g: int, X: int) -> Iterator[tuple[int, int]]:
    gcd, isqrt = math.gcd, math.isqrt
    for tau0 in range(1, isqrt(X // A) + 1):
        t3max = isqrt((X - A * tau0 * tau0) // g)
        for tau3 in range(-t3max, t3max + 1):
            if gcd(tau0, tau3) == 1:
                yield tau0, tau3


def _iter_ternary_prim(A: int, c: int, X: int) -> Iterator[tuple[int, int, int]]:
    gcd, isqrt = math.gcd, math.isqrt
    P = A * A - c * c
    for tau0 in range(1, isqrt(X // A) + 1):
        z_cap = A * (X - A * tau0 * tau0)
        for tau3 in range(-isqrt(z_cap // P), isqrt(z_cap // P) + 1):
            s = isqrt(z_cap - P * tau3 * tau3)
            ct3 = c * tau3
            for tau2 in range(-((s + ct3) // A), (s - ct3) // A + 1):
                if gcd(tau0, tau2, tau3) == 1:
                    yield tau0, tau2, tau3


def _fiber_form(spec: SurfaceSpec, y: PrimitivePair) -> tuple[int, ...]:
    data = fiber_data(spec, y)
    if spec.kind == KIND_CAYLEY:
        return (data.norm_sq, data.g)
    return (data.norm_sq, data.cross // 2)


def fiber_count(
    spec: SurfaceSpec,
    y: PrimitivePair,
    bound: "HeightBound | int",
    route: str = "auto",
) -> FiberCount:
    """Exact number of height <= B points of the fiber over y."""
    if route not in _ROUTES:
        raise ValueError(f"route must be one of {_ROUTES}, got {route!r}")
    y = _require_canonical(y)
    bound = as_bound(bound)
    X = bound.b_sq
    if spec.kind == KIND_CAYLEY:
        A, g = _fiber_form(spec, y)
        if route == "direct":
            n = sum(1 for _ in _iter_binary_prim(A, g, X))
        elif route == "mobius" or not (A <= X < A + g):
            n = _binary_prim(A, g, X, moebius_sieve(max(1, math.isqrt(X // A))))
        else:
            n = 1
    else:
        A, c = _fiber_form(spec, y)
        if route == "direct":
            n = sum(1 for _ in _iter_ternary_prim(A, c, X))
        elif route == "mobius" or not (A <= X < 2 * A):
            n = _ternary_prim(A, c, X, moebius_sieve(max(1, math.isqrt(X // A))))
        else:
            n = 1
    return FiberCount(y, n, A if n else None)


def fiber_points(
    spec: SurfaceSpec, y: PrimitivePair, bound: "HeightBound | int"
) -> list[ProjPoint]:
    """Canonical ambient points of the fiber over y with height <= B.

    Built by pushing the counted tau tuples through fiber_param; the images
    are required to come out primitive and canonical already (the
    parameterization is a bijection on primitive tuples), so any defect
    raises instead of being silently repaired.
    """
    y = _require_canonical(y)
    bound = as_bound(bound)
    X = bound.b_sq
    pts = []
    if spec.kind == KIND_CAYLEY:
        A, g = _fiber_form(spec, y)
        for tau in _iter_binary_prim(A, g, X):
            pts.append(ProjPoint.of_primitive(fiber_param(spec, y, tau)))
    else:
        A, c = _fiber_form(spec, y)
        for tau in _iter_ternary_prim(A, c, X):
            pts.append(ProjPoint.of_primitive(fiber_param(spec, y, tau)))
    return sorted(pts)


def total_count(spec: SurfaceSpec, bound: "HeightBound | int", route: str = "auto") -> int:
    """N(V, B) as the sum of exact per-fiber counts over canonical y.

    Pure integer arithmetic throughout; the result is identical for any
    partition of the fiber range, so any execution order reproduces it.
    """
    if route not in _ROUTES:
        raise ValueError(f"route must be one of {_ROUTES}, got {route!r}")
    bound = as_bound(bound)
    b, X = bound.b, bound.b_sq
    gcd, isqrt = math.gcd, math.isqrt
    mob = moebius_sieve(b)

    if spec.kind == KIND_CAYLEY:
        a = spec.a
        abs_a = abs(a)
        total = _count_binary_routed(1, 1, X, mob, route)  # fiber (0 : 1)
        for mu in range(1, b + 1):
            mu2 = mu * mu
            if mu2 > X:
                break
            d = gcd(abs_a, mu)
            mu1 = mu // d
            a1 = a // d
            m1sq_d = mu1 * mu1 * d
            lmax = isqrt(X - mu2)
            for lam in range(-lmax, lmax + 1):
                if gcd(mu, lam) != 1:
                    continue
                A = mu2 + lam * lam
                t = mu1 * lam
                u = m1sq_d + a1 * lam * lam
                g = t * t + u * u
                if route != "direct" and X < A + g:
                    total += 1
                else:
                    total += _count_binary_routed(A, g, X, mob, route)
        return total

    if spec.kind == KIND_THREEFOLD:
        total = _count_ternary_routed(1, 0, X, mob, route)  # fiber (0 : 1)
        for mu in range(1, b + 1):
            mu2 = mu * mu
            if mu2 > X:
                break
            lmax = isqrt(X - mu2)
            for lam in range(-lmax, lmax + 1):
                if gcd(mu, lam) != 1:
                    continue
                A = mu2 + lam * lam
                if route != "direct" and X < 2 * A:
                    total += 1
                else:
                    total += _count_ternary_routed(A, mu * lam, X, mob, route)
        return total

    raise ValueError(f"no fibration for surface kind {spec.kind!r}")


def _count_binary_routed(A: int, g: int, X: int, mob: list[int], route: str) -> int:
    if route == "direct":
        return sum(1 for _ in _iter_binary_prim(A, g, X)) if A <= X else 0
    return _binary_prim(A, g, X, mob)


def _count_ternary_routed(A: int, c: int, X: int, mob: list[int], route: str) -> int:
    if route == "direct":
        return sum(1 for _ in _iter_ternary_prim(A, c, X)) if A <= X else 0
    return _ternary_prim(A, c, X, mob)
