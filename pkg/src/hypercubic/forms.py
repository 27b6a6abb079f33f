"""Sparse exact-coefficient homogeneous cubic forms and their linear algebra.

Provides the defining cubics of the two counted families, the catalog of
normal forms of non-cone, geometrically non-normal cubic hypersurfaces over
Q, exact linear substitution, proportionality testing, the explicit
automorphism family of the ruled threefold, and the rank-1 scroll
parameterization whose projection normalizes it.

Coefficients are stored as Fractions so that substitution along a rational
change of coordinates stays exact; the surface constructors emit integer
data.  Two presentations of the ruled threefold occur:

    counting form    t0^2*t2 + t1^2*t3 + t0*t1*t4      (surface_form)
    catalog form     t0^2*t2 + t0*t1*t3 + t1^2*t4      (threefold_normal_form)

They differ by swapping t3 and t4.  The automorphism matrices built by
aut_matrix preserve the catalog form (up to a scalar), and scroll_project
lands on the catalog form; the fibration and oracle modules count on the
counting form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .exactarith import is_squarefree

Exponents = tuple[int, ...]
Rational = int | Fraction


@dataclass(frozen=True)
class CubicForm:
    """Homogeneous cubic in num_vars variables, as exponent-vector -> coefficient.

    Zero coefficients are never stored; every stored exponent vector has
    length num_vars and total degree exactly 3.  Treat instances as
    immutable.
    """

    num_vars: int
    terms: dict[Exponents, Fraction]

    def is_zero(self) -> bool:
        return not self.terms


def cubic_form(num_vars: int, coeffs: Mapping[Exponents, Rational]) -> CubicForm:
    """Validating constructor; drops zero coefficients."""
    if not 1 <= num_vars <= 6:
        raise ValueError(f"num_vars must be in 1..6, got {num_vars}")
    terms: dict[Exponents, Fraction] = {}
    for expo, c in coeffs.items():
        e = tuple(int(x) for x in expo)
        if len(e) != num_vars:
            raise ValueError(f"exponent vector {e} has wrong length for {num_vars} variables")
        if any(x < 0 for x in e) or sum(e) != 3:
            raise ValueError(f"exponent vector {e} is not of total degree 3")
        c = Fraction(c)
        if c:
            terms[e] = terms.get(e, Fraction(0)) + c
            if not terms[e]:
                del terms[e]
    return CubicForm(num_vars, terms)


@dataclass(frozen=True)
class LinearChange:
    """Nonsingular square matrix of rationals; row i gives the image of t_i."""

    matrix: tuple[tuple[Fraction, ...], ...]

    @property
    def size(self) -> int:
        return len(self.matrix)


def linear_change(rows: Sequence[Sequence[Rational]]) -> LinearChange:
    m = tuple(tuple(Fraction(x) for x in row) for row in rows)
    n = len(m)
    if n == 0 or any(len(row) != n for row in m):
        raise ValueError("linear change must be a nonempty square matrix")
    if not _det(m):
        raise ValueError("linear change must be nonsingular")
    return LinearChange(m)


def identity_change(n: int) -> LinearChange:
    return linear_change([[1 if i == j else 0 for j in range(n)] for i in range(n)])


def compose(first: LinearChange, second: LinearChange) -> LinearChange:
    """Matrix so that substitute(substitute(f, first), second) == substitute(f, compose(first, second))."""
    if first.size != second.size:
        raise ValueError("cannot compose linear changes of different sizes")
    n = first.size
    a, b = first.matrix, second.matrix
    rows = [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return linear_change(rows)


def _det(matrix: tuple[tuple[Fraction, ...], ...]) -> Fraction:
    # Exact Gaussian elimination over Q.
    n = len(matrix)
    rows = [list(r) for r in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, n):
            if rows[r][col]:
                factor = rows[r][col] * inv
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return det


# ---------------------------------------------------------------------------
# Surface specifications
# ---------------------------------------------------------------------------

KIND_CAYLEY = "cayley"
KIND_THREEFOLD = "threefold"
KIND_CATALOG = "catalog"


@dataclass(frozen=True)
class SurfaceSpec:
    """Which counted family (or catalog entry) a computation refers to.

    kind "cayley":    t0*t1*t2 + t3*(t0^2 + a*t1^2) = 0 in P^3, a nonzero squarefree
    kind "threefold": t0^2*t2 + t1^2*t3 + t0*t1*t4 = 0 in P^4
    kind "catalog":   a normal-form catalog entry, identified by tag (+ params)
    """

    kind: str
    a: Optional[int] = None
    tag: Optional[str] = None
    params: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        if self.kind == KIND_CAYLEY:
            if self.a is None or self.a == 0 or not is_squarefree(self.a):
                raise ValueError(f"cayley coefficient must be nonzero squarefree, got {self.a}")
        elif self.kind == KIND_THREEFOLD:
            if self.a is not None:
                raise ValueError("threefold takes no coefficient")
        elif self.kind == KIND_CATALOG:
            if not self.tag:
                raise ValueError("catalog spec needs a tag")
        else:
            raise ValueError(f"unknown surface kind {self.kind!r}")

    @property
    def ambient_dim(self) -> int:
        if self.kind == KIND_CAYLEY:
            return 3
        if self.kind == KIND_THREEFOLD:
            return 4
        return catalog_entry(self.tag).ambient_dim

    @property
    def num_vars(self) -> int:
        return self.ambient_dim + 1

    def describe(self) -> str:
        if self.kind == KIND_CAYLEY:
            return f"cayley(a={self.a})"
        if self.kind == KIND_THREEFOLD:
            return "threefold"
        return f"catalog({self.tag})"


def cayley_surface(a: int) -> SurfaceSpec:
    return SurfaceSpec(KIND_CAYLEY, a=a)


def threefold() -> SurfaceSpec:
    return SurfaceSpec(KIND_THREEFOLD)


def catalog_only(tag: str, **params: int) -> SurfaceSpec:
    return SurfaceSpec(KIND_CATALOG, tag=tag, params=tuple(sorted(params.items())))


# ---------------------------------------------------------------------------
# Normal-form catalog
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    """One family of the normal-form catalog (non-cone, non-normal cubics over Q)."""

    tag: str
    ambient_dim: int
    param_slots: tuple[str, ...]
    constraint: str
    _builder: Callable[..., CubicForm]
    _validate: Callable[..., None] = field(default=lambda **kw: None)

    def form(self, **params: int) -> CubicForm:
        if set(params) != set(self.param_slots):
            raise ValueError(
                f"catalog entry {self.tag!r} takes parameters {self.param_slots}, got {tuple(params)}"
            )
        self._validate(**params)
        return self._builder(**params)


def _check_cayley_catalog_a(a: int) -> None:
    if a in (0, 1) or not is_squarefree(a):
        raise ValueError(f"parameter a must be squarefree and not in {{0, 1}}, got {a}")


_CATALOG: tuple[CatalogEntry, ...] = (
    CatalogEntry(
        tag="(t0^2+a t1^2)t2+t1^2(b t0+c t1)",
        ambient_dim=2,
        param_slots=("a", "b", "c"),
        constraint="a, b, c integers",
        _builder=lambda a, b, c: cubic_form(3, {(2, 0, 1): 1, (0, 2, 1): a, (1, 2, 0): b, (0, 3, 0): c}),
    ),
    CatalogEntry(
        tag="t0t1t2+t0^3+a t1^3",
        ambient_dim=2,
        param_slots=("a",),
        constraint="a integer",
        _builder=lambda a: cubic_form(3, {(1, 1, 1): 1, (3, 0, 0): 1, (0, 3, 0): a}),
    ),
    CatalogEntry(
        tag="t0^2t2+t1^2t3",
        ambient_dim=3,
        param_slots=(),
        constraint="",
        _builder=lambda: cubic_form(4, {(2, 0, 1, 0): 1, (0, 2, 0, 1): 1}),
    ),
    CatalogEntry(
        tag="t0t1t2+t3(t0^2+a t1^2)",
        ambient_dim=3,
        param_slots=("a",),
        constraint="a squarefree, a not in {0, 1}",
        _builder=lambda a: cubic_form(4, {(1, 1, 1, 0): 1, (2, 0, 0, 1): 1, (0, 2, 0, 1): a}),
        _validate=_check_cayley_catalog_a,
    ),
    CatalogEntry(
        tag="t0t1t2+t3t0^2+t1^3",
        ambient_dim=3,
        param_slots=(),
        constraint="",
        _builder=lambda: cubic_form(4, {(1, 1, 1, 0): 1, (2, 0, 0, 1): 1, (0, 3, 0, 0): 1}),
    ),
    CatalogEntry(
        tag="t0^2t2+t0t1t3+t1^2t4",
        ambient_dim=4,
        param_slots=(),
        constraint="",
        _builder=lambda: cubic_form(5, {(2, 0, 1, 0, 0): 1, (1, 1, 0, 1, 0): 1, (0, 2, 0, 0, 1): 1}),
    ),
)


def normal_form_catalog() -> tuple[CatalogEntry, ...]:
    """The six normal-form families, with parameter slots and constraints."""
    return _CATALOG


def catalog_entry(tag: str) -> CatalogEntry:
    for entry in _CATALOG:
        if entry.tag == tag:
            return entry
    raise ValueError(f"unknown catalog tag {tag!r}")


def surface_form(spec: SurfaceSpec) -> CubicForm:
    """The defining cubic of a surface spec, with integer coefficients."""
    if spec.kind == KIND_CAYLEY:
        return cubic_form(
            4, {(1, 1, 1, 0): 1, (2, 0, 0, 1): 1, (0, 2, 0, 1): spec.a}
        )
    if spec.kind == KIND_THREEFOLD:
        return cubic_form(
            5, {(2, 0, 1, 0, 0): 1, (0, 2, 0, 1, 0): 1, (1, 1, 0, 0, 1): 1}
        )
    return catalog_entry(spec.tag).form(**dict(spec.params))


def threefold_normal_form() -> CubicForm:
    """Catalog presentation t0^2*t2 + t0*t1*t3 + t1^2*t4 of the ruled threefold.

    This is the presentation preserved (up to scalar) by aut_matrix and hit
    by scroll_project; it is surface_form(threefold()) with t3, t4 swapped.
    """
    return catalog_entry("t0^2t2+t0t1t3+t1^2t4").form()


# ---------------------------------------------------------------------------
# Evaluation, substitution, proportionality
# ---------------------------------------------------------------------------


def evaluate(f: CubicForm, point: Sequence[int]) -> int | Fraction:
    """Exact value of f at an integer point."""
    if len(point) != f.num_vars:
        raise ValueError(f"point has {len(point)} coordinates, form has {f.num_vars} variables")
    total = Fraction(0)
    for expo, c in f.terms.items():
        v = c
        for x, e in zip(point, expo):
            if e:
                v *= x**e
        total += v
    return int(total) if total.denominator == 1 else total


def substitute(f: CubicForm, change: LinearChange) -> CubicForm:
    """Exact expansion of f after replacing t_i by the i-th row of the change."""
    if change.size != f.num_vars:
        raise ValueError(
            f"change acts on {change.size} variables, form has {f.num_vars}"
        )
    n = f.num_vars
    rows = change.matrix
    result: dict[Exponents, Fraction] = {}
    unit = tuple(0 for _ in range(n))
    for expo, coeff in f.terms.items():
        # Product of the three linear factors prescribed by the exponent vector.
        factors: list[int] = []
        for i, e in enumerate(expo):
            factors.extend([i] * e)
        poly: dict[Exponents, Fraction] = {unit: coeff}
        for i in factors:
            nxt: dict[Exponents, Fraction] = {}
            row = rows[i]
            for mono, c in poly.items():
                for j, rj in enumerate(row):
                    if rj:
                        key = mono[:j] + (mono[j] + 1,) + mono[j + 1 :]
                        nxt[key] = nxt.get(key, Fraction(0)) + c * rj
            poly = nxt
        for mono, c in poly.items():
            acc = result.get(mono, Fraction(0)) + c
            if acc:
                result[mono] = acc
            elif mono in result:
                del result[mono]
    return CubicForm(n, result)


def is_proportional(f: CubicForm, g: CubicForm) -> Optional[Fraction]:
    """The exact scalar s with f = s*g, if one exists.

    Both forms zero returns 1 (total by convention); zero against nonzero,
    or mismatched supports, returns None.
    """
    if f.num_vars != g.num_vars:
        raise ValueError("forms live in different variable counts")
    if f.is_zero() and g.is_zero():
        return Fraction(1)
    if f.is_zero() or g.is_zero():
        return None
    if set(f.terms) != set(g.terms):
        return None
    items = iter(sorted(g.terms))
    first = next(items)
    s = f.terms[first] / g.terms[first]
    for expo in items:
        if f.terms[expo] != s * g.terms[expo]:
            return None
    return s


# ---------------------------------------------------------------------------
# Automorphisms of the catalog threefold form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AutParams:
    """Parameters of the two explicit automorphism families.

    The induced action on the first two coordinates is
        case 1:  t0 -> alpha*t0 + t1,   t1 -> gamma*t0 + delta*t1
        case 2:  t0 -> t0,              t1 -> gamma*t0 + delta*t1
    with nondegeneracy alpha*delta - gamma != 0 and u4 != 0 (case 1),
    delta != 0 and w4 != 0 (case 2).  a31/a41 (case 1) and a30/a40 (case 2)
    are free.
    """

    case: int
    alpha: Fraction = Fraction(0)
    gamma: Fraction = Fraction(0)
    delta: Fraction = Fraction(0)
    u4: Fraction = Fraction(0)
    a31: Fraction = Fraction(0)
    a41: Fraction = Fraction(0)
    w4: Fraction = Fraction(0)
    a30: Fraction = Fraction(0)
    a40: Fraction = Fraction(0)

    @staticmethod
    def case1(
        alpha: Rational,
        gamma: Rational,
        delta: Rational,
        u4: Rational,
        a31: Rational = 0,
        a41: Rational = 0,
    ) -> "AutParams":
        return AutParams(
            1,
            alpha=Fraction(alpha),
            gamma=Fraction(gamma),
            delta=Fraction(delta),
            u4=Fraction(u4),
            a31=Fraction(a31),
            a41=Fraction(a41),
        )

    @staticmethod
    def case2(
        gamma: Rational,
        delta: Rational,
        w4: Rational,
        a30: Rational = 0,
        a40: Rational = 0,
    ) -> "AutParams":
        return AutParams(
            2,
            gamma=Fraction(gamma),
            delta=Fraction(delta),
            w4=Fraction(w4),
            a30=Fraction(a30),
            a40=Fraction(a40),
        )


def aut_matrix(params: AutParams) -> LinearChange:
    """The 5x5 change realizing the explicit automorphism formulas.

    The result preserves threefold_normal_form() up to a nonzero scalar,
    discovered by is_proportional (no closed formula for the scalar is used).
    """
    if params.case == 1:
        a, c, d = params.alpha, params.gamma, params.delta
        u, p, q = params.u4, params.a31, params.a41
        if a * d - c == 0 or u == 0:
            raise ValueError("degenerate case-1 parameters: need alpha*delta - gamma != 0 and u4 != 0")
        rows = [
            [a, 1, 0, 0, 0],
            [c, d, 0, 0, 0],
            [-(c * p + c * d * q), -(d * p + d * d * q), u * d * d, -u * c * d, u * c * c],
            [a * p + (a * d - c) * q, p, -2 * u * d, u * (a * d + c), -2 * u * a * c],
            [a * q, q, u, -u * a, u * a * a],
        ]
    elif params.case == 2:
        c, d = params.gamma, params.delta
        w, p, q = params.w4, params.a30, params.a40
        if d == 0 or w == 0:
            raise ValueError("degenerate case-2 parameters: need delta != 0 and w4 != 0")
        rows = [
            [1, 0, 0, 0, 0],
            [c, d, 0, 0, 0],
            [-(c * p + c * c * q), -(d * p + c * d * q), w * d * d, -w * c * d, w * c * c],
            [p, -d * q, 0, w * d, -2 * w * c],
            [q, 0, 0, 0, w],
        ]
    else:
        raise ValueError(f"case must be 1 or 2, got {params.case}")
    return linear_change(rows)


# ---------------------------------------------------------------------------
# Segre scroll operations
# ---------------------------------------------------------------------------


def scroll_project(
    row_ratio: tuple[int, int], plane_point: tuple[int, int, int]
) -> tuple[int, int, int, int, int]:
    """Image in {t5 = 0} of the scroll point with rows (a*x, a'*x).

    The scroll sits in P^5 as the rank <= 1 locus of
        [[t0, t5, -t4], [t1, t2, t3 + t5]],
    and projecting away t5 sends the point with rows proportional by (a : a')
    to (a*x0, a'*x0, a'*x1, a'*x2 - a*x1, -a*x2).  The image always satisfies
    the catalog cubic t0^2*t2 + t0*t1*t3 + t1^2*t4 = 0.
    """
    a, ap = row_ratio
    if a == 0 and ap == 0:
        raise ValueError("row ratio (0, 0) is not a projective point")
    x0, x1, x2 = plane_point
    if x0 == 0 and x1 == 0 and x2 == 0:
        raise ValueError("plane point (0, 0, 0) is not a projective point")
    return (a * x0, ap * x0, ap * x1, ap * x2 - a * x1, -a * x2)


def scroll_rank_check(p: Sequence[int]) -> bool:
    """True iff all 2x2 minors of [[t0, t5, -t4], [t1, t2, t3+t5]] vanish at p."""
    if len(p) != 6:
        raise ValueError(f"expected a 6-tuple, got length {len(p)}")
    if not any(p):
        raise ValueError("the zero tuple is not a projective point")
    t0, t1, t2, t3, t4, t5 = p
    r1 = (t0, t5, -t4)
    r2 = (t1, t2, t3 + t5)
    return (
        r1[0] * r2[1] - r1[1] * r2[0] == 0
        and r1[0] * r2[2] - r1[2] * r2[0] == 0
        and r1[1] * r2[2] - r1[2] * r2[1] == 0
    )


# ---------------------------------------------------------------------------
# Text rendering
# ---------------------------------------------------------------------------


def render_form(f: CubicForm) -> str:
    """Human-readable monomial list, deterministic (descending exponent order)."""
    if f.is_zero():
        return "0"
    pieces: list[str] = []
    for expo in sorted(f.terms, reverse=True):
        c = f.terms[expo]
        vars_part = "*".join(
            f"t{i}" if e == 1 else f"t{i}^{e}" for i, e in enumerate(expo) if e
        )
        if c == 1:
            body = vars_part
        elif c == -1:
            body = f"-{vars_part}"
        else:
            body = f"{c}*{vars_part}"
        pieces.append(body)
    out = pieces[0]
    for body in pieces[1:]:
        out += f" - {body[1:]}" if body.startswith("-") else f" + {body}"
    return out
