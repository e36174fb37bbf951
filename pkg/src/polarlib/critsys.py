"""Determinantal critical systems for reciprocal polar varieties.

For ``X = Z(F_1, ..., F_r)`` in affine n-space and a non-degenerate quadric
``q(x0, x1, ..., xn)``, the affine reciprocal polar variety with respect to the
hyperplane at infinity is cut out (on smooth points) by the ``(n-m+1)``-minors
of the matrix whose first row is the gradient of ``q`` (taken at ``x0 = 1``)
and whose remaining rows form the Jacobian of the ``F_i``.  With the Euclidean
quadric centred at a data point ``u`` the first row is ``(x_i - u_i)`` and the
minors describe critical points of the squared distance to ``u``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Sequence, Tuple

from .elim import bareiss_det
from .errors import InputError
from .polycore import Poly, as_rational, poly_vars, rational_det


@dataclass(frozen=True)
class QuadricSpec:
    """Either a general quadric ``q`` or the Euclidean quadric about ``center``.

    ``q`` must be homogeneous of degree 2 in ``hom_var`` plus the system's
    variables; the Euclidean quadric ``x0^2 + sum (x_i - a_i x0)^2`` is kept
    implicit through its centre.
    """

    kind: str
    q: Poly | None = None
    hom_var: str = "x0"
    center: Tuple[Fraction, ...] = ()

    @classmethod
    def general(cls, q: Poly, hom_var: str = "x0") -> "QuadricSpec":
        if not q.is_homogeneous() or q.degree() != 2:
            raise InputError("general quadric must be homogeneous of degree 2")
        if hom_var not in q.vars:
            q = q.with_vars(q.vars + (hom_var,))
        if rational_det(symmetric_matrix(q)) == 0:
            raise InputError("degenerate quadric: symmetric matrix is singular", code="degenerate-quadric")
        return cls("general", q=q, hom_var=hom_var)

    @classmethod
    def euclidean(cls, center: Sequence[object]) -> "QuadricSpec":
        return cls("euclidean", center=tuple(Fraction(as_rational(a)) for a in center))

    def warnings(self) -> Tuple[str, ...]:
        if self.kind == "euclidean" and sum(self.center) == 1:
            # recorded condition on the Euclidean quadric; nothing depends on it
            return ("euclidean centre has coordinate sum 1",)
        return ()


def symmetric_matrix(q: Poly):
    """Symmetric matrix ``A`` with ``q = v^T A v`` over ``q.vars``."""
    k = len(q.vars)
    a = [[Fraction(0)] * k for _ in range(k)]
    for e, c in q.terms.items():
        idx = [i for i, t in enumerate(e) for _ in range(t)]
        i, j = idx
        if i == j:
            a[i][i] += c
        else:
            a[i][j] += Fraction(c) / 2
            a[j][i] += Fraction(c) / 2
    return a


@dataclass(frozen=True)
class PolySystem:
    equations: Tuple[Poly, ...]
    dim: int
    variables: Tuple[str, ...] = ()

    def __post_init__(self):
        eqs = tuple(self.equations)
        if not eqs:
            raise InputError("empty polynomial system")
        vs = self.variables or poly_vars(*eqs)
        eqs = tuple(e.with_vars(vs) for e in eqs)
        object.__setattr__(self, "equations", eqs)
        object.__setattr__(self, "variables", tuple(vs))
        n = len(vs)
        if not 0 <= self.dim < n:
            raise InputError(f"dimension {self.dim} out of range for {n} variables")
        if len(eqs) < n - self.dim:
            raise InputError(f"need at least {n - self.dim} equations for dimension {self.dim}")

    @property
    def n(self) -> int:
        return len(self.variables)


@dataclass(frozen=True)
class CriticalMatrix:
    rows: Tuple[Tuple[Poly, ...], ...]
    minor_size: int
    warnings: Tuple[str, ...] = field(default=())

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0


def _assemble(sys: PolySystem, row0: Sequence[Poly], warnings) -> CriticalMatrix:
    vs = sys.variables
    rows = [tuple(p.with_vars(vs) for p in row0)]
    rows += [tuple(f.differentiate(v) for v in vs) for f in sys.equations]
    warnings = list(warnings)
    if all(p.is_zero() for p in rows[0]):
        warnings.append("critical row is identically zero")
    return CriticalMatrix(tuple(rows), sys.n - sys.dim + 1, tuple(warnings))


def build_reciprocal_matrix(sys: PolySystem, quad: QuadricSpec) -> CriticalMatrix:
    """Gradient-of-quadric row stacked on the Jacobian of ``sys``."""
    vs = sys.variables
    if quad.kind == "euclidean":
        if len(quad.center) != len(vs):
            raise InputError(f"centre has {len(quad.center)} coordinates, system has {len(vs)} variables")
        row0 = [Poly.var(v, vs) - a for v, a in zip(vs, quad.center)]
        warnings = list(quad.warnings())
        point = dict(zip(vs, quad.center))
        if all(f.evaluate(point) == 0 for f in sys.equations):
            warnings.append("data point lies on the variety")
        return _assemble(sys, row0, warnings)
    q = quad.q
    extra = [v for v in q.used_vars() if v != quad.hom_var and v not in vs]
    if extra:
        raise InputError(f"quadric uses variables {extra} not in the system {vs}", code="variable-mismatch")
    row0 = [q.differentiate(v).substitute({quad.hom_var: 1}) if v in q.vars else Poly.zero(vs) for v in vs]
    return _assemble(sys, row0, quad.warnings())


def build_ed_matrix(sys: PolySystem, data: Sequence[object]) -> CriticalMatrix:
    """ED matrix with first row exactly ``(x_i - u_i)``."""
    if len(data) != sys.n:
        raise InputError(f"data point has {len(data)} coordinates, expected {sys.n}")
    return build_reciprocal_matrix(sys, QuadricSpec.euclidean(data))


def minors(mat: CriticalMatrix) -> list:
    """All ``minor_size`` minors, ordered lexicographically by (rows, columns)."""
    nr, nc = mat.shape
    k = mat.minor_size
    if k > min(nr, nc):
        raise InputError(f"minor size {k} exceeds matrix shape {nr}x{nc}")
    out = []
    for rs in combinations(range(nr), k):
        for cs in combinations(range(nc), k):
            out.append(bareiss_det([[mat.rows[i][j] for j in cs] for i in rs]))
    return out


class EDSystem(NamedTuple):
    curve: Poly
    critical: Poly
    degenerate: bool


def plane_curve_ed_system(F: Poly, data: Sequence[object]) -> EDSystem:
    """``(F, G)`` with ``G = (x - u1) F_y - (y - u2) F_x``.

    ``degenerate`` is set when ``G`` vanishes identically, e.g. a circle and
    its own centre: every point of the curve is then critical.
    """
    if len(F.vars) != 2:
        raise InputError(f"plane curve must be given in two variables, got {F.vars}")
    if F.is_constant():
        raise InputError("constant polynomial does not define a curve")
    x, y = F.vars
    u1, u2 = (as_rational(a) for a in data)
    X, Y = Poly.var(x, F.vars), Poly.var(y, F.vars)
    G = (X - u1) * F.differentiate(y) - (Y - u2) * F.differentiate(x)
    return EDSystem(F, G, G.is_zero())
