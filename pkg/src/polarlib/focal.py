"""Degrees of focal loci (ramification of the endpoint map) and plane evolutes.

The formula engines return the degree of the ramification locus.  It equals
the degree of the focal locus when the ramification locus maps birationally
onto it, which is known for general hypersurfaces and assumed for plane
curves; :data:`BIRATIONALITY_CAVEAT` travels with CLI output.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from . import elim
from .counting import is_squarefree_curve
from .errors import ConsistencyError, InputError
from .polycore import Poly
from .rankcalc import PluckerData, RankVector, plucker_ranks

log = logging.getLogger(__name__)

BIRATIONALITY_CAVEAT = (
    "value is the ramification degree of the endpoint map; it is the focal-locus "
    "degree when the ramification locus maps birationally onto the focal locus"
)


@dataclass(frozen=True)
class SmoothSurfaceChernData:
    d: int
    c1h: int
    c1sq: int
    c2: int

    @classmethod
    def in_p3(cls, d: int) -> "SmoothSurfaceChernData":
        """Chern numbers of a smooth degree-d surface in P^3 (``c_1(Omega) = (d-4) h``)."""
        if d < 1:
            raise InputError("surface degree must be positive")
        return cls(d, d * (d - 4), d * (d - 4) ** 2, d * (d * d - 4 * d + 6))


def focal_plane_curve(mu0: int, mu1: int, cusps: int, flexes: int) -> int:
    a = 3 * mu1 + cusps
    b = 3 * mu0 + flexes
    if a != b:
        raise InputError(
            f"inconsistent curve invariants: 3*mu1 + kappa = {a} but 3*mu0 + iota = {b}",
            code="inconsistent-curve-invariants",
        )
    return a


def focal_salmon(p: PluckerData) -> int:
    value = 3 * p.d * (p.d - 1) - 6 * p.nodes - 8 * p.cusps
    mu1, iota, _ = plucker_ranks(p)
    other = focal_plane_curve(p.d, mu1, p.cusps, iota)
    if value != other:
        raise ConsistencyError(f"Salmon value {value} differs from 3*mu1 + kappa = {other}")
    return value


def focal_smooth_curve(d: int, g: int) -> int:
    if d < 1 or g < 0:
        raise InputError(f"need d >= 1 and g >= 0, got d={d}, g={g}")
    return 6 * (d + g - 1)


def focal_smooth_surface(c: SmoothSurfaceChernData) -> int:
    return 2 * (15 * c.d + 9 * c.c1h + c.c1sq + c.c2)


def focal_hypersurface_ranks(r: RankVector) -> int:
    """``(n-1) mu_(n-1) + 2 (mu_0 - 1) sum_(i<=n-2) mu_i`` for a hypersurface."""
    if r.dim != r.ambient - 1:
        raise InputError("hypersurface formula needs m = n - 1", code="not-hypersurface")
    n = r.ambient
    mu = r.ranks
    return (n - 1) * mu[n - 1] + 2 * (mu[0] - 1) * sum(mu[: n - 1])


# ---------------------------------------------------------------------------
# evolutes


@dataclass(frozen=True)
class EvoluteResult:
    eliminant: Poly
    degree: int
    extraneous_factors_removed: Tuple[Poly, ...] = ()
    genericity_flag: bool = True
    degenerate: bool = False
    center: Optional[Tuple[Fraction, Fraction]] = None
    warnings: Tuple[str, ...] = field(default=())


def _tangent_derivative(p: Poly, Fx: Poly, Fy: Poly, x: str, y: str) -> Poly:
    return Fy * p.differentiate(x) - Fx * p.differentiate(y)


def _curvature_data(F: Poly):
    x, y = F.vars
    Fx, Fy = F.differentiate(x), F.differentiate(y)
    Fxx, Fxy, Fyy = Fx.differentiate(x), Fx.differentiate(y), Fy.differentiate(y)
    S = Fx * Fx + Fy * Fy
    K = Fy * Fy * Fxx - 2 * Fx * Fy * Fxy + Fx * Fx * Fyy
    X, Y = Poly.var(x, F.vars), Poly.var(y, F.vars)
    # centre of curvature = (A / K, B / K)
    A = X * K - Fx * S
    B = Y * K - Fy * S
    return Fx, Fy, K, A, B


def _vanishes_on_centres(piece: Poly, F: Poly, A: Poly, B: Poly, K: Poly, ex: str, ey: str) -> bool:
    """Whether ``piece(A/K, B/K)`` vanishes identically on the curve ``F = 0``."""
    e = piece.degree()
    i, j = piece.vars.index(ex), piece.vars.index(ey)
    Kpow = [Poly.const(1, F.vars)]
    for _ in range(e):
        Kpow.append((Kpow[-1] * K).remainder(F))
    Apow, Bpow = {0: Poly.const(1, F.vars)}, {0: Poly.const(1, F.vars)}
    total = Poly.zero(F.vars)
    for mono, c in piece.terms.items():
        a, b = mono[i], mono[j]
        if a not in Apow:
            Apow[a] = (A**a).remainder(F)
        if b not in Bpow:
            Bpow[b] = (B**b).remainder(F)
        total = total + c * (Apow[a] * Bpow[b]).remainder(F) * Kpow[e - a - b]
    return total.remainder(F).is_zero()


def _eliminate(f: Poly, g: Poly, v: str) -> Poly:
    df, dg = f.degree_in(v), g.degree_in(v)
    if df < 1 and dg < 1:
        raise InputError(f"neither polynomial involves {v!r}")
    if dg < 1:
        return g**df
    if df < 1:
        return f**dg
    return elim.resultant(f, g, v)


def _generic_at_infinity(F: Poly) -> bool:
    """Curve transverse to the line at infinity and avoiding the isotropic points."""
    x, y = F.vars
    top = F.top_form()
    if any(m > 1 for _, m in elim.squarefree_factors(top)):
        return False
    iso = Poly.var(x, F.vars) ** 2 + Poly.var(y, F.vars) ** 2
    return not top.remainder(iso).is_zero()


def evolute_eliminant(F: Poly, max_degree: int = 3, evolute_vars: Tuple[str, str] = ("X", "Y")) -> EvoluteResult:
    """Implicit equation of the evolute (envelope of normals) of a plane curve.

    The critical pair ``F``, ``G = (X - x) F_y - (Y - y) F_x`` and the envelope
    condition ``H = G_x F_y - G_y F_x`` are eliminated with resultants, first
    in ``y`` then in ``x``.  Extraneous components are split off by a coprime
    refinement against the eliminant of ``F``, ``K X - A``, ``K Y - B`` (the
    centre-of-curvature map written with a common denominator ``K``), and a
    piece is kept exactly when it vanishes at the centre of curvature of every
    point of the curve (an exact divisibility test modulo ``F``).
    """
    if len(F.vars) != 2:
        raise InputError(f"plane curve must be given in two variables, got {F.vars}")
    x, y = F.vars
    ex, ey = evolute_vars
    if ex in F.vars or ey in F.vars:
        raise InputError("evolute variable names clash with curve variables")
    d = F.degree()
    if d <= 1:
        raise InputError("a line has no evolute", code="line")
    if d > max_degree:
        raise InputError(f"curve degree {d} exceeds the evolute degree cap {max_degree}", code="degree-cap")
    if not is_squarefree_curve(F):
        raise InputError("curve polynomial is not squarefree", code="not-squarefree")

    Fx, Fy, K, A, B = _curvature_data(F)
    if not elim.gcd(F, K).is_constant():
        raise InputError("curve has a component without curvature (a line)", code="line")
    generic = _generic_at_infinity(F)

    # constant centre of curvature along the curve: the evolute is a point
    Kt = _tangent_derivative(K, Fx, Fy, x, y)
    if all((_tangent_derivative(P, Fx, Fy, x, y) * K - P * Kt).remainder(F).is_zero() for P in (A, B)):
        rK = K.remainder(F)
        centre = []
        for P in (A, B):
            rP = P.remainder(F)
            c = Fraction(0) if rP.is_zero() else Fraction(rP.leading_coefficient()) / Fraction(rK.leading_coefficient())
            if not (rP - c * rK).remainder(F).is_zero():
                raise ConsistencyError("centre of curvature is not constant after all")
            centre.append(c)
        return EvoluteResult(
            eliminant=Poly.zero((ex, ey)),
            degree=0,
            genericity_flag=False,
            degenerate=True,
            center=(centre[0], centre[1]),
            warnings=("degenerate evolute: all normals pass through one point",),
        )

    vs = (x, y, ex, ey)
    Fv = F.with_vars(vs)
    X, Y = Poly.var(ex, vs), Poly.var(ey, vs)
    xv, yv = Poly.var(x, vs), Poly.var(y, vs)
    Fxv, Fyv = Fx.with_vars(vs), Fy.with_vars(vs)
    G = (X - xv) * Fyv - (Y - yv) * Fxv
    H = G.differentiate(x) * Fyv - G.differentiate(y) * Fxv

    def tower(f, g, h, first, second):
        r1 = _eliminate(f, g, first)
        r2 = _eliminate(f, h, first)
        # singular points make both partial resultants share a factor in `second`
        common = elim.gcd(r1, r2)
        if not common.is_constant():
            r1, r2 = r1.exact_div(common), r2.exact_div(common)
        return _eliminate(r1, r2, second).with_vars((ex, ey))

    primary = tower(Fv, G, H, y, x)
    if primary.is_zero():
        raise InputError("degenerate elimination: eliminant vanishes identically", code="degenerate-elimination")
    # centres of curvature satisfy K X = A, K Y = B; this family has different
    # extraneous components, so refining against it splits them off
    Kv = K.with_vars(vs)
    centres = tower(Fv, Kv * X - A.with_vars(vs), Kv * Y - B.with_vars(vs), y, x)
    candidates = [f for f, _ in elim.squarefree_factors(primary)]
    if not centres.is_zero():
        candidates += [f for f, _ in elim.squarefree_factors(centres)]
    pieces = elim.coprime_base(candidates)
    primary_pieces = [p for p in pieces if primary.remainder(p).is_zero()]
    keep, removed = [], []
    for p in primary_pieces:
        (keep if _vanishes_on_centres(p, F, A, B, K, ex, ey) else removed).append(p)
    log.debug("evolute pieces kept=%s removed=%s", keep, removed)
    if not keep:
        raise ConsistencyError("no eliminant factor vanishes on the centres of curvature")
    ev = Poly.const(1, (ex, ey))
    for p in keep:
        ev = ev * p
    ev = ev.primitive()
    return EvoluteResult(
        eliminant=ev,
        degree=ev.degree(),
        extraneous_factors_removed=tuple(removed),
        genericity_flag=generic,
    )
