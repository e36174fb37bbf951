"""Exact counting of solutions of bivariate systems, used as an oracle.

The count of common zeros of ``f`` and ``g`` in the affine plane is read off
the x-eliminant ``Res_y`` after a random shear ``x -> x + s*y``: the shear makes
the leading coefficient of ``f`` in ``y`` a nonzero constant (no solutions
escape to infinity) and gives distinct solutions distinct x-coordinates, so
the number of distinct roots of the eliminant is the number of solutions.

ED degrees and first polar classes of plane curves are obtained the same way,
with the contribution of the supplied singular points subtracted from the
eliminant by exact root multiplicity.
"""

from __future__ import annotations

import logging
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

from . import elim
from .critsys import plane_curve_ed_system
from .errors import GenericityError, InputError
from .polycore import Poly, align, as_rational, rational_det

log = logging.getLogger(__name__)

DATA_RANGE = 10**6
DENOM_RANGE = 10**3


@dataclass(frozen=True)
class SingularPoint:
    location: Tuple[Fraction, Fraction]
    milnor: Optional[int] = None
    sectional_milnor: Optional[int] = None

    def __post_init__(self):
        x, y = self.location
        object.__setattr__(self, "location", (Fraction(as_rational(x)), Fraction(as_rational(y))))
        for name in ("milnor", "sectional_milnor"):
            val = getattr(self, name)
            if val is not None and (not isinstance(val, int) or val < 1):
                raise InputError(f"{name} must be a positive integer, got {val!r}")

    def correction(self) -> Optional[int]:
        if self.milnor is None or self.sectional_milnor is None:
            return None
        return self.milnor + self.sectional_milnor


@dataclass(frozen=True)
class Trial:
    seed: int
    data: Tuple[Fraction, ...]
    shear: Fraction
    resultant_degree: int
    subtracted: Tuple[Tuple[Tuple[Fraction, Fraction], int], ...]
    residual_squarefree: bool
    count: int

    def balances(self) -> bool:
        """``deg Res = count + sum of subtracted multiplicities``."""
        return self.resultant_degree == self.count + sum(m for _, m in self.subtracted)


@dataclass(frozen=True)
class CountReport:
    count: int
    trials: Tuple[Trial, ...]
    stable: bool
    expected_generic: Optional[int] = None
    attempts: int = 1
    transform: Optional[Tuple[Tuple[int, ...], ...]] = None
    warnings: Tuple[str, ...] = field(default=())

    @property
    def non_generic(self) -> bool:
        """True when the count deviates from the general-position value."""
        return self.expected_generic is not None and self.count != self.expected_generic


# ---------------------------------------------------------------------------
# helpers


def _curve_vars(F: Poly) -> Tuple[str, str]:
    if len(F.vars) != 2:
        raise InputError(f"plane curve must be given in exactly two variables, got {F.vars}")
    return F.vars


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-DATA_RANGE, DATA_RANGE), rng.randint(1, DENOM_RANGE))


def _shear(p: Poly, s: Fraction) -> Poly:
    x, y = p.vars
    return p.substitute({x: Poly.var(x, p.vars) + s * Poly.var(y, p.vars)}).with_vars(p.vars)


def _pick_shear(f: Poly, rng: random.Random) -> Fraction:
    top = f.top_form()
    x, y = f.vars
    for _ in range(100):
        s = Fraction(rng.randint(-50, 50), rng.randint(1, 20))
        if top.evaluate({x: s, y: 1}) != 0:
            return s
    raise GenericityError("could not find an admissible shear")


def _eliminant(f: Poly, g: Poly, s: Fraction) -> Poly:
    """``Res_y`` of the sheared pair, as a polynomial in ``x``."""
    x, y = f.vars
    fs, gs = _shear(f, s), _shear(g, s)
    if gs.degree_in(y) < 1:
        # g free of y: Res_y(f, g) = g^deg_y(f) up to the constant lc(f)
        return (gs ** fs.degree_in(y)).with_vars(f.vars)
    return elim.resultant(fs, gs, y)


def _univariate(R: Poly, x: str) -> Poly:
    return R.with_vars((x,)) if R.used_vars() in ((), (x,)) else R


def is_squarefree_curve(F: Poly) -> bool:
    x, y = F.vars
    g = elim.gcd(elim.gcd(F, F.differentiate(x)), F.differentiate(y))
    return g.is_constant()


# ---------------------------------------------------------------------------
# common roots


def count_common_roots(f: Poly, g: Poly, shear_seed: int = 0) -> int:
    """Number of distinct common complex zeros of ``f`` and ``g`` in the plane.

    Two independent shears must agree; a common factor is an error.
    """
    f, g = align([f, g])
    _curve_vars(f)
    if f.is_zero() or g.is_zero():
        raise InputError("positive-dimensional intersection: zero polynomial", code="positive-dimensional")
    if f.is_constant() or g.is_constant():
        return 0
    if not elim.gcd(f, g).is_constant():
        raise InputError("positive-dimensional intersection: common factor", code="positive-dimensional")
    rng = random.Random(shear_seed)
    x = f.vars[0]
    counts = []
    for _ in range(2):
        s = _pick_shear(f, rng)
        R = _eliminant(f, g, s)
        if R.is_zero():
            raise InputError("positive-dimensional intersection", code="positive-dimensional")
        counts.append(elim.count_distinct_roots(_univariate(R, x)))
    if counts[0] != counts[1]:
        raise GenericityError(f"genericity failure, reseed (shears gave {counts})")
    return counts[0]


# ---------------------------------------------------------------------------
# singular points


class SingularSearch(NamedTuple):
    points: List[SingularPoint]
    unresolved: List[Poly]


def singular_locus(F: Poly) -> SingularSearch:
    """Rational affine singular points of ``F`` plus unresolved eliminant factors."""
    x, y = _curve_vars(F)
    Fx, Fy = F.differentiate(x), F.differentiate(y)
    eqs = [p for p in (F, Fx, Fy) if not p.is_zero()]
    xpolys = []
    with_y = [p for p in eqs if p.degree_in(y) > 0]
    xpolys.extend(p for p in eqs if p.degree_in(y) <= 0)
    for i in range(len(with_y)):
        for j in range(i + 1, len(with_y)):
            r = elim.resultant(with_y[i], with_y[j], y)
            if not r.is_zero():
                xpolys.append(r)
    if not xpolys:
        raise InputError("singular locus is not finite; is the curve squarefree?", code="not-squarefree")
    h = Poly.zero(F.vars)
    for p in xpolys:
        h = elim.gcd(h, p)
    points: List[SingularPoint] = []
    unresolved: List[Poly] = []
    if h.is_constant():
        return SingularSearch(points, unresolved)
    hx = _univariate(h, x)
    if hx.vars != (x,):
        raise InputError("singular locus is not finite; is the curve squarefree?", code="not-squarefree")
    xs = elim.rational_roots(hx)
    rest = elim.squarefree_part(hx)
    for a in xs:
        rest = elim.divide_out_root(rest, a, 1)
    if rest.degree() > 0:
        unresolved.append(rest)
    for a in xs:
        g = Poly.zero((y,))
        for p in eqs:
            g = elim.gcd(g, p.substitute({x: a}).with_vars((y,)))
        if g.is_zero():
            raise InputError(f"line {x} = {a} lies in the singular locus", code="not-squarefree")
        if g.is_constant():
            continue
        ys = elim.rational_roots(g)
        rg = elim.squarefree_part(g)
        for b in ys:
            points.append(SingularPoint((a, b)))
            rg = elim.divide_out_root(rg, b, 1)
        if rg.degree() > 0:
            unresolved.append(rg)
    points.sort(key=lambda p: p.location)
    return SingularSearch(points, unresolved)


class UnresolvedSingularityWarning(UserWarning):
    pass


def singular_points_curve(F: Poly) -> List[SingularPoint]:
    """Affine singular points with rational coordinates (Milnor data unset).

    Irrational singular points cannot be listed; their eliminant factors are
    reported through :class:`UnresolvedSingularityWarning`.
    """
    found = singular_locus(F)
    if found.unresolved:
        warnings.warn(
            "irrational singular points, unresolved eliminant factors: "
            + ", ".join(str(p) for p in found.unresolved),
            UnresolvedSingularityWarning,
            stacklevel=2,
        )
    return found.points


def _check_singular(F: Poly, sing: Sequence[SingularPoint]):
    x, y = F.vars
    for P in sing:
        pt = dict(zip((x, y), P.location))
        if F.evaluate(pt) or F.differentiate(x).evaluate(pt) or F.differentiate(y).evaluate(pt):
            raise InputError(f"{P.location} is not a singular point of {F}", code="not-singular")


# ---------------------------------------------------------------------------
# general position


def _random_projective(rng: random.Random):
    while True:
        m = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)]
        if rational_det(m) != 0:
            return m


def _inverse3(m):
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(3)] for i, row in enumerate(m)]
    for k in range(3):
        piv = next(i for i in range(k, 3) if a[i][k])
        a[k], a[piv] = a[piv], a[k]
        p = a[k][k]
        a[k] = [v / p for v in a[k]]
        for i in range(3):
            if i != k and a[i][k]:
                f = a[i][k]
                a[i] = [vi - f * vk for vi, vk in zip(a[i], a[k])]
    return [row[3:] for row in a]


def projective_transform(F: Poly, m) -> Poly:
    """Pull ``F`` back along ``(x : y : z) -> m (x : y : z)`` and set ``z = 1``."""
    x, y = F.vars
    z = "zhom"
    H = F.homogenize(z)
    vs = (x, y)
    coords = [Poly.var(x, vs), Poly.var(y, vs), Poly.const(1, vs)]
    img = [sum((m[i][j] * coords[j] for j in range(3)), Poly.zero(vs)) for i in range(3)]
    return H.substitute({x: img[0], y: img[1], z: img[2]}).with_vars(vs)


def _to_general_position(F: Poly, sing: Sequence[SingularPoint], rng: random.Random):
    d = F.degree()
    for _ in range(50):
        m = _random_projective(rng)
        G = projective_transform(F, m)
        if G.degree() != d:
            continue
        inv = _inverse3(m)
        moved = []
        for P in sing:
            v = (P.location[0], P.location[1], Fraction(1))
            w = [sum(inv[i][j] * v[j] for j in range(3)) for i in range(3)]
            if w[2] == 0:
                break
            moved.append(SingularPoint((w[0] / w[2], w[1] / w[2]), P.milnor, P.sectional_milnor))
        else:
            return G, moved, tuple(tuple(r) for r in m)
    raise GenericityError("could not move the curve into general position")


# ---------------------------------------------------------------------------
# trial engine


def _run_trial(F: Poly, G: Poly, sing: Sequence[SingularPoint], seed: int, data, rng) -> Optional[Trial]:
    x, _ = F.vars
    s = _pick_shear(F, rng)
    R = _eliminant(F, G, s)
    if R.is_zero():
        return None
    R = _univariate(R, x)
    deg = R.degree()
    subtracted = []
    residual = R
    for P in sing:
        a = P.location[0] - s * P.location[1]
        k = elim.root_multiplicity(residual, a)
        residual = elim.divide_out_root(residual, a, k)
        subtracted.append((P.location, k))
    count = elim.count_distinct_roots(residual)
    return Trial(
        seed=seed,
        data=tuple(data),
        shear=s,
        resultant_degree=deg,
        subtracted=tuple(subtracted),
        residual_squarefree=count == residual.degree() or (residual.degree() == 0 and count == 0),
        count=count,
    )


def _expected_generic(d: int, sing: Sequence[SingularPoint], polar: bool) -> Optional[int]:
    corr = [P.correction() for P in sing]
    if polar or any(c is None for c in corr):
        return None
    return d * d - sum(corr)


def _collect(make_trial, *, seed: int, trials: int, max_retries: int, strict: bool, expected, transform, warns):
    master = random.Random(seed)
    batch: List[Trial] = []
    attempts = 0
    while attempts < max_retries:
        attempts += 1
        batch = []
        resamples = 0
        while len(batch) < trials:
            tseed = master.randrange(2**32)
            t = make_trial(tseed)
            if t is None:
                resamples += 1
                if resamples > 20 * trials:
                    raise GenericityError("too many degenerate samples")
                continue
            batch.append(t)
        counts = {t.count for t in batch}
        if len(counts) == 1 and all(t.residual_squarefree for t in batch):
            return CountReport(batch[0].count, tuple(batch), True, expected, attempts, transform, tuple(warns))
        log.debug("unstable batch %s, retrying", [t.count for t in batch])
    report = CountReport(
        max(counts, key=lambda c: sum(t.count == c for t in batch)),
        tuple(batch), False, expected, attempts, transform,
        tuple(warns) + ("trials unstable: residual not squarefree or counts disagree",),
    )
    if strict:
        raise GenericityError("counting unstable after retries; missing singular points?", report)
    return report


def ed_degree_count(
    F: Poly,
    singular: Sequence[SingularPoint] = (),
    seed: int = 0,
    *,
    trials: int = 2,
    max_retries: int = 5,
    general_position: bool = False,
    strict: bool = True,
) -> CountReport:
    """Count Euclidean-distance critical points of a plane curve.

    Each trial draws a random rational data point ``u``, forms the critical
    pair ``(F, G)``, eliminates ``y`` after a shear and removes the roots
    sitting over the supplied singular points.  ``general_position`` first
    applies a seeded random projective change of coordinates, which puts the
    curve in general position relative to the line at infinity and the
    isotropic points; the count is then the general-position ED degree.
    """
    _curve_vars(F)
    if F.is_constant():
        raise InputError("constant polynomial does not define a curve")
    if not is_squarefree_curve(F):
        raise InputError("curve polynomial is not squarefree", code="not-squarefree")
    _check_singular(F, singular)
    if trials < 2:
        raise InputError("at least two trials are required")
    warns = []
    transform = None
    sing = list(singular)
    if general_position:
        F, sing, transform = _to_general_position(F, sing, random.Random(f"gp:{seed}"))
    expected = _expected_generic(F.degree(), sing, polar=False)

    def make_trial(tseed):
        rng = random.Random(tseed)
        u = (_random_rational(rng), _random_rational(rng))
        sysd = plane_curve_ed_system(F, u)
        if sysd.degenerate:
            return None
        return _run_trial(F, sysd.critical, sing, tseed, u, rng)

    return _collect(make_trial, seed=seed, trials=trials, max_retries=max_retries, strict=strict,
                    expected=expected, transform=transform, warns=warns)


def polar_curve(F: Poly, pole: Sequence[object]) -> Poly:
    """First polar ``b0 F_z + b1 F_x + b2 F_y`` of the homogenized curve, at ``z = 1``."""
    x, y = F.vars
    z = "zhom"
    H = F.homogenize(z)
    b0, b1, b2 = (as_rational(b) for b in pole)
    P = b0 * H.differentiate(z) + b1 * H.differentiate(x) + b2 * H.differentiate(y)
    return P.substitute({z: 1}).with_vars(F.vars)


def polar_class_count(
    F: Poly,
    pole: Optional[Sequence[object]] = None,
    seed: int = 0,
    singular: Sequence[SingularPoint] = (),
    *,
    trials: int = 2,
    max_retries: int = 5,
    general_position: bool = False,
    strict: bool = True,
) -> CountReport:
    """Count smooth intersections of ``F`` with its first polar (the class).

    The supplied ``pole`` is used for the first trial; further trials, and
    any trial whose pole is degenerate, use random poles.
    """
    _curve_vars(F)
    if F.is_constant():
        raise InputError("constant polynomial does not define a curve")
    if not is_squarefree_curve(F):
        raise InputError("curve polynomial is not squarefree", code="not-squarefree")
    _check_singular(F, singular)
    sing = list(singular)
    transform = None
    if general_position:
        F, sing, transform = _to_general_position(F, sing, random.Random(f"gp:{seed}"))
    first = [tuple(Fraction(as_rational(b)) for b in pole)] if pole is not None else []

    def make_trial(tseed):
        rng = random.Random(tseed)
        b = first.pop() if first else tuple(_random_rational(rng) for _ in range(3))
        P = polar_curve(F, b)
        if P.is_zero() or P.is_constant():
            return None
        return _run_trial(F, P, sing, tseed, b, rng)

    return _collect(make_trial, seed=seed, trials=trials, max_retries=max_retries, strict=strict,
                    expected=None, transform=transform, warns=[])
