"""Closed-form engines for ranks, ED degrees and Chern-Mather degrees.

All arithmetic is on Python integers.  The rank vector ``(mu_0, ..., mu_m)`` of
an m-dimensional variety holds the degrees of its polar varieties; its sum is
the Euclidean distance degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence, Tuple

from .errors import InputError


def _ints(values, what) -> Tuple[int, ...]:
    out = tuple(values)
    if any(isinstance(v, bool) or not isinstance(v, int) for v in out):
        raise InputError(f"{what} must be integers, got {out}")
    return out


@dataclass(frozen=True)
class RankVector:
    ambient: int
    dim: int
    ranks: Tuple[int, ...]

    def __post_init__(self):
        ranks = _ints(self.ranks, "ranks")
        object.__setattr__(self, "ranks", ranks)
        if self.ambient < 1 or not 0 <= self.dim < self.ambient:
            raise InputError(f"need 0 <= dim < ambient, got dim={self.dim}, ambient={self.ambient}")
        if len(ranks) != self.dim + 1:
            raise InputError(f"expected {self.dim + 1} ranks for dimension {self.dim}, got {len(ranks)}")
        if ranks[0] < 1:
            raise InputError("mu_0 is the degree and must be at least 1")
        if any(r < 0 for r in ranks):
            raise InputError(f"ranks must be non-negative, got {ranks}")


@dataclass(frozen=True)
class ChernMatherVector:
    """Degrees ``c_k = deg(c_k(X) . h^(m-k))`` of the Chern-Mather classes."""

    dim: int
    degrees: Tuple[int, ...]

    def __post_init__(self):
        degrees = _ints(self.degrees, "Chern-Mather degrees")
        object.__setattr__(self, "degrees", degrees)
        if len(degrees) != self.dim + 1:
            raise InputError(f"expected {self.dim + 1} degrees for dimension {self.dim}, got {len(degrees)}")
        if degrees[0] < 1:
            raise InputError("c_0 is the degree and must be at least 1")


@dataclass(frozen=True)
class SingularityDatum:
    milnor: int
    sectional_milnor: int

    def __post_init__(self):
        for v in (self.milnor, self.sectional_milnor):
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise InputError(f"Milnor numbers must be positive integers, got {v!r}")


@dataclass(frozen=True)
class PluckerData:
    """Degree, node and cusp counts of a plane curve with only those singularities."""

    d: int
    nodes: int = 0
    cusps: int = 0

    def __post_init__(self):
        _ints((self.d, self.nodes, self.cusps), "Plücker data")
        if self.d < 2 or self.nodes < 0 or self.cusps < 0:
            raise InputError(f"invalid Plücker data {self.d, self.nodes, self.cusps}")
        if self.genus < 0 or self.class_ <= 0 or self.flexes < 0:
            raise InputError(
                f"Plücker data {self.d, self.nodes, self.cusps} violates genus/class/flex bounds",
                code="invalid-plucker",
            )

    @property
    def class_(self) -> int:
        return self.d * (self.d - 1) - 2 * self.nodes - 3 * self.cusps

    @property
    def flexes(self) -> int:
        return 3 * self.d * (self.d - 2) - 6 * self.nodes - 8 * self.cusps

    @property
    def genus(self) -> int:
        return (self.d - 1) * (self.d - 2) // 2 - self.nodes - self.cusps

    def dual(self) -> "PluckerData":
        """Data of the dual curve: degree = class, cusps = flexes, same genus."""
        d = self.class_
        cusps = self.flexes
        nodes = (d - 1) * (d - 2) // 2 - self.genus - cusps
        return PluckerData(d, nodes, cusps)


@dataclass(frozen=True)
class OrdinarySurfaceData:
    d: int
    double_curve: int = 0
    triple_points: int = 0
    pinch_points: int = 0

    def __post_init__(self):
        vals = _ints((self.d, self.double_curve, self.triple_points, self.pinch_points), "surface data")
        if self.d < 1 or any(v < 0 for v in vals):
            raise InputError(f"invalid ordinary surface data {vals}")


# ---------------------------------------------------------------------------


def ranks_smooth_hypersurface(d: int, n: int) -> RankVector:
    """Ranks ``d (d-1)^i``, ``i = 0..n-1``, of a smooth degree-d hypersurface in P^n."""
    _ints((d, n), "degree and ambient dimension")
    if d < 1 or n < 2:
        raise InputError(f"need d >= 1 and n >= 2, got d={d}, n={n}")
    return RankVector(n, n - 1, tuple(d * (d - 1) ** i for i in range(n)))


def ed_from_ranks(r: RankVector) -> int:
    return sum(r.ranks)


def ed_hypersurface_isolated(d: int, n: int, singularities: Sequence[SingularityDatum]) -> int:
    """Smooth rank sum minus ``mu + mu'`` over isolated singular points."""
    if d < 2:
        raise InputError("isolated singularities need d >= 2")
    smooth = ed_from_ranks(ranks_smooth_hypersurface(d, n))
    value = smooth - sum(s.milnor + s.sectional_milnor for s in singularities)
    if value < 0:
        raise InputError("inconsistent singularity data", code="inconsistent-singularities")
    return value


def ed_surface_ordinary(s: OrdinarySurfaceData) -> int:
    d = s.d
    value = d**3 - d**2 + d - (3 * d - 2) * s.double_curve - 3 * s.triple_points - 2 * s.pinch_points
    if value < 0:
        raise InputError("inconsistent surface data: negative ED degree", code="inconsistent-surface")
    return value


def _transform(values: Sequence[int], m: int) -> Tuple[int, ...]:
    # out_k = sum_i (-1)^(k-i) C(m+1-k+i, i) in_(k-i); this matrix is an involution
    return tuple(
        sum((-1) ** (k - i) * comb(m + 1 - k + i, i) * values[k - i] for i in range(k + 1))
        for k in range(m + 1)
    )


def chern_mather_from_ranks(r: RankVector) -> ChernMatherVector:
    return ChernMatherVector(r.dim, _transform(r.ranks, r.dim))


def ranks_from_chern_mather(c: ChernMatherVector, n: int) -> RankVector:
    if c.dim >= n:
        raise InputError(f"dimension {c.dim} does not fit in P^{n}")
    return RankVector(n, c.dim, _transform(c.degrees, c.dim))


def plucker_ranks(p: PluckerData) -> Tuple[int, int, int]:
    """``(class, flexes, genus)`` of a Plücker curve."""
    return p.class_, p.flexes, p.genus


def dual_ranks(r: RankVector) -> RankVector:
    if r.dim != r.ambient - 1:
        raise InputError(
            "duality reversal implemented for the stated rank-reversal case only (m = n - 1)",
            code="duality-unsupported",
        )
    rev = tuple(reversed(r.ranks))
    if rev[0] < 1:
        raise InputError("dual variety is not a hypersurface (top rank is zero)", code="duality-unsupported")
    return RankVector(r.ambient, r.dim, rev)
