"""Exact polar degrees, ED degrees, Chern-Mather degrees and focal-locus degrees.

Two independent pipelines: closed-form engines on rank vectors and Plücker
data (:mod:`polarlib.rankcalc`, :mod:`polarlib.focal`), and resultant-based
counting of critical points on plane curves (:mod:`polarlib.counting`).
"""

from .counting import (
    CountReport,
    SingularPoint,
    Trial,
    count_common_roots,
    ed_degree_count,
    polar_class_count,
    singular_points_curve,
)
from .critsys import (
    CriticalMatrix,
    PolySystem,
    QuadricSpec,
    build_ed_matrix,
    build_reciprocal_matrix,
    minors,
    plane_curve_ed_system,
)
from .elim import coprime_base, gcd, resultant, squarefree_decompose, squarefree_factors
from .errors import ConsistencyError, GenericityError, InputError, ParseError, PolarlibError
from .focal import (
    BIRATIONALITY_CAVEAT,
    EvoluteResult,
    SmoothSurfaceChernData,
    evolute_eliminant,
    focal_hypersurface_ranks,
    focal_plane_curve,
    focal_salmon,
    focal_smooth_curve,
    focal_smooth_surface,
)
from .polycore import LinearChange, Poly, apply_linear_change, parse_poly
from .rankcalc import (
    ChernMatherVector,
    OrdinarySurfaceData,
    PluckerData,
    RankVector,
    SingularityDatum,
    chern_mather_from_ranks,
    dual_ranks,
    ed_from_ranks,
    ed_hypersurface_isolated,
    ed_surface_ordinary,
    plucker_ranks,
    ranks_from_chern_mather,
    ranks_smooth_hypersurface,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
