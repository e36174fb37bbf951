"""Command line front end.

Every subcommand builds a report dictionary from library calls only; the
front end adds no arithmetic of its own.  ``--json`` prints the report with
sorted keys, rationals as ``"p/q"`` strings and polynomials in canonical
graded-lex form, so equal inputs and seeds give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence

from . import counting, critsys, focal, rankcalc
from .errors import GenericityError, InputError, PolarlibError
from .polycore import Poly, as_rational, parse_poly

SEED_ENV = "POLARLIB_SEED"
CURVE_VARS = ("x", "y")


@dataclass
class Report:
    command: str
    inputs: Dict[str, Any]
    results: Dict[str, Any]
    seed: int
    warnings: List[str] = field(default_factory=list)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "seed": self.seed,
            "warnings": list(self.warnings),
        }


def parse_polynomial(text: str, variables: Optional[Sequence[str]] = None) -> Poly:
    return parse_poly(text, variables)


# ---------------------------------------------------------------------------
# value conversion


def to_jsonable(value: Any) -> Any:
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Poly):
        return str(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    raise TypeError(f"cannot serialise {type(value).__name__}")


def render_json(obj: Dict[str, Any]) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False)


def render_text(report: Report) -> str:
    lines = [f"{report.command}"]
    for k in sorted(report.results):
        v = to_jsonable(report.results[k])
        if isinstance(v, (list, dict)):
            v = json.dumps(v, sort_keys=True, ensure_ascii=False)
        lines.append(f"  {k}: {v}")
    for w in report.warnings:
        lines.append(f"  warning: {w}")
    return "\n".join(lines)


def _int_list(text: str, what: str, length: Optional[int] = None) -> List[int]:
    try:
        values = [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise InputError(f"{what}: expected comma-separated integers, got {text!r}") from None
    if length is not None and len(values) != length:
        raise InputError(f"{what}: expected {length} integers, got {len(values)}")
    return values


def _rational_list(text: str, what: str) -> List[Fraction]:
    try:
        return [Fraction(as_rational(t.strip())) for t in text.split(",")]
    except (ValueError, ZeroDivisionError, TypeError):
        raise InputError(f"{what}: expected comma-separated rationals, got {text!r}") from None


def parse_singular(text: str) -> counting.SingularPoint:
    """``"x,y,mu,mu_sectional"`` to a :class:`SingularPoint`."""
    parts = [t.strip() for t in text.split(",")]
    if len(parts) != 4:
        raise InputError(f"--singular expects x,y,mu,mu_sectional, got {text!r}")
    (a, b) = _rational_list(",".join(parts[:2]), "--singular location")
    mu, mu1 = _int_list(",".join(parts[2:]), "--singular Milnor numbers", 2)
    return counting.SingularPoint((a, b), mu, mu1)


def resolve_seed(arg: Optional[int], env: Optional[Dict[str, str]] = None) -> int:
    if arg is not None:
        return arg
    env = os.environ if env is None else env
    raw = env.get(SEED_ENV)
    if raw is None or raw.strip() == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _curve(text: str) -> Poly:
    return parse_polynomial(text, CURVE_VARS)


# ---------------------------------------------------------------------------
# serialisers for library results


def count_report_dict(r: counting.CountReport) -> Dict[str, Any]:
    return {
        "count": r.count,
        "stable": r.stable,
        "expected_generic": r.expected_generic,
        "non_generic": r.non_generic,
        "attempts": r.attempts,
        "transform": r.transform,
        "trials": [
            {
                "seed": t.seed,
                "data": t.data,
                "shear": t.shear,
                "resultant_degree": t.resultant_degree,
                "subtracted": [{"point": p, "multiplicity": m} for p, m in t.subtracted],
                "residual_squarefree": t.residual_squarefree,
                "count": t.count,
                "balances": t.balances(),
            }
            for t in r.trials
        ],
    }


def _ranks_dict(r: rankcalc.RankVector) -> Dict[str, Any]:
    return {"ambient": r.ambient, "dim": r.dim, "ranks": r.ranks}


def _ramification(value: int) -> Dict[str, Any]:
    return {"ramification_degree": value, "caveat": focal.BIRATIONALITY_CAVEAT}


# ---------------------------------------------------------------------------
# commands


def cmd_ranks(args, seed: int) -> Report:
    d, n = _int_list(args.smooth_hypersurface, "--smooth-hypersurface", 2)
    r = rankcalc.ranks_smooth_hypersurface(d, n)
    results = {
        "ranks": r.ranks,
        "ed_degree": rankcalc.ed_from_ranks(r),
        "chern_mather": rankcalc.chern_mather_from_ranks(r).degrees,
    }
    if args.dual:
        results["dual_ranks"] = rankcalc.dual_ranks(r).ranks
    return Report("ranks", {"d": d, "n": n}, results, seed)


def _collect_singular(F: Poly, given: List[counting.SingularPoint]) -> List[counting.SingularPoint]:
    found = counting.singular_locus(F)
    known = {P.location for P in given}
    missing = [P.location for P in found.points if P.location not in known]
    if missing or found.unresolved:
        detail = []
        if missing:
            detail.append("points " + ", ".join(f"({a}, {b})" for a, b in missing))
        if found.unresolved:
            detail.append("irrational points on " + ", ".join(str(p) for p in found.unresolved))
        raise InputError(
            "curve has singular points without Milnor data (" + "; ".join(detail)
            + "); pass --singular x,y,mu,mu_sectional for each",
            code="milnor-data-required",
        )
    return given


def cmd_ed_degree(args, seed: int) -> Report:
    if args.count:
        if not args.curve:
            raise InputError("--count needs --curve")
        F = _curve(args.curve)
        given = [parse_singular(s) for s in args.singular or []]
        sing = _collect_singular(F, given)
        r = counting.ed_degree_count(
            F, sing, seed,
            trials=args.trials, general_position=args.general_position, strict=True,
        )
        inputs = {
            "curve": F,
            "singular": [{"point": P.location, "milnor": P.milnor, "sectional_milnor": P.sectional_milnor} for P in sing],
            "general_position": args.general_position,
            "trials": args.trials,
        }
        return Report("ed-degree", inputs, count_report_dict(r), seed, list(r.warnings))

    if args.smooth_hypersurface:
        d, n = _int_list(args.smooth_hypersurface, "--smooth-hypersurface", 2)
        r = rankcalc.ranks_smooth_hypersurface(d, n)
        return Report("ed-degree", {"d": d, "n": n}, {"ed_degree": rankcalc.ed_from_ranks(r), "ranks": r.ranks}, seed)
    if args.isolated:
        d, n = _int_list(args.isolated, "--isolated", 2)
        sings = [rankcalc.SingularityDatum(*_int_list(m, "--milnor", 2)) for m in args.milnor or []]
        value = rankcalc.ed_hypersurface_isolated(d, n, sings)
        inputs = {"d": d, "n": n, "milnor": [(s.milnor, s.sectional_milnor) for s in sings]}
        return Report("ed-degree", inputs, {"ed_degree": value}, seed)
    if args.ordinary_surface:
        d, eps, t, nu = _int_list(args.ordinary_surface, "--ordinary-surface", 4)
        value = rankcalc.ed_surface_ordinary(rankcalc.OrdinarySurfaceData(d, eps, t, nu))
        inputs = {"d": d, "double_curve": eps, "triple_points": t, "pinch_points": nu}
        return Report("ed-degree", inputs, {"ed_degree": value}, seed)
    if args.ranks:
        ranks = _int_list(args.ranks, "--ranks")
        ambient = args.ambient if args.ambient is not None else len(ranks)
        r = rankcalc.RankVector(ambient, len(ranks) - 1, tuple(ranks))
        return Report("ed-degree", _ranks_dict(r), {"ed_degree": rankcalc.ed_from_ranks(r)}, seed)
    raise InputError("ed-degree --formula needs one of --smooth-hypersurface, --isolated, --ordinary-surface, --ranks")


def cmd_chern_mather(args, seed: int) -> Report:
    if args.ranks:
        ranks = _int_list(args.ranks, "--ranks")
        ambient = args.ambient if args.ambient is not None else len(ranks)
        r = rankcalc.RankVector(ambient, len(ranks) - 1, tuple(ranks))
        c = rankcalc.chern_mather_from_ranks(r)
        return Report("chern-mather", _ranks_dict(r), {"chern_mather": c.degrees}, seed)
    degrees = _int_list(args.chern, "--chern")
    c = rankcalc.ChernMatherVector(len(degrees) - 1, tuple(degrees))
    ambient = args.ambient if args.ambient is not None else len(degrees)
    r = rankcalc.ranks_from_chern_mather(c, ambient)
    return Report("chern-mather", {"dim": c.dim, "chern_mather": c.degrees, "ambient": ambient},
                  {"ranks": r.ranks, "ed_degree": rankcalc.ed_from_ranks(r)}, seed)


def cmd_plucker(args, seed: int) -> Report:
    d, nodes, cusps = _int_list(args.data, "plucker data", 3)
    p = rankcalc.PluckerData(d, nodes, cusps)
    mu1, iota, g = rankcalc.plucker_ranks(p)
    dual = p.dual()
    results = {
        "mu1": mu1,
        "flexes": iota,
        "genus": g,
        "focal": focal.focal_salmon(p),
        "ed_degree": d + mu1,
        "dual": {"d": dual.d, "nodes": dual.nodes, "cusps": dual.cusps},
        "caveat": focal.BIRATIONALITY_CAVEAT,
    }
    return Report("plucker", {"d": d, "nodes": nodes, "cusps": cusps}, results, seed)


def cmd_focal_degree(args, seed: int) -> Report:
    if args.plane_curve:
        mu0, mu1, kappa, iota = _int_list(args.plane_curve, "--plane-curve", 4)
        value = focal.focal_plane_curve(mu0, mu1, kappa, iota)
        inputs = {"mode": "plane-curve", "mu0": mu0, "mu1": mu1, "cusps": kappa, "flexes": iota}
    elif args.salmon:
        d, nodes, cusps = _int_list(args.salmon, "--salmon", 3)
        value = focal.focal_salmon(rankcalc.PluckerData(d, nodes, cusps))
        inputs = {"mode": "salmon", "d": d, "nodes": nodes, "cusps": cusps}
    elif args.smooth_curve:
        d, g = _int_list(args.smooth_curve, "--smooth-curve", 2)
        value = focal.focal_smooth_curve(d, g)
        inputs = {"mode": "smooth-curve", "d": d, "genus": g}
    elif args.smooth_surface is not None:
        c = focal.SmoothSurfaceChernData.in_p3(args.smooth_surface)
        value = focal.focal_smooth_surface(c)
        inputs = {"mode": "smooth-surface", "d": c.d, "c1h": c.c1h, "c1sq": c.c1sq, "c2": c.c2}
    elif args.surface_chern:
        d, c1h, c1sq, c2 = _int_list(args.surface_chern, "--surface-chern", 4)
        value = focal.focal_smooth_surface(focal.SmoothSurfaceChernData(d, c1h, c1sq, c2))
        inputs = {"mode": "surface-chern", "d": d, "c1h": c1h, "c1sq": c1sq, "c2": c2}
    elif args.hypersurface_ranks:
        ranks = _int_list(args.hypersurface_ranks, "--hypersurface-ranks")
        r = rankcalc.RankVector(len(ranks), len(ranks) - 1, tuple(ranks))
        value = focal.focal_hypersurface_ranks(r)
        inputs = {"mode": "hypersurface-ranks", **_ranks_dict(r)}
    else:
        raise InputError("focal-degree needs a mode flag")
    return Report("focal-degree", inputs, _ramification(value), seed)


def cmd_evolute(args, seed: int) -> Report:
    F = _curve(args.curve)
    r = focal.evolute_eliminant(F, max_degree=args.max_degree)
    results = {
        "eliminant": r.eliminant,
        "degree": r.degree,
        "extraneous_factors_removed": list(r.extraneous_factors_removed),
        "genericity_flag": r.genericity_flag,
        "degenerate": r.degenerate,
        "center": r.center,
    }
    return Report("evolute", {"curve": F, "max_degree": args.max_degree}, results, seed, list(r.warnings))


def _quadric(text: str, variables) -> critsys.QuadricSpec:
    kind, _, rest = text.partition(":")
    if kind == "euclidean":
        return critsys.QuadricSpec.euclidean(_rational_list(rest, "--quadric centre"))
    if kind == "general":
        return critsys.QuadricSpec.general(parse_polynomial(rest))
    raise InputError(f"--quadric must be euclidean:a1,...,an or general:q, got {text!r}")


def cmd_polar_matrix(args, seed: int) -> Report:
    texts = [t for t in args.system.split(";") if t.strip()]
    variables = tuple(v.strip() for v in args.vars.split(",")) if args.vars else None
    eqs = [parse_polynomial(t, variables) for t in texts]
    system = critsys.PolySystem(tuple(eqs), args.dim, variables or ())
    quad = _quadric(args.quadric, system.variables)
    mat = critsys.build_reciprocal_matrix(system, quad)
    results = {
        "variables": system.variables,
        "matrix": [list(row) for row in mat.rows],
        "minor_size": mat.minor_size,
        "minors": critsys.minors(mat),
    }
    inputs = {"system": list(system.equations), "dim": args.dim, "quadric": args.quadric}
    return Report("polar-matrix", inputs, results, seed, list(mat.warnings))


COMMANDS: Dict[str, Callable] = {
    "ranks": cmd_ranks,
    "ed-degree": cmd_ed_degree,
    "chern-mather": cmd_chern_mather,
    "plucker": cmd_plucker,
    "focal-degree": cmd_focal_degree,
    "evolute": cmd_evolute,
    "polar-matrix": cmd_polar_matrix,
}


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=None, help=f"random seed (default ${SEED_ENV} or 0)")

    parser = argparse.ArgumentParser(
        prog="polarlib", description="Exact polar, ED, Chern-Mather and focal-locus degrees."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ranks", parents=[common], help="ranks of a smooth hypersurface")
    p.add_argument("--smooth-hypersurface", required=True, metavar="D,N")
    p.add_argument("--dual", action="store_true", help="also report the reversed (dual) ranks")

    p = sub.add_parser("ed-degree", parents=[common], help="Euclidean distance degree")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--formula", action="store_true")
    mode.add_argument("--count", action="store_true")
    p.add_argument("--smooth-hypersurface", metavar="D,N")
    p.add_argument("--isolated", metavar="D,N", help="hypersurface with isolated singularities")
    p.add_argument("--milnor", action="append", metavar="MU,MU1", help="repeat per singular point")
    p.add_argument("--ordinary-surface", metavar="D,EPS,T,NU2")
    p.add_argument("--ranks", metavar="R0,R1,...")
    p.add_argument("--ambient", type=int)
    p.add_argument("--curve", metavar="F")
    p.add_argument("--singular", action="append", metavar="X,Y,MU,MU1")
    p.add_argument("--general-position", action="store_true",
                   help="apply a seeded random projective change first")
    p.add_argument("--trials", type=int, default=2)

    p = sub.add_parser("chern-mather", parents=[common], help="rank vector <-> Chern-Mather degrees")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--ranks", metavar="R0,R1,...")
    src.add_argument("--chern", metavar="C0,C1,...")
    p.add_argument("--ambient", type=int)

    p = sub.add_parser("plucker", parents=[common], help="Plücker invariants and focal degree")
    p.add_argument("data", metavar="D,NODES,CUSPS")

    p = sub.add_parser("focal-degree", parents=[common], help="focal-locus (ramification) degree")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--plane-curve", metavar="MU0,MU1,KAPPA,IOTA")
    mode.add_argument("--salmon", metavar="D,NODES,CUSPS")
    mode.add_argument("--smooth-curve", metavar="D,G")
    mode.add_argument("--smooth-surface", type=int, metavar="D", help="smooth surface of degree D in P^3")
    mode.add_argument("--surface-chern", metavar="D,C1H,C1SQ,C2")
    mode.add_argument("--hypersurface-ranks", metavar="R0,R1,...")

    p = sub.add_parser("evolute", parents=[common], help="implicit evolute of a plane curve")
    p.add_argument("--curve", required=True, metavar="F")
    p.add_argument("--max-degree", type=int, default=3)

    p = sub.add_parser("polar-matrix", parents=[common], help="critical matrix and its minors")
    p.add_argument("--system", required=True, metavar="F1;F2;...")
    p.add_argument("--quadric", required=True, metavar="euclidean:A1,...|general:Q")
    p.add_argument("--dim", required=True, type=int)
    p.add_argument("--vars", metavar="X1,X2,...")
    return parser


def _error_payload(command: Optional[str], exc: PolarlibError, seed: Optional[int]) -> Dict[str, Any]:
    payload: Dict[str, Any] = {
        "command": command,
        "error": {"code": exc.code, "message": str(exc), "exit_code": exc.exit_code},
        "seed": seed,
    }
    if isinstance(exc, GenericityError) and exc.report is not None:
        payload["error"]["report"] = count_report_dict(exc.report)
    return payload


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    seed = None
    try:
        seed = resolve_seed(args.seed)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            report = COMMANDS[args.command](args, seed)
        report.warnings.extend(str(w.message) for w in caught)
    except PolarlibError as exc:
        if args.json:
            print(render_json(_error_payload(args.command, exc, seed)), file=stdout)
        else:
            print(f"error [{exc.code}]: {exc}", file=stderr)
        return exc.exit_code
    if args.json:
        print(render_json(report.as_dict()), file=stdout)
    else:
        print(render_text(report), file=stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
