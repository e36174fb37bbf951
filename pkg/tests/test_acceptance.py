"""Acceptance checks, one per criterion, each printing a PASS/FAIL line.

The lines are collected and echoed in an "acceptance criteria" section at
the end of any pytest run; ``-s`` also shows them inline.
"""

import random
import sys
import time
from contextlib import contextmanager

import pytest

from polarlib import counting, elim, focal, rankcalc
from polarlib.counting import SingularPoint
from polarlib.polycore import Poly, parse_poly
from polarlib.rankcalc import PluckerData, RankVector, SingularityDatum

from conftest import ACCEPTANCE_LINES

XY = ("x", "y")
NODE = SingularPoint((0, 0), 1, 1)
CUSP = SingularPoint((0, 0), 2, 1)

# every counting trial produced by the criteria below, for the ledger check
TRIALS = []


def curve(text):
    return parse_poly(text, XY)


def emit(line):
    ACCEPTANCE_LINES.append(line)
    print(line)


@contextmanager
def criterion(number, title, limit):
    start = time.perf_counter()
    failure = None
    try:
        yield
    except AssertionError as exc:
        failure = exc
    elapsed = time.perf_counter() - start
    within = elapsed < limit
    ok = failure is None and within
    detail = f"{elapsed:.2f}s < {limit}s" if within else f"{elapsed:.2f}s exceeds {limit}s"
    if failure is not None:
        detail += f"; {failure}"
    emit(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}  ({detail})")
    if failure is not None:
        raise failure
    assert within, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"


def keep(report):
    TRIALS.extend(report.trials)
    return report


def test_01_generic_conic_ed_degree():
    with criterion(1, "generic conic x^2+2y^2-1 has ED degree 4 for two seeds", 5):
        for seed in (0, 1):
            r = keep(counting.ed_degree_count(curve("x^2 + 2*y^2 - 1"), seed=seed))
            assert r.count == 4, f"seed {seed}: count {r.count}"
            assert r.stable and not r.non_generic


def test_02_milnor_correction_counted_vs_formula():
    with criterion(2, "nodal cubic 7 and cuspidal cubic 6, counted and by Milnor formula", 10):
        cases = [("y^2 - x^2*(x+1)", NODE, SingularityDatum(1, 1), 7), ("y^2 - x^3", CUSP, SingularityDatum(2, 1), 6)]
        for text, point, datum, expected in cases:
            formula = rankcalc.ed_hypersurface_isolated(3, 2, [datum])
            r = keep(counting.ed_degree_count(curve(text), [point], seed=0, general_position=True))
            assert r.count == formula == expected, f"{text}: counted {r.count}, formula {formula}"
            assert r.stable


def test_03_circle_degeneracy_flagged():
    with criterion(3, "circle counts 2 and is flagged against generic 4", 5):
        r = keep(counting.ed_degree_count(curve("x^2 + y^2 - 1")))
        assert r.count == 2
        assert r.expected_generic == 4 and r.non_generic


def test_04_polar_class_oracle():
    with criterion(4, "polar class 2 / 4 / 3 equals Plucker mu1", 10):
        cases = [
            ("x^2 + 2*y^2 - 1", [], PluckerData(2)),
            ("y^2 - x^2*(x+1)", [NODE], PluckerData(3, 1, 0)),
            ("y^2 - x^3", [CUSP], PluckerData(3, 0, 1)),
        ]
        for text, sing, data in cases:
            r = keep(counting.polar_class_count(curve(text), seed=0, singular=sing))
            mu1 = rankcalc.plucker_ranks(data)[0]
            assert r.count == mu1, f"{text}: counted {r.count}, mu1 {mu1}"
        assert [rankcalc.plucker_ranks(c[2])[0] for c in cases] == [2, 4, 3]


def test_05_chern_mather_transform():
    with criterion(5, "Chern-Mather round trip, plane cubic (3,0), surface c2", 1):
        rng = random.Random(5)
        for _ in range(200):
            m = rng.randint(0, 8)
            ranks = (rng.randint(1, 60),) + tuple(rng.randint(0, 60) for _ in range(m))
            r = RankVector(m + 1, m, ranks)
            back = rankcalc.ranks_from_chern_mather(rankcalc.chern_mather_from_ranks(r), m + 1)
            assert back == r, f"round trip failed on {ranks}"
        assert rankcalc.chern_mather_from_ranks(RankVector(2, 1, (3, 6))).degrees == (3, 0)
        for d in range(2, 6):
            c = rankcalc.chern_mather_from_ranks(rankcalc.ranks_smooth_hypersurface(d, 3))
            assert c.degrees[2] == d * (d * d - 4 * d + 6), f"d={d}: c2 {c.degrees[2]}"


def test_06_duality():
    with criterion(6, "ED invariant under rank reversal; dual nodal cubic has mu1* = 3", 1):
        vectors = [rankcalc.ranks_smooth_hypersurface(d, n) for d in range(2, 7) for n in range(2, 6)]
        vectors += [RankVector(2, 1, (3, 4)), RankVector(2, 1, (3, 3)), RankVector(3, 2, (4, 10, 12))]
        for r in vectors:
            assert rankcalc.ed_from_ranks(rankcalc.dual_ranks(r)) == rankcalc.ed_from_ranks(r)
        dual = PluckerData(3, 1, 0).dual()
        assert (dual.d, dual.cusps, dual.flexes, dual.genus) == (4, 3, 0, 0)
        assert rankcalc.plucker_ranks(dual)[0] == 3


def _plucker_grid():
    for d in range(2, 7):
        g = (d - 1) * (d - 2) // 2
        for nodes in range(g + 1):
            for cusps in range(g + 1 - nodes):
                try:
                    yield PluckerData(d, nodes, cusps)
                except Exception:
                    continue


def test_07_focal_identities():
    with criterion(7, "3mu1+k = 3mu0+i, Salmon = plane-curve formula, focal duality on d<=6", 1):
        grid = list(_plucker_grid())
        assert len(grid) > 90
        for p in grid:
            mu1, iota, _ = rankcalc.plucker_ranks(p)
            assert 3 * mu1 + p.cusps == 3 * p.d + iota
            assert focal.focal_salmon(p) == focal.focal_plane_curve(p.d, mu1, p.cusps, iota)
            assert focal.focal_salmon(p.dual()) == focal.focal_salmon(p), f"duality fails at {p}"


def test_08_cross_formula_focal_agreement():
    with criterion(8, "surface, plane and smooth-curve focal formulas agree", 1):
        for d in range(2, 7):
            via_ranks = focal.focal_hypersurface_ranks(rankcalc.ranks_smooth_hypersurface(d, 3))
            via_chern = focal.focal_smooth_surface(focal.SmoothSurfaceChernData.in_p3(d))
            assert via_ranks == via_chern == 2 * d * (2 * d - 1) * (d - 1), f"d={d}"
            salmon = focal.focal_salmon(PluckerData(d))
            assert focal.focal_hypersurface_ranks(RankVector(2, 1, (d, d * (d - 1)))) == salmon == 3 * d * (d - 1)
            assert focal.focal_smooth_curve(d, (d - 1) * (d - 2) // 2) == salmon
        assert focal.focal_smooth_surface(focal.SmoothSurfaceChernData.in_p3(2)) == 12


def test_09_quartic_surface():
    with criterion(9, "quartic surface ranks (4,12,36) give 168; closed form agrees", 1):
        assert focal.focal_hypersurface_ranks(RankVector(3, 2, (4, 12, 36))) == 168
        for d, n in [(3, 3), (4, 3), (5, 3), (3, 4), (4, 4), (6, 5)]:
            closed = (n - 1) * d * (d - 1) ** (n - 1) + 2 * d * (d - 1) * ((d - 1) ** (n - 1) - 1) // (d - 2)
            assert focal.focal_hypersurface_ranks(rankcalc.ranks_smooth_hypersurface(d, n)) == closed, (d, n)


def test_10_evolutes():
    with criterion(10, "ellipse evolute degree 6 generic, parabola 3 non-generic, circle degenerate", 30):
        e = focal.evolute_eliminant(curve("x^2/4 + y^2 - 1"))
        assert e.degree == 6 == focal.focal_salmon(PluckerData(2)) and e.genericity_flag
        p = focal.evolute_eliminant(curve("y - x^2"))
        assert p.degree == 3 and not p.genericity_flag
        c = focal.evolute_eliminant(curve("x^2 + y^2 - 1"))
        assert c.degenerate and c.center == (0, 0)


def _random_poly(rng):
    while True:
        terms = {}
        for _ in range(rng.randint(1, 5)):
            e = (rng.randint(0, 3), rng.randint(0, 3))
            if sum(e) <= 3:
                terms[e] = rng.randint(-9, 9)
        p = Poly(XY, terms)
        if p.degree_in("y") >= 1:
            return p


def test_11_elimination_substrate():
    with criterion(11, "resultant laws on 100 random pairs; multiplicity ledger balances", 20):
        rng = random.Random(11)
        for _ in range(100):
            f, g, h = _random_poly(rng), _random_poly(rng), _random_poly(rng)
            r = elim.resultant(f, g, "y")
            assert elim.resultant(f * h, g, "y") == r * elim.resultant(h, g, "y")
            assert elim.resultant(g, f, "y") == (-1) ** (f.degree_in("y") * g.degree_in("y")) * r
            assert elim.resultant(f * h, g * h, "y").is_zero()
            assert r.is_zero() == (elim.gcd(f, g).degree_in("y") > 0)
        trials = list(TRIALS)
        if not trials:
            # running this criterion alone: produce trials of its own
            for text, sing in [("x^2 + 2*y^2 - 1", []), ("y^2 - x^3", [CUSP]), ("y^2 - x^2*(x+1)", [NODE])]:
                trials.extend(counting.ed_degree_count(curve(text), sing).trials)
        assert trials and all(t.balances() for t in trials)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
