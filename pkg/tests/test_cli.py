import io
import json
import subprocess
import sys

import pytest

from polarlib import counting, rankcalc
from polarlib.cli import main, parse_polynomial, parse_singular, resolve_seed
from polarlib.errors import ConsistencyError, GenericityError, InputError, ParseError
from polarlib.polycore import parse_poly


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, _ = run(*argv, "--json")
    return code, json.loads(out)


def test_parse_polynomial_examples():
    assert parse_polynomial("x^2 + 2*y^2 - 1") == parse_poly("x^2+2*y^2-1")
    p = parse_polynomial("3/2*x", ["x", "y"])
    assert p.vars == ("x", "y")
    with pytest.raises(ParseError):
        parse_polynomial("x + w", ["x", "y"])


def test_ranks_command():
    code, data = run_json("ranks", "--smooth-hypersurface", "3,3")
    assert code == 0
    assert data["results"]["ranks"] == [3, 6, 12]
    assert data["results"]["ed_degree"] == 21


def test_plucker_command():
    code, data = run_json("plucker", "3,1,0")
    res = data["results"]
    assert (res["mu1"], res["flexes"], res["genus"], res["focal"]) == (4, 3, 0, 12)
    assert "ramification" in res["caveat"]


def test_ed_count_cusp_in_general_position():
    code, data = run_json(
        "ed-degree", "--count", "--curve", "y^2-x^3", "--singular", "0,0,2,1", "--seed", "7", "--general-position"
    )
    assert code == 0
    assert data["results"]["count"] == 6 and data["results"]["stable"] is True


def test_ed_count_cusp_as_given_is_flagged():
    code, data = run_json("ed-degree", "--count", "--curve", "y^2-x^3", "--singular", "0,0,2,1", "--seed", "7")
    assert data["results"]["count"] == 4 and data["results"]["non_generic"] is True


def test_cli_numbers_come_from_library():
    _, data = run_json("ed-degree", "--count", "--curve", "x^2+2*y^2-1", "--seed", "3")
    r = counting.ed_degree_count(parse_poly("x^2+2*y^2-1", ["x", "y"]), seed=3)
    assert data["results"]["count"] == r.count
    assert [t["seed"] for t in data["results"]["trials"]] == [t.seed for t in r.trials]
    _, data = run_json("ed-degree", "--formula", "--isolated", "3,2", "--milnor", "1,1")
    assert data["results"]["ed_degree"] == rankcalc.ed_hypersurface_isolated(3, 2, [rankcalc.SingularityDatum(1, 1)])


def test_missing_milnor_data_errors_with_points():
    code, data = run_json("ed-degree", "--count", "--curve", "y^2-x^2*(x+1)")
    assert code == 2
    assert data["error"]["code"] == "milnor-data-required"
    assert "(0, 0)" in data["error"]["message"]


def test_json_is_byte_identical():
    argv = ("ed-degree", "--count", "--curve", "x^2+2*y^2-1", "--seed", "11", "--json")
    assert run(*argv)[1] == run(*argv)[1]


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("POLARLIB_SEED", "9")
    _, data = run_json("ranks", "--smooth-hypersurface", "2,2")
    assert data["seed"] == 9
    _, data = run_json("ranks", "--smooth-hypersurface", "2,2", "--seed", "4")
    assert data["seed"] == 4


def test_resolve_seed():
    assert resolve_seed(None, {}) == 0
    assert resolve_seed(None, {"POLARLIB_SEED": "12"}) == 12
    with pytest.raises(InputError):
        resolve_seed(None, {"POLARLIB_SEED": "abc"})


def test_parse_singular():
    p = parse_singular("1/2,-3,2,1")
    assert p.location == (0.5, -3) and (p.milnor, p.sectional_milnor) == (2, 1)
    with pytest.raises(InputError):
        parse_singular("0,0,2")


def test_chern_mather_both_directions():
    _, data = run_json("chern-mather", "--ranks", "3,6")
    assert data["results"]["chern_mather"] == [3, 0]
    _, data = run_json("chern-mather", "--chern", "3,0")
    assert data["results"]["ranks"] == [3, 6]


@pytest.mark.parametrize(
    "argv, value",
    [
        (("--plane-curve", "3,4,0,3"), 12),
        (("--salmon", "3,0,1"), 10),
        (("--smooth-curve", "4,3"), 36),
        (("--smooth-surface", "2"), 12),
        (("--hypersurface-ranks", "4,12,36"), 168),
    ],
)
def test_focal_degree_modes(argv, value):
    code, data = run_json("focal-degree", *argv)
    assert code == 0
    assert data["results"]["ramification_degree"] == value
    assert data["results"]["caveat"]


def test_focal_inconsistent_exit_code():
    code, data = run_json("focal-degree", "--plane-curve", "3,4,0,4")
    assert code == 2 and data["error"]["code"] == "inconsistent-curve-invariants"


def test_evolute_command():
    _, data = run_json("evolute", "--curve", "y - x^2")
    assert data["results"]["degree"] == 3
    assert data["results"]["eliminant"] == "16*Y^3 - 27*X^2 - 24*Y^2 + 12*Y - 2"
    _, data = run_json("evolute", "--curve", "x^2+y^2-1")
    assert data["results"]["degenerate"] is True


def test_polar_matrix_command():
    _, data = run_json("polar-matrix", "--system", "x^2+y^2+z^2-1", "--quadric", "euclidean:1,2,3", "--dim", "2")
    assert data["results"]["minors"] == ["4*x - 2*y", "6*x - 2*z", "6*y - 4*z"]


def test_undeclared_second_singular_point():
    code, data = run_json("ed-degree", "--count", "--curve", "(x^2-1)*(y-2)", "--singular", "1,2,1,1")
    assert code == 2 and data["error"]["code"] == "milnor-data-required"
    assert "(-1, 2)" in data["error"]["message"]


@pytest.mark.parametrize(
    "exc, exit_code, code",
    [
        (GenericityError("trials disagree"), 3, "genericity-failure"),
        (ConsistencyError("routes disagree"), 4, "internal-consistency"),
    ],
)
def test_engine_errors_map_to_exit_codes(monkeypatch, exc, exit_code, code):
    def boom(*args, **kwargs):
        raise exc

    monkeypatch.setattr(counting, "ed_degree_count", boom)
    got, data = run_json("ed-degree", "--count", "--curve", "x^2+2*y^2-1")
    assert got == exit_code and data["error"]["code"] == code


def test_parse_error_text_mode():
    code, out, err = run("evolute", "--curve", "x^2+")
    assert code == 2 and "parse-error" in err and out == ""


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "polarlib", "ranks", "--smooth-hypersurface", "3,3"],
        capture_output=True, text=True, check=True,
    )
    assert "ed_degree: 21" in proc.stdout
