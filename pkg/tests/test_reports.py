import math

import numpy as np
import pytest

from geoment.errors import ParseError, UnsupportedState
from geoment.formats import pure_state_to_json
from geoment.mixed import make_isotropic, make_werner
from geoment.reports import compute_report, curve_report, figure_report
from geoment.sampling import random_density_matrix
from geoment.solver import SolveOptions
from geoment.states import dicke, ghz, make_pure
from geoment.symmetric import lambda_dicke

OPTS = SolveOptions(restarts=8)
FAST = SolveOptions(restarts=6)


def test_compute_family_uses_closed_form_with_cross_check():
    rep = compute_report({"family": {"type": "dicke", "n": 4, "k": 2}}, OPTS)
    assert rep["method"] == "closed_form"
    assert abs(rep["lambda_max"] - lambda_dicke(4, 2)) < 1e-15
    assert rep["diagnostics"]["cross_check_difference"] < 1e-8
    assert rep["nearest_product_state"] is not None


def test_compute_bipartite_uses_schmidt():
    psi = make_pure([2, 2], [0.6, 0, 0, 0.8])
    rep = compute_report(pure_state_to_json(psi), OPTS)
    assert rep["method"] == "schmidt"
    assert abs(rep["lambda_max"] - 0.8) < 1e-12
    assert rep["diagnostics"]["cross_check_difference"] < 1e-9


def test_compute_generic_pure_uses_als():
    rep = compute_report(pure_state_to_json(dicke(3, 2)), OPTS)
    assert rep["method"] == "als"
    assert abs(rep["e_sin2"] - 5 / 9) < 1e-9


def test_compute_ghz_value():
    rep = compute_report({"family": {"type": "ghz", "n": 3}}, OPTS)
    assert abs(rep["e_sin2"] - 0.5) < 1e-12


def test_compute_isotropic_separable_region():
    rep = compute_report({"family": {"type": "isotropic", "d": 3, "F": 0.2}}, OPTS)
    assert rep["method"] == "closed_form"
    assert rep["e_sin2"] == 0.0
    assert rep["nearest_product_state"] is None


def test_compute_two_qubit_density_closed_form(rng):
    rho = random_density_matrix([2, 2], 3, rng)
    rows = [[[x.real, x.imag] for x in row] for row in rho.matrix]
    rep = compute_report({"dims": [2, 2], "matrix": rows}, OPTS)
    assert rep["method"] == "closed_form"
    assert rep["diagnostics"]["family"] == "two_qubit"


def test_compute_detects_werner_matrix():
    rho = make_werner(3, -0.4)
    rows = [[[x.real, x.imag] for x in row] for row in rho.matrix]
    rep = compute_report({"dims": [3, 3], "matrix": rows}, OPTS)
    assert rep["method"] == "closed_form"
    assert rep["diagnostics"]["family"] == "werner"
    assert abs(rep["diagnostics"]["parameter"] - (-0.4)) < 1e-10


def test_compute_detects_isotropic_matrix():
    rho = make_isotropic(3, 0.8)
    rows = [[[x.real, x.imag] for x in row] for row in rho.matrix]
    rep = compute_report({"dims": [3, 3], "matrix": rows}, OPTS)
    assert rep["method"] == "closed_form"
    assert rep["diagnostics"]["family"] == "isotropic"


def test_compute_mixed_fallback_reports_upper_bound(rng):
    w = dicke(3, 2).vector
    g = ghz(3).vector
    mat = 0.5 * np.outer(w, w.conj()) + 0.5 * np.outer(g, g.conj())
    rows = [[[x.real, x.imag] for x in row] for row in mat]
    rep = compute_report({"dims": [2, 2, 2], "matrix": rows}, FAST, ensembles=40)
    assert rep["method"] == "roof_upper_bound"
    assert rep["diagnostics"]["upper_bound_only"] is True
    assert 0.0 <= rep["e_sin2"] <= 1.0


def test_compute_rejects_oversized_mixed_state():
    mat = np.eye(128) / 128
    rows = [[[float(x.real), 0.0] for x in row] for row in mat]
    with pytest.raises(UnsupportedState):
        compute_report({"dims": [2] * 7, "matrix": rows}, FAST)


def test_curve_ww_endpoints():
    rep = curve_report("ww", {}, 5, OPTS)
    assert rep["param"] == "s"
    assert abs(rep["points"][0][1] - 5 / 9) < 1e-12
    assert abs(rep["points"][-1][1] - 5 / 9) < 1e-12
    assert rep["csv"].startswith("param,e_sin2,lambda\n")
    assert rep["csv"].endswith("\n") and "\r" not in rep["csv"]


def test_curve_werner_grid():
    rep = curve_report("werner", {}, 5, OPTS)
    params = [p[0] for p in rep["points"]]
    assert params[0] == -1.0 and params[-1] == 1.0
    assert abs(rep["points"][0][1] - 0.5) < 1e-12
    assert rep["points"][-1][1] == 0.0


def test_curve_ss_mixture_convexified():
    rep = curve_report("ss-mixture", {"n": 7, "k1": 2, "k2": 5}, 11, OPTS)
    assert rep["convexified"] is True
    pure = curve_report("ss", {"n": 7, "k1": 2, "k2": 5}, 11, OPTS)
    for hull_pt, pure_pt in zip(rep["points"], pure["points"]):
        assert hull_pt[1] <= pure_pt[1] + 1e-10


def test_curve_missing_params():
    with pytest.raises(ParseError):
        curve_report("ss", {}, 11, OPTS)
    with pytest.raises(ParseError):
        curve_report("nope", {}, 11, OPTS)


def test_figure_one_files():
    rep = figure_report(1, 21, 0, OPTS)
    assert set(rep["files"]) == {"figure1_ww.csv"}
    lines = rep["files"]["figure1_ww.csv"].strip().split("\n")
    assert len(lines) == 22


def test_figure_two_files_and_scatter(rng):
    rep = figure_report(2, 5, 3, FAST)
    assert set(rep["files"]) == {
        "figure2_wg_phi0.csv",
        "figure2_wg_phipi.csv",
        "figure2_scatter.csv",
    }
    scatter = rep["files"]["figure2_scatter.csv"].strip().split("\n")
    assert scatter[0] == "s,phi,e_sin2,lambda"
    assert len(scatter) == 4


def test_figure_three_hull_below_pure():
    rep = figure_report(3, 11, 0, OPTS)
    pure = rep["files"]["figure3_ss725_pure.csv"].strip().split("\n")[1:]
    hull = rep["files"]["figure3_ss725_hull.csv"].strip().split("\n")[1:]
    for p_line, h_line in zip(pure, hull):
        p_val = float(p_line.split(",")[1])
        h_val = float(h_line.split(",")[1])
        assert h_val <= p_val + 1e-10


def test_figure_deterministic():
    a = figure_report(2, 4, 2, FAST)
    b = figure_report(2, 4, 2, FAST)
    assert a == b
