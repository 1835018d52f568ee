import math

import numpy as np
import pytest

from geoment.errors import InvalidK, NotNormalized, OutOfRange
from geoment.sampling import complex_normal
from geoment.solver import SolveOptions, brute_force_lambda, entanglement_eigenvalue
from geoment.states import Dicke, Superposition, build, dicke, overlap, ss_family
from geoment.symmetric import (
    SymmetricAnsatz,
    best_symmetric_ansatz,
    lambda_dicke,
    max_entangled_k,
    ss_curve,
    ss_lambda,
    symmetric_lambda,
    wg_curve,
    ww_cubic,
    ww_curve,
    ww_lambda,
    ww_root,
)


def test_lambda_dicke_w():
    assert abs(lambda_dicke(3, 2) - 2 / 3) < 1e-15


def test_lambda_dicke_product_endpoints():
    for n in (1, 3, 6):
        assert lambda_dicke(n, 0) == 1.0
        assert lambda_dicke(n, n) == 1.0


def test_lambda_dicke_42():
    assert abs(lambda_dicke(4, 2) - math.sqrt(6) / 4) < 1e-15


def test_lambda_dicke_42_cross_checked():
    val = lambda_dicke(4, 2)
    assert abs(entanglement_eigenvalue(dicke(4, 2)).lambda_max - val) < 1e-8
    assert abs(brute_force_lambda(dicke(4, 2), 10) - val) < 1e-4


def test_lambda_dicke_zero_one_exchange():
    for n in range(1, 9):
        for k in range(n + 1):
            assert abs(lambda_dicke(n, k) - lambda_dicke(n, n - k)) < 1e-15


def test_lambda_dicke_invalid():
    with pytest.raises(InvalidK):
        lambda_dicke(4, 5)


@pytest.mark.parametrize(
    "n,expected",
    [(2, {1}), (3, {1, 2}), (4, {2}), (5, {2, 3}), (6, {3}), (7, {3, 4})],
)
def test_max_entangled_k(n, expected):
    assert max_entangled_k(n) == expected


def test_ww_root_endpoints():
    assert abs(ww_root(1.0) - math.sqrt(0.5)) < 1e-14
    assert abs(ww_root(0.0) - math.sqrt(2.0)) < 1e-14
    assert abs(ww_root(0.5) - 1.0) < 1e-14


def test_ww_root_residual_on_grid():
    for s in np.linspace(0, 1, 101):
        t = ww_root(float(s))
        assert math.sqrt(0.5) - 1e-12 <= t <= math.sqrt(2.0) + 1e-12
        assert abs(ww_cubic(float(s), t)) <= 1e-12


def test_ww_root_out_of_range():
    with pytest.raises(OutOfRange):
        ww_root(1.2)


def test_ww_lambda_named_values():
    assert abs(ww_lambda(1.0) - 2 / 3) < 1e-12
    assert abs(ww_lambda(0.0) - 2 / 3) < 1e-12
    assert abs(ww_lambda(0.5) - math.sqrt(3) / 2) < 1e-12


def test_ww_lambda_exchange_symmetry():
    for s in np.linspace(0, 0.5, 21):
        assert abs(ww_lambda(float(s)) - ww_lambda(float(1 - s))) < 1e-12


def test_ww_lambda_against_brute_force():
    for s in (0.15, 0.4, 0.75):
        psi = build(ss_family(3, 2, 1, s))
        assert abs(ww_lambda(s) - brute_force_lambda(psi, 20)) < 1e-4


def test_ww_lambda_against_solver():
    for s in (0.2, 0.6):
        psi = build(ss_family(3, 2, 1, s))
        assert abs(ww_lambda(s) - entanglement_eigenvalue(psi).lambda_max) < 1e-9


def test_ww_curve_convex():
    curve = ww_curve(np.linspace(0, 1, 41))
    second = np.diff(curve.values, 2)
    assert np.all(second >= -1e-9)
    assert abs(curve.values[0] - 5 / 9) < 1e-12
    assert abs(curve.values[-1] - 5 / 9) < 1e-12


def test_symmetric_lambda_single_term():
    for n, k in ((3, 1), (5, 2), (6, 0)):
        coeffs = np.zeros(n + 1)
        coeffs[k] = 1.0
        assert abs(symmetric_lambda(n, coeffs) - lambda_dicke(n, k)) < 1e-10


def test_symmetric_lambda_nghz():
    for n in (3, 4, 6):
        coeffs = np.zeros(n + 1)
        coeffs[0] = coeffs[n] = 1 / math.sqrt(2)
        assert abs(symmetric_lambda(n, coeffs) - 1 / math.sqrt(2)) < 1e-10


def test_symmetric_lambda_rejects_unnormalized():
    with pytest.raises(NotNormalized):
        symmetric_lambda(3, [1.0, 1.0, 0.0, 0.0])


def test_symmetric_ansatz_validation():
    with pytest.raises(OutOfRange):
        SymmetricAnsatz(theta=2.0)
    with pytest.raises(OutOfRange):
        SymmetricAnsatz(theta=0.5, phase=7.0)


def test_best_symmetric_ansatz_for_w():
    ansatz, lam = best_symmetric_ansatz(3, [0, 0, 1, 0])
    # optimal factor is (sqrt(2/3), sqrt(1/3)): theta = arctan(sqrt(1/2))
    assert abs(ansatz.theta - math.atan(math.sqrt(0.5))) < 1e-6
    assert ansatz.phase == 0.0
    assert abs(lam - 2 / 3) < 1e-10
    achieved = abs(overlap(ansatz.product_state(3), dicke(3, 2)))
    assert abs(achieved - lam) < 1e-10


def test_ss_lambda_phase_independence():
    vals = [ss_lambda(7, 2, 5, 0.5, phi) for phi in np.linspace(0, 2 * math.pi, 12)]
    assert max(vals) - min(vals) < 1e-9


def test_ss_lambda_matches_solver():
    psi = build(ss_family(5, 1, 4, 0.3, 1.2))
    assert abs(ss_lambda(5, 1, 4, 0.3, 1.2) - entanglement_eigenvalue(psi).lambda_max) < 1e-8


def test_ss_lambda_validation():
    with pytest.raises(InvalidK):
        ss_lambda(5, 2, 2, 0.5)
    with pytest.raises(OutOfRange):
        ss_lambda(5, 1, 2, 1.5)


def test_symmetric_lambda_matches_solver_sweep():
    # ansatz validity: the symmetric reduction reproduces the free solver
    rng = np.random.default_rng(515)
    for _ in range(50):
        n = int(rng.integers(2, 7))
        coeffs = complex_normal(rng, n + 1)
        coeffs /= np.linalg.norm(coeffs)
        psi = build(Superposition(tuple((complex(c), Dicke(n, k)) for k, c in enumerate(coeffs))))
        grid = symmetric_lambda(n, coeffs)
        als = entanglement_eigenvalue(psi).lambda_max
        assert abs(grid - als) < 1e-8


def test_ss_curve_312_matches_ww():
    # relabeling k1=1,k2=2 at weight r reproduces the W/W-tilde curve at 1-r
    grid = np.linspace(0, 1, 11)
    curve = ss_curve(3, 1, 2, grid)
    for r, e in zip(curve.params, curve.values):
        assert abs(e - (1 - ww_lambda(1 - r) ** 2)) < 1e-9


def test_wg_curve_endpoints_and_ordering():
    opts = SolveOptions(restarts=10)
    grid = [0.0, 0.5, 1.0]
    lower = wg_curve(0.0, grid, opts)
    upper = wg_curve(math.pi, grid, opts)
    for c in (lower, upper):
        assert abs(c.values[0] - 0.5) < 1e-9
        assert abs(c.values[-1] - 5 / 9) < 1e-9
    assert upper.values[1] >= lower.values[1] - 1e-9


def test_wg_curve_validates_grid():
    with pytest.raises(OutOfRange):
        wg_curve(0.0, [0.0, 1.5])
