"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

Run with::

    pytest tests/test_acceptance.py -v -s

Every expected number is pinned to its independent source: closed forms
evaluated inline, the grid-search oracle, or eigen-decompositions; the
solver under test never supplies its own expectations.
"""
import math

import numpy as np

from geoment.bipartite import concurrence_pure, lambda_max_bipartite
from geoment.mixed import (
    e_sin2_isotropic,
    e_sin2_two_qubit,
    e_sin2_werner,
    make_isotropic,
    make_werner,
    roof_upper_bound,
    symmetric_mixture_curve,
)
from geoment.sampling import (
    complex_normal,
    random_density_matrix,
    random_kraus_set,
    random_pure_state,
)
from geoment.solver import (
    SolveOptions,
    brute_force_lambda,
    entanglement_eigenvalue,
    unilocal_monotonicity_gap,
)
from geoment.states import build, dicke, ghz, wg_family, ww_family
from geoment.symmetric import (
    lambda_dicke,
    max_entangled_k,
    ss_curve,
    symmetric_lambda,
    wg_curve,
    ww_cubic,
    ww_lambda,
    ww_root,
)

SEED = 571202993


def _report(num: int, name: str, ok: bool, detail: str = ""):
    tail = f" ({detail})" if detail else ""
    print(f"\n[criterion {num:2d}] {'PASS' if ok else 'FAIL'} {name}{tail}")
    assert ok, f"criterion {num} failed: {name}{tail}"


def test_criterion_01_named_values():
    worst = 0.0
    res = entanglement_eigenvalue(dicke(3, 2), SolveOptions(seed=SEED))
    worst = max(worst, abs(res.lambda_max - 2 / 3), abs(res.e_sin2 - 5 / 9))
    for n in range(2, 9):
        res = entanglement_eigenvalue(ghz(n), SolveOptions(seed=SEED))
        worst = max(worst, abs(res.lambda_max - 1 / math.sqrt(2)))
        worst = max(worst, abs(res.e_sin2 - 0.5))
    _report(1, "W and nGHZ named values within 1e-9", worst < 1e-9, f"worst {worst:.2e}")


def test_criterion_02_dicke_closed_form():
    worst = 0.0
    ok = True
    for n in range(2, 7):
        for k in range(n + 1):
            lam = entanglement_eigenvalue(dicke(n, k), SolveOptions(seed=SEED)).lambda_max
            worst = max(worst, abs(lam - lambda_dicke(n, k)))
        rule = {n // 2} if n % 2 == 0 else {(n - 1) // 2, (n + 1) // 2}
        ok = ok and max_entangled_k(n) == rule
    _report(
        2,
        "solver matches the Dicke closed form (1e-8) and the k* rule",
        ok and worst < 1e-8,
        f"worst {worst:.2e}",
    )


def test_criterion_03_concurrence_relation():
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(1000):
        psi = random_pure_state([2, 2], rng)
        lam2 = lambda_max_bipartite(psi) ** 2
        c = concurrence_pure(psi)
        worst = max(worst, abs(lam2 - 0.5 * (1 + math.sqrt(1 - c * c))))
    _report(3, "two-qubit Lambda^2/concurrence relation within 1e-10", worst < 1e-10,
            f"worst {worst:.2e} over 1000 states")


def test_criterion_04_two_qubit_roof():
    rng = np.random.default_rng(SEED)
    min_gap = np.inf
    close = 0
    for trial in range(200):
        rank = 1 + trial % 4
        rho = random_density_matrix([2, 2], rank, rng)
        closed = e_sin2_two_qubit(rho)
        bound = roof_upper_bound(rho, 10000, seed=SEED + trial)
        gap = bound - closed
        min_gap = min(min_gap, gap)
        if gap < 5e-3:
            close += 1
    _report(
        4,
        "sampled roof dominates the two-qubit closed form; 50+ states come within 5e-3",
        min_gap >= -1e-6 and close >= 50,
        f"min gap {min_gap:.2e}, {close}/200 within 5e-3",
    )


def test_criterion_05_werner_isotropic():
    ok = abs(e_sin2_werner(-1.0) - 0.5) < 1e-12
    worst = 0.0
    for f in np.linspace(-1, 1, 100):
        f = float(f)
        direct = 0.0 if f > 0 else 0.5 * (1 - math.sqrt(1 - f * f))
        worst = max(worst, abs(e_sin2_werner(f) - direct))
        if f > 0:
            ok = ok and e_sin2_werner(f) == 0.0
    for d in (2, 3, 4):
        ok = ok and e_sin2_isotropic(d, 1.0 / d) == 0.0
        ok = ok and abs(e_sin2_isotropic(d, 1.0 / d + 1e-9)) < 1e-7
        ok = ok and abs(e_sin2_isotropic(d, 1.0) - (1 - 1 / d)) < 1e-12
        for fid in np.linspace(0, 1, 100):
            fid = float(fid)
            if fid <= 1.0 / d:
                direct = 0.0
            else:
                direct = 1 - (math.sqrt(fid) + math.sqrt((1 - fid) * (d - 1))) ** 2 / d
            worst = max(worst, abs(e_sin2_isotropic(d, fid) - direct))
    spot = 0.0
    for f, ensembles in ((-1.0, 10000), (-0.95, 200000)):
        diff = abs(
            roof_upper_bound(make_werner(2, f), ensembles, seed=SEED) - e_sin2_werner(f)
        )
        spot = max(spot, diff)
    for fid, ensembles in ((1.0, 10000), (0.95, 200000)):
        diff = abs(
            roof_upper_bound(make_isotropic(2, fid), ensembles, seed=SEED)
            - e_sin2_isotropic(2, fid)
        )
        spot = max(spot, diff)
    _report(
        5,
        "Werner/isotropic formulas exact on grids; d=2 roof spot-checks within 1e-2",
        ok and worst == 0.0 and spot < 1e-2,
        f"grid residual {worst:.1e}, roof spot {spot:.2e}",
    )


def test_criterion_06_figure1_curve():
    s_grid = np.linspace(0, 1, 101)
    values = np.array([1 - ww_lambda(float(s)) ** 2 for s in s_grid])
    end_err = max(abs(values[0] - 5 / 9), abs(values[-1] - 5 / 9))
    mid_oracle = brute_force_lambda(build(ww_family(0.5)), 60)
    mid_err = abs(values[50] - (1 - mid_oracle**2))
    quarter_err = abs(values[50] - 0.25)
    second = np.diff(values, 2)
    convex = bool(np.all(second >= -1e-9))
    _report(
        6,
        "figure-1 curve: endpoints 5/9, midpoint 1/4 (grid oracle), convex",
        end_err < 1e-9 and mid_err < 1e-4 and quarter_err < 1e-6 and convex,
        f"endpoint {end_err:.1e}, vs oracle {mid_err:.2e}, min 2nd diff {second.min():.1e}",
    )


def _wg_symmetric_e(s: float, phi: float) -> float:
    coeffs = np.zeros(4, dtype=complex)
    coeffs[0] = math.sqrt(1 - s) * np.exp(1j * phi) / math.sqrt(2)
    coeffs[3] = math.sqrt(1 - s) * np.exp(1j * phi) / math.sqrt(2)
    coeffs[2] = math.sqrt(s)
    return 1.0 - symmetric_lambda(3, coeffs) ** 2


def test_criterion_07_figure2_ordering_and_scatter():
    opts = SolveOptions(restarts=12, seed=SEED)
    s_grid = np.linspace(0, 1, 51)
    lower = wg_curve(0.0, s_grid, opts)
    upper = wg_curve(math.pi, s_grid, opts)
    ordering_margin = float(np.min(upper.values - lower.values))

    rng = np.random.default_rng(SEED)
    worst_violation = 0.0
    for _ in range(200):
        s = float(rng.uniform(0, 1))
        phi = float(rng.uniform(0, 2 * math.pi))
        e = entanglement_eigenvalue(build(wg_family(s, phi)), opts).e_sin2
        low = _wg_symmetric_e(s, 0.0)
        high = _wg_symmetric_e(s, math.pi)
        worst_violation = max(worst_violation, low - e, e - high)
    _report(
        7,
        "figure-2 ordering (phi=pi above phi=0) and 200 scatter points between",
        ordering_margin >= -1e-6 and worst_violation <= 1e-6,
        f"ordering margin {ordering_margin:.2e}, worst excursion {worst_violation:.2e}",
    )


def test_criterion_08_figure3_hull():
    r_grid = np.linspace(0, 1, 101)
    pure = ss_curve(7, 2, 5, r_grid)
    hull = symmetric_mixture_curve(7, 2, 5, r_grid)
    left = abs(hull.values[0] - (1 - lambda_dicke(7, 5) ** 2))
    right = abs(hull.values[-1] - (1 - lambda_dicke(7, 2) ** 2))
    end_pure = max(abs(hull.values[0] - pure.values[0]), abs(hull.values[-1] - pure.values[-1]))
    below = bool(np.all(hull.values <= pure.values + 1e-10))
    strict_dip = float(np.max(pure.values - hull.values))
    _report(
        8,
        "figure-3 hull: Dicke endpoints, never above, strictly below inside",
        left < 1e-8 and right < 1e-8 and end_pure < 1e-12 and below and strict_dip > 1e-3,
        f"endpoint errs {left:.1e}/{right:.1e}, max dip {strict_dip:.3f}",
    )


def test_criterion_09_locc_monotonicity():
    rng = np.random.default_rng(SEED)
    opts = SolveOptions(restarts=8, seed=SEED)
    min_gap = np.inf
    for trial in range(500):
        nq = 2 + trial % 2
        psi = random_pure_state([2] * nq, rng)
        party = int(rng.integers(nq))
        kraus = random_kraus_set(2, int(rng.integers(2, 4)), rng)
        gap = unilocal_monotonicity_gap(psi, party, kraus, opts)
        min_gap = min(min_gap, gap)
    _report(
        9,
        "500 random unilocal channels keep sum p_k Lambda_k^2 >= Lambda^2 - 1e-6",
        min_gap >= -1e-6,
        f"min gap {min_gap:.2e}",
    )


def test_criterion_10_cubic_consistency():
    worst_resid = 0.0
    worst_oracle = 0.0
    for s in np.linspace(0, 1, 101):
        s = float(s)
        t = ww_root(s)
        worst_resid = max(worst_resid, abs(ww_cubic(s, t)))
        oracle = brute_force_lambda(build(ww_family(s)), 20)
        worst_oracle = max(worst_oracle, abs(ww_lambda(s) - oracle))
    _report(
        10,
        "cubic residual <= 1e-12 on the s grid; overlap form matches the grid oracle to 1e-4",
        worst_resid <= 1e-12 and worst_oracle <= 1e-4,
        f"residual {worst_resid:.1e}, oracle gap {worst_oracle:.2e}",
    )
