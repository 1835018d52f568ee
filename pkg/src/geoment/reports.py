"""Command-level operations behind the service endpoints.

Each function takes plain payloads/options and returns JSON-ready dicts, so
the HTTP layer stays a thin shell and the CLI (a client of that layer) adds
nothing but argument handling.
"""
from __future__ import annotations

import math

import numpy as np

from .curve import Curve, format_sig
from .errors import OutOfRange, ParseError, UnsupportedState
from .formats import ParsedState, parse_state_payload, product_state_to_json
from .mixed import (
    DensityMatrix,
    e_sin2_isotropic,
    e_sin2_two_qubit,
    e_sin2_werner,
    make_isotropic,
    make_werner,
    max_entangled_vector,
    roof_upper_bound,
    swap_operator,
    symmetric_mixture_curve,
)
from .solver import SolveOptions, SolveResult, entanglement_eigenvalue
from .states import build, wg_family
from .symmetric import lambda_dicke, ss_curve, wg_curve, ww_curve, ww_lambda

ROOF_FALLBACK_MAX_SIZE = 64
FAMILY_MATCH_TOL = 1e-10

CURVE_FAMILIES = ("ww", "wg", "ss", "ss-mixture", "werner", "isotropic")


def _solver_diagnostics(res: SolveResult, opts: SolveOptions) -> dict:
    return {
        "sweeps_used": res.sweeps_used,
        "restart_spread": res.restart_spread,
        "distance": res.distance,
        "converged": res.sweeps_used < opts.max_sweeps,
    }


def _closed_form_lambda(family: dict) -> float | None:
    kind = family.get("type")
    if kind == "dicke":
        return lambda_dicke(int(family["n"]), int(family["k"]))
    if kind == "ghz":
        return 1.0 / math.sqrt(2.0)
    if kind == "ww":
        return ww_lambda(float(family["s"]))
    return None


def _match_symmetric_family(rho: DensityMatrix) -> tuple[str, float] | None:
    """Detect Werner / isotropic inputs given as raw matrices."""
    if len(rho.dims) != 2 or rho.dims[0] != rho.dims[1]:
        return None
    d = rho.dims[0]
    f = float(np.trace(rho.matrix @ swap_operator(d)).real)
    if -1.0 <= f <= 1.0:
        candidate = make_werner(d, f)
        if np.max(np.abs(candidate.matrix - rho.matrix)) <= FAMILY_MATCH_TOL:
            return "werner", f
    v = max_entangled_vector(d)
    fid = float(np.vdot(v, rho.matrix @ v).real)
    if 0.0 <= fid <= 1.0:
        candidate = make_isotropic(d, fid)
        if np.max(np.abs(candidate.matrix - rho.matrix)) <= FAMILY_MATCH_TOL:
            return "isotropic", fid
    return None


def _pure_report(parsed: ParsedState, opts: SolveOptions) -> dict:
    psi = parsed.pure
    res = entanglement_eigenvalue(psi, opts)
    diagnostics = _solver_diagnostics(res, opts)

    closed = _closed_form_lambda(parsed.family) if parsed.family else None
    if closed is not None:
        method = "closed_form"
        lam = closed
        diagnostics["cross_check_lambda_als"] = res.lambda_max
        diagnostics["cross_check_difference"] = abs(closed - res.lambda_max)
    elif psi.n_parties == 2:
        method = "schmidt"
        lam = float(np.linalg.svd(psi.amplitudes, compute_uv=False)[0])
        diagnostics["cross_check_lambda_als"] = res.lambda_max
        diagnostics["cross_check_difference"] = abs(lam - res.lambda_max)
    else:
        method = "als"
        lam = res.lambda_max
    return {
        "lambda_max": lam,
        "e_sin2": 1.0 - lam * lam,
        "method": method,
        "nearest_product_state": product_state_to_json(res.nearest),
        "diagnostics": diagnostics,
    }


def _density_report(parsed: ParsedState, opts: SolveOptions, ensembles: int) -> dict:
    rho = parsed.density
    family = parsed.family or {}
    kind = family.get("type")
    if kind == "werner":
        e = e_sin2_werner(float(family["f"]))
        return _mixed_result(e, "closed_form", {"family": "werner", "f": family["f"]})
    if kind == "isotropic":
        e = e_sin2_isotropic(int(family["d"]), float(family["F"]))
        return _mixed_result(e, "closed_form", {"family": "isotropic", "F": family["F"]})
    if rho.dims == (2, 2):
        return _mixed_result(e_sin2_two_qubit(rho), "closed_form", {"family": "two_qubit"})
    matched = _match_symmetric_family(rho)
    if matched is not None:
        name, param = matched
        d = rho.dims[0]
        e = e_sin2_werner(param) if name == "werner" else e_sin2_isotropic(d, param)
        return _mixed_result(e, "closed_form", {"family": name, "parameter": param})
    if rho.size > ROOF_FALLBACK_MAX_SIZE:
        raise UnsupportedState(
            f"no closed form for dims {rho.dims} and the state is too large "
            f"for the sampled roof fallback (size {rho.size} > {ROOF_FALLBACK_MAX_SIZE})"
        )
    bound = roof_upper_bound(rho, ensembles, seed=opts.seed, opts=opts)
    return _mixed_result(
        bound,
        "roof_upper_bound",
        {"upper_bound_only": True, "ensembles": ensembles},
    )


def _mixed_result(e_sin2: float, method: str, extra: dict) -> dict:
    return {
        "lambda_max": math.sqrt(max(0.0, 1.0 - e_sin2)),
        "e_sin2": e_sin2,
        "method": method,
        "nearest_product_state": None,
        "diagnostics": extra,
    }


def compute_report(payload: dict, opts: SolveOptions, ensembles: int = 2000) -> dict:
    """Entanglement report for a state payload (pure, family, or density)."""
    parsed = parse_state_payload(payload)
    if parsed.kind == "pure":
        return _pure_report(parsed, opts)
    return _density_report(parsed, opts, ensembles)


# --- curves -------------------------------------------------------------------

def _unit_grid(points: int) -> np.ndarray:
    if points < 3:
        raise OutOfRange("grid must have at least 3 points")
    return np.linspace(0.0, 1.0, points)


def curve_report(family: str, params: dict, grid: int, opts: SolveOptions) -> dict:
    """Entanglement curve for a named one-parameter family."""
    if family == "ww":
        curve, param_name = ww_curve(_unit_grid(grid)), "s"
    elif family == "wg":
        curve = wg_curve(float(params.get("phi", 0.0)), _unit_grid(grid), opts)
        param_name = "s"
    elif family in ("ss", "ss-mixture"):
        try:
            n, k1, k2 = int(params["n"]), int(params["k1"]), int(params["k2"])
        except KeyError as missing:
            raise ParseError(f"family '{family}' requires parameter {missing}")
        r = _unit_grid(grid)
        curve = ss_curve(n, k1, k2, r) if family == "ss" else symmetric_mixture_curve(n, k1, k2, r)
        param_name = "r"
    elif family == "werner":
        fs = np.linspace(-1.0, 1.0, grid if grid >= 3 else 3)
        curve = Curve(fs, np.array([e_sin2_werner(float(f)) for f in fs]))
        param_name = "f"
    elif family == "isotropic":
        d = int(params.get("d", 2))
        fids = _unit_grid(grid)
        curve = Curve(fids, np.array([e_sin2_isotropic(d, float(x)) for x in fids]))
        param_name = "F"
    else:
        raise ParseError(f"unknown curve family {family!r}; choose from {CURVE_FAMILIES}")
    return {
        "family": family,
        "param": param_name,
        "convexified": curve.convexified,
        "csv": curve.to_csv(),
        "points": [
            [float(p), float(v), math.sqrt(max(0.0, 1.0 - v))]
            for p, v in zip(curve.params, curve.values)
        ],
    }


# --- figures -------------------------------------------------------------------

def _scatter_csv(rows) -> str:
    lines = ["s,phi,e_sin2,lambda"]
    for s, phi, e in rows:
        lam = math.sqrt(max(0.0, 1.0 - e))
        lines.append(
            f"{format_sig(s)},{format_sig(phi)},{format_sig(e)},{format_sig(lam)}"
        )
    return "\n".join(lines) + "\n"


def figure_report(which: int, grid: int, scatter: int, opts: SolveOptions) -> dict:
    """CSV data behind the three reference figures.

    1: W/W-tilde superposition curve over s.
    2: W/GHZ superposition curves at phi = 0 and pi, plus a seeded random
       (s, phi) scatter solved with the full solver.
    3: two-Dicke (7; 2, 5) pure curve and its lower convex hull over r.
    """
    if which == 1:
        return {"files": {"figure1_ww.csv": ww_curve(_unit_grid(grid)).to_csv()}}
    if which == 2:
        s = _unit_grid(grid)
        files = {
            "figure2_wg_phi0.csv": wg_curve(0.0, s, opts).to_csv(),
            "figure2_wg_phipi.csv": wg_curve(math.pi, s, opts).to_csv(),
        }
        rng = np.random.default_rng(opts.seed)
        rows = []
        for _ in range(scatter):
            sv = float(rng.uniform(0.0, 1.0))
            phiv = float(rng.uniform(0.0, 2 * math.pi))
            res = entanglement_eigenvalue(build(wg_family(sv, phiv)), opts)
            rows.append((sv, phiv, res.e_sin2))
        files["figure2_scatter.csv"] = _scatter_csv(rows)
        return {"files": files}
    if which == 3:
        r = _unit_grid(grid)
        return {
            "files": {
                "figure3_ss725_pure.csv": ss_curve(7, 2, 5, r).to_csv(),
                "figure3_ss725_hull.csv": symmetric_mixture_curve(7, 2, 5, r).to_csv(),
            }
        }
    raise ParseError(f"figure must be 1, 2, or 3, got {which}")
