"""Nearest-product-state solver via alternating factor updates.

The stationarity conditions couple each factor to the contraction of the
state with all the others; updating one factor to the normalized
environment is the exact maximizer of |<phi|psi>| over that factor, so a
cyclic sweep never decreases the overlap.  Restarts from random factors
(plus one deterministic start from the leading singular vectors of the
single-party unfoldings) guard against local maxima of the nonconvex
problem.  A grid-search oracle and the unilocal-channel monotonicity gap
live here as independent checks on the solver.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NotTracePreserving,
    OutOfRange,
    TooLarge,
)
from .states import ProductState, PureState, contract_except

DEGENERATE_ENV = 1e-14


@dataclass
class SolveOptions:
    """Knobs for the alternating solver.

    symmetric_ansatz forces all factors identical (requires equal party
    dimensions); restarts counts the random starts, on top of which one
    deterministic start is always run first.
    """

    restarts: int = 20
    max_sweeps: int = 500
    tol: float = 1e-12
    seed: int = 7
    symmetric_ansatz: bool = False

    def __post_init__(self):
        if self.restarts < 1:
            raise OutOfRange("restarts must be >= 1")
        if self.max_sweeps < 1:
            raise OutOfRange("max_sweeps must be >= 1")
        if not self.tol > 0.0:
            raise OutOfRange("tol must be > 0")


@dataclass(frozen=True)
class SolveResult:
    """Best stationary point found over all starts.

    sweeps_used == max_sweeps flags a restart that hit the sweep budget;
    distance is the minimized ||psi - phi|| with phi's free phase aligned.
    """

    lambda_max: float
    e_sin2: float
    nearest: ProductState
    sweeps_used: int
    restart_spread: float
    distance: float


def _env(tensor: np.ndarray, factors: list[np.ndarray], i: int) -> np.ndarray:
    return contract_except(tensor, factors, i)


def _sweep(tensor: np.ndarray, factors: list[np.ndarray]) -> float:
    """One cyclic update of every factor in place; returns |overlap| after."""
    n = len(factors)
    nv = 0.0
    for i in range(n):
        v = _env(tensor, factors, i)
        nv = float(np.linalg.norm(v))
        if nv >= DEGENERATE_ENV:
            factors[i] = v / nv
    # after updating the last factor, <c|v> = ||v|| is the overlap
    return nv


def als_sweep(psi: PureState, phi: ProductState) -> tuple[ProductState, float]:
    """Update each party once in order 1..n; returns (new phi, |overlap|).

    A factor whose environment norm falls below 1e-14 is left unchanged.
    The returned overlap never decreases across successive sweeps.
    """
    if phi.dims != psi.dims:
        raise DimensionMismatch(f"product dims {phi.dims} != state dims {psi.dims}")
    factors = list(phi.factors)
    lam = _sweep(psi.amplitudes, factors)
    return ProductState(tuple(factors)), lam


STATIONARY_TOL = 1e-9


def _stationarity_residual(tensor, factors, lam: float) -> float:
    """max_i || env_i - lam * c_i || with each factor's free phase aligned."""
    worst = 0.0
    for i in range(len(factors)):
        v = _env(tensor, factors, i)
        inner = abs(np.vdot(factors[i], v))
        res_sq = float(np.vdot(v, v).real) + lam * lam - 2.0 * lam * inner
        worst = max(worst, math.sqrt(max(0.0, res_sq)))
    return worst


def _run_cyclic(tensor, factors, opts: SolveOptions) -> tuple[list, float, int]:
    # the overlap converges quadratically in the factor error, so a small
    # Lambda change alone can leave visibly non-stationary factors; require
    # the fixed-point residual to settle as well
    lam_prev = -1.0
    lam = 0.0
    sweeps = 0
    for m in range(opts.max_sweeps):
        lam = _sweep(tensor, factors)
        sweeps = m + 1
        if abs(lam - lam_prev) < opts.tol and (
            _stationarity_residual(tensor, factors, lam) <= STATIONARY_TOL
        ):
            break
        lam_prev = lam
    return factors, lam, sweeps


def _run_symmetric(tensor, shared, n, opts: SolveOptions) -> tuple[list, float, int]:
    # plain symmetric power iteration can oscillate, so keep the best iterate
    best_lam = -1.0
    best_c = shared
    lam_prev = -1.0
    sweeps = 0
    c = shared
    for m in range(opts.max_sweeps):
        factors = [c] * n
        v = _env(tensor, factors, 0)
        nv = float(np.linalg.norm(v))
        if nv >= DEGENERATE_ENV:
            c = v / nv
        lam = abs(complex(contract_except(tensor, [c] * n, None)))
        sweeps = m + 1
        if lam > best_lam:
            best_lam = lam
            best_c = c
        if abs(lam - lam_prev) < opts.tol:
            break
        lam_prev = lam
    return [best_c] * n, best_lam, sweeps


def _unfolding_start(tensor, dims) -> list[np.ndarray]:
    factors = []
    for i in range(len(dims)):
        mat = np.moveaxis(tensor, i, 0).reshape(dims[i], -1)
        u, _, _ = np.linalg.svd(mat, full_matrices=False)
        factors.append(u[:, 0].copy())
    return factors


def _random_factors(dims, rng) -> list[np.ndarray]:
    factors = []
    for d in dims:
        v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        factors.append(v / np.linalg.norm(v))
    return factors


def entanglement_eigenvalue(psi: PureState, opts: SolveOptions | None = None) -> SolveResult:
    """Largest overlap with any product state, maximized over restarts.

    Deterministic for a fixed seed.  Ties across starts go to the earliest
    start; the deterministic unfolding start runs first (index 0), then
    opts.restarts random starts.
    """
    opts = opts if opts is not None else SolveOptions()
    tensor = psi.amplitudes
    dims = psi.dims
    n = len(dims)
    rng = np.random.default_rng(opts.seed)

    if opts.symmetric_ansatz and len(set(dims)) != 1:
        raise DimensionMismatch("symmetric ansatz requires equal party dimensions")

    best = None
    lams = []
    for start_idx in range(opts.restarts + 1):
        if opts.symmetric_ansatz:
            if start_idx == 0:
                shared = _unfolding_start(tensor, dims)[0]
            else:
                shared = _random_factors(dims[:1], rng)[0]
            factors, lam, sweeps = _run_symmetric(tensor, shared, n, opts)
        else:
            if start_idx == 0:
                factors = _unfolding_start(tensor, dims)
            else:
                factors = _random_factors(dims, rng)
            factors, lam, sweeps = _run_cyclic(tensor, factors, opts)
        lams.append(lam)
        if best is None or lam > best[1]:
            best = (factors, lam, sweeps)

    factors, lam, sweeps = best
    lam = min(lam, 1.0)
    return SolveResult(
        lambda_max=lam,
        e_sin2=1.0 - lam * lam,
        nearest=ProductState(tuple(factors)),
        sweeps_used=sweeps,
        restart_spread=float(max(lams) - min(lams)),
        distance=math.sqrt(max(0.0, 2.0 - 2.0 * lam)),
    )


def e_sin2_pure(psi: PureState, opts: SolveOptions | None = None) -> float:
    """1 - Lambda_max^2 for a pure state."""
    return entanglement_eigenvalue(psi, opts).e_sin2


# --- independent grid oracle -----------------------------------------------

def _qubit_factor_grid(theta_grid, phi_grid) -> np.ndarray:
    """(cos t, e^{i p} sin t) for every (t, p) pair, theta-major, shape (G, 2)."""
    g = np.empty((theta_grid.size, phi_grid.size, 2), dtype=np.complex128)
    g[..., 0] = np.cos(theta_grid)[:, None]
    g[..., 1] = np.sin(theta_grid)[:, None] * np.exp(1j * phi_grid)[None, :]
    return g.reshape(-1, 2)


def _grid_max(tensor, mats) -> tuple[float, tuple[int, ...]]:
    """Max over grid combos of ||env||, the exact max over the last party.

    Works with squared norms through per-party Gram factors
    G_i[a, (p, p')] = c_a[p] conj(c_a[p']) contracted against
    M[(pp'), ...] = sum_r T[..p..r] conj(T[..p'..r]), which keeps every
    intermediate real and of the output's size.
    """
    m = len(mats)
    if m == 1:
        flat = mats[0] @ tensor.reshape(2, -1)
        vals = np.einsum("ar,ar->a", flat, flat.conj()).real
        idx = int(np.argmax(vals))
        return float(math.sqrt(max(0.0, vals[idx]))), (idx,)
    grams = [
        (a[:, :, None] * a.conj()[:, None, :]).reshape(a.shape[0], 4) for a in mats
    ]
    rest = math.prod(g.shape[0] for g in grams[1:])
    chunk = max(1, 4_000_000 // rest)
    best = -1.0
    best_idx = (0,) * m
    if m == 2:
        mmat = np.einsum("pqr,uvr->puqv", tensor, tensor.conj()).reshape(4, 4)
        right = mmat @ grams[1].T
    else:
        mmat = np.einsum("pqsr,uvwr->puqvsw", tensor, tensor.conj()).reshape(4, 4, 4)
        right = np.einsum("by,cz,xyz->xbc", grams[1], grams[2], mmat, optimize=True)
    for lo in range(0, grams[0].shape[0], chunk):
        ga = grams[0][lo:lo + chunk]
        if m == 2:
            vals = (ga @ right).real
        else:
            vals = np.tensordot(ga, right, axes=(1, 0)).real
        flat = int(np.argmax(vals))
        if vals.reshape(-1)[flat] > best:
            best = float(vals.reshape(-1)[flat])
            local = np.unravel_index(flat, vals.shape)
            best_idx = (int(local[0]) + lo,) + tuple(int(x) for x in local[1:])
    return float(math.sqrt(max(0.0, best))), best_idx


def brute_force_lambda(psi: PureState, grid_points_per_angle: int) -> float:
    """Grid-search lower bound on Lambda_max for up to 4 qubits.

    The first n-1 factors run over a (theta, phi) grid; the last factor is
    maximized exactly (Cauchy-Schwarz gives ||environment||).  Three rounds
    of grid shrinking around the best cell follow the initial pass.
    Converges to Lambda_max from below as the grid densifies.
    """
    if any(d != 2 for d in psi.dims):
        raise TooLarge("brute force supports qubit parties only")
    n = psi.n_parties
    if n > 4:
        raise TooLarge(f"brute force supports n <= 4, got {n}")
    g = int(grid_points_per_angle)
    if g < 3:
        raise OutOfRange("need at least 3 grid points per angle")
    if n == 1:
        return 1.0

    m = n - 1
    boxes = [[0.0, math.pi / 2, 0.0, 2 * math.pi * (1 - 1 / g)] for _ in range(m)]
    best = -1.0
    for round_no in range(4):
        thetas = [np.linspace(b[0], b[1], g) for b in boxes]
        phis = [np.linspace(b[2], b[3], g) for b in boxes]
        mats = [
            _qubit_factor_grid(t, p).conj() for t, p in zip(thetas, phis)
        ]
        val, idx = _grid_max(psi.amplitudes, mats)
        best = max(best, val)
        for i in range(m):
            it, ip = divmod(idx[i], g)
            t_step = thetas[i][1] - thetas[i][0]
            p_step = phis[i][1] - phis[i][0]
            t0 = thetas[i][it]
            p0 = phis[i][ip]
            boxes[i] = [
                max(0.0, t0 - 1.5 * t_step),
                min(math.pi / 2, t0 + 1.5 * t_step),
                p0 - 1.5 * p_step,
                p0 + 1.5 * p_step,
            ]
    return min(best, 1.0)


# --- LOCC monotonicity check -------------------------------------------------

def unilocal_monotonicity_gap(
    psi: PureState,
    party: int,
    kraus: list[np.ndarray],
    opts: SolveOptions | None = None,
) -> float:
    """sum_k p_k Lambda_k^2 - Lambda^2 for a trace-preserving channel on one party.

    Outcome states are V_k|psi>/sqrt(p_k) with p_k = <psi|V_k^dag V_k|psi>;
    outcomes with p_k < 1e-14 are skipped.  Average squared entanglement
    eigenvalue never drops below the input's (up to solver tolerance), which
    is what makes 1 - Lambda^2 an entanglement monotone.
    """
    n = psi.n_parties
    if not 0 <= party < n:
        raise IndexOutOfRange(f"party index {party} outside 0..{n - 1}")
    d = psi.dims[party]
    ops = [np.asarray(v, dtype=np.complex128) for v in kraus]
    for v in ops:
        if v.shape != (d, d):
            raise DimensionMismatch(f"Kraus operator shape {v.shape} != ({d}, {d})")
    total = sum(v.conj().T @ v for v in ops)
    if np.max(np.abs(total - np.eye(d))) > 1e-10:
        raise NotTracePreserving("sum V_k^dag V_k != identity")

    lam = entanglement_eigenvalue(psi, opts).lambda_max
    gap = -lam * lam
    for v in ops:
        post = np.moveaxis(np.tensordot(v, psi.amplitudes, axes=(1, party)), 0, party)
        p = float(np.linalg.norm(post)) ** 2
        if p < 1e-14:
            continue
        lam_k = entanglement_eigenvalue(PureState(psi.dims, post), opts).lambda_max
        gap += p * lam_k * lam_k
    return gap
