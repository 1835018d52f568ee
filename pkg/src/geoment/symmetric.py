"""Closed forms and reduced optimizations for permutation-invariant qubit states.

For a symmetric state the nearest product state can be taken symmetric too
(copies of one qubit factor), which collapses the optimization to two real
parameters: the factor angle theta and a relative phase.  That gives exact
values for Dicke states, a cubic root for W/W-tilde superpositions, and a
fast dense-grid maximizer for arbitrary Dicke superpositions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curve import Curve
from .errors import InvalidK, NotNormalized, OutOfRange
from .solver import SolveOptions, e_sin2_pure
from .states import ProductState, build, wg_family

ROOT_LO = math.sqrt(0.5)
ROOT_HI = math.sqrt(2.0)

THETA_POINTS = 721
PHASE_POINTS = 360
REFINE_ROUNDS = 4


@dataclass(frozen=True)
class SymmetricAnsatz:
    """Shared qubit factor (cos t |0> + e^{i b} sin t |1>), one copy per party."""

    theta: float
    phase: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi / 2:
            raise OutOfRange(f"theta={self.theta} outside [0, pi/2]")
        if not 0.0 <= self.phase < 2 * math.pi:
            raise OutOfRange(f"phase={self.phase} outside [0, 2*pi)")

    def factor(self) -> np.ndarray:
        return np.array(
            [math.cos(self.theta), np.exp(1j * self.phase) * math.sin(self.theta)]
        )

    def product_state(self, n: int) -> ProductState:
        return ProductState((self.factor(),) * n)


def lambda_dicke(n: int, k: int) -> float:
    """Entanglement eigenvalue of the Dicke state with k zeros among n qubits:

        sqrt(n!/(k!(n-k)!)) * (k/n)^(k/2) * ((n-k)/n)^((n-k)/2)

    with 0^0 = 1 at the endpoints (where the state is a product state).
    """
    if n < 1:
        raise OutOfRange("n must be >= 1")
    if not 0 <= k <= n:
        raise InvalidK(f"k={k} outside 0..{n}")
    return math.sqrt(math.comb(n, k)) * (k / n) ** (k / 2) * ((n - k) / n) ** ((n - k) / 2)


def max_entangled_k(n: int) -> set[int]:
    """k values minimizing lambda_dicke at fixed n: n/2, or (n+-1)/2 for odd n."""
    if n < 2:
        raise OutOfRange("n must be >= 2")
    vals = [lambda_dicke(n, k) for k in range(n + 1)]
    lo = min(vals)
    return {k for k, v in enumerate(vals) if v <= lo + 1e-12}


def ww_cubic(s: float, t: float) -> float:
    """The stationarity polynomial for sqrt(s) W + sqrt(1-s) W-tilde in t = tan(theta)."""
    rs = math.sqrt(s)
    rc = math.sqrt(1.0 - s)
    return rc * t**3 + 2.0 * rs * t**2 - 2.0 * rc * t - rs


def ww_root(s: float) -> float:
    """Root of the W/W-tilde stationarity cubic in [sqrt(1/2), sqrt(2)].

    Bisection on the bracket; the polynomial is <= 0 at the left end and
    >= 0 at the right end for all s in [0, 1], with equality exactly at the
    s = 1 and s = 0 endpoints.
    """
    if not 0.0 <= s <= 1.0:
        raise OutOfRange(f"s={s} outside [0, 1]")
    lo, hi = ROOT_LO, ROOT_HI
    flo = ww_cubic(s, lo)
    if flo == 0.0:
        return lo
    if ww_cubic(s, hi) == 0.0:
        return hi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if ww_cubic(s, mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def ww_lambda(s: float) -> float:
    """Lambda_max of sqrt(s) W + sqrt(1-s) W-tilde.

    Direct overlap at theta = arctan(ww_root(s)):
        sqrt(3) cos(t) sin(t) (sqrt(s) cos(t) + sqrt(1-s) sin(t)),
    which reproduces Lambda = 2/3 at both endpoints.
    """
    t = ww_root(s)
    theta = math.atan(t)
    ct, st = math.cos(theta), math.sin(theta)
    return math.sqrt(3.0) * ct * st * (math.sqrt(s) * ct + math.sqrt(1.0 - s) * st)


def ww_curve(s_grid) -> Curve:
    """E_sin2 of the W/W-tilde superposition over an s grid (closed form)."""
    s = np.asarray(s_grid, dtype=float)
    vals = np.array([1.0 - ww_lambda(x) ** 2 for x in s])
    return Curve(s, vals)


# --- general Dicke superpositions -------------------------------------------

def _overlap_magnitudes(alphas, thetas, phases):
    """|<phi(theta, b)|psi>| on a (theta, phase) grid, vectorized.

    <phi(theta,b)|S(n,k)> = sqrt(C(n,k)) cos^k(theta) (e^{-ib} sin(theta))^(n-k).
    """
    n = alphas.size - 1
    ks = np.arange(n + 1)
    weights = alphas * np.sqrt([math.comb(n, int(k)) for k in ks])
    ct = np.cos(thetas)
    st = np.sin(thetas)
    amp = weights[:, None] * ct[None, :] ** ks[:, None] * st[None, :] ** (n - ks)[:, None]
    phase_mat = np.exp(-1j * np.outer(n - ks, phases))
    return np.abs(amp.T @ phase_mat)


def _top_cells(vals: np.ndarray, margin: float, cap: int, min_sep: int):
    """Grid-local maxima within `margin` of the global max, deduplicated.

    Near-degenerate local maxima can differ by less than the grid
    resolution, so refinement must chase every contender, not just the
    single best cell.  The phase axis wraps; the theta axis does not.
    """
    padded = np.pad(vals, ((1, 1), (0, 0)), constant_values=-np.inf)
    mask = np.ones(vals.shape, dtype=bool)
    for dt in (-1, 0, 1):
        for db in (-1, 0, 1):
            if dt == 0 and db == 0:
                continue
            neighbor = np.roll(padded, db, axis=1)[1 + dt: 1 + dt + vals.shape[0], :]
            mask &= vals >= neighbor
    best = float(vals.max())
    cand = np.argwhere(mask & (vals >= best - margin))
    cand = cand[np.argsort(vals[cand[:, 0], cand[:, 1]])[::-1]]
    picks: list[tuple[int, int]] = []
    for it, ib in cand:
        if len(picks) >= cap:
            break
        separated = True
        for jt, jb in picks:
            db = abs(int(ib) - jb)
            db = min(db, vals.shape[1] - db)
            if max(abs(int(it) - jt), db) < min_sep:
                separated = False
                break
        if separated:
            picks.append((int(it), int(ib)))
    return picks


def _refine_cell(alphas, theta0, t_step, phase0, b_step, nonneg):
    # initial box covers the candidate-separation radius so pruned
    # neighbors of a pick are still swept
    t_lo = max(0.0, theta0 - 4.0 * t_step)
    t_hi = min(math.pi / 2, theta0 + 4.0 * t_step)
    b_lo, b_hi = phase0 - 4.0 * b_step, phase0 + 4.0 * b_step
    best = (-1.0, theta0, phase0)
    for _ in range(REFINE_ROUNDS):
        thetas = np.linspace(t_lo, t_hi, 181)
        phases = np.zeros(1) if nonneg else np.linspace(b_lo, b_hi, 121)
        vals = _overlap_magnitudes(alphas, thetas, phases)
        it, ib = np.unravel_index(int(np.argmax(vals)), vals.shape)
        if vals[it, ib] > best[0]:
            best = (float(vals[it, ib]), float(thetas[it]), float(phases[ib]))
        dt = thetas[1] - thetas[0]
        t_lo = max(0.0, thetas[it] - 1.5 * dt)
        t_hi = min(math.pi / 2, thetas[it] + 1.5 * dt)
        if not nonneg:
            db = phases[1] - phases[0]
            b_lo, b_hi = phases[ib] - 1.5 * db, phases[ib] + 1.5 * db
    return best


def best_symmetric_ansatz(n: int, coeffs) -> tuple[SymmetricAnsatz, float]:
    """Maximizing shared-factor ansatz for sum_k alpha_k |S(n,k)> and its Lambda.

    coeffs is indexed by k (number of zeros), length n+1, unit 2-norm.
    Maximizes over the factor angles (t, b) on a dense grid, then refines
    around every near-maximal basin; for all-nonnegative real coefficients
    the phase is pinned to 0.
    """
    alphas = np.asarray(coeffs, dtype=np.complex128).reshape(-1)
    if alphas.size != n + 1:
        raise InvalidK(f"need {n + 1} coefficients for n={n}, got {alphas.size}")
    nrm = float(np.linalg.norm(alphas))
    if abs(nrm - 1.0) > 1e-6:
        raise NotNormalized(f"squared moduli sum to {nrm**2:.6g}, not 1")
    alphas = alphas / nrm

    nonneg = np.all(np.abs(alphas.imag) < 1e-15) and np.all(alphas.real > -1e-15)

    thetas = np.linspace(0.0, math.pi / 2, THETA_POINTS)
    phases = np.zeros(1) if nonneg else np.linspace(
        0.0, 2 * math.pi * (1 - 1 / PHASE_POINTS), PHASE_POINTS
    )
    vals = _overlap_magnitudes(alphas, thetas, phases)
    it, ib = np.unravel_index(int(np.argmax(vals)), vals.shape)
    t_step = thetas[1] - thetas[0]
    b_step = phases[1] - phases[0] if phases.size > 1 else 0.0
    best = (float(vals[it, ib]), float(thetas[it]), float(phases[ib]))
    for ct, cb in _top_cells(vals, margin=5e-3, cap=24, min_sep=3):
        cand = _refine_cell(alphas, float(thetas[ct]), t_step, float(phases[cb]), b_step, nonneg)
        if cand[0] > best[0]:
            best = cand
    lam, theta, phase = best
    phase = phase % (2 * math.pi)
    if phase >= 2 * math.pi:  # tiny negative inputs round up to the modulus
        phase = 0.0
    return SymmetricAnsatz(theta, phase), min(lam, 1.0)


def symmetric_lambda(n: int, coeffs) -> float:
    """Lambda_max of sum_k alpha_k |S(n,k)> via the symmetric-factor ansatz."""
    return best_symmetric_ansatz(n, coeffs)[1]


def ss_lambda(n: int, k1: int, k2: int, r: float, phi: float = 0.0) -> float:
    """Lambda_max of sqrt(r) S(n,k1) + sqrt(1-r) e^{i phi} S(n,k2)."""
    if k1 == k2:
        raise InvalidK("k1 and k2 must differ")
    for k in (k1, k2):
        if not 0 <= k <= n:
            raise InvalidK(f"k={k} outside 0..{n}")
    if not 0.0 <= r <= 1.0:
        raise OutOfRange(f"r={r} outside [0, 1]")
    alphas = np.zeros(n + 1, dtype=np.complex128)
    alphas[k1] = math.sqrt(r)
    alphas[k2] = math.sqrt(1.0 - r) * np.exp(1j * phi)
    return symmetric_lambda(n, alphas)


def ss_curve(n: int, k1: int, k2: int, r_grid) -> Curve:
    """Pure-state E_sin2 of the two-Dicke superposition over an r grid."""
    r = np.asarray(r_grid, dtype=float)
    vals = np.array([1.0 - ss_lambda(n, k1, k2, x) ** 2 for x in r])
    return Curve(r, vals)


def wg_curve(phi: float, s_grid, opts: SolveOptions | None = None) -> Curve:
    """E_sin2 of sqrt(s) W + sqrt(1-s) e^{i phi} GHZ over an s grid.

    Uses the full solver: the W/GHZ relative phase cannot be absorbed into
    local basis changes, so no single closed form covers all phi.
    """
    s = np.asarray(s_grid, dtype=float)
    if np.any((s < 0) | (s > 1)):
        raise OutOfRange("s grid values must lie in [0, 1]")
    opts = opts if opts is not None else SolveOptions()
    vals = np.array([e_sin2_pure(build(wg_family(x, phi)), opts) for x in s])
    return Curve(s, vals)
