"""Mixed-state geometric entanglement.

The mixed-state measure is the convex roof: the minimum average pure-state
E_sin2 over all ensemble decompositions.  Exact values are available for
arbitrary two-qubit states (through the Wootters concurrence), for
generalized Werner and isotropic states, and for two-Dicke mixtures (as the
lower convex hull of the pure curve).  For everything else a sampled
decomposition search gives a certified upper bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curve import Curve
from .errors import (
    DegenerateGrid,
    InvalidDecomposition,
    InvalidK,
    NotDensityMatrix,
    NotTwoQubit,
    OutOfRange,
    UnsortedInput,
)
from .sampling import complex_normal
from .solver import SolveOptions, entanglement_eigenvalue
from .states import PureState
from .symmetric import ss_curve

HERM_TOL = 1e-10
PSD_TOL = -1e-10
TRACE_TOL = 1e-10
EIG_CUTOFF = 1e-12


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, positive semidefinite, trace-one operator over n parties."""

    dims: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        size = math.prod(dims)
        mat = np.asarray(self.matrix, dtype=np.complex128).copy()
        if mat.shape != (size, size):
            raise NotDensityMatrix(f"matrix shape {mat.shape} != ({size}, {size})")
        if np.max(np.abs(mat - mat.conj().T)) > HERM_TOL:
            raise NotDensityMatrix("matrix is not Hermitian")
        evals = np.linalg.eigvalsh(mat)
        if float(evals.min()) < PSD_TOL:
            raise NotDensityMatrix(f"negative eigenvalue {evals.min():.3e}")
        if abs(float(np.trace(mat).real) - 1.0) > TRACE_TOL:
            raise NotDensityMatrix(f"trace {np.trace(mat).real:.12g} != 1")
        mat.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def from_pure(cls, psi: PureState) -> "DensityMatrix":
        v = psi.vector
        return cls(psi.dims, np.outer(v, v.conj()))

    @property
    def size(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class Decomposition:
    """Ensemble {p_i, |psi_i>}; weights nonnegative and summing to one."""

    weights: tuple[float, ...]
    states: tuple[PureState, ...]

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        if len(w) != len(self.states) or not w:
            raise InvalidDecomposition("weights and states must pair up")
        if any(x < -1e-12 for x in w):
            raise InvalidDecomposition("negative weight")
        if abs(sum(w) - 1.0) > 1e-10:
            raise InvalidDecomposition(f"weights sum to {sum(w):.12g}")
        object.__setattr__(self, "weights", w)

    def density(self) -> np.ndarray:
        out = 0
        for p, psi in zip(self.weights, self.states):
            v = psi.vector
            out = out + p * np.outer(v, v.conj())
        return out

    def reconstructs(self, rho: DensityMatrix, tol: float = 1e-8) -> bool:
        return bool(np.max(np.abs(self.density() - rho.matrix)) <= tol)


# --- two-qubit closed form ----------------------------------------------------

_SY_SY = np.array([
    [0, 0, 0, -1],
    [0, 0, 1, 0],
    [0, 1, 0, 0],
    [-1, 0, 0, 0],
], dtype=np.complex128)


def wootters_concurrence(rho: DensityMatrix) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    C = max(0, l1 - l2 - l3 - l4) where l_i are the descending square roots
    of the eigenvalues of rho (sy x sy) rho* (sy x sy).  Evaluated through
    the similar Hermitian matrix sqrt(rho) rho~ sqrt(rho), which keeps full
    precision where the spectrum degenerates.
    """
    if rho.dims != (2, 2):
        raise NotTwoQubit(f"need dims (2, 2), got {rho.dims}")
    m = rho.matrix
    w, u = np.linalg.eigh(m)
    # rounding-level eigenvalues would inject sqrt(eps)-size noise
    w = np.where(w > 1e-14, w, 0.0)
    sqrt_m = (u * np.sqrt(w)) @ u.conj().T
    tilde = _SY_SY @ m.conj() @ _SY_SY
    evals = np.linalg.eigvalsh(sqrt_m @ tilde @ sqrt_m)
    evals = np.where(evals > 1e-14, evals, 0.0)
    ls = np.sqrt(evals)
    ls[::-1].sort()
    return float(min(max(ls[0] - ls[1] - ls[2] - ls[3], 0.0), 1.0))


def e_sin2_two_qubit(rho: DensityMatrix) -> float:
    """Geometric entanglement of any two-qubit mixed state:
    (1 - sqrt(1 - C^2)) / 2 with C the Wootters concurrence."""
    c = wootters_concurrence(rho)
    return 0.5 * (1.0 - math.sqrt(max(0.0, 1.0 - c * c)))


# --- Werner and isotropic families ---------------------------------------------

def swap_operator(d: int) -> np.ndarray:
    f = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            f[i * d + j, j * d + i] = 1.0
    return f


def make_werner(d: int, f: float) -> DensityMatrix:
    """Werner state on C^d x C^d with swap expectation f = Tr(rho F).

    Solves a 1 + b F for a, b under Tr(rho) = 1 and Tr(rho F) = f; the
    result is U (x) U invariant and positive exactly for f in [-1, 1].
    """
    if d < 2:
        raise OutOfRange("d must be >= 2")
    if not -1.0 <= f <= 1.0:
        raise OutOfRange(f"f={f} outside [-1, 1]")
    a = (d - f) / (d * (d * d - 1))
    b = (d * f - 1) / (d * (d * d - 1))
    mat = a * np.eye(d * d) + b * swap_operator(d)
    return DensityMatrix((d, d), mat)


def e_sin2_werner(f: float) -> float:
    """Geometric entanglement of the Werner state: (1 - sqrt(1 - f^2))/2 for
    f <= 0, zero on the separable side f > 0; independent of d."""
    if not -1.0 <= f <= 1.0:
        raise OutOfRange(f"f={f} outside [-1, 1]")
    if f > 0.0:
        return 0.0
    return 0.5 * (1.0 - math.sqrt(max(0.0, 1.0 - f * f)))


def max_entangled_vector(d: int) -> np.ndarray:
    v = np.zeros(d * d, dtype=np.complex128)
    v[:: d + 1] = 1.0 / math.sqrt(d)
    return v


def make_isotropic(d: int, fidelity: float) -> DensityMatrix:
    """Isotropic state on C^d x C^d with fidelity F to the maximally
    entangled state; U (x) U* invariant."""
    if d < 2:
        raise OutOfRange("d must be >= 2")
    if not 0.0 <= fidelity <= 1.0:
        raise OutOfRange(f"F={fidelity} outside [0, 1]")
    v = max_entangled_vector(d)
    proj = np.outer(v, v.conj())
    mat = (1.0 - fidelity) / (d * d - 1) * (np.eye(d * d) - proj) + fidelity * proj
    return DensityMatrix((d, d), mat)


def e_sin2_isotropic(d: int, fidelity: float) -> float:
    """Geometric entanglement of the isotropic state:
    1 - (sqrt(F) + sqrt((1-F)(d-1)))^2 / d above the separability point
    F = 1/d, zero at or below it (continuous at the join)."""
    if d < 2:
        raise OutOfRange("d must be >= 2")
    if not 0.0 <= fidelity <= 1.0:
        raise OutOfRange(f"F={fidelity} outside [0, 1]")
    if fidelity <= 1.0 / d:
        return 0.0
    root = math.sqrt(fidelity) + math.sqrt((1.0 - fidelity) * (d - 1))
    return 1.0 - root * root / d


# --- convex-hull construction ---------------------------------------------------

def lower_convex_hull(points) -> list[tuple[float, float]]:
    """Minimal vertex set of the lower convex envelope of x-sorted points.

    Monotone chain; endpoints always survive, collinear interior points are
    dropped.  Piecewise-linear interpolation through the result lower-bounds
    every input y.
    """
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 2:
        raise UnsortedInput("need at least 2 points")
    xs = [p[0] for p in pts]
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise UnsortedInput("x values must be strictly increasing")
    span = max(abs(p[1]) for p in pts) + max(abs(x) for x in xs) + 1.0
    eps = 1e-12 * span
    hull: list[tuple[float, float]] = []
    for p in pts:
        while len(hull) >= 2:
            o, a = hull[-2], hull[-1]
            cross = (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0])
            if cross <= eps:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def symmetric_mixture_curve(n: int, k1: int, k2: int, r_grid) -> Curve:
    """E_sin2 of the mixture r |S(n,k1)><S(n,k1)| + (1-r) |S(n,k2)><S(n,k2)|.

    The phase-independence of the corresponding superposition makes the
    mixed value the lower convex hull of the pure-state curve over r, so the
    grid values are the hull evaluated at the grid points.  When the pure
    curve is already convex the output equals it.
    """
    if k1 == k2:
        raise InvalidK("k1 and k2 must differ")
    for k in (k1, k2):
        if not 0 <= k <= n:
            raise InvalidK(f"k={k} outside 0..{n}")
    r = np.asarray(r_grid, dtype=float)
    if r.size < 3:
        raise DegenerateGrid("need at least 3 grid points")
    pure = ss_curve(n, k1, k2, r)
    hull = lower_convex_hull(zip(pure.params, pure.values))
    hx = np.array([p[0] for p in hull])
    hy = np.array([p[1] for p in hull])
    return Curve(r, np.interp(r, hx, hy), convexified=True)


# --- sampled convex-roof upper bound ---------------------------------------------

def _pure_e_sin2_batch(mats: np.ndarray, norms_sq: np.ndarray, dims) -> np.ndarray:
    """E_sin2 for a batch of unnormalized bipartite amplitude matrices.

    Zero-norm members come out as 1 and must carry zero ensemble weight.
    """
    if dims == (2, 2):
        # closed-form largest singular value of a 2x2
        t = np.sum(np.abs(mats) ** 2, axis=(1, 2))
        det = mats[:, 0, 0] * mats[:, 1, 1] - mats[:, 0, 1] * mats[:, 1, 0]
        disc = np.sqrt(np.clip(t * t - 4.0 * np.abs(det) ** 2, 0.0, None))
        s1_sq = 0.5 * (t + disc)
    else:
        s1_sq = np.linalg.svd(mats, compute_uv=False)[:, 0] ** 2
    return 1.0 - s1_sq / np.maximum(norms_sq, 1e-300)


def roof_upper_bound(
    rho: DensityMatrix,
    ensembles: int,
    seed: int,
    opts: SolveOptions | None = None,
) -> float:
    """Minimum average E_sin2 over sampled pure-state decompositions of rho.

    Decompositions come from the eigendecomposition mixed by random
    isometries (every decomposition of rho with at most 4x its rank members
    arises this way); the eigendecomposition itself is always candidate 0.
    An upper bound on the convex roof, deterministic given the seed, and
    monotone nonincreasing in the number of ensembles.
    """
    if ensembles < 1:
        raise OutOfRange("ensembles must be >= 1")
    opts = opts if opts is not None else SolveOptions()
    evals, evecs = np.linalg.eigh(rho.matrix)
    keep = evals > EIG_CUTOFF
    lams = evals[keep]
    vecs = evecs[:, keep]
    rank = int(lams.size)
    if rank == 0:
        raise NotDensityMatrix("all eigenvalues below cutoff")
    scaled = vecs * np.sqrt(lams)[None, :]  # (D, R): rho = scaled scaled^dag

    bipartite = len(rho.dims) == 2
    d1 = rho.dims[0]
    d2 = rho.dims[-1] if bipartite else 0

    def average(members: np.ndarray) -> float:
        # members: (M, D) unnormalized pure vectors whose outer products sum to rho
        norms_sq = np.sum(np.abs(members) ** 2, axis=1)
        live = norms_sq > 1e-14
        members = members[live]
        norms_sq = norms_sq[live]
        if bipartite:
            es = _pure_e_sin2_batch(members.reshape(-1, d1, d2), norms_sq, rho.dims)
        else:
            es = np.empty(len(members))
            for j, w in enumerate(members):
                es[j] = entanglement_eigenvalue(PureState(rho.dims, w), opts).e_sin2
        return float(np.dot(norms_sq, es))

    rng = np.random.default_rng(seed)
    best = average(scaled.T)  # candidate 0: the eigendecomposition
    # favor rank-sized decompositions (where minima concentrate) but keep
    # sweeping every size up to the 4*rank cap
    cycle = rank + (np.arange(ensembles) % (3 * rank + 1))
    sizes = np.where(np.arange(ensembles) % 2 == 0, rank, cycle)
    # draw in sample order so a longer run extends a shorter one's stream
    draws = [complex_normal(rng, (int(m), rank)) for m in sizes]

    if not bipartite:
        for g in draws:
            q, _ = np.linalg.qr(g)
            best = min(best, average(q @ scaled.T))
        return best

    # bipartite: batch by decomposition size, score with exact Schmidt values
    for m in np.unique(sizes):
        idx = np.nonzero(sizes == m)[0]
        gs = np.stack([draws[i] for i in idx])  # (E_m, m, rank)
        qs = np.linalg.qr(gs)[0]
        members = qs @ scaled.T  # (E_m, m, D)
        norms_sq = np.sum(np.abs(members) ** 2, axis=2)
        flat = members.reshape(-1, d1, d2)
        es = _pure_e_sin2_batch(flat, norms_sq.reshape(-1), rho.dims)
        avgs = np.sum(norms_sq * es.reshape(norms_sq.shape), axis=1)
        best = min(best, float(avgs.min()))
    return best
