"""Seeded random generators for states, unitaries, and channels."""
from __future__ import annotations

import math

import numpy as np

from .states import ProductState, PureState


def complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2)


def random_pure_state(dims, rng: np.random.Generator) -> PureState:
    return PureState(tuple(dims), complex_normal(rng, tuple(dims)))


def random_product_state(dims, rng: np.random.Generator) -> ProductState:
    return ProductState(tuple(complex_normal(rng, d) for d in dims))


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary (QR of a complex Ginibre matrix, phase-fixed)."""
    q, r = np.linalg.qr(complex_normal(rng, (d, d)))
    ph = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * ph


def random_isometry(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    """rows x cols matrix with orthonormal columns (rows >= cols)."""
    q, _ = np.linalg.qr(complex_normal(rng, (rows, cols)))
    return q


def random_kraus_set(d: int, m: int, rng: np.random.Generator) -> list[np.ndarray]:
    """m Kraus operators on a d-level system with sum V^dag V = identity.

    Built by splitting a random isometry from C^d into C^d (x) C^m.
    """
    iso = random_isometry(d * m, d, rng)
    return [iso[k * d:(k + 1) * d, :] for k in range(m)]


def random_density_matrix(dims, rank: int, rng: np.random.Generator):
    """Random rank-limited density matrix (normalized Ginibre G G^dag)."""
    from .mixed import DensityMatrix

    d = math.prod(dims)
    g = complex_normal(rng, (d, rank))
    mat = g @ g.conj().T
    mat /= np.trace(mat).real
    return DensityMatrix(tuple(dims), mat)
