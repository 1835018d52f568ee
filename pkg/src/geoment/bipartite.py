"""Exact bipartite reductions: Schmidt spectrum, concurrence, and the
entanglement-eigenvalue/concurrence relation for two qubits.

For two parties the nearest-product-state problem is linear: the
entanglement eigenvalue is the largest Schmidt coefficient (amplitude-level
convention, i.e. the largest singular value of the amplitude matrix).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotBipartite, NotTwoQubit, OutOfRange
from .states import PureState

_SV_CUTOFF = 1e-12


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Descending Schmidt coefficients (amplitude level); squares sum to 1."""

    coefficients: tuple[float, ...]


def schmidt(psi: PureState) -> SchmidtSpectrum:
    """Schmidt coefficients of a bipartite pure state.

    Singular values of the d1 x d2 amplitude matrix, descending, with values
    below 1e-12 dropped.
    """
    if psi.n_parties != 2:
        raise NotBipartite(f"need 2 parties, got {psi.n_parties}")
    svals = np.linalg.svd(psi.amplitudes, compute_uv=False)
    kept = tuple(float(s) for s in svals if s >= _SV_CUTOFF)
    return SchmidtSpectrum(kept)


def lambda_max_bipartite(psi: PureState) -> float:
    """Entanglement eigenvalue of a bipartite pure state: max Schmidt coefficient."""
    return schmidt(psi).coefficients[0]


def concurrence_pure(psi: PureState) -> float:
    """Concurrence of a two-qubit pure state: 2|chi00 chi11 - chi01 chi10|."""
    if psi.dims != (2, 2):
        raise NotTwoQubit(f"need dims (2, 2), got {psi.dims}")
    a = psi.amplitudes
    c = 2.0 * abs(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
    return min(float(c), 1.0)


def lambda2_from_concurrence(c: float) -> float:
    """Squared entanglement eigenvalue from the concurrence of a two-qubit
    pure state: Lambda^2 = (1 + sqrt(1 - C^2)) / 2."""
    if not -1e-12 <= c <= 1.0 + 1e-12:
        raise OutOfRange(f"concurrence {c} outside [0, 1]")
    c = min(max(c, 0.0), 1.0)
    return 0.5 * (1.0 + math.sqrt(1.0 - c * c))
