"""Pure multipartite states, product (Hartree) states, and named families.

A pure state of n parties with local dimensions ``dims`` is stored as a
dense complex tensor of shape ``dims`` (row-major over the party index
tuple).  A product state is one unit-norm complex factor per party.  Both
are immutable after construction; every function here is pure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    InvalidK,
    OutOfRange,
    ZeroState,
)

NORM_TOL = 1e-12
ZERO_NORM = 1e-14


def _as_unit_tensor(amplitudes, dims: tuple[int, ...]) -> np.ndarray:
    arr = np.asarray(amplitudes, dtype=np.complex128).reshape(dims).copy()
    norm = float(np.linalg.norm(arr))
    if norm < ZERO_NORM:
        raise ZeroState("amplitude vector has zero norm")
    arr /= norm
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PureState:
    """Normalized n-partite pure state with a dense amplitude tensor."""

    dims: tuple[int, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) < 1:
            raise DimensionMismatch("at least one party required")
        if any(d < 2 for d in dims):
            raise DimensionMismatch("party dimensions must be >= 2")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", _as_unit_tensor(self.amplitudes, dims))

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    @property
    def vector(self) -> np.ndarray:
        """Flat row-major amplitude vector."""
        return self.amplitudes.reshape(-1)


@dataclass(frozen=True)
class ProductState:
    """Separable state: one unit-norm complex factor per party.

    Factors are rescaled to unit norm on construction; a (near-)zero factor
    raises ZeroState.
    """

    factors: tuple[np.ndarray, ...]

    def __post_init__(self):
        fixed = []
        for f in self.factors:
            vec = np.asarray(f, dtype=np.complex128).reshape(-1).copy()
            norm = float(np.linalg.norm(vec))
            if norm < ZERO_NORM:
                raise ZeroState("product-state factor has zero norm")
            vec /= norm
            vec.setflags(write=False)
            fixed.append(vec)
        object.__setattr__(self, "factors", tuple(fixed))

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(f) for f in self.factors)

    @property
    def n_parties(self) -> int:
        return len(self.factors)

    def to_pure(self) -> PureState:
        tensor = reduce(np.multiply.outer, self.factors)
        return PureState(self.dims, tensor)


# --- named families -------------------------------------------------------

@dataclass(frozen=True)
class Dicke:
    n: int
    k: int


@dataclass(frozen=True)
class GHZ:
    n: int


@dataclass(frozen=True)
class Superposition:
    terms: tuple


@dataclass(frozen=True)
class Raw:
    state: PureState


FamilySpec = Dicke | GHZ | Superposition | Raw


def make_pure(dims, amplitudes) -> PureState:
    """Build a normalized PureState from a flat amplitude list.

    The amplitude count must equal the product of dims; the vector is scaled
    by 1/norm, so unnormalized input is accepted.
    """
    dims = tuple(int(d) for d in dims)
    arr = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
    if arr.size != math.prod(dims):
        raise DimensionMismatch(
            f"expected {math.prod(dims)} amplitudes for dims {dims}, got {arr.size}"
        )
    return PureState(dims, arr)


def dicke(n: int, k: int) -> PureState:
    """Symmetric n-qubit state with equal weight on all strings with k zeros.

    k counts |0> factors: dicke(3, 2) is the W state (|001>+|010>+|100>)/sqrt(3)
    and dicke(n, 0) = |1...1>.  Each nonzero amplitude is
    sqrt(k!(n-k)!/n!), so there are C(n, k) of them.
    """
    if n < 1:
        raise OutOfRange("dicke requires n >= 1")
    if not 0 <= k <= n:
        raise InvalidK(f"k={k} outside 0..{n}")
    amp = math.sqrt(math.factorial(k) * math.factorial(n - k) / math.factorial(n))
    amps = np.zeros(2**n, dtype=np.complex128)
    for i in range(2**n):
        if n - bin(i).count("1") == k:
            amps[i] = amp
    return make_pure([2] * n, amps)


def ghz(n: int) -> PureState:
    """(|0...0> + |1...1>)/sqrt(2) on n qubits."""
    if n < 2:
        raise OutOfRange("ghz requires n >= 2")
    amps = np.zeros(2**n, dtype=np.complex128)
    amps[0] = amps[-1] = 1.0
    return make_pure([2] * n, amps)


def ww_family(s: float, phi: float = 0.0) -> Superposition:
    """sqrt(s) W + sqrt(1-s) e^{i phi} W-tilde on three qubits."""
    _check_unit_interval(s, "s")
    return Superposition((
        (complex(math.sqrt(s)), Dicke(3, 2)),
        (math.sqrt(1.0 - s) * np.exp(1j * phi), Dicke(3, 1)),
    ))


def wg_family(s: float, phi: float = 0.0) -> Superposition:
    """sqrt(s) W + sqrt(1-s) e^{i phi} GHZ on three qubits."""
    _check_unit_interval(s, "s")
    return Superposition((
        (complex(math.sqrt(s)), Dicke(3, 2)),
        (math.sqrt(1.0 - s) * np.exp(1j * phi), GHZ(3)),
    ))


def ss_family(n: int, k1: int, k2: int, r: float, phi: float = 0.0) -> Superposition:
    """sqrt(r) S(n,k1) + sqrt(1-r) e^{i phi} S(n,k2)."""
    _check_unit_interval(r, "r")
    if k1 == k2:
        raise InvalidK("superposition requires k1 != k2")
    return Superposition((
        (complex(math.sqrt(r)), Dicke(n, k1)),
        (math.sqrt(1.0 - r) * np.exp(1j * phi), Dicke(n, k2)),
    ))


def _check_unit_interval(x: float, name: str) -> None:
    if not 0.0 <= x <= 1.0:
        raise OutOfRange(f"{name}={x} outside [0, 1]")


def build(spec: FamilySpec) -> PureState:
    """Resolve a family spec to a normalized PureState.

    Superposition coefficients are rescaled so their squared moduli sum to 1,
    then the resulting amplitude tensor is normalized (a no-op when the
    components are orthogonal, as Dicke terms with different k are).
    """
    if isinstance(spec, Dicke):
        return dicke(spec.n, spec.k)
    if isinstance(spec, GHZ):
        return ghz(spec.n)
    if isinstance(spec, Raw):
        return spec.state
    if isinstance(spec, Superposition):
        if not spec.terms:
            raise ZeroState("empty superposition")
        coeffs = np.array([c for c, _ in spec.terms], dtype=np.complex128)
        cnorm = float(np.linalg.norm(coeffs))
        if cnorm < ZERO_NORM:
            raise ZeroState("superposition coefficients all zero")
        coeffs /= cnorm
        parts = [build(sub) for _, sub in spec.terms]
        dims = parts[0].dims
        for p in parts[1:]:
            if p.dims != dims:
                raise DimensionMismatch("superposition terms have unequal dims")
        tensor = sum(c * p.amplitudes for c, p in zip(coeffs, parts))
        return PureState(dims, tensor)
    raise TypeError(f"not a FamilySpec: {spec!r}")


# --- contraction primitives ------------------------------------------------

def _check_same_dims(phi: ProductState, psi: PureState) -> None:
    if phi.dims != psi.dims:
        raise DimensionMismatch(f"product dims {phi.dims} != state dims {psi.dims}")


def contract_except(tensor: np.ndarray, factors, i: int | None) -> np.ndarray:
    """Contract conj(factor_j) into axis j of tensor for every j != i.

    Contracting in descending j keeps each remaining axis at its original
    position when it is reached.  With i = None everything is contracted and
    a 0-d array (the full overlap) remains.
    """
    out = tensor
    for j in range(len(factors) - 1, -1, -1):
        if j != i:
            out = np.tensordot(out, factors[j].conj(), axes=(j, 0))
    return out


def overlap(phi: ProductState, psi: PureState) -> complex:
    """Inner product <phi|psi> = sum_p chi_p prod_i conj(c^(i)_{p_i})."""
    _check_same_dims(phi, psi)
    return complex(contract_except(psi.amplitudes, phi.factors, None))


def environment(psi: PureState, phi: ProductState, i: int) -> np.ndarray:
    """Contract psi with all factors of phi except party i.

    Returns the length-d_i vector v with <c^(i)|v> = overlap(phi, psi); at a
    stationary point v = Lambda * c^(i).
    """
    _check_same_dims(phi, psi)
    n = psi.n_parties
    if not 0 <= i < n:
        raise IndexOutOfRange(f"party index {i} outside 0..{n - 1}")
    return contract_except(psi.amplitudes, phi.factors, i)
