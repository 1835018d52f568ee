"""Geometric measure of entanglement for multipartite states.

Library API: pure/product state types and named families, the nearest-
product-state solver (entanglement eigenvalue Lambda_max and
E_sin2 = 1 - Lambda_max^2), exact bipartite reductions, closed forms for
symmetric qubit states, and mixed-state values (two-qubit, Werner,
isotropic, two-Dicke mixtures, sampled roof bounds).  The service
subpackage exposes the same operations over HTTP; geoment.cli is a thin
client for it.
"""

from .bipartite import (
    SchmidtSpectrum,
    concurrence_pure,
    lambda2_from_concurrence,
    lambda_max_bipartite,
    schmidt,
)
from .curve import Curve
from .errors import GeomentError, ParseError
from .mixed import (
    Decomposition,
    DensityMatrix,
    e_sin2_isotropic,
    e_sin2_two_qubit,
    e_sin2_werner,
    lower_convex_hull,
    make_isotropic,
    make_werner,
    roof_upper_bound,
    symmetric_mixture_curve,
    wootters_concurrence,
)
from .solver import (
    SolveOptions,
    SolveResult,
    als_sweep,
    brute_force_lambda,
    e_sin2_pure,
    entanglement_eigenvalue,
    unilocal_monotonicity_gap,
)
from .states import (
    GHZ,
    Dicke,
    FamilySpec,
    ProductState,
    PureState,
    Raw,
    Superposition,
    build,
    dicke,
    environment,
    ghz,
    make_pure,
    overlap,
    ss_family,
    wg_family,
    ww_family,
)
from .symmetric import (
    SymmetricAnsatz,
    best_symmetric_ansatz,
    lambda_dicke,
    max_entangled_k,
    ss_lambda,
    symmetric_lambda,
    wg_curve,
    ww_curve,
    ww_lambda,
    ww_root,
)

__version__ = "0.1.0"

__all__ = [
    "Curve",
    "Decomposition",
    "DensityMatrix",
    "Dicke",
    "FamilySpec",
    "GHZ",
    "GeomentError",
    "ParseError",
    "ProductState",
    "PureState",
    "Raw",
    "SchmidtSpectrum",
    "SolveOptions",
    "SolveResult",
    "Superposition",
    "SymmetricAnsatz",
    "als_sweep",
    "best_symmetric_ansatz",
    "brute_force_lambda",
    "build",
    "concurrence_pure",
    "dicke",
    "e_sin2_isotropic",
    "e_sin2_pure",
    "e_sin2_two_qubit",
    "e_sin2_werner",
    "entanglement_eigenvalue",
    "environment",
    "ghz",
    "lambda2_from_concurrence",
    "lambda_dicke",
    "lambda_max_bipartite",
    "lower_convex_hull",
    "make_isotropic",
    "make_pure",
    "make_werner",
    "max_entangled_k",
    "overlap",
    "roof_upper_bound",
    "schmidt",
    "ss_family",
    "ss_lambda",
    "symmetric_lambda",
    "symmetric_mixture_curve",
    "unilocal_monotonicity_gap",
    "wg_curve",
    "wg_family",
    "wootters_concurrence",
    "ww_curve",
    "ww_family",
    "ww_lambda",
    "ww_root",
]
