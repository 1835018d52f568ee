"""JSON wire/file formats for states, families, and density matrices.

Pure state:      {"dims": [2, 2], "amps": [[re, im], ...]}   (row-major)
Family:          {"family": {"type": "dicke", "n": 3, "k": 2}}
Density matrix:  {"dims": [2, 2], "matrix": [[[re, im], ...], ...]}

Family types: dicke(n, k), ghz(n), superposition(terms), raw(dims, amps),
ww(s, phi), wg(s, phi), ss(n, k1, k2, r, phi), werner(d, f),
isotropic(d, F).  The last two resolve to density matrices, the rest to
pure states.  Amplitude entries may be [re, im] pairs or plain numbers.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParseError
from .mixed import DensityMatrix, make_isotropic, make_werner
from .states import (
    GHZ,
    Dicke,
    FamilySpec,
    ProductState,
    PureState,
    Raw,
    Superposition,
    build,
    make_pure,
    ss_family,
    wg_family,
    ww_family,
)


@dataclass(frozen=True)
class ParsedState:
    """Outcome of parsing a state payload; exactly one of pure/density is set."""

    pure: PureState | None
    density: DensityMatrix | None
    family: dict | None

    @property
    def kind(self) -> str:
        return "pure" if self.pure is not None else "density"


def _as_complex(entry) -> complex:
    if isinstance(entry, (int, float)):
        return complex(entry)
    if isinstance(entry, (list, tuple)) and len(entry) == 2:
        re, im = entry
        if isinstance(re, (int, float)) and isinstance(im, (int, float)):
            return complex(re, im)
    raise ParseError(f"expected a number or [re, im] pair, got {entry!r}")


def _complex_vector(entries) -> np.ndarray:
    if not isinstance(entries, (list, tuple)):
        raise ParseError("amplitude list expected")
    return np.array([_as_complex(e) for e in entries], dtype=np.complex128)


def _require(obj: dict, key: str, family: str):
    if key not in obj:
        raise ParseError(f"family '{family}' requires field '{key}'")
    return obj[key]


def family_from_json(obj: dict) -> FamilySpec | DensityMatrix:
    """Resolve a family payload to a FamilySpec or (for the mixed-state
    families) directly to a DensityMatrix."""
    if not isinstance(obj, dict) or "type" not in obj:
        raise ParseError("family payload must be an object with a 'type'")
    kind = obj["type"]
    if kind == "dicke":
        return Dicke(int(_require(obj, "n", kind)), int(_require(obj, "k", kind)))
    if kind == "ghz":
        return GHZ(int(_require(obj, "n", kind)))
    if kind == "superposition":
        terms = _require(obj, "terms", kind)
        if not isinstance(terms, list) or not terms:
            raise ParseError("superposition terms must be a nonempty list")
        pairs = []
        for term in terms:
            coeff = _as_complex(_require(term, "coefficient", kind))
            sub = family_from_json(_require(term, "family", kind))
            if isinstance(sub, DensityMatrix):
                raise ParseError("superposition terms must be pure families")
            pairs.append((coeff, sub))
        return Superposition(tuple(pairs))
    if kind == "raw":
        dims = _require(obj, "dims", kind)
        amps = _complex_vector(_require(obj, "amps", kind))
        return Raw(make_pure(dims, amps))
    if kind == "ww":
        return ww_family(float(_require(obj, "s", kind)), float(obj.get("phi", 0.0)))
    if kind == "wg":
        return wg_family(float(_require(obj, "s", kind)), float(obj.get("phi", 0.0)))
    if kind == "ss":
        return ss_family(
            int(_require(obj, "n", kind)),
            int(_require(obj, "k1", kind)),
            int(_require(obj, "k2", kind)),
            float(_require(obj, "r", kind)),
            float(obj.get("phi", 0.0)),
        )
    if kind == "werner":
        return make_werner(int(_require(obj, "d", kind)), float(_require(obj, "f", kind)))
    if kind == "isotropic":
        return make_isotropic(int(_require(obj, "d", kind)), float(_require(obj, "F", kind)))
    raise ParseError(f"unknown family type {kind!r}")


def parse_state_payload(obj) -> ParsedState:
    """Parse the documented JSON payload into a pure state or density matrix."""
    if not isinstance(obj, dict):
        raise ParseError("state payload must be a JSON object")
    if "family" in obj:
        resolved = family_from_json(obj["family"])
        if isinstance(resolved, DensityMatrix):
            return ParsedState(None, resolved, obj["family"])
        return ParsedState(build(resolved), None, obj["family"])
    if "amps" in obj:
        dims = obj.get("dims")
        if dims is None:
            raise ParseError("'amps' payload requires 'dims'")
        return ParsedState(make_pure(dims, _complex_vector(obj["amps"])), None, None)
    if "matrix" in obj:
        dims = obj.get("dims")
        if dims is None:
            raise ParseError("'matrix' payload requires 'dims'")
        rows = obj["matrix"]
        if not isinstance(rows, list):
            raise ParseError("matrix must be a list of rows")
        mat = np.array([[_as_complex(x) for x in row] for row in rows])
        return ParsedState(None, DensityMatrix(tuple(int(d) for d in dims), mat), None)
    raise ParseError("state payload needs 'family', 'amps', or 'matrix'")


def product_state_to_json(phi: ProductState) -> dict:
    return {
        "factors": [
            [[float(c.real), float(c.imag)] for c in factor] for factor in phi.factors
        ]
    }


def pure_state_to_json(psi: PureState) -> dict:
    return {
        "dims": list(psi.dims),
        "amps": [[float(c.real), float(c.imag)] for c in psi.vector],
    }
