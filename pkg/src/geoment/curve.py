"""Parameter/entanglement curve container and its CSV form."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def format_sig(x: float) -> str:
    """12 significant digits, the fixed wire format for emitted numbers."""
    return f"{x:.12g}"


@dataclass(frozen=True)
class Curve:
    """Ordered (parameter, e_sin2) samples of an entanglement curve.

    convexified marks curves that were replaced by their lower convex hull;
    their sample set is then its own lower hull.
    """

    params: np.ndarray
    values: np.ndarray
    convexified: bool = False

    def __post_init__(self):
        p = np.asarray(self.params, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if p.shape != v.shape or p.ndim != 1:
            raise ValueError("params and values must be 1-d and equal length")
        object.__setattr__(self, "params", p)
        object.__setattr__(self, "values", v)

    def to_csv(self) -> str:
        """CSV text: header param,e_sin2,lambda; LF endings; 12 significant digits.

        lambda is derived as sqrt(1 - e_sin2) (for mixed-state curves this is
        an effective value, not an eigenvalue of any pure state).
        """
        lines = ["param,e_sin2,lambda"]
        for p, v in zip(self.params, self.values):
            lam = np.sqrt(max(0.0, 1.0 - v))
            lines.append(f"{format_sig(p)},{format_sig(v)},{format_sig(lam)}")
        return "\n".join(lines) + "\n"
