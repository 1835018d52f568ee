"""Exception types shared across the package.

Every error carries a ``kind`` used by the service layer to pick an HTTP
status and by the CLI to pick an exit code: ``parse`` errors are malformed
inputs (exit 2), ``domain`` errors are well-formed inputs that violate a
precondition (exit 3).
"""


class GeomentError(Exception):
    kind = "domain"


class ParseError(GeomentError):
    kind = "parse"


class ZeroState(GeomentError):
    """Amplitude vector or factor with vanishing norm."""


class DimensionMismatch(GeomentError):
    """Operands disagree on party dimensions."""


class InvalidK(GeomentError):
    """Dicke index k outside 0..n."""


class IndexOutOfRange(GeomentError):
    """Party index outside 0..n-1."""


class OutOfRange(GeomentError):
    """Scalar parameter outside its admissible interval."""


class TooLarge(GeomentError):
    """State too large for the brute-force oracle (non-qubit or n > 4)."""


class NotTracePreserving(GeomentError):
    """Kraus operators do not sum to the identity."""


class NotBipartite(GeomentError):
    """Operation requires exactly two parties."""


class NotTwoQubit(GeomentError):
    """Operation requires two qubit parties."""


class NotNormalized(GeomentError):
    """Coefficient vector is not unit-normalized."""


class NotDensityMatrix(GeomentError):
    """Matrix fails the Hermitian / positive / trace-one checks."""


class InvalidDecomposition(GeomentError):
    """Ensemble weights or states do not form a valid decomposition."""


class UnsortedInput(GeomentError):
    """Hull input points must have strictly increasing x."""


class DegenerateGrid(GeomentError):
    """Curve grid has fewer than 3 points."""


class UnsupportedState(GeomentError):
    """No exact method and no tractable fallback for this input."""
