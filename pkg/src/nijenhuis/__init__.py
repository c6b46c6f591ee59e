"""Exact Nijenhuis-tensor contractions of Leibniz algebras and Courant algebroids."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DegreeError,
    DimensionError,
    InvariantError,
    NijenhuisError,
    ParseError,
    PreconditionError,
)
from .exact_poly import MultiPoly, to_scalar  # noqa: E402
from .reports import CheckReport  # noqa: E402

__all__ = [
    "__version__",
    "MultiPoly",
    "to_scalar",
    "CheckReport",
    "NijenhuisError",
    "DimensionError",
    "ParseError",
    "PreconditionError",
    "InvariantError",
    "DegreeError",
]
