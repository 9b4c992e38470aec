"""Exact q-series toolkit for Hecke-type congruences of eta-quotients.

The subpackages build from the bottom up: ``series`` (truncated Laurent
series), ``qforms`` (eta-quotients, Eisenstein series, ``j``, Hauptmoduls),
``arith`` (Jacobi symbols and the ``(r, s, p, ell)`` parameter bundle),
``hecke`` (the combined coefficient and its quotient), ``hauptmodul``
(polynomial decompositions and Faber-type families) and ``congruence``
(finite-range verifiers).
"""

from .arith import NewmanParams, derive_params, jacobi
from .exceptions import (
    DecompositionError,
    EtaHeckeError,
    InsufficientTruncation,
    NonInvertibleSeries,
    ParameterError,
    VerificationError,
)
from .series import LaurentSeries

__version__ = "0.1.0"

__all__ = [
    "LaurentSeries",
    "NewmanParams",
    "derive_params",
    "jacobi",
    "EtaHeckeError",
    "InsufficientTruncation",
    "NonInvertibleSeries",
    "ParameterError",
    "DecompositionError",
    "VerificationError",
]
