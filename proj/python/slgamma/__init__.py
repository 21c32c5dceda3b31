"""Clifford-algebra Moebius toolkit: SL(Gamma), the Jorgensen functional and
the strictness-certificate engine, in exact rational and float64 modes."""

from ._core import (
    SlgammaError,
    SlgammaParseError,
    NotDiagonalHyperbolicError,
    ZeroVectorError,
    NotAVectorError,
    DeterminantNotOneError,
    EntryNotVectorConditionError,
    MissingGammaEvidenceError,
    BadParameterError,
    NonVectorResultError,
    PreconditionNotMetError,
    __version__,
    detect_mode,
    floating,
    load_matrix,
    rational,
)

__all__ = [
    "SlgammaError",
    "SlgammaParseError",
    "NotDiagonalHyperbolicError",
    "ZeroVectorError",
    "NotAVectorError",
    "DeterminantNotOneError",
    "EntryNotVectorConditionError",
    "MissingGammaEvidenceError",
    "BadParameterError",
    "NonVectorResultError",
    "PreconditionNotMetError",
    "__version__",
    "detect_mode",
    "floating",
    "load_matrix",
    "rational",
]
