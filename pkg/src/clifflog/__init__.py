"""Closed-form exponential, logarithm and square roots of multivectors in the
real Clifford algebras Cl(0,1), Cl(1,0), Cl(0,2), Cl(1,1) and Cl(2,0)."""

from .core import (
    Involution,
    Multivector,
    NormReport,
    Signature,
    basis,
    det,
    format_mv,
    gp,
    inverse,
    involute,
    mv,
    norms,
)
from .errors import CliffordError
from .functions import (
    LogKind,
    LogResult,
    RootFamily,
    Sector,
    SqrtResult,
    classify_log,
    exp,
    exp_product,
    log,
    log_asymptotic_eval,
    log_eval,
    sqrt_all,
    sqrt_explog,
)
from .parser import evaluate, parse, tokenize
from .series import SeriesConfig, exp_series, log_series

__all__ = [
    "Involution", "Multivector", "NormReport", "Signature", "basis", "det", "format_mv", "gp",
    "inverse", "involute", "mv", "norms", "CliffordError", "LogKind", "LogResult", "RootFamily",
    "Sector", "SqrtResult", "classify_log", "exp", "exp_product", "log", "log_asymptotic_eval",
    "log_eval", "sqrt_all", "sqrt_explog", "evaluate", "parse", "tokenize", "SeriesConfig",
    "exp_series", "log_series",
]
__version__ = "0.1.0"
