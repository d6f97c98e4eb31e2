"""Truncated power series for exp and log, kept deliberately naive so they can
serve as independent oracles for the closed forms."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import Multivector, add, gp, mv, qvec_square, scale, sub
from .errors import OutOfConvergenceDomain


@dataclass(frozen=True)
class SeriesConfig:
    """``terms`` is the highest power kept: exp keeps A^0..A^terms, log X^1..X^terms."""

    terms: int = 30
    tol: float = 1e-12

    def __post_init__(self):
        if self.terms < 1:
            raise ValueError(f"terms must be >= 1, got {self.terms}")


def exp_series(x: Multivector, cfg: SeriesConfig = SeriesConfig()) -> Multivector:
    """Horner form 1 + A(1 + A/2(1 + A/3(... (1 + A/n))))."""
    one = mv(x.sig, 1.0)
    acc = one
    for k in range(cfg.terms, 0, -1):
        acc = add(one, scale(gp(x, acc), 1.0 / k))
    return acc


def spectral_radius(x: Multivector) -> float:
    """Largest modulus among the eigenvalues of the real matrix image of ``x``.

    Eigenvalues are a0 ± sqrt(B'^2); for B'^2 < 0 they form a complex pair of
    modulus sqrt(det).
    """
    q = qvec_square(x)
    if q >= 0.0:
        return abs(x.a0) + math.sqrt(q)
    return math.sqrt(x.a0 * x.a0 - q)


def log_series(x: Multivector, cfg: SeriesConfig = SeriesConfig(terms=60)) -> Multivector:
    """Mercator series of log(1 + X) with X = x - 1, Horner-nested.

    Converges to the principal logarithm when every eigenvalue of X lies in
    the open unit disc; otherwise :class:`OutOfConvergenceDomain`.
    """
    one = mv(x.sig, 1.0)
    big_x = sub(x, one)
    if big_x.is_zero():
        return mv(x.sig, 0.0)
    rho = spectral_radius(big_x)
    if not rho < 1.0:
        raise OutOfConvergenceDomain(
            f"log series needs |x - 1| < 1, got spectral radius {rho:.6g}")
    n = cfg.terms
    sign = 1.0 if n % 2 == 1 else -1.0
    acc = mv(x.sig, sign / n)
    for k in range(n - 1, 0, -1):
        sign = -sign
        acc = add(mv(x.sig, sign / k), gp(big_x, acc))
    return gp(big_x, acc)
