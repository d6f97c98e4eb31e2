"""Sector-stratified random multivectors.

Open sectors are reached by rejection from uniform coefficients in
[-bound, bound]; the measure-zero ones (light cone, null 'vector', scalar
axes) are built directly.
"""

from __future__ import annotations

import math

import numpy as np

from .core import Multivector, Signature
from .functions import Sector, classify_log

_REACHABLE = {
    Signature.CL01: (Sector.TRIG, Sector.POSITIVE_SCALAR, Sector.NEGATIVE_SCALAR),
    Signature.CL02: (Sector.TRIG, Sector.POSITIVE_SCALAR, Sector.NEGATIVE_SCALAR),
    Signature.CL10: (Sector.HYPERBOLIC, Sector.LIGHT_CONE, Sector.POSITIVE_SCALAR, Sector.NO_SOLUTION),
    Signature.CL11: tuple(s for s in Sector if s is not Sector.ZERO),
    Signature.CL20: tuple(s for s in Sector if s is not Sector.ZERO),
}


def reachable_sectors(sig: Signature, finite_only: bool = False) -> tuple[Sector, ...]:
    sectors = _REACHABLE[sig]
    if finite_only:
        sectors = tuple(s for s in sectors if s.has_finite_log)
    return sectors


def uniform(sig: Signature, rng: np.random.Generator, bound: float = 3.0) -> Multivector:
    c = rng.uniform(-bound, bound, 4)
    if sig.n == 1:
        return Multivector(sig, float(c[0]), float(c[1]))
    return Multivector(sig, float(c[0]), float(c[1]), float(c[2]), float(c[3]))


def _construct(sig: Signature, sector: Sector, rng: np.random.Generator, bound: float) -> Multivector:
    u = lambda lo=-bound, hi=bound: float(rng.uniform(lo, hi))  # noqa: E731
    if sector is Sector.POSITIVE_SCALAR:
        return Multivector(sig, u(0.05, bound))
    if sector is Sector.NEGATIVE_SCALAR:
        return Multivector(sig, u(-bound, -0.05))
    if sector is Sector.LIGHT_CONE:
        if sig is Signature.CL10:
            b1 = u(0.05, bound) * (1 if rng.random() < 0.5 else -1)
            return Multivector(sig, abs(b1), b1)
        while True:
            v = uniform(sig, rng, bound)
            q = sig.sq1 * v.a1 ** 2 + sig.sq2 * v.a2 ** 2 + sig.sq12 * v.a12 ** 2
            if q > 0.01:
                return Multivector(sig, math.sqrt(q), v.a1, v.a2, v.a12)
    if sector is Sector.NULL_QVECTOR:
        a, b = u(), u()
        sign = 1 if rng.random() < 0.5 else -1
        r = sign * math.hypot(a, b)
        if sig is Signature.CL20:
            # b1^2 + b2^2 = b12^2
            return Multivector(sig, u(0.05, bound), a, b, r)
        # Cl(1,1): b1^2 + b12^2 = b2^2
        return Multivector(sig, u(0.05, bound), a, r, b)
    raise ValueError(f"{sector} is not built directly")


_CONSTRUCTED = {Sector.POSITIVE_SCALAR, Sector.NEGATIVE_SCALAR, Sector.LIGHT_CONE, Sector.NULL_QVECTOR}


def sample_sector(sig: Signature, sector: Sector, rng: np.random.Generator, bound: float = 3.0) -> Multivector:
    """One multivector that :func:`classify_log` places in ``sector``."""
    if sector not in reachable_sectors(sig):
        raise ValueError(f"{sector.value} is not reachable in {sig}")
    for _ in range(100_000):
        if sector in _CONSTRUCTED:
            x = _construct(sig, sector, rng, bound)
        else:
            x = uniform(sig, rng, bound)
        if classify_log(x).tag is sector:
            return x
    raise RuntimeError(f"could not sample {sector.value} in {sig}")


def stratified(sig: Signature, n: int, rng: np.random.Generator, *,
               finite_only: bool = False, bound: float = 3.0) -> list[tuple[Sector, Multivector]]:
    """``n`` samples split as evenly as possible over the reachable sectors."""
    sectors = reachable_sectors(sig, finite_only)
    out = []
    for i, sector in enumerate(sectors):
        quota = n // len(sectors) + (1 if i < n % len(sectors) else 0)
        out.extend((sector, sample_sector(sig, sector, rng, bound)) for _ in range(quota))
    return out
