"""Coefficient-level multivector arithmetic for the five real Clifford algebras with n = p + q <= 2.

Every multivector is stored as four coefficients ``(a0, a1, a2, a12)`` on the
basis ``1, e1, e2, e12``; in the one-dimensional algebras ``a2`` and ``a12`` are
pinned to zero.  Values are immutable and all operations are pure.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import (
    NonFiniteCoefficient,
    NonZero1DComponent,
    SignatureMismatch,
    SingularMultivector,
)

__all__ = [
    "Signature",
    "Multivector",
    "NormReport",
    "Involution",
    "mv",
    "scalar",
    "basis",
    "gp",
    "add",
    "sub",
    "scale",
    "neg",
    "involute",
    "reverse",
    "grade_involute",
    "conjugate",
    "qsplit",
    "norms",
    "det",
    "inverse",
    "approx_eq",
    "max_abs_diff",
    "commutator",
    "format_mv",
]


class Signature(enum.Enum):
    """The five algebras.  Value tuple is ``(p, q, sq1, sq2, sq12)``.

    Cl(1,1) uses e1^2 = +1, e2^2 = -1 so that the 'vector' square reads
    b1^2 - b2^2 + b12^2.  For n = 1 the unused squares are stored as 0.
    """

    CL01 = (0, 1, -1, 0, 0)
    CL10 = (1, 0, 1, 0, 0)
    CL02 = (0, 2, -1, -1, -1)
    CL11 = (1, 1, 1, -1, 1)
    CL20 = (2, 0, 1, 1, -1)

    def __init__(self, p: int, q: int, sq1: int, sq2: int, sq12: int):
        # plain attributes: enum ``value`` lookups are slow on hot paths
        self.p, self.q, self.n = p, q, p + q
        self.sq1, self.sq2, self.sq12 = sq1, sq2, sq12

    @property
    def tag(self) -> str:
        return self.name.lower()

    @classmethod
    def from_tag(cls, tag: str) -> "Signature":
        try:
            return cls[tag.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown algebra {tag!r}; expected one of "
                             + ", ".join(s.tag for s in cls)) from None

    def __str__(self) -> str:
        return f"Cl({self.p},{self.q})"


@dataclass(frozen=True, slots=True)
class Multivector:
    sig: Signature
    a0: float
    a1: float = 0.0
    a2: float = 0.0
    a12: float = 0.0

    @property
    def coeffs(self) -> tuple[float, float, float, float]:
        return (self.a0, self.a1, self.a2, self.a12)

    def is_zero(self) -> bool:
        return self.a0 == 0.0 and self.a1 == 0.0 and self.a2 == 0.0 and self.a12 == 0.0

    def scale_magnitude(self) -> float:
        """Largest absolute coefficient."""
        return max(abs(self.a0), abs(self.a1), abs(self.a2), abs(self.a12))

    # operator sugar; semantics live in the module-level functions
    def __add__(self, other):
        if isinstance(other, Multivector):
            return add(self, other)
        if isinstance(other, (int, float)):
            return Multivector(self.sig, self.a0 + other, self.a1, self.a2, self.a12)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Multivector):
            return sub(self, other)
        if isinstance(other, (int, float)):
            return Multivector(self.sig, self.a0 - other, self.a1, self.a2, self.a12)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, float)):
            return Multivector(self.sig, other - self.a0, -self.a1, -self.a2, -self.a12)
        return NotImplemented

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return gp(self, other)
        if isinstance(other, (int, float)):
            return scale(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return scale(self, other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Multivector):
            return gp(self, inverse(other))
        if isinstance(other, (int, float)):
            return scale(self, 1.0 / other)
        return NotImplemented

    def __str__(self) -> str:
        return format_mv(self)


@dataclass(frozen=True, slots=True)
class NormReport:
    qsq: float
    seminormQ: float
    det: float
    seminormB: float
    scalar: float


class Involution(enum.Enum):
    REVERSE = "reverse"
    GRADE_INVOLUTE = "gradeinv"
    CLIFFORD_CONJUGATE = "conj"


def mv(sig: Signature, a0: float = 0.0, a1: float = 0.0, a2: float = 0.0, a12: float = 0.0) -> Multivector:
    """Validated constructor."""
    values = (float(a0), float(a1), float(a2), float(a12))
    for v in values:
        if not math.isfinite(v):
            raise NonFiniteCoefficient(f"coefficient {v!r} is not finite")
    if sig.n == 1 and (values[2] != 0.0 or values[3] != 0.0):
        raise NonZero1DComponent(f"{sig} has no e2 or e12 component")
    return Multivector(sig, *values)


def scalar(sig: Signature, value: float) -> Multivector:
    return Multivector(sig, float(value))


def basis(sig: Signature, name: str) -> Multivector:
    """Unit basis element ``'1'``, ``'e1'``, ``'e2'`` or ``'e12'``."""
    slot = {"1": 0, "e1": 1, "e2": 2, "e12": 3}[name]
    coeffs = [0.0, 0.0, 0.0, 0.0]
    coeffs[slot] = 1.0
    return mv(sig, *coeffs)


def _check_same(x: Multivector, y: Multivector) -> None:
    if x.sig is not y.sig:
        raise SignatureMismatch(f"cannot combine {x.sig} with {y.sig}")


def gp(x: Multivector, y: Multivector) -> Multivector:
    """Geometric product."""
    _check_same(x, y)
    s1, s2 = x.sig.sq1, x.sig.sq2
    a0, a1, a2, a3 = x.a0, x.a1, x.a2, x.a12
    b0, b1, b2, b3 = y.a0, y.a1, y.a2, y.a12
    if x.sig.n == 1:
        return Multivector(x.sig, a0 * b0 + s1 * a1 * b1, a0 * b1 + a1 * b0)
    # e1e12 = s1 e2, e12e1 = -s1 e2, e2e12 = -s2 e1, e12e2 = s2 e1, e12e12 = -s1 s2
    return Multivector(
        x.sig,
        a0 * b0 + s1 * a1 * b1 + s2 * a2 * b2 - s1 * s2 * a3 * b3,
        a0 * b1 + a1 * b0 + s2 * (a3 * b2 - a2 * b3),
        a0 * b2 + a2 * b0 + s1 * (a1 * b3 - a3 * b1),
        a0 * b3 + a3 * b0 + a1 * b2 - a2 * b1,
    )


def add(x: Multivector, y: Multivector) -> Multivector:
    _check_same(x, y)
    return Multivector(x.sig, x.a0 + y.a0, x.a1 + y.a1, x.a2 + y.a2, x.a12 + y.a12)


def sub(x: Multivector, y: Multivector) -> Multivector:
    _check_same(x, y)
    return Multivector(x.sig, x.a0 - y.a0, x.a1 - y.a1, x.a2 - y.a2, x.a12 - y.a12)


def scale(x: Multivector, factor: float) -> Multivector:
    return Multivector(x.sig, x.a0 * factor, x.a1 * factor, x.a2 * factor, x.a12 * factor)


def neg(x: Multivector) -> Multivector:
    return Multivector(x.sig, -x.a0, -x.a1, -x.a2, -x.a12)


def involute(x: Multivector, kind: Involution) -> Multivector:
    if kind is Involution.REVERSE:
        return Multivector(x.sig, x.a0, x.a1, x.a2, -x.a12)
    if kind is Involution.GRADE_INVOLUTE:
        return Multivector(x.sig, x.a0, -x.a1, -x.a2, x.a12)
    if kind is Involution.CLIFFORD_CONJUGATE:
        return Multivector(x.sig, x.a0, -x.a1, -x.a2, -x.a12)
    raise ValueError(f"unknown involution {kind!r}")


def reverse(x: Multivector) -> Multivector:
    return involute(x, Involution.REVERSE)


def grade_involute(x: Multivector) -> Multivector:
    return involute(x, Involution.GRADE_INVOLUTE)


def conjugate(x: Multivector) -> Multivector:
    return involute(x, Involution.CLIFFORD_CONJUGATE)


def qsplit(x: Multivector) -> tuple[float, Multivector]:
    """Split into scalar part and quaternionic 'vector' a1 e1 + a2 e2 + a12 e12."""
    return x.a0, Multivector(x.sig, 0.0, x.a1, x.a2, x.a12)


_SPLIT = 134217729.0  # 2**27 + 1, Dekker's splitting constant


def _exact_square(a: float) -> tuple[float, float]:
    """a*a as an unevaluated sum hi + lo with no rounding error."""
    hi = a * a
    c = _SPLIT * a
    ah = c - (c - a)
    al = a - ah
    return hi, ((ah * ah - hi) + 2.0 * ah * al) + al * al


def _signed_square_sum(terms: tuple[tuple[int, float], ...]) -> float:
    """Sum of sign*value**2; recomputed exactly when the naive sum cancels."""
    naive = 0.0
    mag = 0.0
    for sign, v in terms:
        sq = v * v
        naive += sign * sq
        mag += sq
    if abs(naive) >= 1e-3 * mag:
        return naive
    parts = []
    for sign, v in terms:
        if sign:
            hi, lo = _exact_square(v)
            parts.append(sign * hi)
            parts.append(sign * lo)
    return math.fsum(parts)


def qvec_square(x: Multivector) -> float:
    """Signed square of the 'vector' part; always a pure scalar."""
    sig = x.sig
    return _signed_square_sum(((sig.sq1, x.a1), (sig.sq2, x.a2), (sig.sq12, x.a12)))


def det(x: Multivector) -> float:
    """Determinant x * conj(x) = a0^2 - B'^2."""
    sig = x.sig
    return _signed_square_sum(((1, x.a0), (-sig.sq1, x.a1), (-sig.sq2, x.a2), (-sig.sq12, x.a12)))


def norms(x: Multivector) -> NormReport:
    qsq = qvec_square(x)
    d = det(x)
    return NormReport(
        qsq=qsq,
        seminormQ=math.sqrt(abs(qsq)),
        det=d,
        seminormB=math.sqrt(abs(d)),
        scalar=x.a0,
    )


def det_tolerance(x: Multivector) -> float:
    """Scale-aware threshold under which a determinant counts as zero."""
    s = x.scale_magnitude()
    return 1e-12 * s * s


def inverse(x: Multivector, tol_det: float | None = None) -> Multivector:
    d = det(x)
    limit = det_tolerance(x) if tol_det is None else tol_det
    if abs(d) <= limit:
        raise SingularMultivector(f"{format_mv(x)} has determinant {d:.3g} and no inverse")
    return scale(conjugate(x), 1.0 / d)


def max_abs_diff(x: Multivector, y: Multivector) -> float:
    _check_same(x, y)
    return max(abs(x.a0 - y.a0), abs(x.a1 - y.a1), abs(x.a2 - y.a2), abs(x.a12 - y.a12))


def approx_eq(x: Multivector, y: Multivector, tol: float) -> bool:
    return max_abs_diff(x, y) <= tol


def commutator(x: Multivector, y: Multivector) -> Multivector:
    """xy - yx."""
    return sub(gp(x, y), gp(y, x))


def _format_number(v: float) -> str:
    if v.is_integer() and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def format_mv(x: Multivector) -> str:
    """Canonical text form ``a0 + a1*e1 + a2*e2 + a12*e12`` with zero terms dropped."""
    parts: list[tuple[bool, str]] = []
    for value, name in zip(x.coeffs, ("", "e1", "e2", "e12")):
        if value == 0.0:
            continue
        negative = math.copysign(1.0, value) < 0
        mag = abs(value)
        if not name:
            body = _format_number(mag)
        elif mag == 1.0:
            body = name
        else:
            body = f"{_format_number(mag)}*{name}"
        parts.append((negative, body))
    if not parts:
        return "0"
    negative, body = parts[0]
    out = ("-" if negative else "") + body
    for negative, body in parts[1:]:
        out += (" - " if negative else " + ") + body
    return out
