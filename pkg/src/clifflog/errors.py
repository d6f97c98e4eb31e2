"""Exception hierarchy shared by every module of the toolkit."""

from __future__ import annotations


class CliffordError(Exception):
    """Base class; ``position`` is set when the error traces back to source text."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.message = message
        self.position = position

    def __str__(self) -> str:
        if self.position is None:
            return self.message
        return f"{self.message} (at position {self.position})"


class NonZero1DComponent(CliffordError):
    pass


class NonFiniteCoefficient(CliffordError):
    pass


class SignatureMismatch(CliffordError):
    pass


class SingularMultivector(CliffordError):
    pass


class ZeroArgument(CliffordError):
    pass


class UnsupportedKind(CliffordError):
    pass


class UnsupportedSignature(CliffordError):
    pass


class DomainViolation(CliffordError):
    pass


class NoLogarithm(CliffordError):
    """Raised when a multivector has no finite logarithm."""


class NoSquareRoot(CliffordError):
    pass


class OutOfConvergenceDomain(CliffordError):
    pass


class LexError(CliffordError):
    pass


class ParseError(CliffordError):
    def __init__(self, message: str, position: int | None = None, expected: tuple[str, ...] = ()):
        super().__init__(message, position)
        self.expected = expected

    def __str__(self) -> str:
        text = super().__str__()
        if self.expected:
            text += "; expected one of: " + ", ".join(self.expected)
        return text


class BasisOutOfDimension(CliffordError):
    pass


class SingularDivision(SingularMultivector):
    """Division or ``inv`` applied to a multivector without an inverse."""
