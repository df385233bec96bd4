"""
Exact scalars, deformations and the primitive deformed quantities.

A deformation is the triple (eps1, eps2, unit). The deformed number is
[n] = unit * (eps1**n - eps2**n) / (eps1 - eps2). Every other module builds on
the number, the ordered factorial and the binomial defined here.
"""

import logging
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Optional, Union

from errors import (
    DegenerateDeformation,
    DivisionByZeroFactor,
    InvalidLiteral,
    NegativeArgument,
    ParameterOrdering,
)

logger = logging.getLogger(__name__)

ExactScalar = Fraction
Rational = Union[Fraction, int, str]

_LITERAL = re.compile(r"^-?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse a rational literal of the form [-]digits[/digits]."""
    if not isinstance(text, str) or not _LITERAL.match(text):
        raise InvalidLiteral(f"not a rational literal: {text!r}")
    if "/" in text and int(text.split("/")[1]) == 0:
        raise InvalidLiteral(f"zero denominator in {text!r}")
    return Fraction(text)


def as_scalar(value: Rational) -> Fraction:
    if isinstance(value, str):
        return parse_rational(value)
    return Fraction(value)


def binom2(m: int) -> int:
    """C(m, 2) = m(m-1)/2, defined for every integer m."""
    return m * (m - 1) // 2


def fmt(value: Fraction) -> str:
    """Render an exact scalar as 'a/b' (or 'a' for integers)."""
    return str(Fraction(value))


class DeformationKind(Enum):
    Q = "q"
    PQ_JS = "pq"
    QUESNE = "quesne"
    CUSTOM = "custom"

    @classmethod
    def from_token(cls, token: str) -> "DeformationKind":
        for kind in cls:
            if kind.value == token:
                return kind
        raise InvalidLiteral(f"unknown deformation kind: {token!r}")


@dataclass(frozen=True)
class Deformation:
    """A deformation (eps1, eps2, unit) together with the (p, q) it came from."""

    eps1: Fraction
    eps2: Fraction
    unit: Fraction
    kind: DeformationKind = DeformationKind.CUSTOM
    p: Optional[Fraction] = None
    q: Optional[Fraction] = None

    @property
    def theta(self) -> Fraction:
        """Ratio eps2/eps1, the base of the partition weights and series checks."""
        return self.eps2 / self.eps1

    def number(self, n: int) -> Fraction:
        return self.unit * (self.eps1 ** n - self.eps2 ** n) / (self.eps1 - self.eps2)

    def factorial(self, n: int) -> Fraction:
        if n < 0:
            raise NegativeArgument(f"factorial of negative n={n}")
        result = Fraction(1)
        for m in range(1, n + 1):
            result *= self.number(m)
        return result

    def ordered_factorial(self, x: int, kappa: int) -> Fraction:
        """[x]_kappa; negative orders give 1/[x+|kappa|]_{|kappa|}."""
        if kappa >= 0:
            result = Fraction(1)
            for v in range(1, kappa + 1):
                result *= self.number(x - v + 1)
            return result
        order = -kappa
        denominator = self.ordered_factorial(x + order, order)
        if denominator == 0:
            raise DivisionByZeroFactor(
                f"[{x + order}]_{order} vanishes, so [{x}]_{kappa} is undefined"
            )
        return 1 / denominator

    def binomial(self, x: int, kappa: int) -> Fraction:
        if kappa < 0:
            raise NegativeArgument(f"binomial with negative lower index {kappa}")
        bang = self.factorial(kappa)
        if bang == 0:
            raise DivisionByZeroFactor(f"[{kappa}]! vanishes")
        return self.ordered_factorial(x, kappa) / bang

    def inverted(self) -> "Deformation":
        return Deformation(1 / self.eps1, 1 / self.eps2, self.unit)

    def ratio(self) -> "Deformation":
        if self.eps1 == 1:
            return self
        return Deformation(Fraction(1), self.eps2 / self.eps1, self.unit)

    def summary(self) -> Dict[str, Optional[str]]:
        return {
            "kind": self.kind.value,
            "p": None if self.p is None else fmt(self.p),
            "q": None if self.q is None else fmt(self.q),
            "eps1": fmt(self.eps1),
            "eps2": fmt(self.eps2),
            "unit": fmt(self.unit),
        }


def make_deformation(kind: Union[DeformationKind, str], p: Rational, q: Rational) -> Deformation:
    """
    Build one of the built-in deformations.

    Args:
        kind: Q, PQ_JS or QUESNE (or their tokens)
        p: first parameter, 0 < q < p <= 1
        q: second parameter

    Returns:
        The deformation with its (eps1, eps2, unit) triple
    """
    if isinstance(kind, str):
        kind = DeformationKind.from_token(kind)
    if kind is DeformationKind.CUSTOM:
        raise DegenerateDeformation("custom deformations are built with make_custom_deformation")
    p, q = as_scalar(p), as_scalar(q)
    if not (0 < q < p <= 1):
        raise ParameterOrdering(f"expected 0 < q < p <= 1, got p={fmt(p)}, q={fmt(q)}")

    if kind is DeformationKind.Q:
        triple = (Fraction(1), q, Fraction(1))
    elif kind is DeformationKind.PQ_JS:
        triple = (p, q, Fraction(1))
    else:
        triple = (p, 1 / q, p / q)

    logger.debug("deformation %s at p=%s q=%s -> %s", kind.value, p, q, triple)
    return Deformation(*triple, kind=kind, p=p, q=q)


def make_custom_deformation(eps1: Rational, eps2: Rational, unit: Rational = 1) -> Deformation:
    eps1, eps2, unit = as_scalar(eps1), as_scalar(eps2), as_scalar(unit)
    if eps1 == 0 or eps2 == 0 or unit == 0:
        raise DegenerateDeformation("eps1, eps2 and unit must all be nonzero")
    if eps1 == eps2:
        raise DegenerateDeformation("eps1 and eps2 coincide")
    return Deformation(eps1, eps2, unit, kind=DeformationKind.CUSTOM)


def number(d: Deformation, n: int) -> Fraction:
    return d.number(n)


def deformed_factorial(d: Deformation, n: int) -> Fraction:
    return d.factorial(n)


def ordered_factorial(d: Deformation, x: int, kappa: int) -> Fraction:
    return d.ordered_factorial(x, kappa)


def deformed_binomial(d: Deformation, x: int, kappa: int) -> Fraction:
    return d.binomial(x, kappa)


def inverted_deformation(d: Deformation) -> Deformation:
    """(1/eps1, 1/eps2, unit): parameter inversion p -> 1/p, q -> 1/q."""
    return d.inverted()


def ratio_deformation(d: Deformation) -> Deformation:
    """(1, eps2/eps1, unit): the deformation in the single ratio eps2/eps1."""
    return d.ratio()
