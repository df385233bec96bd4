"""
Exact univariate polynomials and truncated power series over Fraction.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

from deformation import Deformation, fmt
from errors import NegativeArgument, NonInvertibleSeries

NEG_INF = float("-inf")


def _trim(coefficients: Iterable) -> Tuple[Fraction, ...]:
    values = [Fraction(c) for c in coefficients]
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


class ArithOp(Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    RECIPROCAL_OF_B_THEN_MUL = "reciprocal_of_b_then_mul"


@dataclass(frozen=True)
class Polynomial:
    """Coefficients indexed by degree, trailing zeros trimmed."""

    coefficients: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _trim(self.coefficients))

    @classmethod
    def of(cls, *coefficients) -> "Polynomial":
        return cls(tuple(coefficients))

    @classmethod
    def monomial(cls, degree: int, coefficient=1) -> "Polynomial":
        return cls((0,) * degree + (coefficient,))

    @property
    def degree(self) -> Union[int, float]:
        return len(self.coefficients) - 1 if self.coefficients else NEG_INF

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k < len(self.coefficients):
            return self.coefficients[k]
        return Fraction(0)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        size = max(len(self.coefficients), len(other.coefficients))
        return Polynomial(tuple(self.coefficient(k) + other.coefficient(k) for k in range(size)))

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if not self.coefficients or not other.coefficients:
            return Polynomial()
        product = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for k, b in enumerate(other.coefficients):
                product[i + k] += a * b
        return Polynomial(tuple(product))

    def scale(self, factor) -> "Polynomial":
        return Polynomial(tuple(factor * c for c in self.coefficients))

    def __call__(self, x) -> Fraction:
        result = Fraction(0)
        for c in reversed(self.coefficients):
            result = result * x + c
        return result

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if k == 0:
                terms.append(fmt(c))
            elif k == 1:
                terms.append(f"{fmt(c)}*x")
            else:
                terms.append(f"{fmt(c)}*x^{k}")
        return " + ".join(terms)


@dataclass(frozen=True)
class PowerSeries:
    """Series truncated at O(v^(order+1)); always order+1 coefficients."""

    coefficients: Tuple[Fraction, ...]
    order: int

    def __post_init__(self):
        padded = [Fraction(c) for c in self.coefficients[: self.order + 1]]
        padded += [Fraction(0)] * (self.order + 1 - len(padded))
        object.__setattr__(self, "coefficients", tuple(padded))

    @classmethod
    def from_polynomial(cls, p: Polynomial, order: int) -> "PowerSeries":
        return cls(p.coefficients, order)

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls((1,), order)

    def __getitem__(self, k: int) -> Fraction:
        return self.coefficients[k]

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        order = min(self.order, other.order)
        return PowerSeries(tuple(self[k] + other[k] for k in range(order + 1)), order)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        order = min(self.order, other.order)
        return PowerSeries(tuple(self[k] - other[k] for k in range(order + 1)), order)

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        order = min(self.order, other.order)
        product = [
            sum((self[i] * other[k - i] for i in range(k + 1)), Fraction(0))
            for k in range(order + 1)
        ]
        return PowerSeries(tuple(product), order)

    def reciprocal(self) -> "PowerSeries":
        if self[0] == 0:
            raise NonInvertibleSeries("power series with zero constant term has no reciprocal")
        inverse = [1 / self[0]]
        for k in range(1, self.order + 1):
            acc = sum((self[i] * inverse[k - i] for i in range(1, k + 1)), Fraction(0))
            inverse.append(-acc / self[0])
        return PowerSeries(tuple(inverse), self.order)

    def shift(self, k: int) -> "PowerSeries":
        """Multiply by v**k, keeping the order."""
        return PowerSeries((0,) * k + self.coefficients, self.order)

    def __str__(self) -> str:
        body = Polynomial(self.coefficients)
        return f"{body} + O(v^{self.order + 1})".replace("x", "v")


def poly_arith(a: Polynomial, b: Polynomial, op: Union[ArithOp, str]) -> Polynomial:
    op = ArithOp(op)
    if op is ArithOp.ADD:
        return a + b
    if op is ArithOp.SUB:
        return a - b
    if op is ArithOp.MUL:
        return a * b
    raise ValueError(f"{op.value} is not a polynomial operation")


def poly_eval(p: Polynomial, x) -> Fraction:
    return p(Fraction(x))


def series_arith(a: PowerSeries, b: PowerSeries, op: Union[ArithOp, str]) -> PowerSeries:
    op = ArithOp(op)
    if op is ArithOp.ADD:
        return a + b
    if op is ArithOp.SUB:
        return a - b
    if op is ArithOp.MUL:
        return a * b
    return a * b.reciprocal()


def linear_product(factors: Sequence[Tuple[Fraction, Fraction]]) -> Polynomial:
    """Product of linear factors c0 + c1*x."""
    result = Polynomial.of(1)
    for c0, c1 in factors:
        result = result * Polynomial.of(c0, c1)
    return result


def product_linear_factors(d: Deformation, n: int) -> Polynomial:
    """prod_{r=1..n} (eps1^(r-1) + x*eps2^(r-1))."""
    if n < 0:
        raise NegativeArgument(f"product of {n} linear factors")
    return linear_product([(d.eps1 ** (r - 1), d.eps2 ** (r - 1)) for r in range(1, n + 1)])
