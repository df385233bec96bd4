"""
Registry of the closed deformed-binomial identities and the engine that
audits them over parameter grids.

Finite statements are compared exactly (as Fractions or, for the x-polynomial
statements, coefficient-wise). Infinite series are compared through exact
partial sums that are converted to mpmath numbers only at the final step.

Where a statement only holds with corrected exponents, the registry checks the
corrected form and records the literal one under CheckReport.variants.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import partial
from itertools import product
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from mpmath import mp

from config import Settings, load_settings
from deformation import Deformation, binom2, fmt
from errors import DomainViolation, NonTerminatingSeries
from poly_series import Polynomial, PowerSeries, linear_product, product_linear_factors

logger = logging.getLogger(__name__)

MAX_COUNTEREXAMPLES = 5

Cell = Dict[str, object]


class CheckMode(Enum):
    EXACT = "EXACT"
    NUMERIC = "NUMERIC"


class Status(Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    PASS_WITH_UNIT_CORRECTION = "PASS_WITH_UNIT_CORRECTION"
    SKIPPED = "SKIPPED"


@dataclass(frozen=True)
class Grid:
    """Inclusive integer ranges per parameter, plus rational sample points x."""

    ranges: Dict[str, Tuple[int, int]] = field(default_factory=dict)
    samples: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        for name, (lo, hi) in self.ranges.items():
            if lo > hi:
                raise DomainViolation(f"empty range for {name}: [{lo}, {hi}]")

    def cells(self) -> Iterator[Cell]:
        names = list(self.ranges)
        axes: List[Sequence] = [range(lo, hi + 1) for lo, hi in self.ranges.values()]
        if self.samples:
            names.append("x")
            axes.append(self.samples)
        for values in product(*axes):
            yield dict(zip(names, values))

    def override(self, **ranges: Tuple[int, int]) -> "Grid":
        merged = dict(self.ranges)
        merged.update(ranges)
        return Grid(merged, self.samples)

    def at_point(self, x: Fraction) -> "Grid":
        """Pin the evaluation point: series samples become (x,); an integer x range collapses to x."""
        if self.samples:
            return Grid(self.ranges, (Fraction(x),))
        if "x" in self.ranges and Fraction(x).denominator == 1 and x >= 0:
            return self.override(x=(int(x), int(x)))
        return self

    def to_dict(self) -> Dict[str, object]:
        payload: Dict[str, object] = {name: list(bounds) for name, bounds in self.ranges.items()}
        if self.samples:
            payload["samples"] = [fmt(x) for x in self.samples]
        return payload


@dataclass(frozen=True)
class Counterexample:
    params: Dict[str, str]
    lhs: str
    rhs: str

    def to_dict(self) -> Dict[str, object]:
        return {"params": self.params, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class CheckReport:
    """Outcome of one statement checked over one grid."""

    identity: str
    label: str
    mode: CheckMode
    status: Status
    cells: int = 0
    skipped: int = 0
    counterexamples: List[Counterexample] = field(default_factory=list)
    variants: Dict[str, str] = field(default_factory=dict)
    deformation: Dict[str, Optional[str]] = field(default_factory=dict)
    grid: Dict[str, object] = field(default_factory=dict)
    ref: str = ""

    @property
    def passed(self) -> bool:
        return self.status in (Status.PASS, Status.PASS_WITH_UNIT_CORRECTION)

    def to_dict(self) -> Dict[str, object]:
        return {
            "identity": self.identity,
            "paper_eq": self.ref or self.identity,
            "statement": self.label,
            "mode": self.mode.value,
            "status": self.status.value,
            "cells": self.cells,
            "skipped": self.skipped,
            "counterexamples": [c.to_dict() for c in self.counterexamples],
            "variants": dict(self.variants),
            "deformation": dict(self.deformation),
            "grid": dict(self.grid),
        }


# ---------------------------------------------------------------------------
# Engine
# ---------------------------------------------------------------------------


# Above this many decimal digits an exact rendering is replaced by a decimal one.
MAX_EXACT_DIGITS = 4000
_LOG10_2 = 0.30103


def _to_mpf(value: Fraction, ctx=mp):
    return ctx.mpf(value.numerator) / value.denominator


def _digits(value: Fraction) -> int:
    bits = max(value.numerator.bit_length(), value.denominator.bit_length())
    return int(bits * _LOG10_2) + 1


def _render(value, exact: bool = True) -> str:
    """Counterexample text: 'a/b' for exact cells, a 30-digit decimal for numeric ones."""
    if not isinstance(value, Fraction):
        return str(value)
    if exact and _digits(value) <= MAX_EXACT_DIGITS:
        return fmt(value)
    ctx = mp.clone()
    ctx.dps = 30
    return ctx.nstr(_to_mpf(value, ctx), 30)


def exact_equal(lhs, rhs) -> bool:
    return lhs == rhs


def numeric_equal(tolerance: float, dps: int) -> Callable[[object, object], bool]:
    """Relative comparison at `dps` digits; non-scalars fall back to equality."""
    ctx = mp.clone()
    ctx.dps = dps

    def equal(lhs, rhs) -> bool:
        if not isinstance(lhs, Fraction) or not isinstance(rhs, Fraction):
            return lhs == rhs
        left, right = _to_mpf(lhs, ctx), _to_mpf(rhs, ctx)
        if left == 0:
            return abs(right) <= tolerance
        return abs(left - right) <= tolerance * abs(left)

    return equal


@dataclass
class Tally:
    cells: int = 0
    skipped: int = 0
    failures: int = 0
    counterexamples: List[Counterexample] = field(default_factory=list)

    @property
    def status(self) -> Status:
        if self.cells == 0:
            return Status.SKIPPED
        return Status.PASS if self.failures == 0 else Status.FAIL

    def summary(self) -> str:
        if self.status is Status.FAIL:
            return f"FAIL {self.failures}/{self.cells} cells"
        return self.status.value


def tally(sides: Callable[[Cell], Optional[Tuple[object, object]]],
          cells: Sequence[Cell],
          equal: Callable[[object, object], bool] = exact_equal,
          exact: bool = True) -> Tally:
    """Evaluate both sides at every cell; sides returning None mark a skipped cell."""
    result = Tally()
    for cell in cells:
        pair = sides(cell)
        if pair is None:
            result.skipped += 1
            continue
        lhs, rhs = pair
        result.cells += 1
        if not equal(lhs, rhs):
            result.failures += 1
            if len(result.counterexamples) < MAX_COUNTEREXAMPLES:
                params = {name: _render(value) for name, value in cell.items()}
                result.counterexamples.append(
                    Counterexample(params, _render(lhs, exact), _render(rhs, exact))
                )
    return result


def verify(token: str,
           label: str,
           mode: CheckMode,
           cells: Sequence[Cell],
           sides: Callable[[Cell], Optional[Tuple[object, object]]],
           *,
           unit_corrected: Optional[Callable] = None,
           variants: Optional[Dict[str, Callable]] = None,
           equal: Callable[[object, object], bool] = exact_equal,
           deformation: Optional[Deformation] = None,
           grid: Optional[Grid] = None,
           ref: str = "") -> CheckReport:
    """
    Build a CheckReport for one statement.

    When `unit_corrected` is given, the uncorrected `sides` decide PASS; if they
    fail but the corrected ones hold everywhere the status is
    PASS_WITH_UNIT_CORRECTION. Every entry of `variants` is evaluated on the
    same cells and its outcome stored by name.
    """
    exact = mode is CheckMode.EXACT
    primary = tally(sides, cells, equal, exact)
    status, shown = primary.status, primary
    notes: Dict[str, str] = {}

    if unit_corrected is not None and primary.status is Status.FAIL:
        notes["unit_free"] = primary.summary()
        fixed = tally(unit_corrected, cells, equal, exact)
        shown = fixed
        status = Status.PASS_WITH_UNIT_CORRECTION if fixed.status is Status.PASS else fixed.status

    for name, variant in (variants or {}).items():
        notes[name] = tally(variant, cells, equal, exact).summary()

    if status is Status.FAIL:
        logger.warning("%s failed on %d of %d cells", token, shown.failures, shown.cells)
    else:
        logger.debug("%s: %s over %d cells (%d skipped)", token, status.value, shown.cells, shown.skipped)

    return CheckReport(
        identity=token,
        label=label,
        mode=mode,
        status=status,
        cells=shown.cells,
        skipped=shown.skipped,
        counterexamples=shown.counterexamples,
        variants=notes,
        deformation=deformation.summary() if deformation is not None else {},
        grid=grid.to_dict() if grid is not None else {},
        ref=ref,
    )


def summarize(reports: Sequence[CheckReport]) -> Dict[str, int]:
    counts = {"pass": 0, "fail": 0, "unit_corrected": 0, "skipped": 0}
    for report in reports:
        if report.status is Status.PASS:
            counts["pass"] += 1
        elif report.status is Status.FAIL:
            counts["fail"] += 1
        elif report.status is Status.PASS_WITH_UNIT_CORRECTION:
            counts["unit_corrected"] += 1
        else:
            counts["skipped"] += 1
    return counts


# ---------------------------------------------------------------------------
# Statements
# ---------------------------------------------------------------------------


def _total(terms) -> Fraction:
    return sum(terms, Fraction(0))


def _swapped(d: Deformation) -> Deformation:
    # Deformed numbers are symmetric in (eps1, eps2); only explicit powers move.
    return Deformation(d.eps2, d.eps1, d.unit)


def _delta(n: int, k: int) -> Fraction:
    return Fraction(1 if n == k else 0)


def _factorial_split(d, c):
    u, k, s = c["u"], c["k"], c["s"]
    return d.ordered_factorial(u, k + s), d.ordered_factorial(u, s) * d.ordered_factorial(u - s, k)


def _inv_factorial(d, c):
    u, k = c["u"], c["k"]
    ab = d.eps1 * d.eps2
    return d.inverted().ordered_factorial(u, k), ab ** (-u * k + binom2(k + 1)) * d.ordered_factorial(u, k)


def _inv_bang(d, c):
    u = c["u"]
    ab = d.eps1 * d.eps2
    return d.inverted().factorial(u), ab ** (-binom2(u)) * d.factorial(u)


def _inv_binomial(d, c):
    u, k = c["u"], c["k"]
    ab = d.eps1 * d.eps2
    return d.inverted().binomial(u, k), ab ** (-k * (u - k)) * d.binomial(u, k)


def _ratio_binomial(d, c):
    u, k = c["u"], c["k"]
    return d.ratio().binomial(u, k), d.eps1 ** (-k * (u - k)) * d.binomial(u, k)


def _pascal(d, c):
    x, k = c["x"], c["k"]
    a, b = d.eps1, d.eps2
    return d.binomial(x, k), a ** k * d.binomial(x - 1, k) + b ** (x - k) * d.binomial(x - 1, k - 1)


def _power_diff(d, c, corrected=False):
    m, n = c["m"], c["n"]
    a, b = d.eps1, d.eps2
    lhs = Fraction(1)
    for i in range(1, n + 1):
        lhs *= a ** (m - i + 1) - b ** (m - i + 1)
    rhs = (a - b) ** n * d.ordered_factorial(m, n)
    if corrected:
        rhs *= d.unit ** (-n)
    return lhs, rhs


def _vandermonde(d, c):
    x, y, n = c["x"], c["y"], c["n"]
    a, b = d.eps1, d.eps2
    rhs = _total(
        d.binomial(n, k) * a ** (k * (y - n + k)) * b ** ((n - k) * (x - k))
        * d.ordered_factorial(x, k) * d.ordered_factorial(y, n - k)
        for k in range(n + 1)
    )
    return d.ordered_factorial(x + y, n), rhs


def _ratio_id_1(d, c):
    x, y, n = c["x"], c["y"], c["n"]
    a, b = d.eps1, d.eps2
    rhs = _total(
        d.binomial(n, k) * a ** (k * (y + k)) * b ** ((n - k) * (x - k))
        * d.ordered_factorial(x, k) / d.ordered_factorial(y + k, k)
        for k in range(n + 1)
    )
    return d.ordered_factorial(x + y + n, n) / d.ordered_factorial(y + n, n), rhs


def _ratio_id_2(d, c, printed=False):
    x, n = c["x"], c["n"]
    a, b = d.eps1, d.eps2
    if n >= x:
        # [x-1 over n] vanishes.
        return None

    def term(k):
        j = n - k
        if printed:
            power = a ** (binom2(j) + k * (n - x)) * b ** binom2(j)
        else:
            power = a ** (binom2(j) + j + n * (k - x)) * b ** (binom2(j) + j)
        return (-1) ** j * d.binomial(n, k) * power * d.number(x) / d.number(x - k)

    return 1 / d.binomial(x - 1, n), _total(term(k) for k in range(n + 1))


def _ratio_id_3(d, c, printed=False):
    y, n = c["y"], c["n"]
    a, b = d.eps1, d.eps2
    rhs = _total(
        (-1) ** k * d.binomial(n, k) * a ** binom2(k + 1) * b ** (binom2(k + 1) - n * (y + k))
        * d.number(y) / d.number(y + k)
        for k in range(n + 1)
    )
    lhs = d.binomial(y + n, n)
    return (lhs if printed else 1 / lhs), rhs


def _cauchy_core(d, u, v, n):
    a, b = d.eps1, d.eps2
    rhs = _total(
        a ** (k * (v - n + k)) * b ** ((n - k) * (u - k)) * d.binomial(u, k) * d.binomial(v, n - k)
        for k in range(n + 1)
    )
    return d.binomial(u + v, n), rhs


def _cauchy(d, c):
    return _cauchy_core(d, c["u"], c["v"], c["n"])


def _conv_sum(d, c):
    return _cauchy_core(d, c["r"], c["s"], c["n"])


def _neg_vandermonde(d, c):
    u, v, n = c["u"], c["v"], c["n"]
    a, b = d.eps1, d.eps2
    # [u]_k vanishes for k > u >= 0, so the sum stops at k = u.
    rhs = _total(
        d.binomial(-n, k) * a ** (k * (v + n + k)) * b ** ((-n - k) * (u - k))
        * d.ordered_factorial(u, k) * d.ordered_factorial(v, -n - k)
        for k in range(u + 1)
    )
    return d.ordered_factorial(u + v, -n), rhs


def _neg_ratio(d, c, printed=False):
    u, n, v = c["u"], c["n"], c["v"]
    a, b = d.eps1, d.eps2
    rhs = _total(
        d.binomial(n + k - 1, k) * a ** (n * (u - k)) * b ** (k * (v - n + 1))
        * d.ordered_factorial(u, k) / d.ordered_factorial(u + v, n + k)
        for k in range(u + 1)
    )
    lhs = d.ordered_factorial(v, -n) if printed else 1 / d.ordered_factorial(v, n)
    return lhs, rhs


def _binomial_product(d, c):
    n = c["n"]
    a, b = d.eps1, d.eps2
    expansion = Polynomial(tuple(
        a ** binom2(n - k) * b ** binom2(k) * d.binomial(n, k) for k in range(n + 1)
    ))
    return product_linear_factors(d, n), expansion


def _neg_binomial_series(d, c, settings: Settings):
    n, x = c["n"], c["x"]
    a, b = d.eps1, d.eps2
    lhs = Fraction(1)
    for r in range(1, n + 1):
        lhs /= a ** (r - 1) - x * b ** (r - 1)
    rhs, coefficient = Fraction(0), Fraction(1)
    for k in range(settings.horizon + 1):
        if k:
            coefficient = coefficient * d.number(n + k - 1) / d.number(k)
        rhs += a ** (-k * (n - 1)) * coefficient * x ** k
    return lhs, a ** (-binom2(n)) * rhs


def _neg_binomial_formal(d, c, settings: Settings):
    n = c["n"]
    a, b = d.eps1, d.eps2
    order = settings.series_order
    product_poly = linear_product([(a ** (r - 1), -b ** (r - 1)) for r in range(1, n + 1)])
    lhs = PowerSeries.from_polynomial(product_poly, order).reciprocal()
    rhs = PowerSeries(tuple(
        a ** (-binom2(n) - k * (n - 1)) * d.binomial(n + k - 1, k) for k in range(order + 1)
    ), order)
    return lhs, rhs


def _rothe_terms(d, n, x, horizon, weight):
    a, b = d.eps1, d.eps2
    total, coefficient, denominator = Fraction(0), Fraction(1), Fraction(1)
    for k in range(horizon + 1):
        if k:
            coefficient = coefficient * d.number(n + k - 1) / d.number(k)
            denominator *= a ** (n + k - 1) + x * b ** (n + k - 1)
        total += coefficient * weight(k) / denominator
    return total


def _rothe_product(d, n, x):
    lhs = Fraction(1)
    for i in range(1, n + 1):
        lhs *= d.eps1 ** (i - 1) + x * d.eps2 ** (i - 1)
    return lhs


def _rothe_1(d, c, settings: Settings):
    n, x = c["n"], c["x"]
    a, b = d.eps1, d.eps2
    series = _rothe_terms(d, n, x, settings.horizon, lambda k: x ** k * a ** k * b ** binom2(k))
    return _rothe_product(d, n, x), a ** binom2(n) * series


def _rothe_2(d, c, settings: Settings, printed=False):
    # The printed series is the first expansion for (eps2, eps1) at 1/x, so it
    # converges to the left side only when |eps1/eps2| < 1.
    n, x = c["n"], c["x"]
    a, b = d.eps1, d.eps2
    scale = x ** n * b ** binom2(n)
    lhs = _rothe_product(d, n, x) / scale
    if printed:
        return lhs, _rothe_terms(d, n, x, settings.slow_horizon, lambda k: b ** k * a ** binom2(k))
    series = _rothe_terms(d, n, x, settings.horizon, lambda k: x ** k * a ** k * b ** binom2(k))
    return lhs, a ** binom2(n) * series / scale


def _ortho_1(d, c, printed=False):
    n, k = c["n"], c["k"]
    a, b = d.eps1, d.eps2
    lhs = _total(
        (-1) ** (n - x) * a ** binom2(x if printed else x - k) * b ** binom2(n - x)
        * d.binomial(n, x) * d.binomial(x, k)
        for x in range(k, n + 1)
    )
    return lhs, _delta(n, k)


def _ortho_2(d, c, printed=False):
    n, k = c["n"], c["k"]
    a, b = d.eps1, d.eps2
    lhs = _total(
        (-1) ** (x - k) * a ** binom2(k if printed else n - x) * b ** binom2(x - k)
        * d.binomial(n, x) * d.binomial(x, k)
        for x in range(k, n + 1)
    )
    return lhs, _delta(n, k)


def _inversion_poly(d, c, printed=False):
    n = c["n"]
    a, b = d.eps1, d.eps2
    lhs = Polynomial()
    for k in range(n + 1):
        power = a ** binom2(k) if printed else a ** (-k * (n - k))
        weight = (-1) ** k * power * b ** binom2(k) * d.binomial(n, k)
        factors = linear_product([(a ** (1 - r), -b ** (1 - r)) for r in range(1, k + 1)])
        lhs = lhs + factors.scale(weight)
    return lhs, Polynomial.monomial(n)


def _inversion_power(d, c, corrected=False, printed=False):
    x, n = c["x"], c["n"]
    a, b, unit = d.eps1, d.eps2, d.unit

    def term(k):
        if printed:
            power = a ** (binom2(k) - x * k)
        else:
            power = a ** (-k * (n - k) - x * k)
        value = (-1) ** k * power * b ** binom2(k) * d.binomial(n, k) * (a - b) ** k * d.ordered_factorial(x, k)
        return value * unit ** (-k) if corrected else value

    return _total(term(k) for k in range(n + 1)), (b / a) ** (n * x)


def _inversion_alt(d, c, printed=False):
    n = c["n"]
    a, b = d.eps1, d.eps2
    lhs = Polynomial()
    for k in range(n + 1):
        weight = d.binomial(n, k)
        if not printed:
            weight *= a ** (-k * (n - k) - binom2(k))
        factors = linear_product([(a ** (r - 1), -b ** (r - 1)) for r in range(1, k + 1)])
        lhs = lhs + (Polynomial.monomial(n - k) * factors).scale(weight)
    return lhs, Polynomial.of(1)


def _inversion_alt_b(d, c, corrected=False, printed=False):
    x, n = c["x"], c["n"]
    a, b, unit = d.eps1, d.eps2, d.unit

    def term(k):
        power = a ** (-k * (n - k)) if printed else a ** binom2(k)
        value = d.binomial(n, k) * power * b ** (-k * (x + n - k)) * (a - b) ** k * d.ordered_factorial(x, k)
        return value * unit ** (-k) if corrected else value

    return _total(term(k) for k in range(n + 1)), (a / b) ** (n * x)


def _conv_sym(d, c):
    r, m = c["r"], c["m"]
    a, b = d.eps1, d.eps2
    lhs = _total(
        a ** (k * (m + k)) * b ** ((r - k) * (r - k - m)) * d.binomial(r, k) * d.binomial(r, k + m)
        for k in range(r + 1)
    )
    return lhs, d.binomial(2 * r, r + m)


def _conv_square(d, c):
    r = c["r"]
    a, b = d.eps1, d.eps2
    lhs = _total(a ** (k * k) * b ** ((r - k) ** 2) * d.binomial(r, k) ** 2 for k in range(r + 1))
    return lhs, d.binomial(2 * r, r)


def _neg_conv(d, c, printed=False):
    r, s, n = c["r"], c["s"], c["n"]
    a, b = d.eps1, d.eps2

    def term(k):
        power = a ** (r * (n - s - k) + k * s) if printed else a ** (k * s)
        return power * b ** (r * (n - k)) * d.binomial(r + k - 1, k) * d.binomial(s + n - k - 1, n - k)

    return d.binomial(r + s + n - 1, n), _total(term(k) for k in range(n + 1))


def _split_binomial(d, c, printed=False):
    n, m, k = c["n"], c["m"], c["k"]
    a, b = d.eps1, d.eps2

    def term(r):
        if printed:
            power = a ** ((k - 2 * r - m + n) * k + r * (m + 1)) * b ** (k * (n - r))
        else:
            power = a ** ((r - k) * (m - k + 1)) * b ** (k * (n - r - m + k))
        return power * d.binomial(r - 1, k - 1) * d.binomial(n - r, m - k)

    return d.binomial(n, m), _total(term(r) for r in range(k, n - m + k + 1))


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------


def _any(cell: Cell) -> bool:
    return True


# Published equation label per token, emitted as "paper_eq" in reports.
EQUATION_LABELS: Dict[str, str] = {
    "FACTORIAL_SPLIT": "fp",
    "INV_FACTORIAL": "014",
    "INV_BANG": "015",
    "INV_BINOMIAL": "016",
    "RATIO_BINOMIAL": "a016",
    "PASCAL_1": "bc1",
    "PASCAL_2": "bc2",
    "POWER_DIFF": "corollary",
    "VANDERMONDE_1": "vd1",
    "VANDERMONDE_2": "vd2",
    "RATIO_ID_1": "ii1",
    "RATIO_ID_2": "ii2",
    "RATIO_ID_3": "ii3",
    "CAUCHY_1": "c1",
    "CAUCHY_2": "c2",
    "NEG_VANDERMONDE_1": "nvd1",
    "NEG_VANDERMONDE_2": "nvd2",
    "NEG_RATIO_1": "ndv11",
    "NEG_RATIO_2": "ndv12",
    "BINOMIAL_PRODUCT": "bn1",
    "NEG_BINOMIAL_SERIES": "bn5",
    "ROTHE_1": "ad1",
    "ROTHE_2": "ad2",
    "ORTHO_1": "bn6",
    "ORTHO_2": "bn7",
    "INVERSION_POLY": "bn11",
    "INVERSION_POWER": "bna11",
    "INVERSION_ALT": "bn16",
    "INVERSION_ALT_B": "bna17",
    "CONV_SUM": "a11",
    "CONV_SYM": "a12",
    "CONV_SQUARE": "a13",
    "NEG_CONV": "Lemma 3.27",
    "SPLIT_BINOMIAL": "a31",
}


@dataclass(frozen=True)
class Identity:
    token: str
    label: str
    mode: CheckMode
    grid: Grid
    sides: Callable
    constraint: Callable[[Cell], bool] = _any
    domain: Callable[[Cell], bool] = _any
    unit_corrected: Optional[Callable] = None
    variants: Dict[str, Callable] = field(default_factory=dict)

    @property
    def ref(self) -> str:
        return EQUATION_LABELS.get(self.token, self.token)


def _swap(fn: Callable) -> Callable:
    return lambda d, c, *rest: fn(_swapped(d), c, *rest)


def _g(**ranges: Tuple[int, int]) -> Grid:
    return Grid(ranges)


_HALF, _QUARTER = Fraction(1, 2), Fraction(1, 4)

_REGISTRY: List[Identity] = [
    Identity("FACTORIAL_SPLIT", "[u]_(k+s) = [u]_s [u-s]_k", CheckMode.EXACT,
             _g(u=(0, 10), k=(0, 6), s=(0, 6)), _factorial_split),
    Identity("INV_FACTORIAL", "inverted [u]_k = (e1 e2)^(-uk+C(k+1,2)) [u]_k", CheckMode.EXACT,
             _g(u=(0, 10), k=(0, 10)), _inv_factorial, constraint=lambda c: c["k"] <= c["u"]),
    Identity("INV_BANG", "inverted [u]! = (e1 e2)^(-C(u,2)) [u]!", CheckMode.EXACT,
             _g(u=(0, 10)), _inv_bang),
    Identity("INV_BINOMIAL", "inverted [u k] = (e1 e2)^(-k(u-k)) [u k]", CheckMode.EXACT,
             _g(u=(0, 10), k=(0, 10)), _inv_binomial, constraint=lambda c: c["k"] <= c["u"]),
    Identity("RATIO_BINOMIAL", "ratio [u k] = e1^(-k(u-k)) [u k]", CheckMode.EXACT,
             _g(u=(0, 10), k=(0, 10)), _ratio_binomial, constraint=lambda c: c["k"] <= c["u"]),
    Identity("PASCAL_1", "[x k] = e1^k [x-1 k] + e2^(x-k) [x-1 k-1]", CheckMode.EXACT,
             _g(x=(1, 12), k=(1, 12)), _pascal, constraint=lambda c: c["k"] <= c["x"]),
    Identity("PASCAL_2", "[x k] = e2^k [x-1 k] + e1^(x-k) [x-1 k-1]", CheckMode.EXACT,
             _g(x=(1, 12), k=(1, 12)), _swap(_pascal), constraint=lambda c: c["k"] <= c["x"]),
    Identity("POWER_DIFF", "prod (e1^(m-i+1) - e2^(m-i+1)) = (e1-e2)^n [m]_n", CheckMode.EXACT,
             _g(m=(0, 10), n=(0, 10)), _power_diff, constraint=lambda c: c["n"] <= c["m"],
             unit_corrected=partial(_power_diff, corrected=True)),
    Identity("VANDERMONDE_1", "[x+y]_n = sum [n k] e1^(k(y-n+k)) e2^((n-k)(x-k)) [x]_k [y]_(n-k)",
             CheckMode.EXACT, _g(x=(0, 6), y=(0, 6), n=(0, 6)), _vandermonde),
    Identity("VANDERMONDE_2", "[x+y]_n = sum [n k] e2^(k(y-n+k)) e1^((n-k)(x-k)) [x]_k [y]_(n-k)",
             CheckMode.EXACT, _g(x=(0, 6), y=(0, 6), n=(0, 6)), _swap(_vandermonde)),
    Identity("RATIO_ID_1", "[x+y+n]_n/[y+n]_n = sum [n k] e1^(k(y+k)) e2^((n-k)(x-k)) [x]_k/[y+k]_k",
             CheckMode.EXACT, _g(x=(0, 6), y=(0, 6), n=(0, 5)), _ratio_id_1,
             domain=lambda c: c["y"] >= 0),
    Identity("RATIO_ID_2", "1/[x-1 n] = sum (-1)^(n-k) [n k] e1^(C(n-k,2)+(n-k)+n(k-x)) e2^(C(n-k,2)+(n-k)) [x]/[x-k]",
             CheckMode.EXACT, _g(x=(1, 10), n=(0, 5)), _ratio_id_2,
             variants={"printed_exponents": partial(_ratio_id_2, printed=True)}),
    Identity("RATIO_ID_3", "1/[y+n n] = sum (-1)^k [n k] e1^C(k+1,2) e2^(C(k+1,2)-n(y+k)) [y]/[y+k]",
             CheckMode.EXACT, _g(y=(1, 8), n=(0, 5)), _ratio_id_3,
             variants={"uninverted_lhs": partial(_ratio_id_3, printed=True)}),
    Identity("CAUCHY_1", "[u+v n] = sum e1^(k(v-n+k)) e2^((n-k)(u-k)) [u k][v n-k]", CheckMode.EXACT,
             _g(u=(0, 6), v=(0, 6), n=(0, 8)), _cauchy),
    Identity("CAUCHY_2", "[u+v n] = sum e2^(k(v-n+k)) e1^((n-k)(u-k)) [u k][v n-k]", CheckMode.EXACT,
             _g(u=(0, 6), v=(0, 6), n=(0, 8)), _swap(_cauchy)),
    Identity("NEG_VANDERMONDE_1", "[u+v]_(-n) = sum [-n k] e1^(k(v+n+k)) e2^((-n-k)(u-k)) [u]_k [v]_(-n-k)",
             CheckMode.EXACT, _g(u=(0, 6), v=(0, 6), n=(1, 4)), _neg_vandermonde,
             domain=lambda c: c["u"] >= 0 and c["v"] >= 0),
    Identity("NEG_VANDERMONDE_2", "[u+v]_(-n) = sum [-n k] e2^(k(v+n+k)) e1^((-n-k)(u-k)) [u]_k [v]_(-n-k)",
             CheckMode.EXACT, _g(u=(0, 6), v=(0, 6), n=(1, 4)), _swap(_neg_vandermonde),
             domain=lambda c: c["u"] >= 0 and c["v"] >= 0),
    Identity("NEG_RATIO_1", "1/[v]_n = sum [n+k-1 k] e1^(n(u-k)) e2^(k(v-n+1)) [u]_k/[u+v]_(n+k)",
             CheckMode.EXACT, _g(u=(0, 6), n=(1, 4), v=(1, 10)), _neg_ratio,
             constraint=lambda c: c["n"] <= c["v"] <= c["n"] + 6, domain=lambda c: c["u"] >= 0,
             variants={"negative_order_lhs": partial(_neg_ratio, printed=True)}),
    Identity("NEG_RATIO_2", "1/[v]_n = sum [n+k-1 k] e2^(n(u-k)) e1^(k(v-n+1)) [u]_k/[u+v]_(n+k)",
             CheckMode.EXACT, _g(u=(0, 6), n=(1, 4), v=(1, 10)), _swap(_neg_ratio),
             constraint=lambda c: c["n"] <= c["v"] <= c["n"] + 6, domain=lambda c: c["u"] >= 0,
             variants={"negative_order_lhs": _swap(partial(_neg_ratio, printed=True))}),
    Identity("BINOMIAL_PRODUCT", "prod (e1^(r-1) + x e2^(r-1)) = sum e1^C(n-k,2) e2^C(k,2) [n k] x^k",
             CheckMode.EXACT, _g(n=(0, 12)), _binomial_product),
    Identity("NEG_BINOMIAL_SERIES", "prod (e1^(r-1) - x e2^(r-1))^-1 = e1^-C(n,2) sum e1^(-k(n-1)) [n+k-1 k] x^k",
             CheckMode.NUMERIC, Grid({"n": (1, 4)}, (-_HALF, _QUARTER, _HALF)), _neg_binomial_series,
             variants={"formal_series": _neg_binomial_formal}),
    Identity("ROTHE_1", "prod (e1^(i-1) + x e2^(i-1)) = e1^C(n,2) sum [n+k-1 k] x^k e1^k e2^C(k,2) / prod (e1^(n+i-1) + x e2^(n+i-1))",
             CheckMode.NUMERIC, Grid({"n": (1, 4)}, (_QUARTER, _HALF)), _rothe_1),
    Identity("ROTHE_2", "prod (e1^(i-1) + x e2^(i-1)) / (x^n e2^C(n,2)) = e1^C(n,2) x^-n e2^-C(n,2) sum [n+k-1 k] x^k e1^k e2^C(k,2) / prod (e1^(n+i-1) + x e2^(n+i-1))",
             CheckMode.NUMERIC, Grid({"n": (1, 4)}, (_QUARTER, _HALF)), _rothe_2,
             variants={"printed_series": partial(_rothe_2, printed=True)}),
    Identity("ORTHO_1", "sum (-1)^(n-x) e1^C(x-k,2) e2^C(n-x,2) [n x][x k] = delta(n,k)", CheckMode.EXACT,
             _g(n=(0, 6), k=(0, 6)), _ortho_1, constraint=lambda c: c["k"] <= c["n"],
             variants={"printed_exponents": partial(_ortho_1, printed=True)}),
    Identity("ORTHO_2", "sum (-1)^(x-k) e1^C(n-x,2) e2^C(x-k,2) [n x][x k] = delta(n,k)", CheckMode.EXACT,
             _g(n=(0, 6), k=(0, 6)), _ortho_2, constraint=lambda c: c["k"] <= c["n"],
             variants={"printed_exponents": partial(_ortho_2, printed=True)}),
    Identity("INVERSION_POLY", "sum (-1)^k e1^(-k(n-k)) e2^C(k,2) [n k] prod (e1^(1-r) - x e2^(1-r)) = x^n",
             CheckMode.EXACT, _g(n=(0, 8)), _inversion_poly,
             variants={"printed_exponents": partial(_inversion_poly, printed=True)}),
    Identity("INVERSION_POWER", "sum (-1)^k e1^(-k(n-k)-xk) e2^C(k,2) [n k] (e1-e2)^k [x]_k = (e2/e1)^(nx)",
             CheckMode.EXACT, _g(x=(0, 8), n=(0, 8)), _inversion_power,
             unit_corrected=partial(_inversion_power, corrected=True),
             variants={"printed_exponents": partial(_inversion_power, printed=True)}),
    Identity("INVERSION_ALT", "sum e1^(-k(n-k)-C(k,2)) [n k] x^(n-k) prod (e1^(r-1) - x e2^(r-1)) = 1",
             CheckMode.EXACT, _g(n=(0, 8)), _inversion_alt,
             variants={"printed_exponents": partial(_inversion_alt, printed=True)}),
    Identity("INVERSION_ALT_B", "sum [n k] e1^C(k,2) e2^(-k(x+n-k)) (e1-e2)^k [x]_k = (e1/e2)^(nx)",
             CheckMode.EXACT, _g(x=(0, 8), n=(0, 8)), _inversion_alt_b,
             unit_corrected=partial(_inversion_alt_b, corrected=True),
             variants={"printed_exponents": partial(_inversion_alt_b, printed=True)}),
    Identity("CONV_SUM", "[r+s n] = sum e1^(k(s-n+k)) e2^((n-k)(r-k)) [r k][s n-k]", CheckMode.EXACT,
             _g(r=(1, 6), s=(1, 6), n=(0, 8)), _conv_sum),
    Identity("CONV_SYM", "sum e1^(k(m+k)) e2^((r-k)(r-k-m)) [r k][r k+m] = [2r r+m]", CheckMode.EXACT,
             _g(r=(0, 6), m=(0, 6)), _conv_sym, constraint=lambda c: c["m"] <= c["r"]),
    Identity("CONV_SQUARE", "sum e1^(k^2) e2^((r-k)^2) [r k]^2 = [2r r]", CheckMode.EXACT,
             _g(r=(0, 7)), _conv_square),
    Identity("NEG_CONV", "[r+s+n-1 n] = sum e1^(ks) e2^(r(n-k)) [r+k-1 k][s+n-k-1 n-k]", CheckMode.EXACT,
             _g(r=(1, 5), s=(1, 5), n=(0, 6)), _neg_conv,
             variants={"printed_exponents": partial(_neg_conv, printed=True)}),
    Identity("SPLIT_BINOMIAL", "[n m] = sum_r e1^((r-k)(m-k+1)) e2^(k(n-r-m+k)) [r-1 k-1][n-r m-k]",
             CheckMode.EXACT, _g(n=(1, 8), m=(1, 8), k=(1, 8)), _split_binomial,
             constraint=lambda c: c["k"] <= c["m"] <= c["n"],
             variants={"printed_exponents": partial(_split_binomial, printed=True)}),
]

_BY_TOKEN: Dict[str, Identity] = {identity.token: identity for identity in _REGISTRY}


def list_identities() -> List[Tuple[str, str, CheckMode]]:
    """(token, equation label, mode) for every registered identity, in audit order."""
    return [(i.token, i.ref, i.mode) for i in _REGISTRY]


def default_grids() -> Dict[str, Grid]:
    return {i.token: i.grid for i in _REGISTRY}


def lookup(token: str) -> Identity:
    try:
        return _BY_TOKEN[token]
    except KeyError:
        raise DomainViolation(f"unknown identity token: {token}") from None


def _require_convergent(d: Deformation, token: str) -> None:
    if abs(d.theta) >= 1:
        raise DomainViolation(
            f"{token} needs |eps2/eps1| < 1, got {fmt(d.theta)}"
        )


def check_identity(token: str,
                   d: Deformation,
                   grid: Optional[Grid] = None,
                   *,
                   mode: Optional[CheckMode] = None,
                   settings: Optional[Settings] = None) -> CheckReport:
    """
    Verify one registered identity over a grid.

    Args:
        token: registry token, e.g. "VANDERMONDE_1"
        d: deformation to evaluate under
        grid: parameter grid (defaults to the registry grid)
        mode: requested check mode; EXACT on a series token is refused
        settings: tolerance, horizons and precision for NUMERIC tokens

    Returns:
        CheckReport with exact counterexamples on failure
    """
    identity = lookup(token)
    if mode is CheckMode.EXACT and identity.mode is CheckMode.NUMERIC:
        raise NonTerminatingSeries(f"{token} is an infinite series and has no exact check")
    settings = settings or load_settings()
    grid = grid or identity.grid

    cells = [c for c in grid.cells() if identity.constraint(c)]
    for cell in cells:
        if not identity.domain(cell):
            raise DomainViolation(f"{token} is not defined at {cell}")

    equal = exact_equal
    sides, corrected, variants = identity.sides, identity.unit_corrected, dict(identity.variants)
    if identity.mode is CheckMode.NUMERIC:
        _require_convergent(d, token)
        for x in grid.samples:
            if not 0 < abs(x) < 1:
                raise DomainViolation(f"{token} needs 0 < |x| < 1, got {fmt(x)}")
        equal = numeric_equal(settings.tolerance, settings.dps)
        sides = partial(sides, settings=settings)
        variants = {name: partial(fn, settings=settings) for name, fn in variants.items()}

    logger.debug("checking %s over %d cells", token, len(cells))
    return verify(
        token,
        identity.label,
        identity.mode,
        cells,
        lambda c: sides(d, c),
        unit_corrected=(lambda c: corrected(d, c)) if corrected else None,
        variants={name: (lambda c, fn=fn: fn(d, c)) for name, fn in variants.items()},
        equal=equal,
        deformation=d,
        grid=grid,
        ref=identity.ref,
    )


def check_or_skip(token: str, d: Deformation, grid: Grid, settings: Settings) -> CheckReport:
    try:
        return check_identity(token, d, grid, settings=settings)
    except DomainViolation as exc:
        logger.warning("%s skipped: %s", token, exc)
        identity = lookup(token)
        return CheckReport(token, identity.label, identity.mode, Status.SKIPPED,
                           variants={"reason": str(exc)}, deformation=d.summary(),
                           grid=grid.to_dict(), ref=identity.ref)


def check_all(d: Deformation,
              grids: Optional[Dict[str, Grid]] = None,
              *,
              settings: Optional[Settings] = None,
              workers: int = 1) -> List[CheckReport]:
    """One report per registry token, in list_identities() order."""
    settings = settings or load_settings()
    chosen = default_grids()
    chosen.update(grids or {})
    tokens = [i.token for i in _REGISTRY]

    def run(token: str) -> CheckReport:
        return check_or_skip(token, d, chosen[token], settings)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run, tokens))
    return [run(token) for token in tokens]
