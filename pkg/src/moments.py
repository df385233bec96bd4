"""
Deformed factorial and binomial moments of finite-support distributions,
the deformed mean and variance, the passage to classical moments through
first-kind Stirling numbers, and the exact recovery of a distribution from
its binomial moments.
"""

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Tuple

from deformation import Deformation, as_scalar, binom2, fmt
from errors import InconsistentMoments, NegativeArgument
from identities import CheckMode, CheckReport, verify
from stirling import StirlingConfig, stirling_first

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiscreteDistribution:
    """Exact probabilities on nonnegative integers; zero entries are dropped."""

    probs: Dict[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {}
        for x, p in self.probs.items():
            x, p = int(x), as_scalar(p)
            if x < 0:
                raise NegativeArgument(f"support point {x} is negative")
            if p < 0:
                raise InconsistentMoments(f"probability at {x} is negative: {fmt(p)}")
            if p:
                cleaned[x] = p
        total = sum(cleaned.values(), Fraction(0))
        if total != 1:
            raise InconsistentMoments(f"probabilities sum to {fmt(total)}, not 1")
        object.__setattr__(self, "probs", dict(sorted(cleaned.items())))

    @classmethod
    def point_mass(cls, x: int) -> "DiscreteDistribution":
        return cls({x: Fraction(1)})

    @classmethod
    def uniform(cls, support) -> "DiscreteDistribution":
        points = sorted(set(support))
        return cls({x: Fraction(1, len(points)) for x in points})

    @classmethod
    def from_dict(cls, payload: Dict) -> "DiscreteDistribution":
        """Accepts {"probs": {"0": "1/2", "1": "1/2"}}."""
        try:
            return cls({int(x): as_scalar(p) for x, p in payload["probs"].items()})
        except (KeyError, AttributeError, ValueError) as exc:
            raise InconsistentMoments(f"malformed distribution: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "DiscreteDistribution":
        return cls.from_dict(json.loads(text))

    @property
    def max_support(self) -> int:
        return max(self.probs) if self.probs else 0

    def expect(self, f) -> Fraction:
        return sum((p * f(x) for x, p in self.probs.items()), Fraction(0))

    def to_dict(self) -> Dict[str, Dict[str, str]]:
        return {"probs": {str(x): fmt(p) for x, p in self.probs.items()}}


class MomentKind(Enum):
    FACTORIAL = "factorial"
    BINOMIAL = "binomial"


@dataclass(frozen=True)
class MomentVector:
    """Moments of orders 0..len-1."""

    kind: MomentKind
    values: Tuple[Fraction, ...]

    def __getitem__(self, r: int) -> Fraction:
        return self.values[r] if 0 <= r < len(self.values) else Fraction(0)

    def to_dict(self) -> Dict[str, object]:
        return {"kind": self.kind.value, "order": {str(r): fmt(v) for r, v in enumerate(self.values)}}


def _check_order(r: int) -> None:
    if r < 0:
        raise NegativeArgument(f"moment order {r}")


def deformed_factorial_moment(d: Deformation, dist: DiscreteDistribution, r: int) -> Fraction:
    """E([X]_r)."""
    _check_order(r)
    return dist.expect(lambda x: d.ordered_factorial(x, r))


def deformed_binomial_moment(d: Deformation, dist: DiscreteDistribution, r: int) -> Fraction:
    """E([X over r])."""
    _check_order(r)
    return dist.expect(lambda x: d.binomial(x, r))


def binomial_moment_vector(d: Deformation, dist: DiscreteDistribution) -> MomentVector:
    values = tuple(deformed_binomial_moment(d, dist, r) for r in range(dist.max_support + 1))
    return MomentVector(MomentKind.BINOMIAL, values)


def factorial_moment_vector(d: Deformation, dist: DiscreteDistribution) -> MomentVector:
    values = tuple(deformed_factorial_moment(d, dist, r) for r in range(dist.max_support + 1))
    return MomentVector(MomentKind.FACTORIAL, values)


def variance_decomposition(d: Deformation, dist: DiscreteDistribution) -> Fraction:
    """eps2 E([X]_2) + unit E(eps1^(X-1) [X]) - E([X])^2."""
    mu = dist.expect(d.number)
    mixed = dist.expect(lambda x: d.eps1 ** (x - 1) * d.number(x))
    return d.eps2 * deformed_factorial_moment(d, dist, 2) + d.unit * mixed - mu ** 2


def deformed_mean_variance(d: Deformation, dist: DiscreteDistribution) -> Tuple[Fraction, Fraction]:
    """
    Deformed mean E([X]) and variance E([X]^2) - E([X])^2.

    Raises:
        InconsistentMoments: the variance disagrees with its decomposition
            through E([X]_2)
    """
    mu = dist.expect(d.number)
    sigma2 = dist.expect(lambda x: d.number(x) ** 2) - mu ** 2
    decomposed = variance_decomposition(d, dist)
    if decomposed != sigma2:
        raise InconsistentMoments(f"variance {fmt(sigma2)} differs from its decomposition {fmt(decomposed)}")
    return mu, sigma2


def classical_moments_from_deformed(d: Deformation, dist: DiscreteDistribution, j: int,
                                    tau: int = 0, unit_corrected: bool = False,
                                    pulled_out: bool = False) -> Tuple[Fraction, Fraction]:
    """
    Classical binomial and factorial moments of order j rebuilt from the
    deformed binomial moments, with E[(X)_j] = j! E[C(X, j)].

    By default the eps1 grading stays inside the expectation; with
    `unit_corrected` that form is exact for every deformation. With
    `pulled_out` the grading is taken out of it:

        E[C(X, j)] = sum_m (-1)^(m-j) (eps1-eps2)^(m-j) eps1^(C(m,2)-tau(m-j)) s(m,j) E([X over m])

    which is exact only when eps1 = 1. With `unit_corrected` each step
    (eps1-eps2) is divided by the unit.
    """
    if j < 1:
        raise NegativeArgument(f"classical moment order must be at least 1, got {j}")
    if not pulled_out:
        binomial = _graded_binomial_moment(d, dist, j, tau, unit_corrected)
        return binomial, factorial(j) * binomial
    a, b, unit = d.eps1, d.eps2, d.unit
    step = (a - b) / unit if unit_corrected else a - b
    cfg = StirlingConfig(d, 0, tau)
    binomial = Fraction(0)
    for m in range(j, dist.max_support + 1):
        binomial += ((-1) ** (m - j) * step ** (m - j) * a ** (binom2(m) - tau * (m - j))
                     * stirling_first(cfg, m, j) * deformed_binomial_moment(d, dist, m))
    return binomial, factorial(j) * binomial


def _graded_binomial_moment(d: Deformation, dist: DiscreteDistribution, j: int, tau: int,
                            unit_corrected: bool = False) -> Fraction:
    # The eps1 grading depends on the value x, so it stays inside the expectation.
    a, b, unit = d.eps1, d.eps2, d.unit
    step = (a - b) / unit if unit_corrected else a - b
    cfg = StirlingConfig(d, 0, tau)

    def inner(x: int) -> Fraction:
        return sum(
            ((-1) ** (m - j) * step ** (m - j) * a ** (-tau * (m - j) - m * (x - m))
             * stirling_first(cfg, m, j) * d.binomial(x, m) for m in range(j, x + 1)),
            Fraction(0),
        )

    return dist.expect(inner)


def classical_bridge_report(d: Deformation, dist: DiscreteDistribution, j_max: int = 6,
                            tau: int = 0) -> CheckReport:
    """
    Rebuilt classical moments against sum_x C(x, j) g(x), for j = 1..j_max.

    The primary form keeps the value-dependent eps1 grading inside the
    expectation; the form with the grading pulled out is stored as the
    "pulled_out" variant (exact when eps1 = 1).
    """
    cells = [{"j": j} for j in range(1, j_max + 1)]

    def direct(j: int) -> Fraction:
        return dist.expect(lambda x: Fraction(comb(x, j)))

    report = verify(
        "CLASSICAL_MOMENTS", "E[C(X,j)] through s(m,j) and deformed binomial moments",
        CheckMode.EXACT, cells,
        lambda c: (_graded_binomial_moment(d, dist, c["j"], tau), direct(c["j"])),
        unit_corrected=lambda c: (_graded_binomial_moment(d, dist, c["j"], tau, True), direct(c["j"])),
        variants={"pulled_out": lambda c: (
            classical_moments_from_deformed(d, dist, c["j"], tau, True, pulled_out=True)[0], direct(c["j"]))},
        deformation=d,
    )
    report.grid = {"j": [1, j_max], "tau": tau, "distribution": dist.to_dict()["probs"]}
    return report


def distribution_from_binomial_moments(d: Deformation, mv: MomentVector) -> DiscreteDistribution:
    """
    Recover g from E([X over m]), m = 0..M.

    With eps1 = 1 the alternating sum g(x) = sum_m (-1)^(m-x) eps2^C(m-x,2) [m over x] E_m
    applies; otherwise the triangular system E_x = sum_y [y over x] g(y) is solved
    from the top order down.

    Raises:
        InconsistentMoments: wrong moment kind, or the recovered values are
            not a probability distribution
    """
    if mv.kind is not MomentKind.BINOMIAL:
        raise InconsistentMoments(f"expected binomial moments, got {mv.kind.value}")
    top = len(mv.values) - 1
    g: Dict[int, Fraction] = {}
    if d.eps1 == 1:
        for x in range(top + 1):
            g[x] = sum(
                ((-1) ** (m - x) * d.eps2 ** binom2(m - x) * d.binomial(m, x) * mv[m] for m in range(x, top + 1)),
                Fraction(0),
            )
    else:
        for x in range(top, -1, -1):
            g[x] = mv[x] - sum((d.binomial(y, x) * g[y] for y in range(x + 1, top + 1)), Fraction(0))
    logger.debug("recovered distribution on 0..%d", top)
    return DiscreteDistribution(g)


def _printed_inversion(d: Deformation, mv: MomentVector) -> Dict[int, Fraction]:
    top = len(mv.values) - 1
    return {
        x: sum(
            ((-1) ** (m - x) * d.eps1 ** binom2(x) * d.eps2 ** binom2(m - x) * d.binomial(m, x) * mv[m]
             for m in range(x, top + 1)),
            Fraction(0),
        )
        for x in range(top + 1)
    }


def inversion_report(d: Deformation, dist: DiscreteDistribution) -> CheckReport:
    """
    Round trip distribution -> binomial moments -> distribution.

    The printed alternating sum with its eps1^C(x,2) factor is stored as the
    "printed_alternating_sum" variant.
    """
    mv = binomial_moment_vector(d, dist)
    solved = distribution_from_binomial_moments(d, mv).probs
    printed = _printed_inversion(d, mv)
    cells = [{"x": x} for x in range(len(mv.values))]

    def target(c) -> Fraction:
        return dist.probs.get(c["x"], Fraction(0))

    report = verify(
        "MOMENT_INVERSION", "g(x) recovered exactly from E([X over m]), m = 0..max support",
        CheckMode.EXACT, cells,
        lambda c: (solved.get(c["x"], Fraction(0)), target(c)),
        variants={"printed_alternating_sum": lambda c: (printed[c["x"]], target(c))},
        deformation=d,
    )
    report.grid = {"distribution": dist.to_dict()["probs"]}
    return report
