"""
Noncentral deformed Stirling numbers of the first and second kinds.

Tables are built row by row from the triangular recursions

    s(n+1, k) = s(n, k-1) - eps1^(tau-n-j) [n+j] s(n, k)
    S(n+1, k) = S(n, k-1) + eps1^(tau-k)   [k+j] S(n, k)

with j the noncentrality and tau the grading exponent. When eps1 = 1, tau has
no effect and the classical q-Stirling numbers come out.

The rest of the module evaluates the closed forms built on these tables and
audits them against the recursion: the defining expansions, orthogonality,
explicit sums, generating functions, reciprocal expansions, the bridge to
classical binomials, the first two columns and signless values.
"""

import logging
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Iterator, List, Optional, Tuple

from config import Settings, load_settings
from deformation import Deformation, binom2
from errors import DomainViolation, NegativeArgument
from identities import CheckMode, CheckReport, numeric_equal, verify
from poly_series import PowerSeries, linear_product

logger = logging.getLogger(__name__)

# Slowly converging reciprocal series may run this many horizons before giving up.
MAX_HORIZON_FACTOR = 16


class StirlingKind(Enum):
    FIRST = "first"
    SECOND = "second"


@dataclass(frozen=True)
class StirlingConfig:
    """Deformation, noncentrality j and grading exponent tau of one table."""

    d: Deformation
    j: int = 0
    tau: int = 0


@dataclass(frozen=True)
class StirlingTable:
    kind: StirlingKind
    config: StirlingConfig
    rows: Tuple[Tuple[Fraction, ...], ...]

    @property
    def n_max(self) -> int:
        return len(self.rows) - 1

    def entry(self, n: int, kappa: int) -> Fraction:
        if kappa < 0 or kappa > n:
            return Fraction(0)
        return self.rows[n][kappa]


def _first_boundary(cfg: StirlingConfig, n: int) -> Fraction:
    d, j = cfg.d, cfg.j
    return d.eps2 ** (binom2(n) + j * n) * d.ordered_factorial(-j, n)


@lru_cache(maxsize=256)
def build_table(cfg: StirlingConfig, kind: StirlingKind, n_max: int) -> StirlingTable:
    """All rows n = 0..n_max of one kind for one configuration."""
    if n_max < 0:
        raise NegativeArgument(f"table size {n_max}")
    d, j, tau = cfg.d, cfg.j, cfg.tau
    rows: List[Tuple[Fraction, ...]] = [(Fraction(1),)]
    for n in range(n_max):
        prev = rows[-1]
        at = lambda k: prev[k] if 0 <= k <= n else Fraction(0)
        if kind is StirlingKind.FIRST:
            weight = d.eps1 ** (tau - n - j) * d.number(n + j)
            row = [_first_boundary(cfg, n + 1)]
            row += [at(k - 1) - weight * at(k) for k in range(1, n + 2)]
        else:
            row = [d.number(j) ** (n + 1)]
            row += [at(k - 1) + d.eps1 ** (tau - k) * d.number(k + j) * at(k) for k in range(1, n + 2)]
        rows.append(tuple(row))
    logger.debug("built %s table to n=%d (j=%d, tau=%d)", kind.value, n_max, j, tau)
    return StirlingTable(kind, cfg, tuple(rows))


def _check_indices(n: int, kappa: int) -> None:
    if n < 0 or kappa < 0:
        raise NegativeArgument(f"Stirling indices must be nonnegative, got ({n}, {kappa})")


def stirling_first(cfg: StirlingConfig, n: int, kappa: int) -> Fraction:
    _check_indices(n, kappa)
    return build_table(cfg, StirlingKind.FIRST, n).entry(n, kappa)


def stirling_second(cfg: StirlingConfig, n: int, kappa: int) -> Fraction:
    _check_indices(n, kappa)
    return build_table(cfg, StirlingKind.SECOND, n).entry(n, kappa)


def stirling(cfg: StirlingConfig, kind: StirlingKind, n: int, kappa: int) -> Fraction:
    if kind is StirlingKind.FIRST:
        return stirling_first(cfg, n, kappa)
    return stirling_second(cfg, n, kappa)


def stirling_triangle(cfg: StirlingConfig, kind: StirlingKind, n_max: int) -> List[List[Fraction]]:
    return [list(row) for row in build_table(cfg, kind, n_max).rows]


# ---------------------------------------------------------------------------
# Defining expansions
# ---------------------------------------------------------------------------


def expand_factorial_in_powers(cfg: StirlingConfig, n: int, x: int) -> Tuple[Fraction, Fraction]:
    """
    Both sides of [x-j]_n = eps2^(-C(n,2)-jn) sum_k s(n,k;j) [x]^k.

    With eps1 != 1 the expansion needs cfg.tau == x.
    """
    d, j = cfg.d, cfg.j
    table = build_table(cfg, StirlingKind.FIRST, n)
    power = d.number(x)
    rhs = sum((table.entry(n, k) * power ** k for k in range(n + 1)), Fraction(0))
    return d.ordered_factorial(x - j, n), d.eps2 ** (-binom2(n) - j * n) * rhs


def expand_powers_in_factorials(cfg: StirlingConfig, n: int, x: int,
                                shifted: bool = False) -> Tuple[Fraction, Fraction]:
    """
    Both sides of [x]^n = sum_k eps2^(C(k,2)+jk) S(n,k;j) [x-j]_k, or with
    `shifted` the form [x+j]^n = sum_k eps2^(C(k,2)+jk) S(n,k;j) [x]_k.

    With eps1 != 1 the unshifted form needs cfg.tau == x - j, the shifted one
    cfg.tau == x.
    """
    d, j = cfg.d, cfg.j
    table = build_table(cfg, StirlingKind.SECOND, n)
    base = x if shifted else x - j
    lhs = d.number(x + j if shifted else x) ** n
    rhs = sum(
        (d.eps2 ** (binom2(k) + j * k) * table.entry(n, k) * d.ordered_factorial(base, k) for k in range(n + 1)),
        Fraction(0),
    )
    return lhs, rhs


def expansion_audit(cfg: StirlingConfig, n_max: int = 6,
                    x_values: Optional[List[int]] = None) -> List[CheckReport]:
    """
    Audit the three defining expansions cell by cell.

    The grading tau is aligned with x in every cell; whether the expansion
    also holds at the configured tau is stored as the "configured_tau" variant.
    """
    j = cfg.j
    x_values = list(x_values) if x_values is not None else list(range(j, j + 7))
    cells = [{"n": n, "x": x} for x in x_values for n in range(n_max + 1)]
    grid = {"n": [0, n_max], "x": x_values}

    forms = [
        ("FACTORIAL_TO_POWERS", "[x-j]_n = eps2^(-C(n,2)-jn) sum s(n,k;j) [x]^k",
         lambda c, cf: expand_factorial_in_powers(cf, c["n"], c["x"]), lambda x: x),
        ("POWERS_TO_FACTORIALS", "[x]^n = sum eps2^(C(k,2)+jk) S(n,k;j) [x-j]_k",
         lambda c, cf: expand_powers_in_factorials(cf, c["n"], c["x"]), lambda x: x - j),
        ("SHIFTED_POWERS_TO_FACTORIALS", "[x+j]^n = sum eps2^(C(k,2)+jk) S(n,k;j) [x]_k",
         lambda c, cf: expand_powers_in_factorials(cf, c["n"], c["x"], shifted=True), lambda x: x),
    ]
    reports = []
    for token, label, sides, tau_for in forms:
        report = verify(
            token, label, CheckMode.EXACT, cells,
            lambda c, sides=sides, tau_for=tau_for: sides(c, replace(cfg, tau=tau_for(c["x"]))),
            variants={"configured_tau": lambda c, sides=sides: sides(c, cfg)},
            deformation=cfg.d,
        )
        report.grid = dict(grid, j=j)
        reports.append(report)
    return reports


# ---------------------------------------------------------------------------
# Orthogonality
# ---------------------------------------------------------------------------


def stirling_orthogonality(cfg: StirlingConfig, n_max: int = 6) -> CheckReport:
    """Both products of the first- and second-kind tables against the identity."""
    first = build_table(cfg, StirlingKind.FIRST, n_max)
    second = build_table(cfg, StirlingKind.SECOND, n_max)

    def sides(c):
        n, k = c["n"], c["k"]
        left, right = (first, second) if c["order"] == "first_second" else (second, first)
        total = sum((left.entry(n, m) * right.entry(m, k) for m in range(k, n + 1)), Fraction(0))
        return total, Fraction(1 if n == k else 0)

    cells = [
        {"order": order, "n": n, "k": k}
        for order in ("first_second", "second_first")
        for n in range(n_max + 1)
        for k in range(n + 1)
    ]
    report = verify("STIRLING_ORTHOGONALITY", "sum_m s(n,m;j) S(m,k;j) = delta(n,k) and transposed",
                    CheckMode.EXACT, cells, sides, deformation=cfg.d)
    report.grid = {"n": [0, n_max], "k": [0, n_max], "j": cfg.j, "tau": cfg.tau}
    return report


# ---------------------------------------------------------------------------
# Explicit sums
# ---------------------------------------------------------------------------


def explicit_stirling(cfg: StirlingConfig, kind: StirlingKind, n: int, kappa: int, r: int,
                      form: str = "corrected") -> Fraction:
    """
    Closed alternating sum for s(n,k;r) or S(n,k;r) at grading cfg.tau.

    Args:
        cfg: deformation and grading (cfg.j is not used; r is the noncentrality)
        kind: FIRST or SECOND
        n: row, n >= 1
        kappa: column, 1 <= kappa <= n
        r: noncentrality
        form: "corrected" (carries the unit powers and the column-dependent
            eps1 grading) or "printed" (the uncorrected display)

    Returns:
        The exact sum
    """
    if n < 1 or not 1 <= kappa <= n:
        raise DomainViolation(f"explicit Stirling sums need 1 <= k <= n, got n={n}, k={kappa}")
    d, tau = cfg.d, cfg.tau
    a, b, unit = d.eps1, d.eps2, d.unit
    printed = form == "printed"
    total = Fraction(0)

    if kind is StirlingKind.FIRST:
        for i in range(kappa, n + 1):
            total += ((-1) ** (i - kappa) * a ** (binom2(i) - r * (n - i) - kappa * tau)
                      * b ** (binom2(n - i) + r * (n - i)) * d.binomial(n, i) * comb(i, kappa))
        total *= a ** (-binom2(n) + n * tau) / (a - b) ** (n - kappa)
        return total if printed else total * unit ** (n - kappa)

    for i in range(kappa, n + 1):
        if printed:
            exponent = tau * (n - kappa) + r * (n - i) + binom2(kappa)
        else:
            exponent = (tau + r) * (n - kappa) - r * (i - kappa) - kappa * (i - kappa)
        total += ((-1) ** (i - kappa) * a ** exponent * b ** (r * (i - kappa))
                  * comb(n, i) * d.binomial(i, kappa))
    total /= (a - b) ** (n - kappa)
    return total if printed else total * unit ** (n - kappa)


def explicit_audit(cfg: StirlingConfig, n_max: int = 6) -> CheckReport:
    """Explicit sums (noncentrality cfg.j) against the recursion tables."""
    cells = [
        {"kind": kind.value, "n": n, "k": k}
        for kind in StirlingKind
        for n in range(1, n_max + 1)
        for k in range(1, n + 1)
    ]

    def sides(c, form="corrected"):
        kind = StirlingKind(c["kind"])
        return explicit_stirling(cfg, kind, c["n"], c["k"], cfg.j, form), stirling(cfg, kind, c["n"], c["k"])

    report = verify("EXPLICIT_STIRLING", "alternating-sum closed forms of s(n,k;r) and S(n,k;r)",
                    CheckMode.EXACT, cells, sides,
                    variants={"printed_exponents": lambda c: sides(c, "printed")},
                    deformation=cfg.d)
    report.grid = {"n": [1, n_max], "r": cfg.j, "tau": cfg.tau}
    return report


# ---------------------------------------------------------------------------
# Generating functions and reciprocal expansions
# ---------------------------------------------------------------------------


def _gf_rate(cfg: StirlingConfig, i: int, printed: bool = False) -> Fraction:
    d = cfg.d
    if i == 0 and not printed:
        # Column 0 is S(n,0;j) = [j]^n at every grading.
        return d.number(cfg.j)
    return d.eps1 ** (cfg.tau - i) * d.number(cfg.j + i)


def genfunc_second(cfg: StirlingConfig, kappa: int, order: Optional[int] = None,
                   form: str = "corrected") -> PowerSeries:
    """
    v^k (1 - [j] v)^(-1) prod_{i=1..k} (1 - eps1^(tau-i) [j+i] v)^(-1), truncated at v^order.

    Coefficient n equals S(n,k;j) from the same-tau table. The "printed" form
    uses eps1^tau [j] in the i = 0 factor, which agrees only when eps1 = 1 or j = 0.
    """
    if kappa < 0:
        raise NegativeArgument(f"generating function for column {kappa}")
    if order is None:
        order = load_settings().series_order
    printed = form == "printed"
    denominator = linear_product([(Fraction(1), -_gf_rate(cfg, i, printed)) for i in range(kappa + 1)])
    return PowerSeries.from_polynomial(denominator, order).reciprocal().shift(kappa)


def genfunc_audit(cfg: StirlingConfig, n_max: int = 12) -> CheckReport:
    series = {k: genfunc_second(cfg, k, n_max) for k in range(n_max + 1)}
    printed = {k: genfunc_second(cfg, k, n_max, "printed") for k in range(n_max + 1)}
    cells = [{"n": n, "k": k} for k in range(n_max + 1) for n in range(k, n_max + 1)]
    report = verify("SECOND_KIND_GENFUNC",
                    "sum_n S(n,k;j) v^n = v^k (1 - [j] v)^-1 prod (1 - eps1^(tau-i) [j+i] v)^-1",
                    CheckMode.EXACT, cells,
                    lambda c: (series[c["k"]][c["n"]], stirling_second(cfg, c["n"], c["k"])),
                    variants={"printed_leading_factor":
                              lambda c: (printed[c["k"]][c["n"]], stirling_second(cfg, c["n"], c["k"]))},
                    deformation=cfg.d)
    report.grid = {"n": [0, n_max], "j": cfg.j, "tau": cfg.tau}
    return report


def _second_kind_column(cfg: StirlingConfig, kappa: int) -> Iterator[Fraction]:
    """S(n,k;j) for n = 0, 1, 2, ... carrying only columns 0..k of the recursion."""
    rates = [_gf_rate(cfg, i) for i in range(kappa + 1)]
    column = [Fraction(1)] + [Fraction(0)] * kappa
    while True:
        yield column[kappa]
        column = [rates[0] * column[0]] + [column[k - 1] + rates[k] * column[k] for k in range(1, kappa + 1)]


def _reciprocal_factorial_sides(cfg: StirlingConfig, kappa: int, t: int, horizon: int, tolerance: float):
    """
    1/[t-j]_(k+1) against partial sums in reciprocal powers of [t].

    Summation runs past `horizon` until the last term falls below a thousandth
    of the tolerance relative to the sum, capped at MAX_HORIZON_FACTOR * horizon.
    """
    d, j, tau = cfg.d, cfg.j, cfg.tau
    a, b = d.eps1, d.eps2
    shift = t - tau - j
    lhs = a ** (shift * kappa) / d.ordered_factorial(t - j, kappa + 1)
    top = d.number(t)
    ratio = a ** shift / top
    cutoff = Fraction(tolerance) / 1000
    limit = MAX_HORIZON_FACTOR * horizon
    total, scale = Fraction(0), 1 / top
    for n, entry in enumerate(_second_kind_column(cfg, kappa)):
        term = entry * scale
        total += term
        scale *= ratio
        if n >= max(horizon, kappa) and abs(term) <= cutoff * abs(total):
            break
        if n >= limit:
            logger.warning("reciprocal factorial series cut at %d terms (t=%d, k=%d)", n + 1, t, kappa)
            break
    return lhs, b ** (binom2(kappa + 1) + j * (kappa + 1)) * total


def _reciprocal_power_sides(cfg: StirlingConfig, kappa: int, order: int, signless: bool = False):
    """
    v^k = sum_n s(n,k;j) v^n (1 - [j] v)^(-1) prod_{i=1..n} (1 - eps1^(tau-i) [j+i] v)^(-1)
    as truncated series, with s the first-kind numbers graded at tau+j.
    """
    first = build_table(replace(cfg, tau=cfg.tau + cfg.j), StirlingKind.FIRST, order)
    total = PowerSeries((), order)
    for n in range(kappa, order + 1):
        coefficient = first.entry(n, kappa)
        if signless:
            coefficient *= (-1) ** (n - kappa)
        if coefficient == 0:
            continue
        denominator = linear_product([(Fraction(1), -_gf_rate(cfg, i)) for i in range(n + 1)])
        term = PowerSeries.from_polynomial(denominator, order).reciprocal().shift(n)
        total = total + PowerSeries(tuple(coefficient * c for c in term.coefficients), order)
    return PowerSeries.one(order).shift(kappa), total


def reciprocal_expansions(cfg: StirlingConfig, kappa: int, t: int,
                          settings: Optional[Settings] = None) -> CheckReport:
    """
    Reciprocal factorials expanded in reciprocal powers (numerically, at the
    integer t) and reciprocal powers in reciprocal factorials (as formal
    series in v = eps1^(t-tau-j)/[t]).

    The second expansion uses the signed first-kind numbers and holds when
    eps1 = 1 or j = 0; the sign-stripped reading is kept as a variant.

    Raises:
        DomainViolation: t <= k + j
    """
    if kappa < 0:
        raise NegativeArgument(f"column {kappa}")
    if t <= kappa + cfg.j:
        raise DomainViolation(f"reciprocal expansions need t > k + j, got t={t}, k={kappa}, j={cfg.j}")
    settings = settings or load_settings()
    order = max(settings.series_order, kappa)

    def sides(c, signless=False):
        if c["expansion"] == "reciprocal_factorial":
            return _reciprocal_factorial_sides(cfg, kappa, t, settings.horizon, settings.tolerance)
        return _reciprocal_power_sides(cfg, kappa, order, signless)

    cells = [{"expansion": "reciprocal_factorial"}, {"expansion": "reciprocal_power"}]
    report = verify("RECIPROCAL_EXPANSIONS",
                    "1/[t-j]_(k+1) in powers of 1/[t]; 1/[t]^(k+1) in reciprocal factorials",
                    CheckMode.NUMERIC, cells, sides,
                    variants={"signless_first_kind": lambda c: sides(c, signless=True)},
                    equal=numeric_equal(settings.tolerance, settings.dps),
                    deformation=cfg.d)
    report.grid = {"k": kappa, "t": t, "j": cfg.j, "tau": cfg.tau,
                   "horizon": settings.horizon, "order": order}
    return report


# ---------------------------------------------------------------------------
# Bridge to classical binomials
# ---------------------------------------------------------------------------


def _bridge_first(cfg: StirlingConfig, kappa: int, j: int, variant: str) -> Tuple[Fraction, Fraction]:
    d, tau = cfg.d, cfg.tau
    a, b, unit = d.eps1, d.eps2, d.unit
    central = replace(cfg, j=0)
    total = Fraction(0)
    for m in range(j, kappa + 1):
        if variant == "printed":
            power = a ** (binom2(m) - tau * (m - j))
        else:
            power = a ** (-tau * (m - j) - m * (kappa - m))
        step = (a - b) / unit if variant == "corrected" else a - b
        total += (-1) ** (m - j) * step ** (m - j) * power * stirling_first(central, m, j) * d.binomial(kappa, m)
    return Fraction(comb(kappa, j)), total


def _bridge_second(cfg: StirlingConfig, kappa: int, j: int, variant: str) -> Tuple[Fraction, Fraction]:
    d, tau = cfg.d, cfg.tau
    a, b, unit = d.eps1, d.eps2, d.unit
    central = replace(cfg, j=0)
    total = Fraction(0)
    for m in range(j, kappa + 1):
        if variant == "printed":
            power = a ** (-binom2(j) - tau * (m - j))
        else:
            power = a ** (j * (kappa - j) - tau * (m - j))
        step = (a - b) / unit if variant == "corrected" else a - b
        total += (-1) ** (m - j) * step ** (m - j) * power * stirling_second(central, m, j) * comb(kappa, m)
    return d.binomial(kappa, j), total


def _bridge_reports(cfg: StirlingConfig, cells: List[Dict[str, int]]) -> Tuple[CheckReport, CheckReport]:
    reports = []
    for token, label, sides in (
        ("BRIDGE_TO_CLASSICAL", "C(k,j) = sum (-1)^(m-j) (eps1-eps2)^(m-j) eps1^(...) s(m,j) [k m]", _bridge_first),
        ("BRIDGE_FROM_CLASSICAL", "[k j] = sum (-1)^(m-j) (eps1-eps2)^(m-j) eps1^(...) S(m,j) C(k,m)", _bridge_second),
    ):
        reports.append(verify(
            token, label, CheckMode.EXACT, cells,
            lambda c, sides=sides: sides(cfg, c["k"], c["j"], "unit_free"),
            unit_corrected=lambda c, sides=sides: sides(cfg, c["k"], c["j"], "corrected"),
            variants={"printed_exponents": lambda c, sides=sides: sides(cfg, c["k"], c["j"], "printed")},
            deformation=cfg.d,
        ))
    return reports[0], reports[1]


def classical_binomial_bridge(cfg: StirlingConfig, kappa: int, j: int) -> Tuple[CheckReport, CheckReport]:
    """Both conversions between C(k, j) and [k j] at one (k, j); tables are central."""
    if kappa < 1 or j < 1:
        raise DomainViolation(f"bridge needs k, j >= 1, got k={kappa}, j={j}")
    return _bridge_reports(cfg, [{"k": kappa, "j": j}])


def bridge_audit(cfg: StirlingConfig, k_max: int = 6) -> Tuple[CheckReport, CheckReport]:
    cells = [{"k": k, "j": j} for k in range(1, k_max + 1) for j in range(1, k + 1)]
    first, second = _bridge_reports(cfg, cells)
    for report in (first, second):
        report.grid = {"k": [1, k_max], "tau": cfg.tau}
    return first, second


# ---------------------------------------------------------------------------
# First two columns, signless numbers
# ---------------------------------------------------------------------------


def special_first_column(cfg: StirlingConfig, u: int, column: int, form: str = "corrected") -> Fraction:
    """
    Closed forms of s(u,1) and s(u,2) for the central table (j = 0).

    Raises:
        DomainViolation: j != 0, column not 1 or 2, or u below the column
    """
    if cfg.j != 0:
        raise DomainViolation("closed column forms are stated for the central table (j = 0)")
    if column not in (1, 2) or u < column:
        raise DomainViolation(f"column {column} needs u >= {column}, got u={u}")
    d, tau = cfg.d, cfg.tau
    a = d.eps1
    bang = d.factorial(u - 1)
    printed = form == "printed"

    if column == 1:
        exponent = tau * u - (u - 1) * (u + 2) // 2 if printed else tau * (u - 1) - binom2(u)
        return (-1) ** (u - 1) * a ** exponent * bang

    if printed:
        zeta = sum((a ** ((m - 1) * (tau + 1)) / d.number(m) for m in range(1, u)), Fraction(0))
        return (-1) ** u * a ** (tau * (u - 2) - (u - 2) * (u + 3) // 2) * bang * zeta
    zeta = sum((a ** (m - tau) / d.number(m) for m in range(1, u)), Fraction(0))
    return (-1) ** u * a ** (tau * (u - 1) - binom2(u)) * bang * zeta


def special_values_audit(cfg: StirlingConfig, u_max: int = 8) -> CheckReport:
    """Closed column forms against the central first-kind table at cfg.tau."""
    central = replace(cfg, j=0)
    cells = [{"column": col, "u": u} for col in (1, 2) for u in range(col, u_max + 1)]

    def sides(c, form="corrected"):
        return (special_first_column(central, c["u"], c["column"], form),
                stirling_first(central, c["u"], c["column"]))

    report = verify("FIRST_KIND_COLUMNS", "s(u,1) and s(u,2) through [u-1]! and a harmonic-type sum",
                    CheckMode.EXACT, cells, sides,
                    variants={"printed_exponents": lambda c: sides(c, "printed")},
                    deformation=cfg.d)
    report.grid = {"u": [1, u_max], "tau": cfg.tau}
    return report


def signless_first(cfg: StirlingConfig, n: int, kappa: int) -> Fraction:
    """(-eps1 eps2)^(n-k) s(n,k;j); zero above the diagonal."""
    if kappa > n:
        return Fraction(0)
    d = cfg.d
    return (-d.eps1 * d.eps2) ** (n - kappa) * stirling_first(cfg, n, kappa)


def signless_audit(cfg: StirlingConfig, n_max: int = 8) -> CheckReport:
    cells = [{"n": n, "k": k} for n in range(n_max + 1) for k in range(n + 1)]
    report = verify(
        "SIGNLESS_FIRST_KIND", "(-eps1 eps2)^(n-k) s(n,k;j) >= 0", CheckMode.EXACT, cells,
        lambda c: (signless_first(cfg, c["n"], c["k"]) >= 0, True),
        variants={"alternating_sign": lambda c: ((-1) ** (c["n"] - c["k"]) * stirling_first(cfg, c["n"], c["k"]) >= 0, True)},
        deformation=cfg.d,
    )
    report.grid = {"n": [0, n_max], "j": cfg.j, "tau": cfg.tau}
    return report


def stirling_audit(cfg: StirlingConfig, n_max: int = 6,
                   settings: Optional[Settings] = None) -> List[CheckReport]:
    """Every Stirling-level audit for one configuration, in a fixed order."""
    settings = settings or load_settings()
    reports = [stirling_orthogonality(cfg, n_max)]
    reports += expansion_audit(cfg, n_max)
    reports.append(explicit_audit(cfg, n_max))
    reports.append(genfunc_audit(cfg, 2 * n_max))
    reports.append(special_values_audit(cfg, n_max + 2))
    reports.append(signless_audit(cfg, n_max + 2))
    reports += list(bridge_audit(cfg, n_max))
    reports.append(reciprocal_expansions(cfg, 1, cfg.j + 2, settings))
    return reports
