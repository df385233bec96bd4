#!/usr/bin/env python3
"""
Tests for noncentral deformed Stirling numbers and their audits.
"""

import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "src"))

import pytest

from config import Settings
from deformation import make_deformation
from errors import DomainViolation, NegativeArgument
from identities import Status
from poly_series import Polynomial
from stirling import (
    StirlingConfig,
    StirlingKind,
    classical_binomial_bridge,
    expand_factorial_in_powers,
    expand_powers_in_factorials,
    explicit_audit,
    explicit_stirling,
    genfunc_audit,
    genfunc_second,
    reciprocal_expansions,
    signless_audit,
    signless_first,
    special_first_column,
    stirling_audit,
    stirling_first,
    stirling_orthogonality,
    stirling_second,
    stirling_triangle,
)

Q_HALF = make_deformation("q", 1, "1/2")
PQ = make_deformation("pq", "3/4", "1/2")
CENTRAL_Q = StirlingConfig(Q_HALF)
SETTINGS = Settings()


def test_table_values():
    """Test 1: Small first- and second-kind values under q = 1/2."""
    print("\n" + "="*60)
    print("TEST 1: Table Values")
    print("="*60)

    assert stirling_first(CENTRAL_Q, 2, 1) == -1
    assert stirling_first(CENTRAL_Q, 3, 2) == Fraction(-5, 2)
    assert stirling_first(CENTRAL_Q, 3, 1) == Fraction(3, 2)
    assert stirling_second(CENTRAL_Q, 3, 2) == Fraction(5, 2)
    assert stirling_second(CENTRAL_Q, 4, 4) == 1
    assert stirling_first(CENTRAL_Q, 3, 0) == 0
    assert stirling_second(CENTRAL_Q, 2, 5) == 0
    print("  [OK] s(2,1) = -1, s(3,2) = -5/2, S(3,2) = 5/2")

    noncentral = StirlingConfig(Q_HALF, j=1)
    assert stirling_second(noncentral, 1, 0) == 1
    assert stirling_second(noncentral, 2, 1) == Fraction(5, 2)
    assert stirling_first(noncentral, 1, 0) == -1
    assert stirling_first(noncentral, 1, 1) == 1
    print("  [OK] noncentral boundary values")

    triangle = stirling_triangle(CENTRAL_Q, StirlingKind.SECOND, 3)
    assert [len(row) for row in triangle] == [1, 2, 3, 4]
    with pytest.raises(NegativeArgument):
        stirling_first(CENTRAL_Q, -1, 0)
    print("  [OK] triangle shape and negative indices")


def test_q_stirling_system():
    """Test 2: Classical q-Stirling numbers solve the triangular systems."""
    print("\n" + "="*60)
    print("TEST 2: q-Stirling Triangular Systems")
    print("="*60)

    # x^n = sum_k S(n,k) prod_{i<k} (x - [i]) defines the classical q-Stirling
    # numbers of the second kind.
    for n in range(6):
        lhs = Polynomial.monomial(n)
        rhs = Polynomial()
        for k in range(n + 1):
            falling = Polynomial.of(1)
            for i in range(k):
                falling = falling * Polynomial.of(-Q_HALF.number(i), 1)
            rhs = rhs + falling.scale(stirling_second(CENTRAL_Q, n, k))
        assert lhs == rhs, f"n={n}"
    print("  [OK] powers expand in q-falling factorials")

    for n in range(6):
        for x in range(6):
            lhs, rhs = expand_factorial_in_powers(StirlingConfig(Q_HALF, 0, x), n, x)
            assert lhs == rhs
    lhs, rhs = expand_factorial_in_powers(CENTRAL_Q, 2, 3)
    assert lhs == rhs == Fraction(21, 8)
    lhs, rhs = expand_powers_in_factorials(CENTRAL_Q, 2, 3)
    assert lhs == rhs == Fraction(49, 16)
    print("  [OK] [3]_2 = 21/8 and [3]^2 = 49/16 through the tables")


def test_orthogonality():
    """Test 3: First- and second-kind tables are inverse."""
    print("\n" + "="*60)
    print("TEST 3: Orthogonality")
    print("="*60)

    for j in (0, 1, 2):
        report = stirling_orthogonality(StirlingConfig(Q_HALF, j, 3))
        assert report.status is Status.PASS, report.counterexamples
        print(f"  [OK] q = 1/2, j = {j}: {report.cells} cells")

    for tau in (0, 2):
        report = stirling_orthogonality(StirlingConfig(PQ, 0, tau))
        assert report.status is Status.PASS, report.counterexamples
    print("  [OK] pq(3/4, 1/2), j = 0")


def test_explicit_sums_and_columns():
    """Test 4: Explicit alternating sums and the first two columns."""
    print("\n" + "="*60)
    print("TEST 4: Explicit Sums and Columns")
    print("="*60)

    assert explicit_stirling(CENTRAL_Q, StirlingKind.FIRST, 2, 1, 0) == -1
    assert explicit_stirling(CENTRAL_Q, StirlingKind.SECOND, 3, 2, 0) == Fraction(5, 2)
    with pytest.raises(DomainViolation):
        explicit_stirling(CENTRAL_Q, StirlingKind.FIRST, 2, 0, 0)
    print("  [OK] explicit values and domain")

    for cfg in (CENTRAL_Q, StirlingConfig(Q_HALF, 1, 0), StirlingConfig(PQ, 0, 2)):
        report = explicit_audit(cfg)
        assert report.status is Status.PASS, report.counterexamples
    print("  [OK] explicit audit under q (j = 0, 1) and pq (tau = 2)")

    assert special_first_column(CENTRAL_Q, 3, 1) == Fraction(3, 2)
    assert special_first_column(CENTRAL_Q, 3, 2) == Fraction(-5, 2)
    with pytest.raises(DomainViolation):
        special_first_column(StirlingConfig(Q_HALF, 1), 3, 1)
    with pytest.raises(DomainViolation):
        special_first_column(CENTRAL_Q, 1, 2)
    print("  [OK] s(3,1) = 3/2 and s(3,2) = -5/2 in closed form")


def test_generating_function():
    """Test 5: Second-kind generating function."""
    print("\n" + "="*60)
    print("TEST 5: Generating Function")
    print("="*60)

    series = genfunc_second(CENTRAL_Q, 1, 3)
    assert series.coefficients == (0, 1, 1, 1)
    series = genfunc_second(StirlingConfig(Q_HALF, 1), 0, 3)
    assert series.coefficients == (1, 1, 1, 1)
    print("  [OK] k = 1 gives v + v^2 + v^3; j = 1, k = 0 gives 1 + v + v^2 + v^3")

    series = genfunc_second(CENTRAL_Q, 2, 3)
    assert series[3] == stirling_second(CENTRAL_Q, 3, 2) == Fraction(5, 2)
    for cfg in (CENTRAL_Q, StirlingConfig(Q_HALF, 2, 0), StirlingConfig(PQ, 2, 1), StirlingConfig(PQ, 1, 3)):
        report = genfunc_audit(cfg, 12)
        assert report.status is Status.PASS, report.counterexamples
    print("  [OK] coefficients match the table to order 12")

    graded = StirlingConfig(PQ, 2, 1)
    assert genfunc_second(graded, 0, 2)[1] == stirling_second(graded, 1, 0) == Fraction(5, 4)
    assert genfunc_audit(graded, 8).variants["printed_leading_factor"].startswith("FAIL")
    assert genfunc_audit(CENTRAL_Q, 8).variants["printed_leading_factor"] == "PASS"
    print("  [OK] column 0 grows like [j]^n; an eps1^tau leading factor only fits eps1 = 1")


def test_signless_and_bridge():
    """Test 6: Signless first-kind numbers and the classical bridge."""
    print("\n" + "="*60)
    print("TEST 6: Signless Numbers and Classical Bridge")
    print("="*60)

    assert signless_first(CENTRAL_Q, 2, 1) == Fraction(1, 2)
    assert signless_first(CENTRAL_Q, 1, 3) == 0
    for cfg in (CENTRAL_Q, StirlingConfig(PQ, 1, 0)):
        assert signless_audit(cfg, 6).status is Status.PASS
    print("  [OK] signless values are nonnegative")

    to_classical, from_classical = classical_binomial_bridge(CENTRAL_Q, 3, 1)
    assert to_classical.passed and from_classical.passed
    assert to_classical.cells == 1
    with pytest.raises(DomainViolation):
        classical_binomial_bridge(CENTRAL_Q, 0, 1)
    print("  [OK] C(3,1) = 3 recovered through s(m,1)")


def test_reciprocal_expansions():
    """Test 7: Reciprocal factorial and reciprocal power expansions."""
    print("\n" + "="*60)
    print("TEST 7: Reciprocal Expansions")
    print("="*60)

    for t in (2, 3):
        report = reciprocal_expansions(CENTRAL_Q, 1, t, SETTINGS)
        assert report.status is Status.PASS, report.counterexamples
        assert report.cells == 2
        assert report.variants["signless_first_kind"].startswith("FAIL")
    print("  [OK] q = 1/2, k = 1, t = 2 and 3; sign-stripped coefficients do not invert")

    report = reciprocal_expansions(StirlingConfig(PQ), 1, 2, SETTINGS)
    assert report.status is Status.PASS, report.counterexamples
    print("  [OK] pq(3/4, 1/2), k = 1, t = 2")

    # Ratio [2]/[3] = 6/7: well past 64 terms before 1e-9 is reached.
    report = reciprocal_expansions(StirlingConfig(Q_HALF, 1), 1, 3, SETTINGS)
    assert report.status is Status.PASS, report.counterexamples
    print("  [OK] j = 1, t = 3 converges within tolerance")

    with pytest.raises(DomainViolation):
        reciprocal_expansions(CENTRAL_Q, 2, 2, SETTINGS)
    with pytest.raises(DomainViolation):
        reciprocal_expansions(StirlingConfig(Q_HALF, 1), 1, 2, SETTINGS)
    print("  [OK] t <= k + j rejected")


def test_stirling_audit():
    """Test 8: Aggregated audit under q and pq."""
    print("\n" + "="*60)
    print("TEST 8: Stirling Audit")
    print("="*60)

    for cfg in (StirlingConfig(Q_HALF), StirlingConfig(PQ), StirlingConfig(Q_HALF, 1)):
        reports = stirling_audit(cfg, 5, SETTINGS)
        assert len(reports) == 11
        failed = [r.identity for r in reports if r.status is Status.FAIL]
        assert failed == [], f"{cfg.d.kind.value}, j={cfg.j}: {failed}"
        print(f"  [OK] {cfg.d.kind.value}, j = {cfg.j}: {len(reports)} reports, none failed")


def run_all_tests():
    """Run all Stirling tests."""
    print("\n" + "="*30)
    print("STIRLING NUMBER TEST SUITE")
    print("="*30)

    tests = [
        test_table_values,
        test_q_stirling_system,
        test_orthogonality,
        test_explicit_sums_and_columns,
        test_generating_function,
        test_signless_and_bridge,
        test_reciprocal_expansions,
        test_stirling_audit,
    ]
    tests_passed = 0
    for test in tests:
        try:
            test()
            tests_passed += 1
        except Exception as e:
            print(f"\n[X] {test.__name__} failed: {e}")

    print("\n" + "="*60)
    print(f"RESULTS: {tests_passed}/{len(tests)} tests passed")
    print("="*60)
    return tests_passed == len(tests)


if __name__ == "__main__":
    success = run_all_tests()
    sys.exit(0 if success else 1)
