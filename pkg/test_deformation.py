#!/usr/bin/env python3
"""
Tests for deformed numbers, factorials and binomials.
Covers the built-in deformations, inversion and ratio maps, and input errors.
"""

import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "src"))

import pytest
from hypothesis import given, settings, strategies as st

from deformation import (
    DeformationKind,
    binom2,
    deformed_binomial,
    inverted_deformation,
    make_custom_deformation,
    make_deformation,
    number,
    ordered_factorial,
    parse_rational,
    ratio_deformation,
)
from errors import (
    DegenerateDeformation,
    DivisionByZeroFactor,
    InvalidLiteral,
    NegativeArgument,
    ParameterOrdering,
)
from poly_series import Polynomial

Q_HALF = make_deformation("q", 1, "1/2")
PQ = make_deformation("pq", "3/4", "1/2")
QUESNE = make_deformation("quesne", 1, "1/2")


def test_deformation_triples():
    """Test 1: Built-in deformations map (p, q) to the right triple."""
    print("\n" + "="*60)
    print("TEST 1: Deformation Triples")
    print("="*60)

    assert (Q_HALF.eps1, Q_HALF.eps2, Q_HALF.unit) == (1, Fraction(1, 2), 1)
    assert (PQ.eps1, PQ.eps2, PQ.unit) == (Fraction(3, 4), Fraction(1, 2), 1)
    quesne = make_deformation(DeformationKind.QUESNE, "3/4", "1/2")
    assert (quesne.eps1, quesne.eps2, quesne.unit) == (Fraction(3, 4), 2, Fraction(3, 2))
    print("  [OK] q, pq and quesne triples")

    assert PQ.theta == Fraction(2, 3)
    assert PQ.summary() == {"kind": "pq", "p": "3/4", "q": "1/2",
                            "eps1": "3/4", "eps2": "1/2", "unit": "1"}
    print("  [OK] theta and summary")


def test_numbers_and_factorials():
    """Test 2: Worked values of numbers, factorials and binomials."""
    print("\n" + "="*60)
    print("TEST 2: Numbers and Factorials")
    print("="*60)

    assert number(Q_HALF, 3) == Fraction(7, 4)
    assert number(QUESNE, 2) == 6
    assert number(Q_HALF, 0) == 0
    print("  [OK] [3] = 7/4 under q = 1/2, [2] = 6 under quesne")

    assert Q_HALF.factorial(3) == Fraction(21, 8)
    assert ordered_factorial(Q_HALF, 4, 2) == Fraction(105, 32)
    assert ordered_factorial(Q_HALF, 0, -2) == Fraction(2, 3)
    print("  [OK] [3]! = 21/8, [4]_2 = 105/32, [0]_(-2) = 2/3")

    assert deformed_binomial(Q_HALF, 4, 2) == Fraction(35, 16)
    assert deformed_binomial(Q_HALF, 2, 5) == 0
    assert deformed_binomial(Q_HALF, 7, 0) == 1
    print("  [OK] [4 over 2] = 35/16, out-of-range binomials")


def test_inverted_and_ratio():
    """Test 3: Parameter inversion and the single-ratio deformation."""
    print("\n" + "="*60)
    print("TEST 3: Inverted and Ratio Deformations")
    print("="*60)

    inverted = inverted_deformation(Q_HALF)
    assert (inverted.eps1, inverted.eps2) == (1, 2)
    assert inverted.number(3) == 7
    assert inverted.binomial(4, 2) == 35
    print("  [OK] inverted q = 1/2 gives [3] = 7, [4 over 2] = 35")

    ratio = ratio_deformation(PQ)
    assert (ratio.eps1, ratio.eps2) == (1, Fraction(2, 3))
    assert ratio.binomial(2, 1) == Fraction(5, 3)
    assert ratio_deformation(Q_HALF) is Q_HALF
    print("  [OK] ratio of pq(3/4, 1/2) gives [2 over 1] = 5/3")


def test_gaussian_binomial_oracle():
    """Test 4: q-binomials equal Gaussian polynomials evaluated at q."""
    print("\n" + "="*60)
    print("TEST 4: Gaussian Binomial Oracle")
    print("="*60)

    # Gaussian polynomials in q from G(n,k) = G(n-1,k-1) + q^k G(n-1,k).
    gauss = {(0, 0): Polynomial.of(1)}
    for n in range(1, 13):
        for k in range(n + 1):
            left = gauss.get((n - 1, k - 1), Polynomial())
            right = gauss.get((n - 1, k), Polynomial())
            gauss[(n, k)] = left + Polynomial.monomial(k) * right
    assert gauss[(4, 2)] == Polynomial.of(1, 1, 2, 1, 1)

    for q in ("1/2", "2/3", "9/10"):
        d = make_deformation("q", 1, q)
        for (n, k), poly in gauss.items():
            assert d.binomial(n, k) == poly(d.eps2), f"q={q}, n={n}, k={k}"
        print(f"  [OK] q = {q}: all 0 <= k <= n <= 12")


def test_errors():
    """Test 5: Invalid parameters and arguments raise library errors."""
    print("\n" + "="*60)
    print("TEST 5: Error Handling")
    print("="*60)

    with pytest.raises(ParameterOrdering):
        make_deformation("q", "1/2", "1")
    with pytest.raises(ParameterOrdering):
        make_deformation("pq", "3/2", "1/2")
    with pytest.raises(DegenerateDeformation):
        make_custom_deformation(2, 2)
    with pytest.raises(DegenerateDeformation):
        make_custom_deformation(1, "1/2", 0)
    print("  [OK] parameter ordering and degenerate triples rejected")

    for literal in ("1.5", "abc", "1/0", "", "1/-2"):
        with pytest.raises(InvalidLiteral):
            parse_rational(literal)
    assert parse_rational("-3/6") == Fraction(-1, 2)
    with pytest.raises(InvalidLiteral):
        make_deformation("qq", 1, "1/2")
    print("  [OK] malformed literals and unknown kinds rejected")

    with pytest.raises(NegativeArgument):
        Q_HALF.factorial(-1)
    with pytest.raises(NegativeArgument):
        Q_HALF.binomial(3, -1)
    with pytest.raises(DivisionByZeroFactor):
        Q_HALF.ordered_factorial(-1, -1)
    print("  [OK] negative arguments and vanishing factors rejected")


triples = st.tuples(
    st.fractions(min_value=Fraction(1, 8), max_value=2, max_denominator=12),
    st.fractions(min_value=Fraction(1, 8), max_value=2, max_denominator=12),
    st.fractions(min_value=Fraction(1, 4), max_value=3, max_denominator=6),
).filter(lambda t: t[0] != t[1])


@settings(max_examples=60, deadline=None)
@given(triples, st.integers(0, 8), st.integers(0, 8))
def test_split_law(triple, u, v):
    """[u+v] = eps1^v [u] + eps2^u [v] for any triple."""
    d = make_custom_deformation(*triple)
    assert d.number(u + v) == d.eps1 ** v * d.number(u) + d.eps2 ** u * d.number(v)


@settings(max_examples=60, deadline=None)
@given(triples, st.integers(0, 8), st.integers(0, 8))
def test_binomial_symmetry_and_unit(triple, n, k):
    """Binomials are symmetric and do not depend on the unit."""
    d = make_custom_deformation(*triple)
    plain = make_custom_deformation(triple[0], triple[1], 1)
    if k <= n:
        assert d.binomial(n, k) == d.binomial(n, n - k)
    assert d.binomial(n, k) == plain.binomial(n, k)
    assert binom2(n + 1) == binom2(n) + n


def run_all_tests():
    """Run all deformation tests."""
    print("\n" + "="*30)
    print("DEFORMED NUMBER TEST SUITE")
    print("="*30)

    tests = [
        test_deformation_triples,
        test_numbers_and_factorials,
        test_inverted_and_ratio,
        test_gaussian_binomial_oracle,
        test_errors,
        test_split_law,
        test_binomial_symmetry_and_unit,
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
