#!/usr/bin/env python3
"""
Tests for deformed moments, the classical bridge and distribution recovery.
"""

import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "src"))

import pytest
from hypothesis import given, settings, strategies as st

from deformation import make_deformation
from errors import InconsistentMoments, NegativeArgument
from identities import Status
from moments import (
    DiscreteDistribution,
    MomentKind,
    MomentVector,
    binomial_moment_vector,
    classical_bridge_report,
    classical_moments_from_deformed,
    deformed_binomial_moment,
    deformed_factorial_moment,
    deformed_mean_variance,
    distribution_from_binomial_moments,
    factorial_moment_vector,
    inversion_report,
    variance_decomposition,
)

Q_HALF = make_deformation("q", 1, "1/2")
PQ = make_deformation("pq", "3/4", "1/2")
QUESNE = make_deformation("quesne", "3/4", "1/2")
SAMPLE = DiscreteDistribution({0: Fraction(1, 8), 1: Fraction(3, 8), 2: Fraction(1, 4), 3: Fraction(1, 4)})


def test_distributions():
    """Test 1: Distribution construction and validation."""
    print("\n" + "="*60)
    print("TEST 1: Distributions")
    print("="*60)

    dist = DiscreteDistribution.from_json('{"probs": {"0": "1/2", "3": "1/2", "5": "0"}}')
    assert dist.probs == {0: Fraction(1, 2), 3: Fraction(1, 2)}
    assert dist.max_support == 3
    assert dist.to_dict() == {"probs": {"0": "1/2", "3": "1/2"}}
    assert DiscreteDistribution.uniform([2, 0, 2]).probs == {0: Fraction(1, 2), 2: Fraction(1, 2)}
    print("  [OK] JSON input, zero entries dropped, uniform")

    with pytest.raises(InconsistentMoments):
        DiscreteDistribution({0: Fraction(1, 2)})
    with pytest.raises(InconsistentMoments):
        DiscreteDistribution({0: Fraction(3, 2), 1: Fraction(-1, 2)})
    with pytest.raises(NegativeArgument):
        DiscreteDistribution({-1: Fraction(1)})
    with pytest.raises(InconsistentMoments):
        DiscreteDistribution.from_dict({"weights": {}})
    print("  [OK] bad totals, negative values and malformed input rejected")


def test_deformed_moments():
    """Test 2: Factorial and binomial moments, mean and variance."""
    print("\n" + "="*60)
    print("TEST 2: Deformed Moments")
    print("="*60)

    assert deformed_factorial_moment(Q_HALF, DiscreteDistribution.point_mass(3), 2) == Fraction(21, 8)
    assert deformed_binomial_moment(Q_HALF, DiscreteDistribution.point_mass(4), 2) == Fraction(35, 16)
    with pytest.raises(NegativeArgument):
        deformed_binomial_moment(Q_HALF, SAMPLE, -1)
    print("  [OK] E([X]_2) = 21/8 at X = 3, E([X over 2]) = 35/16 at X = 4")

    mu, sigma2 = deformed_mean_variance(Q_HALF, DiscreteDistribution.uniform([0, 1]))
    assert (mu, sigma2) == (Fraction(1, 2), Fraction(1, 4))
    print("  [OK] uniform on {0, 1}: mean 1/2, variance 1/4")

    for d in (Q_HALF, PQ, QUESNE):
        mu, sigma2 = deformed_mean_variance(d, SAMPLE)
        assert variance_decomposition(d, SAMPLE) == sigma2
        assert mu == SAMPLE.expect(d.number)
    print("  [OK] variance decomposition under q, pq and quesne")

    vector = factorial_moment_vector(PQ, SAMPLE)
    assert vector.kind is MomentKind.FACTORIAL and len(vector.values) == 4
    assert vector[0] == 1 and vector[7] == 0
    assert binomial_moment_vector(PQ, SAMPLE).to_dict()["order"]["0"] == "1"
    print("  [OK] moment vectors")


def test_classical_moments():
    """Test 3: Classical moments rebuilt from deformed ones."""
    print("\n" + "="*60)
    print("TEST 3: Classical Moments")
    print("="*60)

    binomial, falling = classical_moments_from_deformed(Q_HALF, DiscreteDistribution.uniform([0, 1, 2]), 2)
    assert (binomial, falling) == (Fraction(1, 3), Fraction(2, 3))
    binomial, _ = classical_moments_from_deformed(Q_HALF, DiscreteDistribution.point_mass(2), 1)
    assert binomial == 2
    with pytest.raises(NegativeArgument):
        classical_moments_from_deformed(Q_HALF, SAMPLE, 0)
    print("  [OK] E[C(X,2)] = 1/3 on uniform {0,1,2}; E[X] = 2 at X = 2")

    graded, falling = classical_moments_from_deformed(PQ, SAMPLE, 2)
    assert graded == 1 and falling == 2
    pulled, _ = classical_moments_from_deformed(PQ, SAMPLE, 2, pulled_out=True)
    assert pulled != graded
    print("  [OK] graded E[C(X,2)] = 1 under pq; the pulled-out form differs")

    for d in (Q_HALF, PQ):
        report = classical_bridge_report(d, SAMPLE)
        assert report.status is Status.PASS, report.counterexamples
        assert report.cells == 6
    print("  [OK] graded bridge holds under q and pq")


def test_inversion():
    """Test 4: Exact recovery of a distribution from binomial moments."""
    print("\n" + "="*60)
    print("TEST 4: Distribution Recovery")
    print("="*60)

    for d in (Q_HALF, PQ, QUESNE):
        recovered = distribution_from_binomial_moments(d, binomial_moment_vector(d, SAMPLE))
        assert recovered == SAMPLE
        assert inversion_report(d, SAMPLE).status is Status.PASS
    print("  [OK] round trip under q, pq and quesne")

    report = inversion_report(Q_HALF, SAMPLE)
    assert report.variants["printed_alternating_sum"] == "PASS"
    print("  [OK] alternating sum agrees when eps1 = 1")

    spread = DiscreteDistribution({0: Fraction(1, 6), 5: Fraction(1, 3), 9: Fraction(1, 6), 12: Fraction(1, 3)})
    for d in (PQ, QUESNE):
        assert d.eps1 != 1
        mv = binomial_moment_vector(d, spread)
        assert len(mv.values) == 13
        assert distribution_from_binomial_moments(d, mv) == spread
        assert inversion_report(d, spread).variants["printed_alternating_sum"].startswith("FAIL")
    print("  [OK] back substitution recovers support {0, 5, 9, 12} when eps1 = 3/4")

    with pytest.raises(InconsistentMoments):
        distribution_from_binomial_moments(Q_HALF, MomentVector(MomentKind.BINOMIAL, (Fraction(1), Fraction(2))))
    with pytest.raises(InconsistentMoments):
        distribution_from_binomial_moments(Q_HALF, factorial_moment_vector(Q_HALF, SAMPLE))
    print("  [OK] inconsistent moments and wrong kind rejected")


weights = st.dictionaries(st.integers(0, 12), st.integers(1, 9), min_size=1, max_size=13)


@settings(max_examples=200, deadline=None)
@given(weights, st.sampled_from([Q_HALF, PQ, QUESNE]))
def test_recovery_round_trip(w, d):
    """Any distribution on 0..12 is recovered from its binomial moments."""
    total = sum(w.values())
    dist = DiscreteDistribution({x: Fraction(c, total) for x, c in w.items()})
    assert distribution_from_binomial_moments(d, binomial_moment_vector(d, dist)) == dist


def run_all_tests():
    """Run all moment tests."""
    print("\n" + "="*30)
    print("MOMENT TEST SUITE")
    print("="*30)

    tests = [
        test_distributions,
        test_deformed_moments,
        test_classical_moments,
        test_inversion,
        test_recovery_round_trip,
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
