import numpy as np
import pytest

from adaptive_bandits.verify import (
    check_dsq,
    check_elliptical_count,
    check_elliptical_potential,
    check_radius_dominance,
    check_regret_equality,
    check_secondary,
    epc_bound,
    epc_count,
    full_coverage,
    semi_coverage,
    verify_suite,
)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(key=[0, 3]))


def test_individual_checks_pass(rng):
    for check in (check_regret_equality(rng, traces=10), check_elliptical_potential(rng, traces=5),
                  check_secondary(rng, traces=5), check_dsq(rng, traces=3),
                  check_radius_dominance(rng, count=500)):
        assert check.passed, check.line()


def test_elliptical_count_on_repeated_arm():
    xs = np.tile([[1.0, 0.0]], (500, 1))
    # only the first few pulls of a repeated arm stay informative
    count = epc_count(xs, 0.1, 0.25)
    assert count <= epc_bound(2, 0.25, 1.0, 0.1)
    assert count == 4


def test_elliptical_count_check(rng):
    assert check_elliptical_count(rng, n=200).passed


def test_coverage_single_traces():
    assert semi_coverage(0, n=200)
    assert full_coverage(0, n=200) == (True, True)


def test_suite_without_coverage_passes_and_formats():
    report = verify_suite(seed=1, coverage_traces=0)
    assert report.passed
    text = report.format()
    assert text.count("[PASS]") == 6
    assert report["(g)"].value <= 1e-12
    with pytest.raises(KeyError):
        report["(z)"]


def test_suite_small_coverage():
    report = verify_suite(seed=2, coverage_traces=5, coverage_horizon=300)
    for key in ("(e1)", "(e2)", "(e3)"):
        assert 0.85 <= report[key].value <= 1.0
