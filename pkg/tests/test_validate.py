"""Self-check suites and their negative controls."""
import numpy as np
import pytest
from scipy import stats

from collisim.validate import (
    ORACLE_SCENARIOS,
    haar_check,
    ks_statistic,
    oracle_check,
    uniform_phi_sampler,
)


def test_ks_statistic_matches_scipy(rng):
    for na, nb in ((50, 50), (80, 37), (200, 13)):
        a = rng.normal(size=na)
        b = rng.normal(loc=0.3, size=nb)
        ours = ks_statistic(a, b)
        ref = stats.ks_2samp(a, b).statistic
        assert abs(ours - ref) < 1e-12


def test_ks_statistic_edge_cases():
    assert ks_statistic([1.0, 2.0], [1.0, 2.0]) == 0.0
    assert abs(ks_statistic([0.0], [1.0]) - 1.0) < 1e-12
    with pytest.raises(ValueError):
        ks_statistic([], [1.0])


def test_haar_check_passes_on_the_real_sampler():
    report = haar_check(dims=(2, 3), draws=4000, seed=1)
    assert report.ok
    for r in report.dims:
        assert r.max_unitarity_error < 1e-12
        assert abs(r.moment_target - 1.0 / r.dim) < 1e-15
        assert r.ks_d < 0.03


def test_haar_check_rejects_uniform_phi():
    report = haar_check(dims=(2,), draws=2000, seed=1, sampler=uniform_phi_sampler)
    assert not report.ok
    r = report.dims[0]
    # the control stays unitary; only the distribution test can notice
    assert r.unitarity_ok
    assert not r.ks_ok


def test_haar_check_argument_validation():
    with pytest.raises(ValueError):
        haar_check(dims=(1, 2))
    with pytest.raises(ValueError):
        haar_check(draws=1)


def test_oracle_check_clean():
    report = oracle_check(draws=50, seed=3)
    assert report.ok
    assert report.failing() == []
    assert {d.scenario for d in report.deviations} == set(ORACLE_SCENARIOS)
    for d in report.deviations:
        assert d.max_deviation < 1e-10


@pytest.mark.parametrize("scenario", ORACLE_SCENARIOS)
def test_oracle_check_corrupt_isolates_scenario(scenario):
    report = oracle_check(draws=5, seed=3, corrupt=scenario)
    assert not report.ok
    assert report.failing() == [scenario]


def test_oracle_check_argument_validation():
    with pytest.raises(ValueError):
        oracle_check(draws=0)
    with pytest.raises(ValueError):
        oracle_check(corrupt="not_a_scenario")
