import json
import math

import pytest

import pushpull as pp


def test_small_chain_values():
    assert pp.expected_total_time(1, 1) == 1.0
    assert pp.expected_total_time(2, 1) == 4.0
    assert pp.expected_total_time(2, 2) == 6.0
    assert pp.expected_phase2_time(2, 2) == 4.0


def test_step_distribution_and_stay():
    assert pp.step_distribution(2, 2, 1, 1) == (0.25, 0.25, 0.5)
    assert pp.expected_stay_rounds(2, 2, 1, 1) == 2.0


def test_two_mobile_series_matches_dp():
    for n in (2, 3, 17, 100):
        assert math.isclose(pp.t2_exact_series(n), pp.expected_total_time(n, 2), rel_tol=1e-9)
    assert math.isclose(pp.t2_exact_series(3), 173 / 18, rel_tol=1e-12)


def test_relation_forms():
    corrected, printed = pp.t2_relation(2)
    assert math.isclose(corrected, 6.0)
    assert math.isclose(printed, 5.0)


def test_boundary_law_matches_closed_form():
    law = pp.phase_boundary_distribution(30, 2, 1)
    assert math.isclose(sum(law), 1.0, abs_tol=1e-12)
    for a, mass in enumerate(law, start=1):
        assert math.isclose(mass, pp.p_a_closed(30, a), rel_tol=1e-12)


def test_simulation_is_deterministic_and_consistent():
    first = pp.run_batch(20, 2, 4000, seed=7)
    again = pp.run_batch(20, 2, 4000, seed=7)
    assert first == again
    exact = pp.expected_total_time(20, 2)
    steps = first["steps"]
    assert abs(steps["mean"] - exact) <= 4 * steps["standard_error"]


def test_replica_trajectory_endpoints():
    r = pp.run_replica(5, 3, 11, record_trajectory=True)
    assert r["trajectory"][0] == (0.0, 1, 0)
    assert r["trajectory"][-1][1:] == (5, 3)
    assert r["steps"] >= 5 + 3 - 1


def test_poisson_mode_requires_positive_rate():
    with pytest.raises(ValueError):
        pp.run_replica(5, 3, 1, mode="poisson", lam=0.0)


def test_lambert_and_fluid_curve():
    assert pp.lambert_w0(0.0) == 0.0
    assert math.isclose(pp.lambert_w0(math.e), 1.0, rel_tol=1e-14)
    assert pp.lambert_w0(-math.exp(-1)) == -1.0
    for x in (0.01, 0.3, 0.9, 1.0):
        assert math.isclose(pp.fluid_phase_curve(1.0, 100.0, x), x, abs_tol=1e-9)


def test_fluid_trajectory_arrays():
    t, x, y = pp.fluid_trajectory(1.0, 50.0)
    assert len(t) == len(x) == len(y) > 10
    assert abs(x - y).max() < 1e-9


def test_capacity_error_is_mapped():
    with pytest.raises(MemoryError):
        pp.expected_total_time(100_000, 10_000)


def test_execute_exact_command():
    body, code = pp.run_command("exact", n=2, m=2, format="json")
    assert code == 0
    assert json.loads(body)["expected_total"] == 6.0
