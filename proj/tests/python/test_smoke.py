import pytest

import discrete_kp as dkp


def test_version():
    assert dkp.__version__.count(".") == 2


def test_curve_ledger_3x2():
    report = dkp.curve(3, 2)
    degrees = [e["degree"] for e in report["curve"]["ledger"]]
    assert degrees == [1, 2, 3, 4, 6, 7, 9, 12]
    assert report["degree_check"]["ok"]


def test_numeric_curve_is_seeded():
    a = dkp.curve(3, 2, numeric=True, seed=5)["numeric"]["values"]
    b = dkp.curve(3, 2, numeric=True, seed=5)["numeric"]["values"]
    assert a == b


def test_full_check_passes():
    report = dkp.check(3, 2)
    assert report["ok"]
    assert report["failures"] == 0


def test_unknown_suite():
    with pytest.raises(ValueError):
        dkp.check(3, 2, suite="nope")


def test_gcd_violation():
    with pytest.raises(dkp.GcdError):
        dkp.check(4, 2)
    with pytest.raises(ValueError):
        dkp.torus(6, 3)


def test_flow_conserves_and_round_trips_state():
    first = dkp.flow(3, 2, dt=1e-2, T=0.2, seed=3)
    assert first["max_drift"] < 1e-6
    again = dkp.flow(3, 2, dt=1e-2, T=0.2, state=first["final"])
    assert again["initial"]["A"] == first["final"]["A"]


def test_bad_ledger_degree():
    with pytest.raises(IndexError):
        dkp.flow(3, 2, degree=5)


def test_pipes_report():
    report = dkp.pipes(3, 2, pairings=True, sum_zero=True)
    assert report["ok"]
    assert len(report["diagrams"]["6"]) == 1


def test_torus_kappa():
    assert dkp.torus(3, 2)["kappa"]["values"] == [[0, -1, 1], [0, 1, -1]]


def test_suite_names():
    assert "jacobi" in dkp.suite_names()
