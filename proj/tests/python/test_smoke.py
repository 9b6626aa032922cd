import math

import numpy as np
import pytest

import detsketch as ds


def test_reed_solomon_point_query():
    a, info = ds.build_matrix("reed-solomon", 256, 0.25)
    assert a.shape == (info["m"], 256)
    assert info["verified"]
    report = ds.verify_coherence(a, 0.25)
    assert report["pass"] and report["max_coherence"] <= 0.25 + 1e-9

    rng = np.random.default_rng(1)
    x = rng.standard_normal(256)
    xp = ds.point_query(a, info["epsilon"], a @ x)
    rest = np.abs(x).sum() - np.abs(x)
    assert np.all(np.abs(xp - x) <= info["epsilon"] * rest + 1e-9)


def test_inner_product_bound():
    a, info = ds.build_matrix("crt-code", 200, 0.3)
    rng = np.random.default_rng(2)
    x = np.zeros(200)
    y = np.zeros(200)
    x[rng.choice(200, 4, replace=False)] = rng.standard_normal(4)
    y[rng.choice(200, 4, replace=False)] = rng.standard_normal(4)
    est = ds.estimate_ip(a, info["epsilon"], a @ x, a @ y)
    bound = 12 * info["epsilon"] * np.abs(x).sum() * np.abs(y).sum()
    assert abs(est - x @ y) <= bound + 1e-9


def test_l1_minimize_recovers_sparse():
    b, info = ds.build_matrix("rip", 64, k=3, seed=4)
    assert info["m"] == 74
    x = np.zeros(64)
    x[[3, 17, 40]] = [1.5, -2.0, 0.7]
    sol = ds.l1_minimize(b, b @ x)
    assert sol["status"] == "optimal"
    assert np.max(np.abs(sol["z"] - x)) <= 1e-6


def test_tail_point_query_sparse_is_exact():
    a, info = ds.build_matrix("reed-solomon", 64, 0.3)
    b, rip = ds.build_matrix("rip", 64, k=3, seed=2, rows_constant=3.0)
    x = np.zeros(64)
    x[[1, 9, 30]] = [1.0, -1.0, 2.0]
    xp = ds.point_query_tail(a, info["epsilon"], b, rip["k"], a @ x, b @ x)
    assert np.max(np.abs(xp - x)) <= 1e-6


def test_norm_estimate_band():
    a, info = ds.build_matrix("norm-est", 64, 0.45, seed=3)
    np.testing.assert_allclose(a @ a.T, np.eye(info["m"]), atol=1e-9)
    x = np.zeros(64)
    x[5] = 2.0
    r = ds.estimate_norm(a, 0.45, a @ x)
    assert r["lo"] <= r["value"] <= r["hi"]
    assert abs(r["value"] - 2.0) <= 0.45 * 2.0 + 2e-3 * 2.0
    assert ds.estimate_norm(a, 0.45, np.zeros(info["m"]))["value"] == 0.0


def test_separation_oracle():
    h = ds.separation_oracle(np.array([3.0, -4.0]), 1.0, 2.0, 0.1, 0.0)
    np.testing.assert_allclose(h, [0.7, -0.9])
    assert ds.separation_oracle(np.array([1.0, 0.0]), 1.0, 2.0, 0.1, 2.0) is None
    h = ds.separation_oracle(np.array([2.0, -2.0]), 1.0, math.inf, 0.5, 0.0)
    np.testing.assert_allclose(h, [1.0, -1.0])


def test_measurement_table():
    rows = ds.measurement_table([1 << 16], [1 / 64])
    assert rows[0]["reed_solomon"] <= rows[0]["gv"]


def test_errors_surface_as_value_error():
    with pytest.raises(ValueError):
        ds.build_matrix("rip", 64)
    with pytest.raises(ValueError):
        ds.point_query(np.eye(3), 0.0, np.zeros(4))
