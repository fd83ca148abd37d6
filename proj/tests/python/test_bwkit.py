import numpy as np
import pytest
from scipy.linalg import sqrtm

import bwkit


def bw_squared_scipy(a, b):
    ra = sqrtm(a)
    return float(np.trace(a) + np.trace(b) - 2.0 * np.trace(sqrtm(ra @ b @ ra)).real)


def test_closed_form_matches_scipy():
    a = bwkit.random_pd(4, cond=50.0, seed=1)
    b = bwkit.random_pd(4, cond=50.0, seed=2)
    assert bwkit.bw_distance_squared(a, b) == pytest.approx(bw_squared_scipy(a, b), rel=1e-9, abs=1e-10)


def test_sqrt_psd_squares_back():
    s = bwkit.random_pd(5, cond=1e3, seed=3)
    r = bwkit.sqrt_psd(s)
    np.testing.assert_allclose(r @ r, s, atol=1e-9 * np.linalg.norm(s))


def test_sdp_distance_matches_closed_form():
    a = bwkit.random_pd(3, cond=20.0, seed=4)
    b = bwkit.random_pd(3, cond=20.0, seed=5)
    r = bwkit.sdp_distance(a, b)
    closed = bwkit.bw_distance_squared(a, b)
    assert abs(r["distance_squared"] - closed) <= 1e-5 * (1.0 + closed)
    k = r["coupling"]
    np.testing.assert_allclose(k.T @ k, b, atol=1e-4 * (1.0 + np.linalg.norm(b)))


def test_barycenter_routes_agree():
    mats = [bwkit.random_pd(3, cond=10.0, seed=s) for s in (6, 7, 8)]
    c = bwkit.compare_routes([0.2, 0.3, 0.5], mats)
    assert c["max_entry_deviation"] <= 1e-3
    assert c["fixed_point"]["converged"]


def test_scalar_barycenter():
    r = bwkit.barycenter([1.0, 1.0], [np.array([[1.0]]), np.array([[9.0]])], route="fp")
    assert r["x"][0, 0] == pytest.approx(4.0, abs=1e-9)


def test_constrained_barycenter():
    mats = [bwkit.random_pd(3, cond=10.0, seed=s) for s in (9, 10)]
    r = bwkit.barycenter([1.0, 1.0], mats, constraints=bwkit.ConvexSet.trace_slice(3, 2.0))
    assert np.trace(r["x"]) == pytest.approx(2.0, abs=1e-6)


def test_set_distance_trace_slices():
    r = bwkit.set_distance(bwkit.ConvexSet.trace_slice(5, 1.0), bwkit.ConvexSet.trace_slice(5, 2.0))
    assert r["converged"]
    assert r["distance_squared"] == pytest.approx((np.sqrt(2.0) - 1.0) ** 2, abs=1e-3)
    np.testing.assert_allclose(r["witness_b"], 2.0 * r["witness_a"], atol=1e-3)


def test_ball_solve_is_sound():
    a = bwkit.random_pd(3, cond=10.0, seed=11)
    d2 = 0.3 * np.trace(a)
    r = bwkit.ball_solve("frobenius", [(a, d2)])
    assert r["sound"]
    assert bw_squared_scipy(a, r["x"]) == pytest.approx(d2, abs=1e-3)


def test_errors_map_to_python_exceptions():
    with pytest.raises(bwkit.AsymmetryError):
        bwkit.bw_distance_squared(np.array([[1.0, 5.0], [2.0, 3.0]]), np.eye(2))
    with pytest.raises(bwkit.NotPdError):
        bwkit.fidelity(np.diag([1.0, -1.0]), np.eye(2))
    with pytest.raises(bwkit.InfeasibleSetError):
        bwkit.set_distance(bwkit.ConvexSet.trace_slice(2, 1.0), bwkit.ConvexSet.trace_slice(2, -1.0))
    with pytest.raises(bwkit.InputError):
        bwkit.barycenter([1.0], [np.eye(2)], route="nope")
    assert issubclass(bwkit.InputError, bwkit.Error)
