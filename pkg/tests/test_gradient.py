import numpy as np
import pytest
from hypothesis import given

from conftest import random_path, seeds
from geoshape.energy import path_geometry, total_energy
from geoshape.generators import circle
from geoshape.gradient import objective_and_gradient
from geoshape.metrics import PRESETS, MetricCoefficients
from geoshape.optimize import gradient
from geoshape.precondition import (Preconditioner, energy_jacobian, energy_residuals,
                                   gauss_newton)

CLAMP_MARGIN = 1e-6


def near_clamp(X):
    """True if some turning angle sits close to 0 or pi, where arccos is clamped."""
    g = path_geometry(X)
    return bool(np.any(g.angle < CLAMP_MARGIN) or np.any(g.angle > np.pi - CLAMP_MARGIN))


def central_difference(X, coeff, pw=1.0):
    G = np.zeros_like(X)
    for idx in np.ndindex(*X.shape):
        h = 1e-6 * (1 + abs(X[idx]))
        Xp, Xm = X.copy(), X.copy()
        Xp[idx] += h
        Xm[idx] -= h
        G[idx] = (total_energy(Xp, coeff, pw).objective - total_energy(Xm, coeff, pw).objective) / (2 * h)
    return G


@pytest.mark.parametrize("seed", range(4))
@pytest.mark.parametrize("name", ["metric1", "metric4"])
def test_gradient_matches_central_differences(seed, name):
    X = random_path(np.random.default_rng(seed), 9, 3)
    assert not near_clamp(X)
    coeff = PRESETS[name]
    out, g = objective_and_gradient(X, coeff, 0.7)
    assert out.objective == pytest.approx(total_energy(X, coeff, 0.7).objective, rel=1e-13)
    fd = central_difference(X, coeff, 0.7)
    assert np.abs(g - fd).max() <= 1e-5 * np.abs(fd).max()


def test_static_uniform_path_has_zero_gradient():
    c = circle(1.0, 12)
    X = np.stack([c] * 4)
    for coeff in PRESETS.values():
        np.testing.assert_allclose(gradient(X, coeff), 0, atol=1e-13)


def test_penalty_gradient_by_hand():
    # rectangle 2 x 1: L/N = 1.5, edge errors +0.5, -0.5, +0.5, -0.5
    c = np.array([[0, 0], [2, 0], [2, 1], [0, 1]], dtype=float)
    X = np.stack([c, c, c])
    _, g = objective_and_gradient(X, PRESETS["metric1"], penalty_weight=1.0)
    # d/dx_v sum (e - mean)^2 = 2 sum (e_i - mean) de_i/dx_v (mean term drops since errors sum to 0)
    want = np.array([[-1.0, 1.0], [1.0, 1.0], [1.0, -1.0], [-1.0, -1.0]])
    np.testing.assert_allclose(g[1], want, atol=1e-13)
    np.testing.assert_allclose(g[0], want, atol=1e-13)


def test_penalty_weight_scales_penalty_part():
    X = random_path(np.random.default_rng(9), 7, 2)
    _, g0 = objective_and_gradient(X, PRESETS["metric2"], 0.0)
    _, g1 = objective_and_gradient(X, PRESETS["metric2"], 1.0)
    _, g3 = objective_and_gradient(X, PRESETS["metric2"], 3.0)
    np.testing.assert_allclose(g3 - g0, 3 * (g1 - g0), atol=1e-12)


@given(seeds)
def test_residuals_and_gauss_newton(seed):
    rng = np.random.default_rng(seed)
    X = random_path(rng, 8, 3)
    coeff = MetricCoefficients(*rng.uniform(0.2, 3, 7))
    r = energy_residuals(X, coeff)
    e = total_energy(X, coeff, 0.0).total_energy
    assert (r**2).sum() == pytest.approx(e, rel=1e-12)
    J = energy_jacobian(X, coeff)
    _, g = objective_and_gradient(X, coeff, 0.0)
    np.testing.assert_allclose(2 * J.T @ r.ravel(), g[1:-1].ravel(), rtol=1e-5,
                               atol=1e-6 * np.abs(g).max())
    H = gauss_newton(X, coeff).toarray()
    np.testing.assert_allclose(H, H.T, atol=1e-12 * np.abs(H).max())
    assert np.linalg.eigvalsh(H).min() >= -1e-10 * np.abs(H).max()


def test_preconditioner_solves_its_matrix():
    X = random_path(np.random.default_rng(1), 10, 4)
    P = Preconditioner(X, PRESETS["metric4"])
    b = np.random.default_rng(2).standard_normal(P.matrix.shape[0])
    np.testing.assert_allclose(P.matrix @ P.solve(b), b, rtol=1e-8, atol=1e-8 * np.abs(b).max())
