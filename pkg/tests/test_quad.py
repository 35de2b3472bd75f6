import math

import numpy as np
import pytest

from pvzeta import quad
from pvzeta.errors import DomainError


def test_integrate_1d_smooth():
    res = quad.integrate_1d(lambda x: np.exp(-x * x), -np.inf, np.inf, tol=1e-12)
    assert abs(res.value - math.sqrt(math.pi)) < 1e-12


def test_integrate_1d_left_singularity():
    # integral of x^{-1/2} e^{-x} over (0, inf) = Gamma(1/2)
    spec = quad.SingularitySpec("left", -0.5)
    res = quad.integrate_1d(lambda x: x ** -0.5 * np.exp(-x), 0.0, np.inf, spec=spec, tol=1e-11)
    assert abs(res.value - math.sqrt(math.pi)) < 1e-9


def test_integrate_1d_log_singularity():
    # integral of log x over (0, 1) = -1
    spec = quad.SingularitySpec("left", -0.5, log_factor=True)
    res = quad.integrate_1d(lambda x: np.log(x), 0.0, 1.0, spec=spec, tol=1e-11)
    assert abs(res.value + 1.0) < 1e-9


def test_panel_integral_matches_adaptive():
    f = lambda x: np.cos(7.0 * x) * np.exp(-x)
    ref = quad.integrate_1d(f, 0.0, 10.0, tol=1e-13).value
    res = quad.panel_integral(f, 0.0, 10.0, panel_width=0.5)
    assert abs(res.value - ref) < 1e-12
    assert res.error_estimate < 1e-10


def test_gauss_legendre_cached():
    x1, w1 = quad.gauss_legendre(16)
    x2, w2 = quad.gauss_legendre(16)
    assert x1 is x2 and w1 is w2
    assert abs(np.sum(w1) - 2.0) < 1e-14


def test_sphere_quadrature_measure():
    for n in (1, 2, 3):
        pts, wts = quad.sphere_quadrature(n)
        surface = {1: 2.0, 2: 2.0 * math.pi, 3: 4.0 * math.pi}[n]
        assert abs(np.sum(wts) - surface) < 1e-10
        # integrates quadratics exactly: int omega_i omega_j = surface/n delta_ij
        g = np.einsum("ki,kj,k->ij", pts, pts, wts)
        assert np.allclose(g, np.eye(n) * surface / n, atol=1e-10)


def test_lebedev26_normalized():
    pts, wts = quad.lebedev26()
    assert abs(np.sum(wts) - 1.0) < 1e-14
    assert np.allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-14)
    # exact for degree <= 7: mean of x^2 over the sphere is 1/3
    assert abs(np.sum(wts * pts[:, 0] ** 2) - 1.0 / 3.0) < 1e-13


def test_integrate_ball_gaussian():
    res = quad.integrate_ball(lambda x: math.exp(-float(np.dot(x, x))), 3, tol=1e-10)
    assert abs(complex(res.value) - math.pi ** 1.5) < 1e-8


def test_oscillatory_ft_gaussian():
    # FT of e^{-x^2}: integral e^{-x^2} e^{-i x xi} dx = sqrt(pi) e^{-xi^2/4}
    for xi in (0.5, 8.0, 40.0):
        val = quad.oscillatory_ft_1d(lambda x: np.exp(-x * x), xi)
        ref = math.sqrt(math.pi) * math.exp(-xi * xi / 4.0)
        assert abs(val - ref) < 1e-10


def test_oscillatory_ft_methods_agree():
    f = lambda x: np.exp(-0.5 * x * x)
    a = quad.oscillatory_ft_1d(f, 6.0, force_method="plain")
    b = quad.oscillatory_ft_1d(f, 6.0, force_method="osc")
    assert abs(a - b) < 1e-9


def test_monte_carlo_signature_consistency():
    # definite-direction mass of a gaussian on the plus sheet of
    # diag(1,-1,-1): cross-check MC against the deterministic rule
    B = np.diag([1.0, -1.0, -1.0])
    g = lambda pts: np.exp(-np.pi * np.sum(pts * pts, axis=-1))
    det = quad.integrate_signature(g, B, 1, "plus", w=0.2, decay_rate=np.pi)
    est, se = quad.monte_carlo_signature(g, B, 1, "plus", 0.2, 500_000, seed=3)
    assert abs(complex(det) - est) < 4.0 * se


def test_monte_carlo_deterministic():
    B = np.diag([1.0, -1.0, -1.0])
    g = lambda pts: np.exp(-np.pi * np.sum(pts * pts, axis=1))
    a = quad.monte_carlo_signature(g, B, 1, "plus", 0.2, 100_000, seed=9)
    b = quad.monte_carlo_signature(g, B, 1, "plus", 0.2, 100_000, seed=9)
    assert a == b


def test_sphere_quadrature_rejects_bad_dim():
    with pytest.raises(DomainError):
        quad.sphere_quadrature(4)
