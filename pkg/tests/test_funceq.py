import math

import numpy as np
import pytest

from pvzeta import funceq, special, testfn
from pvzeta.errors import DomainError, PoleError

CONV = "twopi"


def test_eq12_gaussian_oracle():
    # at s = 1/2 with the self-dual gaussian both sides equal
    # pi^{-1/4} Gamma(1/4)
    phi = testfn.gaussian(math.pi)
    lhs, rhs = funceq.eq12_sides(0.5, phi, testfn.FourierConvention.TWOPI)
    oracle = math.pi ** -0.25 * float(np.real(special.gamma(0.25)))
    assert abs(lhs - oracle) < 1e-8
    assert abs(rhs - oracle) < 1e-8


@pytest.mark.parametrize("s", [0.25, 0.5, 0.75])
def test_eq12_families(s):
    for phi in (testfn.gaussian(math.pi), testfn.hermite_gaussian(2, math.pi)):
        rep = funceq.check_eq12(s, phi, CONV)
        assert rep.passed, (s, phi.label, rep.rel_residual)


def test_eq12_bump():
    rep = funceq.check_eq12(0.4, testfn.bump(0.0, 1.0), CONV)
    assert rep.passed, rep.rel_residual


def test_eq12_rejects_multidim():
    with pytest.raises(DomainError):
        funceq.check_eq12(0.5, testfn.gaussian(math.pi, n=3), CONV)


def test_gamma_factor_pole():
    with pytest.raises(PoleError):
        funceq.gamma_factor("12", 0.0)


def test_calibration_selects_twopi():
    cal = funceq.calibrate_convention("12", [0.4, 0.6], [testfn.gaussian(math.pi)])
    assert cal["selected"][0] == "twopi"


def test_eq12a_corrected_passes():
    phi = testfn.gaussian(math.pi, n=3)
    rep = funceq.check_eq12a(0.7, np.eye(3), phi, CONV, variant="corrected")
    assert rep.passed, rep.rel_residual


def test_eq12a_printed_deviation_oracle():
    # printed exponent deviates by exactly |pi^s - 1| / pi^s relative to
    # the corrected right-hand side
    s = 0.7
    phi = testfn.gaussian(math.pi, n=3)
    rep = funceq.check_eq12a(s, np.eye(3), phi, CONV, variant="printed", tol=1e-6)
    assert not rep.passed
    expected = abs(math.pi ** s - 1.0) / math.pi ** s
    assert abs(rep.rel_residual - expected) < 1e-5


def test_eq22_two_vector():
    phi = testfn.gaussian(math.pi, n=3)
    B = np.diag([1.0, -1.0, -1.0])
    rep = funceq.check_eq22(0.2, B, phi, CONV, q=1)
    assert rep.passed, rep.extra["component_residuals"]


def test_build_s_grid_avoids_poles():
    grid = funceq.build_s_grid([0.5, -1.0, 0.25], pole_guard=1e-3)
    assert all(abs(s + 1.0) > 1e-3 for s in grid)
