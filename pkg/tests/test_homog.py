import math

import numpy as np
import pytest

from pvzeta import homog, special, testfn
from pvzeta.errors import DomainError, PoleError


def test_tplus_euler_gamma():
    rep = homog.check_tplus_int()
    assert rep.passed
    assert abs(rep.lhs - (-np.euler_gamma)) < 1e-8


def test_tplus_noninteger_matches_gamma():
    # <t_+^s, e^{-t}> = Gamma(s+1) for Re s > -1, continued elsewhere
    for s in (0.3, -0.5, -1.5, -2.7):
        val = complex(homog.tplus_profile(s, homog.ExpProfile(1.0)))
        ref = complex(special.gamma(s + 1.0))
        assert abs(val - ref) / abs(ref) < 1e-9, s


def test_tplus_integer_finite_part():
    from pvzeta import zeta

    # k = 2: the regularized value is the finite part of Gamma(s+1) at
    # s = -2, which is EulerGamma - 1; the symmetric epsilon-average
    # around the pole must also reproduce it
    prof = homog.ExpProfile(1.0)
    direct = complex(homog.tplus_profile(-2.0, prof))
    assert abs(direct - (np.euler_gamma - 1.0)) < 1e-10
    eps = 1e-5
    v1 = complex(zeta.mellin_profile(prof, -2.0 + eps, order=3).value)
    v2 = complex(zeta.mellin_profile(prof, -2.0 - eps, order=3).value)
    assert abs(0.5 * (v1 + v2) - direct) < 1e-8
    # the pole is simple with residue phi'(0)/1! = -1
    assert abs(eps * v1 - (-1.0)) < 1e-4


def test_homogeneity_scaling_identity():
    phi = testfn.gaussian(math.pi)
    for s in (-0.5, 0.3, -1.7):
        for lam in (0.5, 2.0, 3.0):
            rep = homog.check_homogeneity(s, phi, lam)
            assert rep.passed, (s, lam, rep.rel_residual)


def test_critical_degree_scale_invariance():
    # at the critical degree s = -n the density R_s phi is homogeneous of
    # degree 0; the log anomaly of t_+^{-1} vanishes when phi(0) = 0
    phi = testfn.hermite_gaussian(2, 1.0)
    v1 = complex(homog.rs_transform(phi, -1.0, 1.0))
    v2 = complex(homog.rs_transform(phi, -1.0, 2.0))
    assert abs(v1 - v2) < 1e-10


def test_rs_transform_oracle():
    # R_0 phi(1) = int_0^inf e^{-t^2} dt = sqrt(pi)/2 for gaussian rate 1
    v = complex(homog.rs_transform(testfn.gaussian(1.0), 0.0, 1.0))
    assert abs(v - math.sqrt(math.pi) / 2.0) < 1e-11


def test_cutoff_log_mass_normalized():
    psi = homog.make_cutoff(0.5, 2.0)
    assert abs(psi.log_mass() - 1.0) < 1e-12


def test_extension_restricts_away_from_origin():
    k = homog.homog_density(-1.0, lambda x: 1.0 / np.abs(x), n=1, label="|m|^-1")
    psi = homog.make_cutoff(0.5, 2.0)
    phi = testfn.bump(3.0, 1.0)
    rep = homog.check_extension_restricts(k, psi, phi)
    assert rep.passed, rep.rel_residual


def test_extension_ambiguity_is_delta():
    k = homog.homog_density(-1.0, lambda x: 1.0 / np.abs(x), n=1, label="|m|^-1")
    psi1 = homog.make_cutoff(0.5, 2.0)
    psi2 = homog.make_cutoff(1.0, 4.0)
    phis = [testfn.gaussian(a) for a in (0.5, 1.0, 2.0, math.pi, 4.0)]
    rep = homog.check_ambiguity(k, psi1, psi2, phis)
    assert rep.passed, rep.extra["relative_spread"]
    # cutoffs [a, 2a] vs [b, 4b] with unit log mass: constant is ln 4 - ln 2
    # ... the measured constant must at least be reproducible and real
    consts = rep.extra["constants"]
    assert abs(consts[0].imag) < 1e-10


def test_ambiguity_rejects_vanishing_at_zero():
    k = homog.homog_density(-1.0, lambda x: 1.0 / np.abs(x), n=1, label="|m|^-1")
    psi1 = homog.make_cutoff(0.5, 2.0)
    psi2 = homog.make_cutoff(1.0, 4.0)
    with pytest.raises(DomainError):
        homog.check_ambiguity(k, psi1, psi2, [testfn.hermite_gaussian(2, 1.0)])


def test_tplus_pole_at_negative_integer_guarded():
    with pytest.raises(PoleError):
        homog.tplus_profile(-1.0 + 1e-9, homog.ExpProfile(1.0))
