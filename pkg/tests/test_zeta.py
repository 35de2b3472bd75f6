import math

import numpy as np
import pytest

from pvzeta import phspace, special, testfn, zeta
from pvzeta.errors import DomainError, PoleError


def gaussian_mellin(s, a):
    # integral_0^inf e^{-a r^2} r^s dr = Gamma((s+1)/2) / (2 a^{(s+1)/2})
    return complex(special.gamma((s + 1.0) / 2.0)) / (2.0 * a ** ((s + 1.0) / 2.0))


def test_mellin_direct_gaussian():
    phi = testfn.gaussian(math.pi)
    for s in (0.0, 0.5, 2.3):
        mv = zeta.mellin(phi, [1.0], s)
        assert abs(complex(mv.value) - gaussian_mellin(s, math.pi)) < 1e-10
        assert mv.continuation_order == 0


def test_mellin_continued_gaussian():
    phi = testfn.gaussian(math.pi)
    for s in (-1.5, -2.5, -4.5):
        mv = zeta.mellin(phi, [1.0], s)
        assert mv.continuation_order >= 1
        assert abs(complex(mv.value) - gaussian_mellin(s, math.pi)) < 1e-9


def test_mellin_pole_guard():
    phi = testfn.gaussian(math.pi)
    with pytest.raises(PoleError):
        zeta.mellin(phi, [1.0], -1.0 + 1e-9)


def test_mellin_forced_order_overlap():
    phi = testfn.gaussian(math.pi)
    for s in (-0.5, 0.3, 0.7):
        rep = zeta.check_mellin_overlap(phi, 1.0, s) if s > -1 else None
        if rep is not None:
            assert rep.passed, rep.rel_residual


def test_mellin_forced_order_bounds():
    phi = testfn.gaussian(math.pi)
    with pytest.raises(DomainError):
        zeta.mellin(phi, [1.0], 0.5, order=7)
    with pytest.raises(DomainError):
        zeta.mellin(phi, [1.0], -2.5, order=1)


def test_mellin_residues_all_families():
    for phi in (testfn.gaussian(math.pi), testfn.hermite_gaussian(2, math.pi), testfn.bump(0.0, 1.0)):
        for k in (1, 2, 3):
            rep = zeta.check_mellin_residue(phi, 1.0, k)
            assert rep.passed, (phi.label, k, rep.rel_residual)


def test_zeta_scalar1d_matches_mellin():
    phi = testfn.gaussian(math.pi)
    sp = phspace.scalar1d()
    mv = zeta.zeta_local(sp, "V1", 0.4, phi)
    ref = zeta.mellin(phi, [1.0], 0.4)
    assert abs(complex(mv.value) - complex(ref.value)) < 1e-12


def test_zeta_definite_gaussian_closed_form():
    # int |m|^{2s} e^{-pi |m|^2} dm over R^3
    # = 4 pi Gamma(s + 3/2) / (2 pi^{s + 3/2})
    s = 0.3
    phi = testfn.gaussian(math.pi, n=3)
    sp = phspace.definite(n=3)
    mv = zeta.zeta_local(sp, "V1", s, phi)
    ref = 4.0 * math.pi * gaussian_mellin(2.0 * s + 2.0, math.pi)
    assert abs(complex(mv.value) - ref) / abs(ref) < 1e-9


def test_zeta_indefinite_montecarlo():
    sp = phspace.indefinite(q=1, n=3)
    phi = testfn.gaussian(math.pi, n=3)
    rep = zeta.check_zeta_montecarlo(sp, "plus", 0.3, phi, 1_000_000, seed=17)
    assert rep.passed, rep.to_dict()


def test_zeta_rejects_wrong_dimension():
    sp = phspace.definite(n=3)
    with pytest.raises(DomainError):
        zeta.zeta_local(sp, "V1", 0.3, testfn.gaussian(1.0, n=1))


def test_zeta_rejects_bad_component():
    sp = phspace.scalar1d()
    with pytest.raises(DomainError):
        zeta.zeta_local(sp, "nope", 0.3, testfn.gaussian(1.0))
