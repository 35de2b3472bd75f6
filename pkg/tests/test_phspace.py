import numpy as np
import pytest

from pvzeta import phspace
from pvzeta.errors import ConfigError, DomainError


@pytest.mark.parametrize("spec", ["scalar1d", "definite:B=I,n=3", "indefinite:q=1,n=3"])
def test_parse_space_roundtrip(spec):
    sp = phspace.parse_space(spec)
    assert sp.kind in ("scalar1d", "definite", "indefinite")


def test_parse_space_rejects_garbage():
    with pytest.raises(ConfigError):
        phspace.parse_space("nonsense:x=1")


def test_relative_invariance_sampled():
    for spec in ("scalar1d", "definite:B=I,n=3", "indefinite:q=1,n=3"):
        sp = phspace.parse_space(spec)
        gs = phspace.sample_group(sp, 25, seed=5)
        ms = phspace.sample_points(sp, 25, seed=6)
        for g, m in zip(gs, ms):
            rep = phspace.check_relative_invariance(sp, g, m)
            assert rep.passed, (spec, rep.rel_residual)


def test_character_determinant_relation():
    # det rho(g)^2 = chi(g)^{2n/deg p}
    for spec in ("scalar1d", "definite:B=I,n=3", "indefinite:q=1,n=3"):
        sp = phspace.parse_space(spec)
        for g in phspace.sample_group(sp, 10, seed=2):
            n = sp.n
            rho = g.alpha * (g.rot(n) if sp.kind != "scalar1d" else np.eye(1))
            lhs = np.linalg.det(rho) ** 2
            rhs = phspace.character(sp, g) ** (2.0 * n / sp.deg_p)
            assert abs(lhs - rhs) / max(abs(rhs), 1.0) < 1e-10


def test_component_of():
    sp = phspace.parse_space("indefinite:q=1,n=3")
    assert phspace.component_of(sp, [1.0, 0.1, 0.1]) == "plus"
    assert phspace.component_of(sp, [0.1, 1.0, 0.1]) == "minus"
    s1 = phspace.scalar1d()
    assert phspace.component_of(s1, 2.0) == "V1"
    assert phspace.component_of(s1, -2.0) == "V2"


def test_group_composition_consistent():
    sp = phspace.parse_space("definite:B=I,n=3")
    g1, g2 = phspace.sample_group(sp, 2, seed=8)
    m = np.array([0.3, -0.2, 1.1])
    a = phspace.apply_group(sp, phspace.compose(sp, g1, g2), m)
    b = phspace.apply_group(sp, g1, phspace.apply_group(sp, g2, m))
    assert np.allclose(a, b, atol=1e-12)


def test_sampling_deterministic():
    sp = phspace.parse_space("definite:B=I,n=3")
    a = phspace.sample_group(sp, 5, seed=1)
    b = phspace.sample_group(sp, 5, seed=1)
    assert all(x.alpha == y.alpha and x.R == y.R for x, y in zip(a, b))


def test_sample_group_rejects_negative_count():
    with pytest.raises(DomainError):
        phspace.sample_group(phspace.scalar1d(), -1, seed=0)
