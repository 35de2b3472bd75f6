"""Descriptors of the three worked prehomogeneous spaces.

Scalar1D: V = R with p(m) = m under dilations.  Definite: V = R^n with
p(m) = m^T B m for positive definite B, group R_+* x SO(B).  Indefinite:
the same with B of signature (q, n - q) in diagonal form, group
R_+* x SO(B) acting by m -> alpha R m.  The relative invariance
p(rho(g) m) = chi(g) p(m) holds with chi(g) = alpha for the scalar case
and alpha^2 for the quadratic ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .errors import ConfigError, DomainError
from .report import CheckReport


@dataclass(frozen=True)
class PVSpace:
    kind: str  # scalar1d | definite | indefinite
    n: int
    B: tuple = None  # row-major entries for quadratic kinds
    q: int = 0

    @property
    def Bmat(self):
        if self.B is None:
            return None
        return np.array(self.B, dtype=float).reshape(self.n, self.n)

    @property
    def deg_p(self):
        return 1 if self.kind == "scalar1d" else 2

    @property
    def components(self):
        if self.kind == "scalar1d":
            return ("V1", "V2")
        if self.kind == "definite":
            return ("V1",)
        return ("plus", "minus")

    def __repr__(self):
        if self.kind == "scalar1d":
            return "PVSpace(scalar1d)"
        return f"PVSpace({self.kind}, n={self.n}, q={self.q})"


def scalar1d():
    return PVSpace("scalar1d", 1)


def definite(B=None, n=None):
    if B is None:
        B = np.eye(n)
    B = np.atleast_2d(np.asarray(B, dtype=float))
    n = B.shape[0]
    if not np.allclose(B, B.T) or np.linalg.eigvalsh(B)[0] <= 0:
        raise DomainError("definite kind needs symmetric positive definite B")
    return PVSpace("definite", n, tuple(B.ravel()), q=n)


def indefinite(B=None, q=None, n=None):
    """Indefinite kind; B must be diagonal of signature (q, n - q)
    (general symmetric B should be reduced by congruence first)."""
    if B is None:
        if q is None or n is None:
            raise DomainError("indefinite kind needs B or (q, n)")
        B = np.diag([1.0] * q + [-1.0] * (n - q))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    n = B.shape[0]
    d = np.diag(B)
    if not np.allclose(B, np.diag(d)) or np.any(d == 0.0):
        raise DomainError("indefinite B must be diagonal with nonzero entries")
    qq = int(np.sum(d > 0))
    if q is not None and q != qq:
        raise DomainError(f"B has signature ({qq}, {n - qq}), not ({q}, {n - q})")
    if qq < 1 or qq > n - 1:
        raise DomainError("signature must be genuinely indefinite")
    return PVSpace("indefinite", n, tuple(B.ravel()), q=qq)


@dataclass(frozen=True)
class GroupElement:
    alpha: float
    R: tuple = None  # row-major rotation part for quadratic kinds; None for scalar

    def rot(self, n):
        if self.R is None:
            return np.eye(n)
        return np.array(self.R, dtype=float).reshape(n, n)


def identity_element(space):
    if space.kind == "scalar1d":
        return GroupElement(1.0)
    return GroupElement(1.0, tuple(np.eye(space.n).ravel()))


# ---------------------------------------------------------------------------


def rel_invariant(space, m):
    m = np.asarray(m, dtype=float)
    if space.kind == "scalar1d":
        return float(m) if m.ndim == 0 else m
    B = space.Bmat
    return np.einsum("...i,ij,...j->...", m, B, m) if m.ndim > 1 else float(m @ B @ m)


def dual_invariant(space, xi):
    xi = np.asarray(xi, dtype=float)
    if space.kind == "scalar1d":
        return float(xi) if xi.ndim == 0 else xi
    Binv = np.linalg.inv(space.Bmat)
    return np.einsum("...i,ij,...j->...", xi, Binv, xi) if xi.ndim > 1 else float(xi @ Binv @ xi)


def character(space, g):
    if space.kind == "scalar1d":
        return g.alpha
    return g.alpha ** 2


def apply_group(space, g, m):
    m = np.asarray(m, dtype=float)
    if space.kind == "scalar1d":
        return g.alpha * m
    return g.alpha * (g.rot(space.n) @ m)


def compose(space, g1, g2):
    if space.kind == "scalar1d":
        return GroupElement(g1.alpha * g2.alpha)
    R = g1.rot(space.n) @ g2.rot(space.n)
    return GroupElement(g1.alpha * g2.alpha, tuple(R.ravel()))


def component_of(space, m):
    """Component label of m, or None exactly on the singular set p = 0."""
    p = rel_invariant(space, m)
    if space.kind == "scalar1d":
        if p > 0:
            return "V1"
        return "V2" if p < 0 else None
    if space.kind == "definite":
        return "V1" if p != 0.0 else None
    if p > 0:
        return "plus"
    return "minus" if p < 0 else None


def check_relative_invariance(space, g, m, tol=1e-10):
    lhs = rel_invariant(space, apply_group(space, g, m))
    rhs = character(space, g) * rel_invariant(space, m)
    denom = max(1.0, abs(rel_invariant(space, m)))
    resid = abs(lhs - rhs) / denom
    rep = CheckReport(
        check="relative-invariance",
        params={"space": repr(space), "alpha": g.alpha, "m": list(np.atleast_1d(m))},
        lhs=lhs,
        rhs=rhs,
        tolerance=tol,
        anchor="EqE",
    )
    # normalize the residual as specified: |p(gm) - chi p(m)| / max(1, |p(m)|)
    rep.rel_residual = resid
    rep.status = "pass" if resid < tol else "fail"
    return rep


def sample_group(space, count, seed):
    """Seeded group elements: log alpha uniform in [-2, 2]; rotation part
    built to preserve B exactly (up to roundoff)."""
    if count < 0:
        raise DomainError("count must be nonnegative")
    rng = np.random.default_rng(seed)
    out = []
    n = space.n
    for _ in range(count):
        alpha = float(np.exp(rng.uniform(-2.0, 2.0)))
        if space.kind == "scalar1d":
            out.append(GroupElement(alpha))
            continue
        B = space.Bmat
        if space.kind == "definite":
            # R = B^{-1/2} Q B^{1/2} with Q in SO(n): R^T B R = B, det R = 1
            evals, evecs = np.linalg.eigh(B)
            Bh = evecs @ np.diag(np.sqrt(evals)) @ evecs.T
            Bih = evecs @ np.diag(1.0 / np.sqrt(evals)) @ evecs.T
            Q, _ = np.linalg.qr(rng.normal(size=(n, n)))
            if np.linalg.det(Q) < 0:
                Q[:, 0] = -Q[:, 0]
            R = Bih @ Q @ Bh
        else:
            # exp(B^{-1} S) with antisymmetric S preserves the form; scale
            # the generator so boosts stay mild (rapidity <= 2)
            S = rng.normal(size=(n, n))
            S = S - S.T
            X = np.linalg.inv(B) @ S
            norm = np.linalg.norm(X, 2)
            if norm > 2.0:
                X *= 2.0 / norm
            R = expm(X)
        out.append(GroupElement(alpha, tuple(R.ravel())))
    return out


def sample_points(space, count, seed, scale=1.5):
    """Seeded gaussian sample points in V (for randomized invariance tests)."""
    rng = np.random.default_rng(seed)
    pts = rng.normal(0.0, scale, size=(count, space.n))
    return pts[:, 0] if space.kind == "scalar1d" else pts


def parse_space(spec):
    """Build a PVSpace from a string like 'definite:B=I,n=3' or
    'indefinite:q=1,n=3' or 'scalar1d'."""
    name, _, rest = str(spec).partition(":")
    kw = {}
    if rest:
        for item in rest.split(","):
            k, _, v = item.partition("=")
            kw[k.strip()] = v.strip()
    try:
        if name == "scalar1d":
            return scalar1d()
        if name == "definite":
            n = int(kw.get("n", 3))
            if kw.get("B", "I") == "I":
                return definite(n=n)
            diag = [float(x) for x in kw["B"].split("|")]
            return definite(B=np.diag(diag))
        if name == "indefinite":
            n = int(kw.get("n", 3))
            q = int(kw.get("q", 1))
            if "B" in kw:
                diag = [float(x) for x in kw["B"].split("|")]
                return indefinite(B=np.diag(diag))
            return indefinite(q=q, n=n)
    except (KeyError, ValueError, DomainError) as exc:
        raise ConfigError(f"invalid space spec {spec!r}: {exc}") from exc
    raise ConfigError(f"unknown space kind {name!r}")
