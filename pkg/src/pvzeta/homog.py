"""Homogeneous distributions on R and on R^n minus the origin.

t_+^s is t^s on t > 0 and 0 elsewhere, continued meromorphically in s by
integration by parts; at the poles s = -k it is replaced by the
log-regularized finite part

    <t_+^{-k}, phi> = -1/(k-1)! integral_0^inf log(t) phi^{(k)}(t) dt
                      + H_{k-1} phi^{(k-1)}(0) / (k-1)!

with H_{k-1} the (k-1)-th harmonic number.  R_s phi(m) = t_+^{s+n-1}
applied to the ray profile t -> phi(t m); at the critical degree s = -n
it is invariant under scaling of m, which is what makes the extension of
a degree -n homogeneous density k across the origin well defined up to
delta terms:

    kdot(phi) = <k, psi * R_{-n} phi>

for any radial cutoff psi(m) = eta(|m|) with logarithmic mass
integral_0^inf eta(t) dt/t = 1.  An equivalent extension integrates
k * R_{-n} phi over the unit sphere; the two differ by a multiple of
phi(0) only.
"""

from __future__ import annotations

import math

import numpy as np

from . import quad, special, testfn, zeta
from .errors import DomainError
from .report import CheckReport


# ---------------------------------------------------------------------------
# 1D profiles with exact derivatives used by the known-constant oracles


class ExpProfile:
    """g(t) = c e^{-a t}, closed under differentiation (the smooth
    extension of e^{-t} used by the Euler-Mascheroni oracle)."""

    def __init__(self, a=1.0, c=1.0):
        if a <= 0:
            raise DomainError("decay rate must be positive")
        self.a = float(a)
        self.c = complex(c)
        self.decay = testfn.Decay("other")

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = self.c * np.exp(-self.a * t)
        return out.real if self.c.imag == 0.0 else out

    def derivative(self, k=1):
        return ExpProfile(self.a, self.c * (-self.a) ** int(k))

    def cutoff(self, tol=1e-18):
        amp = abs(self.c) + 1.0
        return (max(-math.log(tol), 1.0) + math.log(amp)) / self.a + 2.0


class ScaledProfile:
    """lam^{-1} g(t / lam) for a profile g, closed under differentiation."""

    def __init__(self, base, lam, order=0):
        if lam <= 0:
            raise DomainError("scale must be positive")
        self.base = base
        self.lam = float(lam)
        self.order = int(order)
        self.decay = getattr(base, "decay", testfn.Decay("other"))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        g = self.base if self.order == 0 else self.base.derivative(self.order)
        return np.asarray(g(t / self.lam)) / self.lam ** (self.order + 1)

    def derivative(self, k=1):
        return ScaledProfile(self.base, self.lam, self.order + int(k))

    def cutoff(self, tol=1e-18):
        base_cut = self.base.cutoff(tol) if hasattr(self.base, "cutoff") else 0.0
        return base_cut * self.lam


def _as_profile(phi):
    """Accept a TestFunction on R (take its +1 ray) or any profile object
    exposing __call__ / derivative / cutoff."""
    if hasattr(phi, "ray"):
        if phi.n != 1:
            raise DomainError("t_+^s pairs against functions on R")
        return phi.ray(np.array([1.0]))
    if callable(phi) and hasattr(phi, "derivative"):
        return phi
    raise DomainError("expected a 1D TestFunction or a differentiable profile")


# ---------------------------------------------------------------------------
# t_+^s


def tplus_profile(s, profile, tol=1e-11):
    """<t_+^s, g> for a 1D profile g."""
    s = complex(s)
    if s.imag == 0.0 and s.real <= -1.0 + 1e-14 and s.real == round(s.real):
        k = -int(round(s.real))
        gk = profile.derivative(k)
        gk1 = profile.derivative(k - 1) if k > 1 else profile
        cut = profile.cutoff(1e-18) if hasattr(profile, "cutoff") else np.inf
        if cut <= 0.0:
            cut = np.inf
        # log t is dominated by t^{-1/2}; declaring that exponent routes the
        # integral through the softening substitution
        res = quad.integrate_1d(
            lambda t: np.log(t) * gk(t),
            0.0,
            cut,
            spec=quad.SingularitySpec("left", -0.5, log_factor=True),
            tol=tol,
        )
        fact = math.factorial(k - 1)
        g0 = complex(np.asarray(gk1(0.0), dtype=complex).ravel()[0])
        value = -complex(res.value) / fact + special.harmonic(k - 1) * g0 / fact
        return value.real if value.imag == 0.0 else value
    mv = zeta.mellin_profile(profile, s, tol=tol)
    return complex(mv.value) if isinstance(mv.value, complex) else mv.value


def tplus_pair(s, phi, tol=1e-11):
    """<t_+^s, phi>: direct integral for Re s > -1, continuation by parts
    for non-integer s <= -1, the log-regularized finite part at s = -k."""
    return tplus_profile(s, _as_profile(phi), tol=tol)


def tplus_functional(s):
    """t_+^s packaged as a HomogFunctional on the line."""
    return HomogFunctional(
        degree=complex(s),
        density=None,
        n=1,
        domain="line",
        label=f"tplus:s={s}",
        pairing=lambda phi, tol=1e-11: tplus_pair(s, phi, tol=tol),
    )


# ---------------------------------------------------------------------------
# Homogeneous functionals and radial cutoffs


class HomogFunctional:
    """A distribution homogeneous of a stated degree.

    On the line it may be given purely by a pairing rule (t_+^s); on the
    punctured n-space it is a pointwise density on R^n minus the origin,
    paired by quadrature away from 0.
    """

    def __init__(self, degree, density, n=1, domain=None, label="k", pairing=None):
        self.degree = complex(degree)
        self.density = density
        self.n = int(n)
        self.domain = domain or ("line" if n == 1 else f"punctured-n-space({n})")
        self.label = label
        self._pairing = pairing

    def __call__(self, m):
        if self.density is None:
            raise DomainError(f"{self.label} has no pointwise density")
        return self.density(np.asarray(m, dtype=float))

    def pair(self, phi, tol=1e-11):
        if self._pairing is not None:
            return self._pairing(phi, tol=tol)
        return self.direct_pair(phi, tol=tol)

    def direct_pair(self, phi, inner=None, outer=None, tol=1e-11, sphere_order=16):
        """Direct integral of density * phi over an annulus containing the
        support of phi (phi must vanish near 0 for this to be the honest
        pairing at the critical degree)."""
        if self.density is None:
            raise DomainError(f"{self.label} has no pointwise density")
        n = self.n
        outer = outer if outer is not None else phi.decay.cutoff(1e-16)
        if not np.isfinite(outer) or outer <= 0.0:
            raise DomainError("direct pairing needs a finite support bound")
        inner = inner if inner is not None else 0.0
        if n == 1:
            total = 0.0 + 0.0j
            for sgn in (1.0, -1.0):
                r = quad.integrate_1d(
                    lambda t, sgn=sgn: self.density(np.array([sgn * t])) * complex(phi(sgn * t)),
                    inner,
                    outer,
                    tol=tol,
                )
                total += complex(r.value)
        else:
            pts, wts = quad.sphere_quadrature(n, order=sphere_order)
            total = 0.0 + 0.0j
            for om, w in zip(pts, wts):
                r = quad.integrate_1d(
                    lambda t, om=om: self.density(t * om) * complex(phi(t * om)) * t ** (n - 1),
                    inner,
                    outer,
                    tol=tol,
                )
                total += w * complex(r.value)
        return total.real if total.imag == 0.0 else total


def homog_density(degree, density, n=1, label="k"):
    """HomogFunctional from a pointwise density on R^n minus the origin."""
    return HomogFunctional(degree, density, n=n, label=label)


class RadialCutoff:
    """psi(m) = eta(|m|) with eta smooth, supported in [a, b], and
    normalized so integral_0^inf eta(t) dt/t = 1."""

    def __init__(self, a, b, norm):
        self.a = float(a)
        self.b = float(b)
        self.norm = float(norm)

    def eta(self, t):
        t = np.asarray(t, dtype=float)
        mid = 0.5 * (self.a + self.b)
        half = 0.5 * (self.b - self.a)
        u = (t - mid) / half
        out = np.zeros(u.shape)
        inside = np.abs(u) < 1.0
        with np.errstate(divide="ignore", over="ignore"):
            out[inside] = np.exp(-1.0 / (1.0 - u[inside] ** 2))
        return self.norm * out

    def __call__(self, m):
        m = np.asarray(m, dtype=float)
        r = np.abs(m) if m.ndim == 0 or m.shape[-1:] == () else np.linalg.norm(np.atleast_1d(m), axis=-1)
        return self.eta(r)

    def log_mass(self, tol=1e-12):
        res = quad.integrate_1d(lambda t: self.eta(t) / t, self.a, self.b, tol=tol)
        return float(np.real(complex(res.value)))


def make_cutoff(a, b):
    """Bump profile on [a, b] rescaled to unit logarithmic mass."""
    if not (0.0 < a < b):
        raise DomainError("cutoff needs 0 < a < b")
    raw = RadialCutoff(a, b, 1.0)
    mass = raw.log_mass()
    return RadialCutoff(a, b, 1.0 / mass)


# ---------------------------------------------------------------------------
# R_s and the extension of degree -n densities


def rs_transform(phi, s, m, tol=1e-11):
    """R_s phi(m) = t_+^{s+n-1} applied to t -> phi(t m), m != 0."""
    m = np.atleast_1d(np.asarray(m, dtype=float))
    if not np.any(m):
        raise DomainError("R_s is defined away from the origin")
    return tplus_profile(complex(s) + phi.n - 1.0, phi.ray(m), tol=tol)


def extend_kdot(k, psi, phi, tol=1e-10, sphere_order=16):
    """kdot(phi) = <k, psi * R_{-n} phi>: the extension of a degree -n
    homogeneous density across the origin, evaluated pointwise on the
    support annulus of the cutoff."""
    n = k.n
    if phi.n != n:
        raise DomainError("test function dimension does not match the density")
    if k.density is None:
        raise DomainError("extension needs a pointwise density")
    s_crit = -float(n)

    def rphi(m):
        return complex(rs_transform(phi, s_crit, m, tol=tol))

    if n == 1:
        total = 0.0 + 0.0j
        for sgn in (1.0, -1.0):
            r = quad.integrate_1d(
                lambda t, sgn=sgn: complex(np.asarray(k(np.array([sgn * t]))).item())
                * float(psi.eta(t))
                * rphi(np.array([sgn * t])),
                psi.a,
                psi.b,
                tol=tol,
            )
            total += complex(r.value)
    else:
        pts, wts = quad.sphere_quadrature(n, order=sphere_order)
        total = 0.0 + 0.0j
        for om, w in zip(pts, wts):
            r = quad.integrate_1d(
                lambda t, om=om: complex(k(t * om)) * float(psi.eta(t)) * rphi(t * om) * t ** (n - 1),
                psi.a,
                psi.b,
                tol=tol,
            )
            total += w * complex(r.value)
    return total.real if total.imag == 0.0 else total


def extend_sphere(k, phi, tol=1e-10, sphere_order=16):
    """The sphere-integral extension: integral over |omega| = 1 of
    k(omega) R_{-n} phi(omega)."""
    n = k.n
    if phi.n != n:
        raise DomainError("test function dimension does not match the density")
    s_crit = -float(n)
    if n == 1:
        total = 0.0 + 0.0j
        for sgn in (1.0, -1.0):
            om = np.array([sgn])
            total += complex(k(om)) * complex(rs_transform(phi, s_crit, om, tol=tol))
    else:
        pts, wts = quad.sphere_quadrature(n, order=sphere_order)
        total = 0.0 + 0.0j
        for om, w in zip(pts, wts):
            total += w * complex(k(om)) * complex(rs_transform(phi, s_crit, om, tol=tol))
    return total.real if total.imag == 0.0 else total


# ---------------------------------------------------------------------------
# Packaged checks (CLI surface)


def check_homogeneity(s, phi, lam, tol=1e-8):
    """<t_+^s, lam^{-1} phi(./lam)> vs lam^s <t_+^s, phi>."""
    prof = _as_profile(phi)
    lhs = tplus_profile(s, ScaledProfile(prof, lam))
    rhs = complex(lam) ** complex(s) * complex(tplus_profile(s, prof))
    label = getattr(phi, "label", type(phi).__name__)
    return CheckReport(
        check="homog-homogeneity",
        params={"s": complex(s), "lambda": float(lam), "testfn": label},
        lhs=complex(lhs),
        rhs=rhs,
        tolerance=tol,
        anchor="Eq13",
    )


def check_tplus_int(tol=1e-8):
    """Known-constant oracle: <t_+^{-1}, e^{-t}> = -EulerGamma."""
    val = tplus_profile(-1.0, ExpProfile(1.0))
    return CheckReport(
        check="homog-tplus-int",
        params={"k": 1, "testfn": "exp:a=1"},
        lhs=complex(val),
        rhs=complex(-np.euler_gamma),
        tolerance=tol,
        anchor="Eq13",
    )


def check_extension_restricts(k, psi, phi, tol=1e-8):
    """For phi supported away from 0 the extension must equal the direct
    pairing of the density against phi."""
    lhs = extend_kdot(k, psi, phi)
    rhs = k.direct_pair(phi)
    return CheckReport(
        check="homog-extension-restricts",
        params={"density": k.label, "cutoff": [psi.a, psi.b], "testfn": phi.label},
        lhs=complex(lhs),
        rhs=complex(rhs),
        tolerance=tol,
        anchor="Eq13",
    )


def check_ambiguity(k, psi1, psi2, phis, tol=1e-6):
    """The difference of two extensions is a delta at 0: the ratio
    (kdot_1 - kdot_2)(phi) / phi(0) must be the same constant for every
    phi with phi(0) != 0."""
    consts = []
    for phi in phis:
        p0 = complex(phi(np.zeros(k.n) if k.n > 1 else 0.0))
        if abs(p0) < 1e-12:
            raise DomainError("ambiguity check needs phi(0) != 0")
        d = complex(extend_kdot(k, psi1, phi)) - complex(extend_kdot(k, psi2, phi))
        consts.append(d / p0)
    spread = max(abs(c - consts[0]) for c in consts)
    scale = max(abs(consts[0]), 1e-300)
    rep = CheckReport(
        check="homog-ambiguity",
        params={"density": k.label, "cutoffs": [[psi1.a, psi1.b], [psi2.a, psi2.b]], "count": len(phis)},
        lhs=complex(consts[0]),
        rhs=complex(consts[-1]),
        tolerance=tol,
        anchor="Eq13",
        extra={"constants": [complex(c) for c in consts], "relative_spread": spread / scale},
    )
    rep.rel_residual = spread / scale
    rep.status = "pass" if rep.rel_residual < tol else "fail"
    return rep
