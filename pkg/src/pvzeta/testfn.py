"""Schwartz test functions with exact derivatives and closed-form transforms.

Built-in families are polynomial-times-Gaussian (closed under derivatives
and Fourier transforms), Gaussians of a general positive quadratic form,
and compactly supported bumps.  Every function carries a decay descriptor
so quadrature routines can truncate tails honestly, and a ray() method
producing the 1D radial profile r -> phi(r * direction) with derivative
access, which is what the Mellin continuation machinery consumes.

Three Fourier conventions are named explicitly and every transform call
takes one; there is no module default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import quad
from .errors import ConfigError, DomainError


class FourierConvention(Enum):
    """Kernel / measure convention for the Fourier transform.

    TWOPI: forward kernel e^{-2 pi i m.xi}, measure dm (self-inverse up to
    reflection).  ANGULAR: forward kernel e^{-i m.xi}, inverse carries
    (2 pi)^{-n}.  ANGULAR_NORMALIZED: forward kernel e^{+i m.xi}, inverse
    kernel e^{-i m.xi} with measure (2 pi)^{-n} d xi.
    """

    TWOPI = "twopi"
    ANGULAR = "angular"
    ANGULAR_NORMALIZED = "angular-normalized"

    @classmethod
    def parse(cls, text):
        key = str(text).strip().lower().replace("_", "-")
        for member in cls:
            if member.value == key:
                return member
        aliases = {"2pi": cls.TWOPI, "ang": cls.ANGULAR, "angnorm": cls.ANGULAR_NORMALIZED}
        if key in aliases:
            return aliases[key]
        raise ConfigError(f"unknown Fourier convention: {text!r}")


@dataclass(frozen=True)
class Decay:
    """Tail bound descriptor: |phi(m)| <= C e^{-rate |m|^2} beyond shift,
    or phi = 0 outside |m - center| <= radius, or 'other' (scan for tails)."""

    kind: str  # gaussian | compact | other
    rate: float = 0.0
    radius: float = 0.0
    shift: float = 0.0

    def cutoff(self, tol=1e-18):
        """Radius beyond which the function is below tol (0 if unknown)."""
        if self.kind == "gaussian":
            big = max(-math.log(tol), 1.0)
            return self.shift + math.sqrt(big / self.rate) + 2.0 / math.sqrt(self.rate)
        if self.kind == "compact":
            return self.shift + self.radius
        return 0.0


# ---------------------------------------------------------------------------
# 1D radial profiles


class PolyGauss1D:
    """g(r) = (sum_k c_k r^k) e^{-a r^2}, closed under differentiation."""

    def __init__(self, coeffs, a):
        self.coeffs = np.atleast_1d(np.asarray(coeffs, dtype=complex))
        self.a = float(a)
        self.decay = Decay("gaussian", rate=self.a)

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        val = np.polynomial.polynomial.polyval(r, self.coeffs) * np.exp(-self.a * r * r)
        return val

    def derivative(self, k=1):
        c = self.coeffs
        a = self.a
        for _ in range(int(k)):
            d = np.zeros(len(c) + 1, dtype=complex)
            if len(c) > 1:
                d[: len(c) - 1] += np.arange(1, len(c)) * c[1:]
            d[1 : len(c) + 1] += -2.0 * a * c
            c = d
        return PolyGauss1D(c, a)

    def cutoff(self, tol=1e-18):
        amp = float(np.sum(np.abs(self.coeffs))) + 1.0
        big = max(-math.log(tol), 1.0) + math.log(amp)
        r = math.sqrt(big / self.a) + 2.0 / math.sqrt(self.a)
        scale = max(abs(complex(self.coeffs[0])), 1e-12)
        while abs(complex(self(r))) > tol * scale and r < 1e6:
            r *= 1.5
        return r


# orders 1 and 2 are O(h^4), orders 3 and 4 are O(h^2)
_FD_STENCILS = {
    1: ((-2, -1, 1, 2), (1.0 / 12.0, -2.0 / 3.0, 2.0 / 3.0, -1.0 / 12.0)),
    2: ((-2, -1, 0, 1, 2), (-1.0 / 12.0, 4.0 / 3.0, -5.0 / 2.0, 4.0 / 3.0, -1.0 / 12.0)),
    3: ((-2, -1, 1, 2), (-0.5, 1.0, -1.0, 0.5)),
    4: ((-2, -1, 0, 1, 2), (1.0, -4.0, 6.0, -4.0, 1.0)),
}


class NumericProfile:
    """1D profile backed by an evaluator; derivatives by central differences.

    Derivative order is capped at 4 (the O(h^2) stencil table); requesting
    deeper derivatives raises DomainError rather than returning noise.
    """

    def __init__(self, fn, decay, order=0, h=1e-3, oscillation=None):
        self.fn = fn
        self.decay = decay
        self.order = int(order)
        self.h = float(h)
        self.oscillation = oscillation
        self._scan_cut = None

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        if self.order == 0:
            return self.fn(r)
        offsets, weights = _FD_STENCILS[self.order]
        h = self.h
        acc = sum(w * self.fn(r + k * h) for k, w in zip(offsets, weights))
        return acc / h ** self.order

    def derivative(self, k=1):
        total = self.order + int(k)
        if total > 4:
            raise DomainError(
                f"numeric profiles support derivatives up to order 4, requested {total}"
            )
        return NumericProfile(self.fn, self.decay, order=total, h=self.h, oscillation=self.oscillation)

    def cutoff(self, tol=1e-14):
        cut = self.decay.cutoff(tol)
        if cut > 0.0:
            return cut
        if self._scan_cut is not None:
            return self._scan_cut
        # the scan cannot certify decay below the quadrature noise floor
        # of the evaluator, so the threshold is clamped there
        tol = max(tol, 1e-13)
        r, peak, below = 0.5, 1e-300, 0
        while r < 4096.0:
            v = abs(complex(np.asarray(self(r), dtype=complex).ravel()[0]))
            peak = max(peak, v)
            below = below + 1 if v < tol * peak else 0
            if below >= 4:
                break
            r *= 1.3
        self._scan_cut = r
        return r


# ---------------------------------------------------------------------------
# TestFunction


class TestFunction:
    """A Schwartz-class function on R^n.

    Evaluation is vectorized: for n = 1 any float array is accepted; for
    n > 1 the last axis indexes coordinates.  ray(direction) returns the
    profile r -> phi(r * direction) (direction need not be normalized).
    """

    def __init__(self, n, eval_fn, ray_fn, decay, label, fourier_fn=None, deriv_fn=None):
        self.n = int(n)
        self._eval = eval_fn
        self._ray = ray_fn
        self.decay = decay
        self.label = label
        self._fourier = fourier_fn
        self._deriv = deriv_fn

    def __call__(self, m):
        m = np.asarray(m, dtype=float)
        if self.n == 1:
            scalar = m.ndim == 0
            vals = self._eval(np.atleast_1d(m)[..., None])
            return vals[0] if scalar else vals
        return self._eval(m)

    def ray(self, direction):
        direction = np.atleast_1d(np.asarray(direction, dtype=float))
        if direction.shape != (self.n,):
            raise DomainError(f"ray direction must have length {self.n}")
        if not np.any(direction):
            raise DomainError("ray direction must be nonzero")
        return self._ray(direction)

    def derivative(self, alpha):
        """Partial derivative evaluator for the multi-index alpha
        (an int for n = 1).  Exact for polynomial-Gaussian families,
        O(h^2) central differences otherwise."""
        if isinstance(alpha, int):
            alpha = (alpha,)
        alpha = tuple(int(a) for a in alpha)
        if len(alpha) != self.n or any(a < 0 for a in alpha):
            raise DomainError(f"bad multi-index {alpha} for dimension {self.n}")
        if self._deriv is not None:
            return self._deriv(alpha)
        return _fd_partial(self, alpha)

    @property
    def has_closed_fourier(self):
        return self._fourier is not None

    def __repr__(self):
        return f"TestFunction({self.label})"


def _fd_partial(phi, alpha, h=1e-3):
    order = sum(alpha)
    if order > 4:
        raise DomainError("finite-difference partial derivatives capped at total order 4")

    fun = phi._eval
    for axis, k in enumerate(alpha):
        if k == 0:
            continue
        offsets, weights = _FD_STENCILS[k]

        def make(prev, axis=axis, k=k, offsets=offsets, weights=weights):
            def out(pts):
                acc = None
                for off, w in zip(offsets, weights):
                    q = np.array(pts, dtype=float)
                    q[..., axis] += off * h
                    term = w * prev(q)
                    acc = term if acc is None else acc + term
                return acc / h ** k

            return out

        fun = make(fun)

    def wrapper(m):
        m = np.asarray(m, dtype=float)
        if phi.n == 1:
            scalar = m.ndim == 0
            vals = fun(np.atleast_1d(m)[..., None])
            return vals[0] if scalar else vals
        return fun(m)

    return wrapper


# ---------------------------------------------------------------------------
# Polynomial x Gaussian family


def _pg_eval(coeffs, a, n):
    def ev(m):
        m = np.asarray(m, dtype=float)
        r2 = np.sum(m * m, axis=-1)
        out = np.zeros(r2.shape, dtype=complex)
        for beta, c in coeffs.items():
            mono = np.ones(r2.shape)
            for j, bj in enumerate(beta):
                if bj:
                    mono = mono * m[..., j] ** bj
            out = out + c * mono
        out = out * np.exp(-a * r2)
        if np.all(np.abs(out.imag) == 0.0):
            return out.real
        return out

    return ev


def _pg_diff(coeffs, a, axis):
    out = {}
    for beta, c in coeffs.items():
        if beta[axis] > 0:
            lo = tuple(b - (j == axis) for j, b in enumerate(beta))
            out[lo] = out.get(lo, 0.0) + beta[axis] * c
        hi = tuple(b + (j == axis) for j, b in enumerate(beta))
        out[hi] = out.get(hi, 0.0) - 2.0 * a * c
    return {b: c for b, c in out.items() if c != 0.0}


_FT_CONST = {
    FourierConvention.TWOPI: (lambda a, n: (math.pi / a) ** (n / 2.0), lambda a: math.pi ** 2 / a, 1j / (2.0 * math.pi)),
    FourierConvention.ANGULAR: (lambda a, n: (math.pi / a) ** (n / 2.0), lambda a: 1.0 / (4.0 * a), 1j),
    FourierConvention.ANGULAR_NORMALIZED: (lambda a, n: (math.pi / a) ** (n / 2.0), lambda a: 1.0 / (4.0 * a), -1j),
}


def polygauss(coeffs, a, n, label=None):
    """P(m) e^{-a|m|^2} with P given as {multi-index: coefficient}."""
    if a <= 0:
        raise DomainError("gaussian rate must be positive")
    coeffs = {tuple(int(b) for b in beta): complex(c) for beta, c in coeffs.items()}
    for beta in coeffs:
        if len(beta) != n:
            raise DomainError("multi-index length must equal the dimension")
    label = label or f"polygauss:a={a:g},n={n}"

    def ray_fn(direction):
        a1 = a * float(np.dot(direction, direction))
        maxdeg = max((sum(b) for b in coeffs), default=0)
        c1 = np.zeros(maxdeg + 1, dtype=complex)
        for beta, c in coeffs.items():
            mono = 1.0
            for j, bj in enumerate(beta):
                mono *= direction[j] ** bj
            c1[sum(beta)] += c * mono
        return PolyGauss1D(c1, a1)

    def deriv(alpha):
        cur = coeffs
        for axis, k in enumerate(alpha):
            for _ in range(k):
                cur = _pg_diff(cur, a, axis)
        ev = _pg_eval(cur, a, n)

        def wrapper(m):
            m = np.asarray(m, dtype=float)
            if n == 1:
                scalar = m.ndim == 0
                vals = ev(np.atleast_1d(m)[..., None])
                return vals[0] if scalar else vals
            return ev(m)

        return wrapper

    def fourier_fn(conv):
        c0_fn, b_fn, kappa = _FT_CONST[conv]
        c0 = c0_fn(a, n)
        b = b_fn(a)
        acc = {}
        for beta, c in coeffs.items():
            term = {tuple([0] * n): complex(c0)}
            for axis, k in enumerate(beta):
                for _ in range(k):
                    term = _pg_diff(term, b, axis)
            scale = c * kappa ** sum(beta)
            for g, v in term.items():
                acc[g] = acc.get(g, 0.0) + scale * v
        return polygauss(acc, b, n, label=f"ft[{conv.value}]({label})")

    return TestFunction(
        n,
        _pg_eval(coeffs, a, n),
        ray_fn,
        Decay("gaussian", rate=a),
        label,
        fourier_fn=fourier_fn,
        deriv_fn=deriv,
    )


def gaussian(a, n=1):
    """phi(m) = e^{-a |m|^2}."""
    return polygauss({tuple([0] * n): 1.0}, a, n, label=f"gaussian:a={a:g},n={n}")


def hermite_gaussian(d, a, n=1):
    """phi(m) = m_1^d e^{-a |m|^2} (monomial in the first coordinate)."""
    if d > 4:
        raise DomainError("polynomial degree capped at 4")
    beta = tuple([d] + [0] * (n - 1))
    return polygauss({beta: 1.0}, a, n, label=f"hermite:d={d},a={a:g},n={n}")


# ---------------------------------------------------------------------------
# Gaussian of a quadratic form


def gaussian_quadform(A, n=None, pref=1.0, label=None):
    """phi(m) = pref * e^{-m^T A m} for symmetric positive definite A."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    n = A.shape[0] if n is None else int(n)
    if A.shape != (n, n) or not np.allclose(A, A.T):
        raise DomainError("A must be a symmetric n x n matrix")
    eigs = np.linalg.eigvalsh(A)
    if eigs[0] <= 0:
        raise DomainError("A must be positive definite")
    label = label or f"quadgauss:n={n}"
    pref = complex(pref)

    def ev(m):
        m = np.asarray(m, dtype=float)
        q = np.einsum("...i,ij,...j->...", m, A, m)
        out = pref * np.exp(-q)
        return out.real if pref.imag == 0.0 else out

    def ray_fn(direction):
        a1 = float(direction @ A @ direction)
        return PolyGauss1D([pref], a1)

    def fourier_fn(conv):
        c0_fn, b_fn, _ = _FT_CONST[conv]
        detA = float(np.linalg.det(A))
        scale = pref * math.pi ** (n / 2.0) / math.sqrt(detA)
        Ainv = np.linalg.inv(A)
        if conv is FourierConvention.TWOPI:
            B = math.pi ** 2 * Ainv
        else:
            B = Ainv / 4.0
        return gaussian_quadform(B, n, pref=scale, label=f"ft[{conv.value}]({label})")

    return TestFunction(n, ev, ray_fn, Decay("gaussian", rate=float(eigs[0])), label, fourier_fn=fourier_fn)


# ---------------------------------------------------------------------------
# Bump


def bump(center=0.0, radius=1.0, n=1):
    """Scaled e^{-1/(1-u^2)} profile supported on |m - center| <= radius."""
    if radius <= 0:
        raise DomainError("bump radius must be positive")
    c = np.zeros(n) + np.asarray(center, dtype=float)
    label = f"bump:c={float(np.linalg.norm(c)):g},r={radius:g},n={n}"

    def ev(m):
        m = np.asarray(m, dtype=float)
        u2 = np.sum((m - c) ** 2, axis=-1) / radius ** 2
        out = np.zeros(u2.shape)
        inside = u2 < 1.0
        with np.errstate(divide="ignore", over="ignore"):
            out[inside] = np.exp(-1.0 / (1.0 - u2[inside]))
        return out

    decay = Decay("compact", radius=radius, shift=float(np.linalg.norm(c)))
    even = not np.any(c)

    def ray_fn(direction):
        dn = float(np.linalg.norm(direction))
        cut = (float(np.linalg.norm(c)) + radius) / dn + 1.0

        def fn(r):
            r = np.asarray(r, dtype=float)
            pts = r[..., None] * direction
            return ev(pts)

        return NumericProfile(fn, Decay("compact", radius=cut))

    out = TestFunction(n, ev, ray_fn, decay, label)
    out.even_symmetric = even
    return out


# ---------------------------------------------------------------------------
# Fourier transform (closed form when available, quadrature otherwise)


def fourier(phi, convention, tol=1e-8):
    """Fourier transform of phi under the named convention.

    Returns a TestFunction; closed form for the Gaussian families, a
    quadrature-backed evaluator otherwise (n = 1 by oscillatory quadrature,
    n = 2, 3 for radial functions by Hankel/sinc reduction).
    """
    convention = FourierConvention(convention) if not isinstance(convention, FourierConvention) else convention
    if phi.has_closed_fourier:
        return phi._fourier(convention)
    return _numeric_fourier(phi, convention, tol)


_KERNEL_SCALE = {
    FourierConvention.TWOPI: 2.0 * math.pi,
    FourierConvention.ANGULAR: 1.0,
    FourierConvention.ANGULAR_NORMALIZED: -1.0,
}


def _numeric_fourier(phi, conv, tol):
    scale = _KERNEL_SCALE[conv]
    cut = phi.decay.cutoff(1e-18)
    if cut <= 0.0:
        raise DomainError("numeric transform needs a decay certificate")

    if phi.n == 1:
        # Vectorized composite Gauss-Legendre with the panel count tied to
        # the total phase |scale * xi| * 2 cut keeps every evaluation fast
        # enough to sit inside a radial Mellin quadrature.  Even functions
        # have even real transforms, so those evaluations are cached by
        # |frequency| (the two Mellin rays then share all evaluations).
        x16, w16 = quad.gauss_legendre(16)
        even = bool(getattr(phi, "even_symmetric", False))
        cache = {}

        def fhat_scalar(xi):
            w = scale * float(xi)
            if even:
                w = abs(w)
            hit = cache.get(w)
            if hit is not None:
                return hit
            npanel = max(4, int(abs(w) * 2.0 * cut / 10.0) + 4)
            edges = np.linspace(-cut, cut, npanel + 1)
            mid = 0.5 * (edges[1:] + edges[:-1])
            half = 0.5 * (edges[1:] - edges[:-1])
            nodes = (mid[:, None] + half[:, None] * x16[None, :]).ravel()
            wts = (half[:, None] * w16[None, :]).ravel()
            vals = np.asarray(phi(nodes))
            if np.iscomplexobj(vals):
                res = complex(np.sum(wts * vals * np.exp(-1j * w * nodes)))
            else:
                wv = wts * vals
                res = complex(np.dot(wv, np.cos(w * nodes)), -np.dot(wv, np.sin(w * nodes)))
            cache[w] = res
            return res
    else:
        if phi.decay.shift != 0.0:
            raise DomainError("numeric transforms in n > 1 require a radial (centered) function")
        e1 = np.zeros(phi.n)
        e1[0] = 1.0
        prof = phi.ray(e1)
        from scipy.integrate import quad as _squad
        from scipy.special import j0 as _j0

        def fhat_scalar(xi):
            k = abs(scale) * float(np.linalg.norm(xi))
            if phi.n == 2:
                integ = lambda r: float(prof(r)) * r * _j0(k * r)
                pref = 2.0 * math.pi
            else:
                def integ(r):
                    x = k * r
                    s = math.sin(x) / x if x > 1e-8 else 1.0 - x * x / 6.0
                    return float(prof(r)) * r * r * s

                pref = 4.0 * math.pi
            val, _ = _squad(integ, 0.0, cut, limit=200, epsabs=1e-13, epsrel=1e-11)
            return pref * val

    def ev(m):
        m = np.asarray(m, dtype=float)
        pts = m.reshape(-1, m.shape[-1]) if m.ndim > 1 else m.reshape(-1, 1) if phi.n == 1 else m.reshape(1, -1)
        vals = np.array([fhat_scalar(p if phi.n > 1 else float(p[0])) for p in pts], dtype=complex)
        if np.all(vals.imag == 0.0):
            vals = vals.real
        if phi.n == 1:
            return vals.reshape(m.shape)
        return vals.reshape(m.shape[:-1])

    # The transform of a function supported in |m| <= cut oscillates in xi
    # no faster than |scale| * cut radians per unit, hence this wavelength.
    wavelength = 2.0 * math.pi / (abs(scale) * cut)

    def ray_fn(direction):
        dn = float(np.linalg.norm(direction))

        def fn(r):
            r = np.asarray(r, dtype=float)
            flat = np.atleast_1d(r).ravel()
            out = np.array([fhat_scalar(float(x) * direction if phi.n > 1 else float(x) * float(direction[0])) for x in flat], dtype=complex)
            if np.all(out.imag == 0.0):
                out = out.real
            return out.reshape(np.shape(r))

        return NumericProfile(fn, Decay("other"), oscillation=wavelength / dn)

    label = f"ft[{conv.value}]({phi.label})"
    out = TestFunction(phi.n, ev, ray_fn, Decay("other"), label)
    out.oscillation = wavelength
    return out


# ---------------------------------------------------------------------------
# Pointwise product with a smooth weight (used by weighted zeta integrals)


def product_with(phi, w, label=None):
    """TestFunction for m -> w(m) phi(m); derivatives fall back to FD."""
    label = label or f"({phi.label})*weight"

    def ev2(m):
        m = np.asarray(m, dtype=float)
        arg = m if phi.n > 1 else m[..., 0]
        return np.asarray(w(arg)) * phi._eval(m)

    def ray_fn(direction):
        base = phi.ray(direction)

        def fn(r):
            r = np.asarray(r, dtype=float)
            pts = r[..., None] * direction
            arg = pts if phi.n > 1 else pts[..., 0]
            return np.asarray(w(arg)) * np.asarray(base(r))

        return NumericProfile(fn, base.decay)

    return TestFunction(phi.n, ev2, ray_fn, phi.decay, label)


# ---------------------------------------------------------------------------
# CLI spec parsing


def parse_testfn(spec):
    """Build a TestFunction from a string like 'gaussian:a=3.14159,n=1'."""
    name, _, rest = str(spec).partition(":")
    kw = {}
    if rest:
        for item in rest.split(","):
            k, _, v = item.partition("=")
            if not _:
                raise ConfigError(f"bad test-function parameter {item!r} in {spec!r}")
            kw[k.strip()] = v.strip()
    try:
        if name == "gaussian":
            return gaussian(float(kw.get("a", math.pi)), int(kw.get("n", 1)))
        if name == "hermite":
            return hermite_gaussian(int(kw.get("d", 2)), float(kw.get("a", math.pi)), int(kw.get("n", 1)))
        if name == "bump":
            return bump(float(kw.get("c", 0.0)), float(kw.get("r", 1.0)), int(kw.get("n", 1)))
    except (ValueError, DomainError) as exc:
        raise ConfigError(f"invalid test-function spec {spec!r}: {exc}") from exc
    raise ConfigError(f"unknown test-function family {name!r}")
