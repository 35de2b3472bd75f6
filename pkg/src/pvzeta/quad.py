"""Quadrature engines: singular radial integrals, balls, spheres,
indefinite quadratic-form components in hyperbolic coordinates, and
1D oscillatory Fourier integrals.

Endpoint singularities t^alpha (alpha > -1) are removed by the
substitution t = u^{1/(1+alpha)} before handing the integrand to an
adaptive Gauss-Kronrod rule.  Radial integrals with a non-integrable
power weight are continued by integration by parts on the smooth factor
(radial_power_integral), which is the numerical backbone of every
meromorphic continuation in the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad as _scipy_quad

from .errors import DomainError, NonConvergence, PoleError


@dataclass(frozen=True)
class SingularitySpec:
    """Declared endpoint behavior of an integrand: f ~ t^exponent
    (times an optional log factor) at the named endpoint."""

    endpoint: str = "none"  # left | right | none
    exponent: float = 0.0
    log_factor: bool = False

    def __post_init__(self):
        if self.endpoint not in ("left", "right", "none"):
            raise DomainError(f"bad endpoint {self.endpoint!r}")
        if self.exponent <= -1.0:
            raise DomainError("endpoint exponent must exceed -1 (integrability)")


@dataclass
class QuadResult:
    value: complex
    error_estimate: float
    evaluations: int

    def __complex__(self):
        return complex(self.value)


def _counting(f):
    count = [0]

    def g(t):
        count[0] += 1
        return f(t)

    return g, count


def _quad_piece(f, a, b, tol):
    try:
        val, err = _scipy_quad(f, a, b, limit=400, epsabs=tol * 1e-2, epsrel=tol * 1e-2, complex_func=True)
    except Exception as exc:  # pragma: no cover - scipy failure path
        raise NonConvergence(f"quadrature failed on ({a}, {b}): {exc}") from exc
    err = float(abs(err))
    if not np.isfinite(err) or not np.isfinite(val):
        raise NonConvergence(f"quadrature did not converge on ({a}, {b})")
    return complex(val), err


def integrate_1d(f, a, b, spec=None, tol=1e-10):
    """Integrate f on (a, b) (b may be +inf) with a declared endpoint
    singularity removed by power substitution.  Returns QuadResult."""
    g, count = _counting(f)
    total, err = 0.0 + 0.0j, 0.0
    pieces = []

    if spec is not None and spec.endpoint == "left" and spec.exponent < 0.0:
        alpha = spec.exponent
        p = 1.0 / (1.0 + alpha)
        cut = min(b, a + 1.0)
        # t = a + u^p maps the t^alpha singularity to a bounded integrand.
        h = lambda u: g(a + u ** p) * p * u ** (p - 1.0)
        pieces.append((h, 0.0, (cut - a) ** (1.0 + alpha)))
        if cut < b:
            pieces.append((g, cut, b))
    elif spec is not None and spec.endpoint == "right" and spec.exponent < 0.0:
        if not np.isfinite(b):
            raise DomainError("right-endpoint singularity needs a finite endpoint")
        alpha = spec.exponent
        p = 1.0 / (1.0 + alpha)
        cut = max(a, b - 1.0)
        h = lambda u: g(b - u ** p) * p * u ** (p - 1.0)
        pieces.append((h, 0.0, (b - cut) ** (1.0 + alpha)))
        if cut > a:
            pieces.append((g, a, cut))
    else:
        pieces.append((g, a, b))

    for h, lo, hi in pieces:
        v, e = _quad_piece(h, lo, hi, tol)
        total += v
        err += e
    value = total.real if total.imag == 0.0 else total
    return QuadResult(value, err, count[0])


_GL_CACHE = {}


def gauss_legendre(order):
    """Cached Gauss-Legendre nodes and weights on [-1, 1]."""
    if order not in _GL_CACHE:
        _GL_CACHE[order] = np.polynomial.legendre.leggauss(int(order))
    return _GL_CACHE[order]


def panel_integral(f, a, b, panel_width=0.5, order=16, refine=True):
    """Composite Gauss-Legendre integration on fixed panels.

    Suited to uniformly oscillatory integrands where adaptive subdivision
    thrashes; f must accept a 1D array of nodes.  The error estimate is
    the disagreement with a doubled panel count (skipped if refine is
    False)."""
    if not (np.isfinite(a) and np.isfinite(b)):
        raise DomainError("panel integration needs finite endpoints")
    x, w = gauss_legendre(order)

    def run(npanel):
        edges = np.linspace(a, b, npanel + 1)
        mid = 0.5 * (edges[1:] + edges[:-1])
        half = 0.5 * (edges[1:] - edges[:-1])
        nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        wts = (half[:, None] * w[None, :]).ravel()
        return complex(np.sum(wts * np.asarray(f(nodes), dtype=complex)))

    npanel = max(4, int(math.ceil((b - a) / panel_width)))
    v1 = run(npanel)
    if not refine:
        value = v1.real if v1.imag == 0.0 else v1
        return QuadResult(value, abs(v1) * 1e-13, npanel * order)
    v2 = run(2 * npanel)
    value = v2.real if v2.imag == 0.0 else v2
    return QuadResult(value, abs(v2 - v1), 3 * npanel * order)


# ---------------------------------------------------------------------------
# Spheres


def sphere_quadrature(n, order=16):
    """Quadrature nodes and weights on S^{n-1} with total weight equal to
    the surface measure (2 for n=1, 2 pi for n=2, 4 pi for n=3)."""
    if n == 1:
        return np.array([[1.0], [-1.0]]), np.array([1.0, 1.0])
    if n == 2:
        m = max(4, 2 * order)
        th = 2.0 * math.pi * np.arange(m) / m
        pts = np.stack([np.cos(th), np.sin(th)], axis=-1)
        return pts, np.full(m, 2.0 * math.pi / m)
    if n == 3:
        z, wz = np.polynomial.legendre.leggauss(order)
        m = 2 * order
        th = 2.0 * math.pi * np.arange(m) / m
        rho = np.sqrt(1.0 - z ** 2)
        pts = np.stack(
            [
                np.outer(rho, np.cos(th)).ravel(),
                np.outer(rho, np.sin(th)).ravel(),
                np.outer(z, np.ones(m)).ravel(),
            ],
            axis=-1,
        )
        w = np.outer(wz, np.full(m, 2.0 * math.pi / m)).ravel()
        return pts, w
    raise DomainError("sphere quadrature supports n <= 3")


def lebedev26():
    """26-point octahedral rule on S^2, exact for polynomials of degree 7.
    Weights sum to 1 (multiply by 4 pi for the surface measure)."""
    pts, wts = [], []
    for i in range(3):
        for s in (1.0, -1.0):
            p = np.zeros(3)
            p[i] = s
            pts.append(p)
            wts.append(1.0 / 21.0)
    r = 1.0 / math.sqrt(2.0)
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        for si in (1.0, -1.0):
            for sj in (1.0, -1.0):
                p = np.zeros(3)
                p[j], p[k] = si * r, sj * r
                pts.append(p)
                wts.append(4.0 / 105.0)
    c = 1.0 / math.sqrt(3.0)
    for sx in (1.0, -1.0):
        for sy in (1.0, -1.0):
            for sz in (1.0, -1.0):
                pts.append(np.array([sx * c, sy * c, sz * c]))
                wts.append(27.0 / 840.0)
    return np.array(pts), np.array(wts)


def integrate_ball(f, n, tol=1e-10, order=12):
    """Integrate f over R^n (n <= 3) by sphere x radial factorization.
    f is called pointwise with an array of n coordinates."""
    if n == 1:
        r1 = integrate_1d(lambda t: f(np.array([t])), -np.inf, np.inf, tol=tol)
        return r1

    def run(k):
        pts, wts = sphere_quadrature(n, order=k)
        total, err, neval = 0.0 + 0.0j, 0.0, 0
        for om, w in zip(pts, wts):
            rad = integrate_1d(lambda r, om=om: f(r * om) * r ** (n - 1), 0.0, np.inf, tol=tol)
            total += w * complex(rad.value)
            err += w * rad.error_estimate
            neval += rad.evaluations
        return total, err, neval

    v1, e1, n1 = run(order)
    v2, e2, n2 = run(2 * order)
    disagree = abs(v2 - v1)
    value = v2.real if v2.imag == 0.0 else v2
    return QuadResult(value, max(e2, disagree), n1 + n2)


# ---------------------------------------------------------------------------
# Indefinite quadratic forms in hyperbolic polar coordinates


class SignatureGeometry:
    """Hyperbolic polar parametrization of one component of
    {m : sign(m^T B m) fixed} for diagonal-signature B.

    In standardized coordinates x (m = D x with D = diag(|b_i|^{-1/2}))
    the component with k cosh-like directions and j = n - k sinh-like
    ones is x = r (cosh u * omega_k, sinh u * omega_j) with
    |x^T I_{k,j} x| = r^2 and |x|^2 = r^2 cosh(2u) exactly.  The measure
    is r^{n-1} (cosh u)^{k-1} (sinh u)^{j-1} dr du d omega_k d omega_j,
    with u over (0, inf) in general and over all of R when j = 1 (the
    one-dimensional sinh block needs no separate sign sum).
    """

    def __init__(self, B, q, sheet, sphere_order=24):
        B = np.atleast_2d(np.asarray(B, dtype=float))
        n = B.shape[0]
        d = np.diag(B).copy()
        if not np.allclose(B, np.diag(d)):
            raise DomainError("indefinite B must be in diagonal signature form")
        if np.any(d == 0.0):
            raise DomainError("B must be invertible")
        if np.sum(d > 0) != q:
            raise DomainError(f"B does not have signature ({q}, {n - q})")
        if sheet not in ("plus", "minus"):
            raise DomainError("sheet must be 'plus' or 'minus'")
        self.n, self.q, self.sheet = n, q, sheet
        self.Dscale = 1.0 / np.sqrt(np.abs(d))
        self.detfac = float(np.prod(self.Dscale))
        self.pos_idx = np.where(d > 0)[0]
        self.neg_idx = np.where(d < 0)[0]
        if sheet == "plus":
            self.cosh_idx, self.sinh_idx = self.pos_idx, self.neg_idx
        else:
            self.cosh_idx, self.sinh_idx = self.neg_idx, self.pos_idx
        self.k = len(self.cosh_idx)
        self.j = len(self.sinh_idx)
        if self.k == 0:
            raise DomainError("requested sheet is empty for this signature")
        self.omega_k, self.wk = sphere_quadrature(self.k, order=sphere_order)
        if self.j >= 2:
            self.omega_j, self.wj = sphere_quadrature(self.j, order=sphere_order)
        elif self.j == 1:
            self.omega_j, self.wj = np.array([[1.0]]), np.array([1.0])
        else:
            self.omega_j, self.wj = np.zeros((1, 0)), np.array([1.0])
        self.full_u_line = self.j == 1

    def _u_nodes(self, r, decay_rate, tail=42.0):
        """Composite Gauss-Legendre nodes for the u integral, truncated
        where the gaussian decay of the integrand bounds the tail."""
        r = max(abs(r), 1e-150)
        arg = 1.0 + tail / (decay_rate * r * r)
        umax = 0.5 * math.acosh(arg) + 0.5
        npanel = max(4, int(math.ceil(umax / 0.5)))
        x, w = np.polynomial.legendre.leggauss(12)
        edges = np.linspace(0.0, umax, npanel + 1)
        mid = 0.5 * (edges[1:] + edges[:-1])
        half = 0.5 * (edges[1:] - edges[:-1])
        u = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        wu = (half[:, None] * w[None, :]).ravel()
        if self.full_u_line:
            u = np.concatenate([-u[::-1], u])
            wu = np.concatenate([wu[::-1], wu])
        return u, wu

    def angular_profile(self, g, decay_rate):
        """Return H with H(r) = r * F(r), where F(r) is the full angular
        integral of g at radius r (so that the component integral is
        integral of r^{2w + n - 2} H(r) dr times the det factor)."""
        n, k, j = self.n, self.k, self.j

        def H(r):
            u, wu = self._u_nodes(r, decay_rate)
            ang = (np.cosh(u) ** (k - 1)) * (np.sinh(np.abs(u)) ** (j - 1)) * wu
            # points array of shape (n_u, n_k, n_j, n)
            cu = np.cosh(u)
            su = np.sinh(u)
            pts = np.zeros((len(u), len(self.wk), len(self.wj), n))
            pts[..., self.cosh_idx] = cu[:, None, None, None] * self.omega_k[None, :, None, :]
            if j > 0:
                pts[..., self.sinh_idx] = su[:, None, None, None] * self.omega_j[None, None, :, :]
            pts *= r
            pts *= self.Dscale
            vals = g(pts)
            w_total = ang[:, None, None] * self.wk[None, :, None] * self.wj[None, None, :]
            return r * np.sum(vals * w_total)

        return H


def radial_power_integral(H, beta, r_max, tol=1e-10, fd_h=1e-3, depth=0, max_depth=6):
    """Meromorphic continuation of integral_0^inf r^beta H(r) dr for smooth
    H with H(0) = 0 allowed; beta may be complex with Re beta <= -1, in
    which case the integral is defined by repeated integration by parts
    (the derivative of H taken by 4th-order central differences)."""
    beta = complex(beta)
    if depth > max_depth:
        raise DomainError(f"radial continuation depth exceeded {max_depth}")
    if abs(beta + 1.0) < 1e-9:
        raise PoleError(f"radial power integral has a pole at beta = -1 (beta = {beta})")
    if beta.real > -1.0:
        spec = SingularitySpec("left", beta.real, False) if beta.real < 0.0 else None
        res = integrate_1d(lambda r: r ** beta * H(r), 0.0, r_max, spec=spec, tol=tol)
        return res.value
    h = fd_h

    def Hp(r):
        # H needs only to be smooth on (0, inf); near 0 a one-sided
        # stencil avoids sampling across the origin, where hyperbolic
        # angular profiles are sign-odd with a jump.
        if r >= 2.5 * h:
            return (-H(r + 2 * h) + 8.0 * H(r + h) - 8.0 * H(r - h) + H(r - 2 * h)) / (12.0 * h)
        return (
            -25.0 * H(r)
            + 48.0 * H(r + h)
            - 36.0 * H(r + 2 * h)
            + 16.0 * H(r + 3 * h)
            - 3.0 * H(r + 4 * h)
        ) / (12.0 * h)

    inner = radial_power_integral(Hp, beta + 1.0, r_max, tol=tol, fd_h=fd_h, depth=depth + 1, max_depth=max_depth)
    return -inner / (beta + 1.0)


def integrate_signature(g, B, q, sheet, w=0.0, tol=1e-9, sphere_order=24, decay_rate=None):
    """Integrate |p(m)|^w g(m) over the component of R^n where
    sign(m^T B m) matches the sheet, for diagonal B of signature (q, n-q).

    g must be vectorized over arrays of points (last axis = coordinates)
    and carry gaussian decay; decay_rate bounds |g| <= C e^{-rate |x|^2}
    in standardized coordinates (defaults to a conservative estimate).
    Re w > -1/2 is required; deeper exponents belong to the continuation
    entry point radial_power_integral.
    """
    w = complex(w)
    if w.real <= -0.5:
        raise DomainError("integrate_signature requires Re w > -1/2")
    geom = SignatureGeometry(B, q, sheet, sphere_order=sphere_order)
    if decay_rate is None:
        decay_rate = 0.5
    H, count = _counting(geom.angular_profile(g, decay_rate))
    r_max = math.sqrt(45.0 / decay_rate) + 2.0
    beta = 2.0 * w + geom.n - 2.0
    val = radial_power_integral(H, beta, r_max, tol=tol)
    val = geom.detfac * val
    value = val.real if getattr(val, "imag", 0.0) == 0.0 else val
    return QuadResult(value, tol, count[0])


def monte_carlo_signature(g, B, q, sheet, w, nsamples, seed):
    """Monte-Carlo oracle for integrate_signature using a standard
    gaussian proposal with density exactly e^{-pi |m|^2}.  Returns
    (estimate, standard_error)."""
    B = np.atleast_2d(np.asarray(B, dtype=float))
    n = B.shape[0]
    rng = np.random.default_rng(seed)
    sigma = 1.0 / math.sqrt(2.0 * math.pi)
    total, total2, kept = 0.0, 0.0, 0
    chunk = 1_000_000
    done = 0
    while done < nsamples:
        k = min(chunk, nsamples - done)
        x = rng.normal(0.0, sigma, size=(k, n))
        p = np.einsum("ij,jk,ik->i", x, B, x)
        mask = p > 0 if sheet == "plus" else p < 0
        vals = np.zeros(k)
        if np.any(mask):
            xm = x[mask]
            gm = np.asarray(g(xm), dtype=float)
            weight = np.exp(math.pi * np.sum(xm * xm, axis=1))
            vals[mask] = np.abs(p[mask]) ** float(np.real(w)) * gm * weight
        total += float(np.sum(vals))
        total2 += float(np.sum(vals * vals))
        done += k
    mean = total / nsamples
    var = total2 / nsamples - mean * mean
    return mean, math.sqrt(max(var, 0.0) / nsamples)


# ---------------------------------------------------------------------------
# Oscillatory 1D Fourier integrals


_OSC_THRESHOLD = 4.0


def oscillatory_ft_1d(f, xi, a=-np.inf, b=np.inf, tol=1e-10, force_method=None):
    """Compute integral of f(y) e^{-i y xi} dy over (a, b).

    Below the oscillation threshold a plain adaptive rule on the complex
    integrand is used; above it, Clenshaw-Curtis panels with exact
    cos/sin weights (scipy's QAWO/QAWF) handle the oscillation.
    force_method ('plain' or 'osc') pins the path for cross-checks.

    Strong cancellation sets an absolute accuracy floor: when the result
    is many orders below the integrand's magnitude, accuracy is absolute
    (~1e-15 times the integrand scale), not relative.
    """
    xi = float(xi)
    use_plain = abs(xi) <= _OSC_THRESHOLD if force_method is None else force_method == "plain"
    if use_plain:
        res = integrate_1d(lambda y: f(y) * np.exp(-1j * y * xi), a, b, tol=tol)
        return complex(res.value)

    def piece(lo, hi):
        kw = dict(limit=400, epsabs=tol * 1e-2, epsrel=tol * 1e-2)
        if np.isinf(hi) or np.isinf(lo):
            kw = dict(limit=400, epsabs=tol * 1e-2)
        try:
            if np.isinf(lo) and np.isinf(hi):
                return piece(lo, 0.0) + piece(0.0, hi)
            if np.isinf(lo):
                re = _scipy_quad(lambda y: f(-y), -hi, np.inf, weight="cos", wvar=xi, **kw)[0]
                im = _scipy_quad(lambda y: f(-y), -hi, np.inf, weight="sin", wvar=xi, **kw)[0]
                return re + 1j * im
            re = _scipy_quad(f, lo, hi, weight="cos", wvar=xi, **kw)[0]
            im = _scipy_quad(f, lo, hi, weight="sin", wvar=xi, **kw)[0]
            return re - 1j * im
        except Exception as exc:  # pragma: no cover
            raise NonConvergence(f"oscillatory quadrature failed: {exc}") from exc

    return complex(piece(a, b))
