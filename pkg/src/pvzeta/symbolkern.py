"""Operator symbols and Schwartz kernels of group convolutions for the
dilation-type spaces whose singular set is the fixed-point set {0}.

For f integrable on the dilation group (Haar measure d alpha / alpha)
the symbol data are

    fhat(m, xi) = integral_G f(alpha) e^{i (alpha^{-1} m) . xi} d_G,
    a_f(m, xi)  = e^{-i m . xi} fhat(m, xi),

so on the line everything factors through the scalar transform
F(u) = integral_0^inf f(1/beta) e^{i u beta} d beta / beta with u = m xi.
At the fixed point m = 0 the symbol is the constant integral of f; away
from it the auxiliary symbol depends only on the direction of m,

    atilde(m, xi) = a_f(m/|m|, xi),

its inverse transform Atilde(m, u) uses the normalized measure
(2 pi)^{-n} d xi, and the Schwartz kernel is

    K_f(m, m') = |m|^{-n} Atilde(m, (m - m')/|m|).

All transforms here use the angular-normalized convention exclusively.
"""

from __future__ import annotations

import math

import numpy as np

from . import quad
from .errors import AccuracyError, DomainError, NonConvergence
from .report import CheckReport


class GroupFunction:
    """An integrable function on the dilation group (0, inf) with Haar
    measure d alpha / alpha and a super-exponential decay certificate
    |f(e^r)| <= C e^{-log_decay_rate r^2}.

    hat1d, atilde_closed and l1_norm are optional closed-form oracles
    (the heat kernel ships with all three)."""

    def __init__(self, fn, label, log_decay_rate, hat1d=None, atilde_closed=None, l1_norm=None):
        if log_decay_rate <= 0:
            raise DomainError("decay rate must be positive")
        self.fn = fn
        self.label = label
        self.log_decay_rate = float(log_decay_rate)
        self.hat1d = hat1d
        self.atilde_closed = atilde_closed
        self._l1 = l1_norm
        self._integral = None

    def __call__(self, alpha):
        return self.fn(np.asarray(alpha, dtype=float))

    def log_cut(self, tol=1e-18):
        return math.sqrt(max(-math.log(tol), 1.0) / self.log_decay_rate) + 2.0

    def _haar_integral(self, weight):
        L = self.log_cut()
        res = quad.integrate_1d(lambda r: weight(self.fn(np.exp(r))), -L, L, tol=1e-12)
        return float(np.real(complex(res.value)))

    def l1(self):
        if self._l1 is None:
            self._l1 = self._haar_integral(np.abs)
        return self._l1

    def integral(self):
        if self._integral is None:
            self._integral = self._haar_integral(lambda v: v)
        return self._integral


def log_gaussian_group(a, scale=1.0, label=None):
    """f(alpha) = scale e^{-a (log alpha)^2}: the generic test element."""
    if a <= 0:
        raise DomainError("rate must be positive")
    return GroupFunction(
        fn=lambda al: scale * np.exp(-a * np.log(al) ** 2),
        label=label or f"loggauss-group:a={a:g}",
        log_decay_rate=a,
    )


# ---------------------------------------------------------------------------
# Symbols


def _hat_scalar(f, u):
    """F(u) = integral_0^inf f(1/beta) e^{i u beta} d beta / beta."""
    if f.hat1d is not None:
        return complex(np.asarray(f.hat1d(np.array([float(u)]))).ravel()[0])
    L = f.log_cut()
    a, b = math.exp(-L), math.exp(L)
    g = lambda beta: np.asarray(f.fn(1.0 / np.asarray(beta, dtype=float))) / np.asarray(beta, dtype=float)
    return quad.oscillatory_ft_1d(g, -float(u), a, b, tol=1e-10)


def _hat_scalar_many(f, us):
    us = np.asarray(us, dtype=float)
    if f.hat1d is not None:
        return np.asarray(f.hat1d(us), dtype=complex)
    flat = us.ravel()
    if flat.size <= 8:
        return np.array([_hat_scalar(f, u) for u in flat], dtype=complex).reshape(us.shape)
    # shared-panel fallback: geometric edges resolve the 1/beta scale
    # below 1, uniform edges hold ~10 radians of phase above it
    L = f.log_cut()
    a, b = math.exp(-L), math.exp(L)
    rate = max(float(np.max(np.abs(flat))), 1.0)
    width = min(0.5, 10.0 / rate)
    lo = np.exp(np.arange(math.log(a), 0.0, min(0.25, width)))
    hi = np.arange(1.0, b + width, width)
    edges = np.concatenate([lo, hi])
    xg, wg = quad.gauss_legendre(16)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    beta = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    w = (half[:, None] * wg[None, :]).ravel()
    g = w * np.asarray(f.fn(1.0 / beta)) / beta
    keep = np.abs(g) > np.max(np.abs(g)) * 1e-18
    beta, g = beta[keep], g[keep]
    out = np.empty(flat.size, dtype=complex)
    step = max(1, int(4e6 / beta.size))
    for i in range(0, flat.size, step):
        out[i : i + step] = np.exp(1j * np.outer(flat[i : i + step], beta)) @ g
    return out.reshape(us.shape)


def _orbit(space, m):
    """Points and normalized weights of the group orbit of m restricted to
    the rotation part (the dilation factor is integrated separately)."""
    m = np.atleast_1d(np.asarray(m, dtype=float))
    if space.kind == "scalar1d":
        return m.reshape(1, 1), np.array([1.0])
    if space.kind != "definite":
        raise DomainError("symbols are defined for the fixed-point kinds (scalar1d, definite)")
    B = space.Bmat
    evals, evecs = np.linalg.eigh(B)
    Bh = evecs @ np.diag(np.sqrt(evals)) @ evecs.T
    Bih = evecs @ np.diag(1.0 / np.sqrt(evals)) @ evecs.T
    rad = float(np.linalg.norm(Bh @ m))
    if space.n == 3:
        pts, wts = quad.lebedev26()
    elif space.n == 2:
        k = 64
        th = 2.0 * math.pi * np.arange(k) / k
        pts = np.stack([np.cos(th), np.sin(th)], axis=-1)
        wts = np.full(k, 1.0 / k)
    else:
        raise DomainError("definite symbols support n in {2, 3}")
    return (rad * pts) @ Bih.T, wts


def symbol_hat(f, space, m, xi):
    """fhat(m, xi); at m = 0 this is the integral of f for every xi."""
    m = np.atleast_1d(np.asarray(m, dtype=float))
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    if not np.any(m):
        return complex(f.integral())
    pts, wts = _orbit(space, m)
    us = pts @ xi
    vals = _hat_scalar_many(f, us)
    return complex(np.sum(wts * vals))


def symbol(f, space, m, xi):
    """a_f(m, xi) = e^{-i m . xi} fhat(m, xi)."""
    m = np.atleast_1d(np.asarray(m, dtype=float))
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    return complex(np.exp(-1j * float(m @ xi))) * symbol_hat(f, space, m, xi)


def scaling_check(f, space, m, xi, alpha, tol=1e-9):
    """a_f(alpha m, xi) vs a_f(m, alpha xi) for alpha > 0."""
    if alpha <= 0:
        raise DomainError("scaling is tested on the identity component (alpha > 0)")
    m = np.atleast_1d(np.asarray(m, dtype=float))
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    lhs = symbol(f, space, alpha * m, xi)
    rhs = symbol(f, space, m, alpha * xi)
    return CheckReport(
        check="symbol-scaling",
        params={"f": f.label, "space": repr(space), "m": list(m), "xi": list(xi), "alpha": float(alpha)},
        lhs=lhs,
        rhs=rhs,
        tolerance=tol,
        anchor="EqS",
    )


# ---------------------------------------------------------------------------
# Auxiliary symbol, inverse transform, Schwartz kernel


def _symbol_tail_cut(f, sign, floor=5e-12):
    xi, below = 1.0, 0
    while xi < 1e7:
        if abs(_hat_scalar(f, sign * xi)) < floor:
            below += 1
            if below >= 3:
                return xi
        else:
            below = 0
        xi *= 1.25
    raise AccuracyError("symbol tail did not fall below the requested floor")


def atilde_numeric(f, m_sign, us, floor=5e-12):
    """Atilde(m, u) for scalar m of the given sign: the inverse transform
    (2 pi)^{-1} integral e^{i u xi} atilde(m, xi) d xi on shared panels,
    with atilde(m, xi) = e^{-i sgn(m) xi} F(sgn(m) xi)."""
    sign = 1.0 if m_sign > 0 else -1.0
    us = np.asarray(us, dtype=float)
    cut = _symbol_tail_cut(f, sign, floor=floor)
    xg, wg = quad.gauss_legendre(16)
    rate = max(float(np.max(np.abs(us - sign))), 1.0)
    width = min(10.0 / rate, 2.0)
    npanel = max(16, int(2.0 * cut / width) + 8)
    edges = np.linspace(-cut, cut, npanel + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    xi = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    w = (half[:, None] * wg[None, :]).ravel()
    fh = _hat_scalar_many(f, sign * xi)
    phases = np.exp(1j * np.outer(us.ravel() - sign, xi))
    vals = (phases @ (w * fh)) / (2.0 * math.pi)
    return vals.reshape(us.shape)


def aux_symbol_and_kernel(f, space, m, mprime, xi=None, floor=5e-12):
    """(atilde(m, xi), Atilde(m, u), K_f(m, m')) at u = (m - m')/|m|.

    Scalar case only; xi defaults to 1.  The closed-form Atilde oracle is
    used when the GroupFunction carries one (positive direction), the
    panel inverse transform otherwise."""
    if space.kind != "scalar1d":
        raise DomainError("kernel assembly is implemented for the scalar case")
    m = float(np.atleast_1d(np.asarray(m, dtype=float))[0])
    mprime = float(np.atleast_1d(np.asarray(mprime, dtype=float))[0])
    if m == 0.0:
        raise DomainError("the kernel is defined away from m = 0")
    xi = 1.0 if xi is None else float(xi)
    sign = 1.0 if m > 0 else -1.0
    atil = complex(np.exp(-1j * sign * xi)) * _hat_scalar(f, sign * xi)
    u = (m - mprime) / abs(m)
    if f.atilde_closed is not None and sign > 0:
        Atil = complex(np.asarray(f.atilde_closed(np.array([u]))).ravel()[0])
    else:
        Atil = complex(atilde_numeric(f, sign, np.array([u]), floor=floor)[0])
    K = Atil / abs(m)
    return atil, Atil, K


def kernel(f, m, mprime, floor=5e-12):
    """K_f(m, m') on the line (0 when the signs of m and m' differ; the
    symbol construction itself produces that vanishing)."""
    from . import phspace

    _, _, K = aux_symbol_and_kernel(f, phspace.scalar1d(), m, mprime, floor=floor)
    return K


# ---------------------------------------------------------------------------
# Decay probe


def decay_probe(f, space, m, xi_dir=None, taus=(5, 10, 25, 50, 100, 200), fd_order=1, h=1e-2):
    """Octave-band log-log slopes of |a_f(m, tau xi_dir)| and of its
    first finite-difference xi-derivative along the ray."""
    m = np.atleast_1d(np.asarray(m, dtype=float))
    n = space.n
    xi_dir = np.atleast_1d(np.asarray(xi_dir if xi_dir is not None else np.ones(n), dtype=float))
    taus = np.asarray(taus, dtype=float)

    def a_of(tau):
        return symbol(f, space, m, tau * xi_dir)

    vals = np.array([abs(a_of(tau)) for tau in taus])
    if np.any(vals < 1e-250):
        raise AccuracyError("symbol values fell below 1e-250 inside the fit window")
    slopes = np.diff(np.log(vals)) / np.diff(np.log(taus))
    dvals = np.array([abs((a_of(tau + h) - a_of(tau - h)) / (2.0 * h)) for tau in taus])
    with np.errstate(divide="ignore"):
        dslopes = np.diff(np.log(np.maximum(dvals, 1e-300))) / np.diff(np.log(taus))
    return {
        "m": [float(v) for v in m],
        "taus": [float(v) for v in taus],
        "abs_symbol": [float(v) for v in vals],
        "band_slopes": [float(v) for v in slopes],
        "derivative_band_slopes": [float(v) for v in dslopes],
        "abs_derivative": [float(v) for v in dvals],
    }


def check_symbol_decay(f, space, m, tol_slope=-8.0, by_tau=100.0, taus=(5, 10, 25, 50, 100, 200)):
    """Pass iff every octave band at or beyond by_tau has slope below
    tol_slope (super-polynomial decay off the fixed points)."""
    probe = decay_probe(f, space, m, taus=taus)
    bands = [
        (lo, hi, sl)
        for lo, hi, sl in zip(probe["taus"][:-1], probe["taus"][1:], probe["band_slopes"])
        if hi >= by_tau
    ]
    worst = max(sl for _, _, sl in bands)
    rep = CheckReport(
        check="symbol-decay",
        params={"f": f.label, "space": repr(space), "m": probe["m"], "by_tau": by_tau},
        lhs=worst,
        rhs=tol_slope,
        tolerance=abs(tol_slope),
        anchor="Thm2",
        extra=probe,
    )
    rep.rel_residual = worst - tol_slope
    rep.status = "pass" if worst < tol_slope else "fail"
    return rep


# ---------------------------------------------------------------------------
# Local integrability of the kernel


def _atilde_abs_fn(f, floor=5e-12, grid_half_width=40.0, npts=4001):
    """|Atilde(+1, u)| as a fast vectorized function: the closed oracle
    when present, a dense numeric table with linear interpolation
    otherwise."""
    if f.atilde_closed is not None:
        return lambda u: np.abs(np.asarray(f.atilde_closed(np.asarray(u, dtype=float))))
    if _symbol_tail_cut(f, 1.0, floor=floor) > 200.0:
        raise AccuracyError(
            "the symbol decays too slowly for the numeric kernel table; "
            "attach an atilde_closed oracle to this GroupFunction"
        )
    ug = np.linspace(-grid_half_width, grid_half_width, npts)
    table = np.abs(atilde_numeric(f, 1.0, ug, floor=floor))
    return lambda u: np.interp(np.asarray(u, dtype=float), ug, table, left=0.0, right=0.0)


def local_integrability_check(f, R=1.0, levels=6, ratio_bound=0.75, m_pts=64, u_pts=512):
    """Dyadic estimate of the double integral of |K_f| over [-R, R]^2.

    Level j integrates over 2^{-j} R < |m| <= R; the inner m' integral is
    taken on the grid m' = m (1 - u), where |K_f| d m' = |Atilde(u)| d u,
    so each level is a finite 2D grid sum.  The level increments must
    shrink geometrically for the integral to exist."""
    zero_probe = float(np.max(np.abs(np.asarray(f.fn(np.array([0.5, 1.0, 2.0]))))))
    if zero_probe == 0.0:
        rep = CheckReport(
            check="kernel-integrability",
            params={"f": f.label, "R": R, "levels": levels},
            lhs=0.0,
            rhs=0.0,
            tolerance=ratio_bound,
            anchor="Lem2",
            extra={"levels": [0.0] * levels, "increments": [], "ratios": []},
        )
        rep.rel_residual = 0.0
        rep.status = "pass"
        return rep
    atil = _atilde_abs_fn(f)
    xg, wg = quad.gauss_legendre(16)

    def inner_mass(ms):
        # integral over |m'| <= R of |K| d m' = integral |Atilde(u)| du
        # over the u-window (m - R)/m .. (m + R)/m  (m > 0 here)
        out = np.empty(ms.shape)
        for i, m in enumerate(ms):
            lo, hi = (m - R) / m, (m + R) / m
            uu = np.linspace(lo, hi, u_pts)
            vals = atil(uu)
            out[i] = np.trapezoid(vals, uu)
        return out

    totals = []
    for j in range(1, levels + 1):
        eps = R * 2.0 ** (-j)
        # geometric m-grid resolves the 1/|m| scale; symmetry doubles it
        edges = np.linspace(math.log(eps), math.log(R), m_pts + 1)
        mids = np.exp(0.5 * (edges[1:] + edges[:-1]))
        hw = np.diff(np.exp(edges))
        mass = inner_mass(mids)
        totals.append(2.0 * float(np.sum(hw * mass)))
    inc = np.diff(np.asarray(totals))
    ratios = [float(inc[i + 1] / inc[i]) if inc[i] > 0 else 0.0 for i in range(len(inc) - 1)]
    worst = max(ratios) if ratios else 0.0
    if inc.size and np.any(inc < -1e-12):
        raise NonConvergence("level sums decreased; grid refinement is inconsistent")
    rep = CheckReport(
        check="kernel-integrability",
        params={"f": f.label, "R": R, "levels": levels},
        lhs=worst,
        rhs=ratio_bound,
        tolerance=ratio_bound,
        anchor="Lem2",
        extra={"levels": totals, "increments": [float(v) for v in inc], "ratios": ratios},
    )
    rep.rel_residual = worst / ratio_bound
    rep.status = "pass" if worst < ratio_bound else "fail"
    return rep


def continuity_probe(f, annulus=(0.5, 1.0), grid=24, floor=5e-12):
    """Max neighbor jump of K_f on a grid over the annulus in m (m' fixed
    scan), reported relative to the grid step (a C^1-consistency figure)."""
    atil = _atilde_abs_fn(f, floor=floor)
    ms = np.linspace(annulus[0], annulus[1], grid)
    mps = np.linspace(annulus[0] * 0.5, annulus[1] * 1.5, grid)
    Kg = np.empty((grid, grid))
    for i, m in enumerate(ms):
        Kg[i] = atil((m - mps) / m) / m
    jumps = max(float(np.max(np.abs(np.diff(Kg, axis=0)))), float(np.max(np.abs(np.diff(Kg, axis=1)))))
    h = float(ms[1] - ms[0])
    return {"max_jump": jumps, "grid_step": h, "jump_per_step": jumps / h}
