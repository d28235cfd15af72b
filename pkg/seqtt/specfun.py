#!/usr/bin/python
# vim: set tabstop=8 softtabstop=4 noexpandtab
#Copyright (c) 2026, The seqtt Authors
#All rights reserved. Distributed under the BSD 3-Clause license, see LICENSE.
""" Special functions and quadrature used by the test processes.

Thin, domain-checked wrappers over scipy.special and scipy.integrate plus
the pieces scipy does not ship directly: the Lambert-W derived maps
wbar(0, y) and wbar(-1, y), solving u - ln u = y, and a semi-infinite
quadrature driver.

Every function accepts scalars; the closed-form ones also accept numpy
arrays and broadcast.
"""
import math
from dataclasses import dataclass
import numpy as np
from scipy import integrate as sp_integrate
from scipy import special
from .errors import DomainError, NumericalError, QuadratureError

WBAR_MAX_ITER = 100

@dataclass(frozen=True)
class QuadratureSettings:
    """ Tolerances for :func:`integrate`

    Attributes
    ----------
    abs_tol : float
        Absolute error target (> 0).
    rel_tol : float
        Relative error target (> 0).
    max_subdivisions : int
        Upper bound on adaptive subintervals (>= 1).
    """
    abs_tol: float = 1e-13
    rel_tol: float = 1e-10
    max_subdivisions: int = 200

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise DomainError('abs_tol must be > 0, got %r' % (self.abs_tol,))
        if not self.rel_tol > 0:
            raise DomainError('rel_tol must be > 0, got %r' % (self.rel_tol,))
        if int(self.max_subdivisions) < 1:
            raise DomainError('max_subdivisions must be >= 1, got %r' % (self.max_subdivisions,))

    @classmethod
    def from_config(cls, conf):
        """ Build from the 'quadrature' block of a loaded config """
        if not conf:
            return cls()
        return cls(float(conf.get('abs_tol', cls.abs_tol)),
                   float(conf.get('rel_tol', cls.rel_tol)),
                   int(conf.get('max_subdivisions', cls.max_subdivisions)))

DEFAULT_QUADRATURE = QuadratureSettings()

def _scalar_or_array(value):
    """ Return python float for 0-d results, array otherwise """
    if np.ndim(value) == 0:
        return float(value)
    return value

def _positive(name, value):
    arr = np.asarray(value, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr <= 0):
        raise DomainError('%s must be > 0, got %r' % (name, value))
    return arr

def log_gamma(x):
    """ ln Gamma(x) for x > 0 """
    return _scalar_or_array(special.gammaln(_positive('x', x)))

def log_beta(a, b):
    """ ln B(a, b) = lnG(a) + lnG(b) - lnG(a + b), symmetric in (a, b) """
    a = _positive('a', a)
    b = _positive('b', b)
    return _scalar_or_array(special.gammaln(a) + special.gammaln(b) - special.gammaln(a + b))

def t_pdf(x, df):
    """ Student t density with df degrees of freedom """
    df = _positive('df', df)
    x = np.asarray(x, dtype=float)
    logc = special.gammaln((df + 1.0) / 2.0) - special.gammaln(df / 2.0) - 0.5 * np.log(df * math.pi)
    return _scalar_or_array(np.exp(logc - (df + 1.0) / 2.0 * np.log1p(x * x / df)))

def t_cdf(x, df):
    """ Student t CDF from the regularized incomplete beta function

    For x >= 0, F(x) = 1 - I_{df/(df+x^2)}(df/2, 1/2) / 2 and F(-x) = 1 - F(x).
    """
    df = _positive('df', df)
    x = np.asarray(x, dtype=float)
    with np.errstate(over='ignore', invalid='ignore'):
        z = df / (df + x * x)
    z = np.where(np.isinf(x), 0.0, z)
    tail = 0.5 * special.betainc(df / 2.0, 0.5, z)
    return _scalar_or_array(np.where(x > 0, 1.0 - tail, tail))

def t_quantile(p, df):
    """ Inverse of :func:`t_cdf`

    Seeded by scipy's stdtrit and polished by guarded Newton steps on
    t_cdf(x) - p, so the round trip holds to ~1e-12 in probability.
    """
    if not 0.0 < p < 1.0:
        raise DomainError('p must be in (0, 1), got %r' % (p,))
    if not df > 0:
        raise DomainError('df must be > 0, got %r' % (df,))

    x = float(special.stdtrit(df, p))
    if not math.isfinite(x):
        raise NumericalError('t quantile overflow at p=%r df=%r' % (p, df))

    err = t_cdf(x, df) - p
    for _ in range(8):
        density = t_pdf(x, df)
        if err == 0.0 or density <= 0.0:
            break
        candidate = x - err / density
        cerr = t_cdf(candidate, df) - p
        if abs(cerr) >= abs(err):
            break
        x, err = candidate, cerr
    return x

def erf(x):
    return _scalar_or_array(special.erf(np.asarray(x, dtype=float)))

def gauss_cdf(x):
    """ Standard normal CDF """
    return _scalar_or_array(special.ndtr(np.asarray(x, dtype=float)))

def gauss_quantile(p):
    """ Standard normal quantile, p in (0, 1) """
    p = np.asarray(p, dtype=float)
    if np.any(np.isnan(p)) or np.any(p <= 0.0) or np.any(p >= 1.0):
        raise DomainError('p must be in (0, 1)')
    return _scalar_or_array(special.ndtri(p))

def riemann_zeta(s):
    """ Riemann zeta(s) for s > 1 """
    if not s > 1:
        raise DomainError('s must be > 1, got %r' % (s,))
    return float(special.zeta(s, 1.0))

def _wbar_lower(y):
    """ Root in (0, 1] of u - ln u = y, as w = -ln u with w + exp(-w) = y """
    d = y - 1.0
    # near the branch point u - ln u ~ 1 + (u - 1)^2 / 2
    near = d < 0.5
    w = np.where(near, -np.log1p(-np.sqrt(2.0 * np.where(near, d, 0.0))), y)
    done = d == 0.0
    w = np.where(done, 0.0, w)
    for _ in range(WBAR_MAX_ITER):
        g = w + np.exp(-w) - y
        # residual at rounding level: further steps only chase noise
        done = done | (np.abs(g) <= 1e-15 * y)
        if np.all(done):
            return np.exp(-w)
        slope = -np.expm1(-w)
        with np.errstate(divide='ignore', invalid='ignore'):
            step = np.where(done, 0.0, g / slope)
        w = np.where(done, w, w - step)
        done = done | (np.abs(step) <= 1e-15 * np.maximum(w, 1e-300))
    raise NumericalError('wbar(0, y) did not converge')

def _wbar_upper(y):
    """ Root in [1, inf) of u - ln u = y """
    d = y - 1.0
    near = d < 0.5
    u = np.where(near, 1.0 + np.sqrt(2.0 * np.where(near, d, 0.0)), y + np.log(np.maximum(y, 1.0)))
    done = d == 0.0
    u = np.where(done, 1.0, u)
    for _ in range(WBAR_MAX_ITER):
        h = u - np.log(u) - y
        done = done | (np.abs(h) <= 1e-15 * y)
        if np.all(done):
            return u
        slope = 1.0 - 1.0 / u
        with np.errstate(divide='ignore', invalid='ignore'):
            step = np.where(done, 0.0, h / slope)
        u = np.where(done, u, u - step)
        done = done | (np.abs(step) <= 1e-15 * u)
    raise NumericalError('wbar(-1, y) did not converge')

def wbar(branch, y):
    """ -W_branch(-exp(-y)) for branch in {0, -1}, y >= 1

    Solved directly as u - ln u = y so exp(-y) is never formed.
    wbar(0, .) maps [1, inf) onto (0, 1]; wbar(-1, .) onto [1, inf).
    """
    y = np.asarray(y, dtype=float)
    if np.any(np.isnan(y)) or np.any(y < 1.0):
        raise DomainError('wbar needs y >= 1, got %r' % (y.min() if y.size else y,))

    if branch == 0:
        return _scalar_or_array(_wbar_lower(y))
    if branch == -1:
        return _scalar_or_array(_wbar_upper(y))
    raise DomainError('wbar branch must be 0 or -1, got %r' % (branch,))

def _quad(f, lower, upper, settings):
    out = sp_integrate.quad(f, lower, upper,
            epsabs=settings.abs_tol, epsrel=settings.rel_tol,
            limit=int(settings.max_subdivisions), full_output=1)
    if len(out) > 3:
        raise QuadratureError('quadrature on [%r, %r] failed: %s' % (lower, upper, out[3]))
    value = out[0]
    if not math.isfinite(value):
        raise QuadratureError('quadrature on [%r, %r] returned %r' % (lower, upper, value))
    return value

def integrate(f, lower, upper, settings = None):
    """ Adaptive Gauss-Kronrod integral of f over [lower, upper]

    Infinite endpoints are mapped to (0, 1) with y = a + t/(1-t) (or its
    mirror), so integrands of Gamma type see a finite interval.

    Raises
    ------
    QuadratureError
        when the requested tolerance is not met within max_subdivisions.
    """
    if settings is None:
        settings = DEFAULT_QUADRATURE

    if math.isnan(lower) or math.isnan(upper):
        raise DomainError('integration limits must not be NaN')
    if lower == upper:
        return 0.0
    if lower > upper:
        return -integrate(f, upper, lower, settings)

    if math.isinf(lower) and math.isinf(upper):
        return integrate(f, -math.inf, 0.0, settings) + integrate(f, 0.0, math.inf, settings)

    if math.isinf(upper):
        def mapped(t):
            s = 1.0 - t
            return f(lower + t / s) / (s * s)
        return _quad(mapped, 0.0, 1.0, settings)

    if math.isinf(lower):
        def mapped(t):
            s = 1.0 - t
            return f(upper - t / s) / (s * s)
        return _quad(mapped, 0.0, 1.0, settings)

    return _quad(f, lower, upper, settings)
