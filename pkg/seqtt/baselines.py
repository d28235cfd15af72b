#!/usr/bin/python
# vim: set tabstop=8 softtabstop=4 noexpandtab
#Copyright (c) 2026, The seqtt Authors
#All rights reserved. Distributed under the BSD 3-Clause license, see LICENSE.
""" Comparison methods: stitched plug-in t-CS, median CS and tests, fixed-n t-CI """
import bisect
import math
from dataclasses import dataclass
import numpy as np
from scipy.special import xlogy
from .errors import DomainError
from .specfun import wbar, riemann_zeta, log_beta, gauss_cdf, t_quantile
from .stats_core import (ProcessEvaluator, KIND_MARTINGALE, CsInterval, CsPath,
    StatsPath, check_alpha, make_interval, moments, as_result)

LOG_2 = math.log(2.0)
ARE_STEP = 1e-3

@dataclass(frozen=True)
class StitchParams:
    """ Stitching geometry: epochs grow by (1 + eta), boundary weights decay as k^-s """
    eta: float = 0.5
    s: float = 1.25

    def __post_init__(self):
        if not self.eta > 0:
            raise DomainError('stitching eta must be > 0, got %r' % (self.eta,))
        if not self.s > 1:
            raise DomainError('stitching s must be > 1, got %r' % (self.s,))

def _variance_denominator(n, log_level, params):
    """ wbar(0, 1 + 2(1+eta)/(n-1) (log_level + s log(1 + log(n-1)/log(1+eta)))) - 1/(n-1)

    log_level is ln(zeta(s)/alpha) for the variance CS alone and
    ln(2 zeta(s)/alpha) inside the plug-in t-CS. Entries with n < 2 are NaN.
    """
    n = np.asarray(n, dtype=float)
    active = n >= 2
    m = np.where(active, n - 1.0, 1.0)
    stitch = params.s * np.log1p(np.log(m) / math.log1p(params.eta))
    y = 1.0 + 2.0 * (1.0 + params.eta) / m * (log_level + stitch)
    return np.where(active, wbar(0, y) - 1.0 / m, np.nan)

def _mean_boundary(n, log_level, s):
    """ wbar(-1, 1 + 2 log_level + 2 ln zeta(s) + 2s(1 - ln 2s) + 2s ln(2s + ln n)) """
    n = np.asarray(n, dtype=float)
    y = (1.0 + 2.0 * log_level + 2.0 * math.log(riemann_zeta(s))
         + 2.0 * s * (1.0 - math.log(2.0 * s)) + 2.0 * s * np.log(2.0 * s + np.log(n)))
    if np.any(y < 1.0):
        raise DomainError('stitched boundary argument %r < 1; decrease alpha' % (float(np.min(y)),))
    return wbar(-1, y)

def variance_upper_cs(stats, alpha, params = None):
    """ [0, s_n^2 / denominator] for sigma^2, [0, inf) until the denominator turns positive """
    params = params or StitchParams()
    alpha = check_alpha(alpha)
    n, _, _, centered = moments(stats)
    nn = np.maximum(n, 1.0)
    den = _variance_denominator(n, math.log(riemann_zeta(params.s) / alpha), params)
    with np.errstate(divide='ignore', invalid='ignore'):
        upper = np.where(den > 0, centered / nn / den, np.inf)
    if np.ndim(upper) == 0:
        return CsInterval(0.0, float(upper))
    return CsPath(np.zeros_like(upper), upper)

def known_var_mix_cs(stats, sigma, alpha, s = 1.25):
    """ Stitched normal mixture CS for the mean when sigma is known """
    if not sigma > 0:
        raise DomainError('sigma must be > 0, got %r' % (sigma,))
    if not s > 1:
        raise DomainError('stitching s must be > 1, got %r' % (s,))
    alpha = check_alpha(alpha)
    n, total, _, _ = moments(stats)
    if np.any(n < 1):
        raise DomainError('known_var_mix_cs needs n >= 1')
    radius = sigma * np.sqrt(_mean_boundary(n, -math.log(alpha), s) / n)
    return make_interval(total / n, radius)

def plugin_t_cs(stats, alpha, params = None):
    """ Plug-in t-CS: variance CS at alpha/2 fed into the known-variance CS at alpha/2 """
    params = params or StitchParams()
    alpha = check_alpha(alpha)
    n, total, _, centered = moments(stats)
    nn = np.maximum(n, 1.0)
    num = _mean_boundary(nn, math.log(2.0 / alpha), params.s)
    den = _variance_denominator(n, math.log(2.0 * riemann_zeta(params.s) / alpha), params)
    with np.errstate(divide='ignore', invalid='ignore'):
        radius = np.sqrt(centered / nn / nn * num / den)
    radius = np.where(den > 0, radius, np.inf)
    return make_interval(total / nn, radius)

def _pos_count(stats):
    pos = stats.pos_count
    if pos is None:
        raise DomainError('sign count unavailable: shift the data before accumulating')
    return np.asarray(pos, dtype=float)

def median_sign_supermartingale(stats, lam, log = False):
    """ B_n^lambda = exp(lambda #{X_i > 0} - n lambda/2 - n log cosh(lambda/2)) """
    n = np.asarray(stats.n, dtype=float)
    pos = _pos_count(stats)
    log_cosh = np.logaddexp(lam / 2.0, -lam / 2.0) - LOG_2
    value = lam * pos - n * lam / 2.0 - n * log_cosh
    if log:
        return as_result(value)
    return as_result(np.exp(value))

def median_betabinom(stats, a = 1.0, b = 1.0, log = False):
    """ B_n^{(a,b)} = B(a + #pos, b + #nonpos) / (2^-n B(a, b)) """
    if not (a > 0 and b > 0):
        raise DomainError('beta-binomial a, b must be > 0')
    n = np.asarray(stats.n, dtype=float)
    pos = _pos_count(stats)
    value = log_beta(a + pos, b + n - pos) + n * LOG_2 - log_beta(a, b)
    if log:
        return as_result(value)
    return as_result(np.exp(value))

def median_radius_level(n, alpha):
    """ f_n = 0.75 sqrt(l_n) + 0.8 l_n, l_n = (1.4 ln ln 2.1n + ln(10/alpha))/n """
    n = np.asarray(n, dtype=float)
    ell = (1.4 * np.log(np.log(2.1 * n)) + math.log(10.0 / alpha)) / n
    return as_result(0.75 * np.sqrt(ell) + 0.8 * ell)

def _quantile_upper(ordered, p):
    """ sup{x : F_n(x) <= p} """
    if p < 0:
        return -math.inf
    k = int(math.floor(len(ordered) * p))
    if k >= len(ordered):
        return math.inf
    return ordered[k]

def _quantile_lower(ordered, p):
    """ sup{x : F_n(x) < p} """
    if p <= 0:
        return -math.inf
    k = int(math.ceil(len(ordered) * p))
    if k > len(ordered):
        return math.inf
    return ordered[k - 1]

def _median_interval(ordered, alpha):
    f = median_radius_level(len(ordered), alpha)
    if f >= 0.5:
        return CsInterval.everything()
    return CsInterval(float(_quantile_upper(ordered, 0.5 - f)), float(_quantile_lower(ordered, 0.5 + f)))

def median_cs(stats, alpha):
    """ Quantile CS for the median; needs retained observations

    A StatsPath gives the whole interval trajectory.
    """
    alpha = check_alpha(alpha)
    if isinstance(stats, StatsPath):
        ordered = []
        lower = np.empty(len(stats))
        upper = np.empty(len(stats))
        for k, x in enumerate(stats.data):
            bisect.insort(ordered, float(x))
            ci = _median_interval(ordered, alpha)
            lower[k], upper[k] = ci.lower, ci.upper
        return CsPath(lower, upper)

    if stats.retained is None:
        raise DomainError('median_cs needs SampleStats(retain=True)')
    if stats.n < 1:
        raise DomainError('median_cs needs n >= 1')
    return _median_interval(sorted(stats.retained), alpha)

def classical_t_ci(stats, alpha):
    """ Fixed-n Student t interval; not valid at data dependent times """
    alpha = check_alpha(alpha)
    n, total, _, centered = moments(stats)
    if np.ndim(n) == 0:
        if n < 2:
            raise DomainError('classical_t_ci needs n >= 2')
        quant = t_quantile(1.0 - alpha / 2.0, n - 1.0)
    else:
        quant = np.array([t_quantile(1.0 - alpha / 2.0, k - 1.0) if k >= 2 else np.inf for k in n])
    nn = np.maximum(n, 2.0)
    with np.errstate(invalid='ignore'):
        radius = np.sqrt(centered / (nn * (nn - 1.0))) * quant
    return make_interval(total / np.maximum(n, 1.0), radius, fixed_n_only=True)

def median_sign_epower(theta, lam):
    """ Growth rate of B_n^lambda under N(theta, 1) """
    return lam * (gauss_cdf(theta) - 0.5) - (np.logaddexp(lam / 2.0, -lam / 2.0) - LOG_2)

def median_epower(theta):
    """ Growth rate of the beta-binomial mixture: Phi ln Phi + (1-Phi) ln(1-Phi) + ln 2 """
    p = gauss_cdf(theta)
    q = gauss_cdf(-np.asarray(theta, dtype=float))
    return as_result(xlogy(p, p) + xlogy(q, q) + LOG_2)

def are_betabinom(step = ARE_STEP):
    """ Curvature at 0 of median_epower relative to the optimal 1/2 log(1 + theta^2) """
    def curvature(f):
        return (f(step) - 2.0 * f(0.0) + f(-step)) / (step * step)
    return curvature(median_epower) / curvature(lambda t: 0.5 * math.log1p(t * t))

class MedianSignEvaluator(ProcessEvaluator):
    """ B_n^lambda: one-sided, grows only when the median exceeds mu0 for lambda > 0 """
    kind = KIND_MARTINGALE

    def __init__(self, lam = 0.5, mu0 = 0.0):
        ProcessEvaluator.__init__(self, mu0)
        self.lam = float(lam)

    def log_value(self):
        return median_sign_supermartingale(self.stats, self.lam, log = True)

class MedianBetaBinomEvaluator(ProcessEvaluator):
    kind = KIND_MARTINGALE

    def __init__(self, a = 1.0, b = 1.0, mu0 = 0.0):
        ProcessEvaluator.__init__(self, mu0)
        if not (a > 0 and b > 0):
            raise DomainError('beta-binomial a, b must be > 0')
        self.a = float(a)
        self.b = float(b)

    def log_value(self):
        return median_betabinom(self.stats, self.a, self.b, log = True)
