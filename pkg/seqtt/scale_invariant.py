#!/usr/bin/python
# vim: set tabstop=8 softtabstop=4 noexpandtab
#Copyright (c) 2026, The seqtt Authors
#All rights reserved. Distributed under the BSD 3-Clause license, see LICENSE.
""" Scale invariant t-test processes.

All of these depend on the data only through n and S_n/sqrt(V_n), so they
live on the filtration generated by X_i/|X_1|. Closed forms accept a
SampleStats or a StatsPath; the quadrature based ones take a SampleStats.
Observations are shifted by mu0 before they reach the statistics.
"""
import math
from dataclasses import dataclass
import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import optimize
from scipy.special import gammaln, logsumexp
from .errors import DomainError, DegenerateSampleError
from .specfun import integrate, t_cdf, t_pdf, DEFAULT_QUADRATURE
from .stats_core import (ProcessEvaluator, KIND_MARTINGALE, KIND_EPROCESS,
    KIND_EXTENDED, FILTRATION_SCALE_INVARIANT, BISECT_MAX_ITER, SEARCH_MAX_DOUBLINGS,
    CsInterval, check_alpha, ville_threshold, make_interval, moments, as_result)

LOG_2PI = math.log(2.0 * math.pi)
# phi'' <= -2 on the u = sqrt(y) scale, so mass beyond this distance is < e^-1600
PEAK_HALF_WIDTH = 40.0
SCALE_MIXTURE_NODES = 256
JZS_SHIFT_GRID = 65

def _check_c_sq(c_sq):
    if not c_sq > 0:
        raise DomainError('c_sq must be > 0, got %r' % (c_sq,))
    return float(c_sq)

@dataclass(frozen=True)
class SiProcessParams:
    """ Hyperparameters of the scale invariant processes

    c_sq is the precision c^2 of the N(0, 1/c^2) prior on the standardized
    mean, lai_m the first time Lai's interval is active.
    """
    c_sq: float = 1.0
    lai_m: int = 2
    mu0: float = 0.0

    def __post_init__(self):
        _check_c_sq(self.c_sq)
        if int(self.lai_m) != self.lai_m or self.lai_m < 2:
            raise DomainError('lai_m must be an integer >= 2, got %r' % (self.lai_m,))

def _require_scale(n, v):
    if np.any(n < 1):
        raise DomainError('process needs n >= 1')
    if np.any(v <= 0):
        raise DegenerateSampleError('V_n = 0: sample carries no scale information')

def _finish(log_value, log):
    if log:
        return as_result(log_value)
    with np.errstate(over='ignore'):
        return as_result(np.exp(log_value))

def si_likelihood_ratio(theta, stats, settings = None, log = False):
    """ h_{theta,n}: likelihood ratio of N(theta sigma, sigma^2) to N(0, sigma^2) on the scale invariant filtration

    h = e^{-n theta^2/2} / Gamma(n/2) * int_0^inf y^{n/2-1} exp(-y + theta S sqrt(2y/V)) dy,
    integrated on u = sqrt(y) around the peak of the log integrand.
    """
    n, s, v, _ = moments(stats)
    n = float(n)
    s = float(s)
    v = float(v)
    _require_scale(n, v)
    settings = settings or DEFAULT_QUADRATURE

    r = theta * s * math.sqrt(2.0 / v)
    k = n - 1.0

    def phi(u):
        if k == 0.0:
            return -u * u + r * u
        return k * math.log(u) - u * u + r * u

    peak = (r + math.sqrt(r * r + 8.0 * k)) / 4.0
    if peak > 0:
        top = phi(peak)
    else:
        peak, top = 0.0, 0.0

    def integrand(u):
        if u <= 0.0:
            return math.exp(-top) if k == 0.0 else 0.0
        return math.exp(phi(u) - top)

    lo = max(0.0, peak - PEAK_HALF_WIDTH)
    hi = peak + PEAK_HALF_WIDTH
    mass = integrate(integrand, lo, peak, settings) + integrate(integrand, peak, hi, settings)
    log_h = -n * theta * theta / 2.0 - gammaln(n / 2.0) + top + math.log(2.0 * mass)
    return _finish(log_h, log)

def _log_gauss_mix(n, s, v, centered, c_sq):
    """ log G_n^{(c)}; (n+c^2)V - S^2 written as c^2 V + n * centered

    Products are formed in log space; finite while V_n itself is.
    """
    return 0.5 * (math.log(c_sq) - np.log(n + c_sq)) + 0.5 * n * _log_mix_ratio(n, v, centered, c_sq)

def _log_mix_ratio(n, v, centered, c_sq):
    """ log((n+c^2) V / (c^2 V + n * centered)) """
    with np.errstate(divide='ignore', invalid='ignore'):
        log_v = np.log(v)
        log_denom = np.logaddexp(np.log(c_sq) + log_v, np.log(n) + np.log(centered))
        return np.log(n + c_sq) + log_v - log_denom

def gauss_mix_martingale(stats, c_sq, log = False):
    """ G_n^{(c)} = sqrt(c^2/(n+c^2)) ((n+c^2)V_n / ((n+c^2)V_n - S_n^2))^{n/2} """
    c_sq = _check_c_sq(c_sq)
    n, s, v, centered = moments(stats)
    _require_scale(n, v)
    return _finish(_log_gauss_mix(n, s, v, centered, c_sq), log)

def semi_one_sided(stats, c_sq, log = False):
    """ G_n^{(c-)} = 2 G_n^{(c)} - 2 G_n^{(c)}|_{S_n <- S_n ^ 0}; zero once S_n <= 0 """
    c_sq = _check_c_sq(c_sq)
    n, s, v, centered = moments(stats)
    _require_scale(n, v)
    log_g = _log_gauss_mix(n, s, v, centered, c_sq)
    # with S_n <- 0 the power term is 1
    log_floor = 0.5 * (math.log(c_sq) - np.log(n + c_sq))
    with np.errstate(divide='ignore', invalid='ignore'):
        value = math.log(2.0) + log_g + np.log1p(-np.exp(np.minimum(log_floor - log_g, 0.0)))
    value = np.where(s > 0, value, -np.inf)
    return _finish(value, log)

def lai_ensm(stats, log = False):
    """ H_n = sqrt(2 pi/n) (n V_n / (n V_n - S_n^2))^{n/2}; H_1 = inf """
    n, s, v, centered = moments(stats)
    if np.any(n < 1):
        raise DomainError('lai_ensm needs n >= 1')
    with np.errstate(divide='ignore', invalid='ignore'):
        value = 0.5 * (LOG_2PI - np.log(n)) + 0.5 * n * (np.log(v) - np.log(centered))
    value = np.where((n < 2) | (centered <= 0), np.inf, value)
    return _finish(value, log)

def lai_log_t(t, n):
    """ log H_n through the t statistic: sqrt(2 pi/n) (1 + T^2/(n-1))^{n/2} """
    n = np.asarray(n, dtype=float)
    return as_result(0.5 * (LOG_2PI - np.log(n)) + 0.5 * n * np.log1p(np.asarray(t) ** 2 / (n - 1.0)))

def gauss_mix_log_t(t, n, c_sq):
    """ log G_n^{(c)} through the t statistic """
    c_sq = _check_c_sq(c_sq)
    n = np.asarray(n, dtype=float)
    t_sq = np.asarray(t, dtype=float) ** 2
    ratio = n * t_sq / ((n + c_sq) * (n - 1.0) + c_sq * t_sq)
    return as_result(0.5 * (math.log(c_sq) - np.log(n + c_sq)) + 0.5 * n * np.log1p(ratio))

def lai_threshold(m, alpha):
    """ (a, b): 2(1 - F_{m-1}(a) + a f_{m-1}(a)) = alpha, b = (1 + a^2/(m-1))^m / m """
    if int(m) != m or m < 2:
        raise DomainError('lai start time m must be an integer >= 2, got %r' % (m,))
    if not 0.0 < alpha <= 1.0:
        raise DomainError('alpha must be in (0, 1], got %r' % (alpha,))
    m = int(m)
    df = m - 1.0

    if alpha == 1.0:
        a = 0.0
    else:
        def excess(a):
            return 2.0 * (t_cdf(-a, df) + a * t_pdf(a, df)) - alpha

        hi = 1.0
        while excess(hi) > 0:
            hi *= 2.0
        a = optimize.brentq(excess, 0.0, hi, xtol=1e-12, maxiter=500)

    b = math.exp(m * math.log1p(a * a / df)) / m
    return a, b

def lai_cs(stats, m, alpha):
    """ [xbar +- sqrt(s_n^2 ((b n)^{1/n} - 1))] for n >= m, the whole line before """
    a, b = lai_threshold(m, check_alpha(alpha))
    n, s, _, centered = moments(stats)
    nn = np.maximum(n, 1.0)
    with np.errstate(invalid='ignore'):
        radius = np.sqrt(centered / nn * np.expm1(np.log(b * nn) / nn))
    radius = np.where(n < m, np.inf, radius)
    return make_interval(s / nn, radius)

def gauss_mix_cs(stats, c_sq, alpha):
    """ Closed-form inversion of G_n^{(c)} < 1/alpha """
    c_sq = _check_c_sq(c_sq)
    alpha = check_alpha(alpha)
    n, s, _, centered = moments(stats)
    if np.any(n < 1):
        raise DomainError('gauss_mix_cs needs n >= 1')
    log_q = (2.0 * math.log(alpha) + math.log(c_sq) - np.log(n + c_sq)) / n
    q = np.exp(log_q)
    num = (n + c_sq) * -np.expm1(log_q)
    den = q * (n + c_sq) - c_sq
    with np.errstate(divide='ignore', invalid='ignore'):
        radius = np.sqrt(num / den * centered / n)
    radius = np.where(den > 0, radius, np.inf)
    return make_interval(s / n, radius)

def optimal_c_sq(n, alpha):
    """ c^2 with c^2/(n+c^2) = alpha^{2/(n-1)} 2^{-n/(n-1)}, narrowest interval at n """
    if n < 2:
        raise DomainError('optimal_c_sq needs n >= 2')
    alpha = check_alpha(alpha, 1.0 + 1e-12)
    r = math.exp((2.0 * math.log(alpha) - n * math.log(2.0)) / (n - 1.0))
    if r >= 1.0:
        raise DomainError('optimal_c_sq needs alpha^{2/(n-1)} 2^{-n/(n-1)} < 1')
    return n * r / (1.0 - r)

def semi_one_sided_lower_cs(stats, c_sq, alpha):
    """ [L, inf): mu0 values the semi-one-sided e-process does not reject """
    c_sq = _check_c_sq(c_sq)
    threshold = ville_threshold(alpha)
    n = stats.n
    if n < 1:
        raise DomainError('semi_one_sided_lower_cs needs n >= 1')

    # G^- grows as mu0 decreases; its supremum is the mu0 -> -inf limit S_n^2/V_n -> n
    log_top = 0.5 * (n - 1.0) * (math.log(n + c_sq) - math.log(c_sq))
    log_floor = 0.5 * (math.log(c_sq) - math.log(n + c_sq))
    log_sup = math.log(2.0) + log_top + math.log1p(-math.exp(log_floor - log_top))
    if not log_sup > math.log(threshold):
        return CsInterval.everything()

    def rejects(mu0):
        shifted = stats.shifted(mu0)
        # all observations equal to mu0: S = 0, no evidence
        if not shifted.sum_sq > 0:
            return False
        with np.errstate(all='ignore'):
            value = semi_one_sided(shifted, c_sq)
        return math.isfinite(value) and value >= threshold

    inside = stats.mean
    step = math.sqrt(stats.var_pop) or max(1.0, abs(stats.mean))
    outside = None
    for _ in range(SEARCH_MAX_DOUBLINGS):
        point = inside - step
        if math.isinf(point):
            break
        if rejects(point):
            outside = point
            break
        inside = point
        step *= 2.0

    if outside is None:
        return CsInterval.everything()

    for _ in range(BISECT_MAX_ITER):
        mid = 0.5 * (inside + outside)
        if mid == inside or mid == outside:
            break
        if rejects(mid):
            outside = mid
        else:
            inside = mid
        if abs(inside - outside) <= 1e-13 * max(1.0, abs(inside)):
            break
    return CsInterval(0.5 * (inside + outside), math.inf)

def _cauchy_mixture_log(stats, settings):
    """ log of int h_{theta,n} dC_{0,1}(theta) with theta = tan(u) """
    half_pi = math.pi / 2.0
    grid = np.linspace(-half_pi, half_pi, JZS_SHIFT_GRID + 2)[1:-1]
    shift = max(si_likelihood_ratio(math.tan(u), stats, settings, log = True) for u in grid)

    def integrand(u):
        lh = si_likelihood_ratio(math.tan(u), stats, settings, log = True)
        if math.isnan(lh):
            return 0.0
        return math.exp(lh - shift) / math.pi

    mass = integrate(integrand, -half_pi, 0.0, settings) + integrate(integrand, 0.0, half_pi, settings)
    return shift + math.log(mass)

def _scale_mixture_rule(nodes):
    """ log weights and c^2 values for int_0^inf g(c^2 = v^2) 2 phi(v) dv, v = t/(1-t) """
    t, w = leggauss(nodes)
    t = 0.5 * (t + 1.0)
    w = 0.5 * w
    v = t / (1.0 - t)
    log_w = np.log(w) - 2.0 * np.log1p(-t) + math.log(2.0) - 0.5 * LOG_2PI - 0.5 * v * v
    return log_w, v * v

def jzs_mixture_path(stats, nodes = SCALE_MIXTURE_NODES, log = False):
    """ int G_n^{(c)} over c^2 ~ chi^2_1: the Cauchy mixture of h_{theta,n}

    Works on SampleStats or a whole StatsPath.
    """
    n, s, v, centered = moments(stats)
    _require_scale(n, v)
    log_w, c_sq = _scale_mixture_rule(nodes)
    n = n[..., None]
    s = s[..., None]
    v = v[..., None]
    centered = centered[..., None]
    log_g = 0.5 * (np.log(c_sq) - np.log(n + c_sq)) + 0.5 * n * _log_mix_ratio(n, v, centered, c_sq)
    return _finish(logsumexp(log_g + log_w, axis=-1), log)

def jzs_bayes_factor(stats, settings = None, method = 'cauchy', log = False):
    """ B_n^JZS = 1 / int h_{theta,n} dC_{0,1}(theta); 1/B is an e-value for mean zero

    method 'cauchy' integrates h over the Cauchy prior on the tangent scale;
    'scale-mixture' uses the chi^2_1 precision mixture of G_n^{(c)}.
    """
    if method == 'cauchy':
        log_m = _cauchy_mixture_log(stats, settings or DEFAULT_QUADRATURE)
    elif method == 'scale-mixture':
        log_m = jzs_mixture_path(stats, log = True)
    else:
        raise DomainError('unknown jzs method %r' % (method,))
    return _finish(-np.asarray(log_m), log)

class GaussMixEvaluator(ProcessEvaluator):
    """ G_n^{(c)}, a test martingale for mean mu0 """
    kind = KIND_MARTINGALE
    filtration = FILTRATION_SCALE_INVARIANT

    def __init__(self, c_sq = 1.0, mu0 = 0.0):
        ProcessEvaluator.__init__(self, mu0)
        self.c_sq = _check_c_sq(c_sq)

    def log_value(self):
        return gauss_mix_martingale(self.stats, self.c_sq, log = True)

class SemiOneSidedEvaluator(GaussMixEvaluator):
    kind = KIND_EPROCESS

    def log_value(self):
        return semi_one_sided(self.stats, self.c_sq, log = True)

class LaiEvaluator(ProcessEvaluator):
    """ Lai's extended NSM H_n, +inf at n = 1 """
    kind = KIND_EXTENDED
    filtration = FILTRATION_SCALE_INVARIANT

    def log_value(self):
        return lai_ensm(self.stats, log = True)

class JzsEvaluator(ProcessEvaluator):
    """ 1 / B_n^JZS """
    kind = KIND_MARTINGALE
    filtration = FILTRATION_SCALE_INVARIANT

    def log_value(self):
        return jzs_mixture_path(self.stats, log = True)
