#!/usr/bin/python
# vim: set tabstop=8 softtabstop=4 noexpandtab
#Copyright (c) 2026, The seqtt Authors
#All rights reserved. Distributed under the BSD 3-Clause license, see LICENSE.
""" Plug-in (universal inference) e-processes for the Gaussian mean.

The alternative likelihood is the product of Gaussian densities evaluated
at predictable estimates (mu~_{i-1}, sigma~_{i-1}); the null likelihood is
maximized in closed form. Everything is kept in log space.
"""
import math
import numpy as np
from .errors import DomainError
from .nlog import vlog
from .stats_core import (ProcessEvaluator, KIND_MARTINGALE, KIND_EPROCESS,
    FILTRATION_CANONICAL, CsInterval, CsPath, check_alpha, make_interval,
    running_stats, as_result)

VARIANCE_FLOOR = 1e-12
SCHEME_EMPIRICAL = 'empirical'
SCHEME_NIG = 'nig'

class PluginEstimator(object):
    """ Predictable mean/variance estimates for the plug-in likelihood

    scheme 'empirical': running mean and population variance, (0, 1)
        until they are defined and nonzero.
    scheme 'nig': posterior means under a normal-inverse-gamma prior
        (mu0, nu0, a0, b0); a0 > 1 so the variance mean exists.

    current() always answers for the NEXT observation.
    """

    def __init__(self, scheme = SCHEME_EMPIRICAL, prior = None, burn_in = 0):
        if scheme not in (SCHEME_EMPIRICAL, SCHEME_NIG):
            raise DomainError('unknown estimator scheme %r' % (scheme,))
        if int(burn_in) < 0:
            raise DomainError('burn_in must be >= 0')

        if scheme == SCHEME_NIG:
            if prior is None or len(prior) != 4:
                raise DomainError('nig scheme needs a prior (mu0, nu0, a0, b0)')
            prior = tuple(float(p) for p in prior)
            if not (prior[1] > 0 and prior[3] > 0):
                raise DomainError('nig prior needs nu0 > 0 and b0 > 0')
            if not prior[2] > 1:
                raise DomainError('nig prior needs a0 > 1 for a posterior mean variance, got a0=%r' % (prior[2],))

        self.scheme = scheme
        self.prior = prior
        self.burn_in = int(burn_in)
        self.n = 0
        self.mean = 0.0
        self.m2 = 0.0
        self.floored = 0

    @classmethod
    def nig(cls, mu0, nu0, a0, b0, burn_in = 0):
        return cls(SCHEME_NIG, (mu0, nu0, a0, b0), burn_in)

    def copy(self):
        other = PluginEstimator.__new__(PluginEstimator)
        other.__dict__.update(self.__dict__)
        return other

    def _floor(self, var):
        if var < VARIANCE_FLOOR:
            self.floored += 1
            vlog(2, 'Warning: plug-in variance %r clamped to %r' % (var, VARIANCE_FLOOR))
            return VARIANCE_FLOOR
        return var

    def current(self):
        """ (mu~, sigma~^2) for the next observation """
        if self.scheme == SCHEME_EMPIRICAL:
            if self.n == 0:
                return 0.0, 1.0
            var = self.m2 / self.n
            if var == 0.0:
                return self.mean, 1.0
            return self.mean, self._floor(var)

        mu0, nu0, a0, b0 = self.prior
        n = self.n
        mu = (nu0 * mu0 + n * self.mean) / (nu0 + n)
        a = a0 + n / 2.0
        b = b0 + 0.5 * self.m2 + n * nu0 * (self.mean - mu0) ** 2 / (2.0 * (nu0 + n))
        return mu, self._floor(b / (a - 1.0))

    def push(self, x):
        self.n += 1
        delta = x - self.mean
        self.mean += delta / self.n
        self.m2 += delta * (x - self.mean)
        return self

    def predictions(self, x):
        """ Vectorized current() before each element of x, from a fresh state

        Returns (mu~, sigma~^2) arrays; entry i uses x[:i] only.
        """
        x = np.asarray(x, dtype=float)
        size = len(x)
        k = np.arange(size, dtype=float)
        kk = np.maximum(k, 1.0)
        if size:
            y = x - x[0]
            cy = np.concatenate(([0.0], np.cumsum(y)[:-1]))
            cyy = np.concatenate(([0.0], np.cumsum(y * y)[:-1]))
            mean = np.where(k > 0, x[0] + cy / kk, 0.0)
            m2 = np.maximum(cyy - cy * cy / kk, 0.0)
        else:
            mean = m2 = np.zeros(0)

        if self.scheme == SCHEME_EMPIRICAL:
            mu = np.where(k > 0, mean, 0.0)
            var = np.where((k > 0) & (m2 > 0), m2 / kk, 1.0)
        else:
            mu0, nu0, a0, b0 = self.prior
            mu = (nu0 * mu0 + k * mean) / (nu0 + k)
            b = b0 + 0.5 * m2 + k * nu0 * (mean - mu0) ** 2 / (2.0 * (nu0 + k))
            var = b / (a0 + k / 2.0 - 1.0)

        low = var < VARIANCE_FLOOR
        if np.any(low):
            self.floored += int(np.sum(low))
            vlog(2, 'Warning: %s plug-in variances clamped to %r' % (int(np.sum(low)), VARIANCE_FLOOR))
            var = np.maximum(var, VARIANCE_FLOOR)
        return mu, var

def estimator_step(est, x):
    """ Feed x to a copy of est; returns (mu~, sigma~, est') for the next observation """
    nxt = est.copy().push(float(x))
    mu, var = nxt.current()
    return mu, math.sqrt(var), nxt

class UiProcess(ProcessEvaluator):
    """ State of a plug-in e-process: post burn-in statistics plus the log plug-in product

    stats hold raw observations; mu0 only enters the null term.
    """
    kind = KIND_EPROCESS
    filtration = FILTRATION_CANONICAL

    def __init__(self, estimator = None, mu0 = 0.0):
        ProcessEvaluator.__init__(self, mu0)
        self.estimator = estimator if estimator is not None else PluginEstimator()
        self.seen = 0
        self.log_plugin = 0.0

    def update(self, x):
        x = float(x)
        if math.isnan(x):
            raise DomainError('NaN observation')

        self.seen += 1
        if self.seen > self.estimator.burn_in:
            mu, var = self.estimator.current()
            self.log_plugin += -0.5 * math.log(var) - 0.5 * (x - mu) ** 2 / var
            self.stats.push(x)
        self.estimator.push(x)
        return self

    def log_value(self):
        return ui_t_eprocess(self, log = True)

class UiOneSidedProcess(UiProcess):
    """ Plug-in e-process for H0: mu <= mu0 """
    def log_value(self):
        return ui_t_one_sided(self, log = True)

class UiZProcess(UiProcess):
    """ Plug-in martingale against the simple null N(mu, sigma^2) """
    kind = KIND_MARTINGALE

    def __init__(self, mu, sigma, estimator = None):
        UiProcess.__init__(self, estimator, mu)
        if not sigma > 0:
            raise DomainError('sigma must be > 0')
        self.sigma = float(sigma)

    def log_value(self):
        return ui_z_martingale(self, self.mu0, self.sigma, log = True)

class UiZOneSidedProcess(UiZProcess):
    """ Plug-in e-process for the known-variance null mu <= 0 """
    kind = KIND_EPROCESS

    def __init__(self, sigma, estimator = None):
        UiZProcess.__init__(self, 0.0, sigma, estimator)

    def log_value(self):
        return ui_z_one_sided(self, self.sigma, log = True)

def _finish(log_value, log):
    if log:
        return as_result(log_value)
    with np.errstate(over='ignore'):
        return as_result(np.exp(log_value))

def _null_sum_sq(state, mu):
    """ sum (X_i - mu)^2 """
    stats = state.stats
    n = np.asarray(stats.n, dtype=float)
    return stats.centered_sum_sq + n * (np.where(n > 0, stats.sum / np.maximum(n, 1), 0.0) - mu) ** 2

def ui_z_martingale(state, mu, sigma, log = False):
    """ Plug-in over fixed N(mu, sigma^2) likelihood ratio """
    if not sigma > 0:
        raise DomainError('sigma must be > 0')
    n = np.asarray(state.stats.n, dtype=float)
    value = n * math.log(sigma) + _null_sum_sq(state, mu) / (2.0 * sigma * sigma) + state.log_plugin
    return _finish(np.where(n > 0, value, 0.0), log)

def ui_z_one_sided(state, sigma, log = False):
    """ inf over mu <= 0 of ui_z_martingale """
    if not sigma > 0:
        raise DomainError('sigma must be > 0')
    stats = state.stats
    n = np.asarray(stats.n, dtype=float)
    mean = np.where(n > 0, stats.sum / np.maximum(n, 1), 0.0)
    # V_n - n (xbar ^ 0)^2
    ss = stats.centered_sum_sq + n * np.maximum(mean, 0.0) ** 2
    value = n * math.log(sigma) + ss / (2.0 * sigma * sigma) + state.log_plugin
    return _finish(np.where(n > 0, value, 0.0), log)

def _log_t_ratio(n, ss, log_plugin):
    """ (ss/n)^{n/2} e^{n/2} exp(log_plugin), 0 when ss == 0 """
    nn = np.maximum(n, 1.0)
    with np.errstate(divide='ignore', invalid='ignore'):
        value = 0.5 * n * (np.log(ss / nn) + 1.0) + log_plugin
    value = np.where(ss > 0, value, -np.inf)
    return np.where(n > 0, value, 0.0)

def ui_t_eprocess(state, log = False):
    """ R_n^{mu0}: plug-in likelihood over the Gaussian likelihood maximized at mean mu0 """
    n = np.asarray(state.stats.n, dtype=float)
    return _finish(_log_t_ratio(n, _null_sum_sq(state, state.mu0), state.log_plugin), log)

def ui_t_one_sided(state, log = False):
    """ R_n^-: the null maximized over mean <= mu0 """
    stats = state.stats
    n = np.asarray(stats.n, dtype=float)
    mean = np.where(n > 0, stats.sum / np.maximum(n, 1), 0.0)
    ss = stats.centered_sum_sq + n * np.maximum(mean - state.mu0, 0.0) ** 2
    return _finish(_log_t_ratio(n, ss, state.log_plugin), log)

def ui_cs(state, alpha):
    """ [xbar +- sqrt(W_n - s_n^2)], W_n = alpha^{-2/n} e^{-1} exp(-2 log_plugin / n) """
    alpha = check_alpha(alpha)
    stats = state.stats
    n = np.asarray(stats.n, dtype=float)
    nn = np.maximum(n, 1.0)
    log_w = -2.0 * math.log(alpha) / nn - 1.0 - 2.0 * np.asarray(state.log_plugin) / nn
    with np.errstate(over='ignore'):
        radicand = np.exp(log_w) - stats.centered_sum_sq / nn
    radius = np.sqrt(np.maximum(radicand, 0.0))
    radius = np.where(n > 0, radius, np.inf)
    center = np.where(n > 0, stats.sum / nn, 0.0)
    return make_interval(center, radius)

def one_obs_ci(x1, alpha, randomized = False, u = None):
    """ [x1 +- (u/alpha) exp((x1^2 - 1)/2)], u = 1 unless randomized """
    alpha = check_alpha(alpha)
    scale = 1.0
    if randomized:
        if u is None or not 0.0 < u <= 1.0:
            raise DomainError('randomized interval needs u in (0, 1], got %r' % (u,))
        scale = float(u)
    radius = scale / alpha * math.exp((x1 * x1 - 1.0) / 2.0)
    return CsInterval(x1 - radius, x1 + radius)

def ui_z_epower(mu, sigma):
    """ Growth rate mu^2 / (2 sigma^2) of the plug-in Z martingale against N(0, sigma^2) """
    if not sigma > 0:
        raise DomainError('sigma must be > 0')
    return 0.5 * (mu / sigma) ** 2

class _PathState(object):
    """ Duck-typed UiProcess view over whole-path arrays """
    def __init__(self, stats, log_plugin, mu0):
        self.stats = stats
        self.log_plugin = log_plugin
        self.mu0 = mu0

def _path_state(x, estimator, mu0):
    x = np.asarray(x, dtype=float)
    if np.any(np.isnan(x)):
        raise DomainError('NaN observation')
    burn = min(estimator.burn_in, len(x))
    mu, var = estimator.predictions(x)
    terms = -0.5 * np.log(var) - 0.5 * (x - mu) ** 2 / var
    log_plugin = np.cumsum(terms[burn:])
    return _PathState(running_stats(x[burn:]), log_plugin, mu0), burn, len(x)

def _pad(values, burn, fill):
    return np.concatenate((np.full(burn, fill), values))

def ui_t_path(x, estimator = None, mu0 = 0.0, one_sided = False):
    """ log R_n^{mu0} (or R_n^-) after each observation; 0 during burn-in """
    estimator = estimator if estimator is not None else PluginEstimator()
    state, burn, _ = _path_state(x, estimator, mu0)
    if one_sided:
        values = ui_t_one_sided(state, log = True)
    else:
        values = ui_t_eprocess(state, log = True)
    return _pad(np.atleast_1d(values), burn, 0.0)

def ui_z_path(x, mu, sigma, estimator = None):
    """ log plug-in Z martingale after each observation """
    estimator = estimator if estimator is not None else PluginEstimator()
    state, burn, _ = _path_state(x, estimator, mu)
    return _pad(np.atleast_1d(ui_z_martingale(state, mu, sigma, log = True)), burn, 0.0)

def ui_cs_path(x, alpha, estimator = None):
    """ ui_cs after each observation; the whole line during burn-in """
    estimator = estimator if estimator is not None else PluginEstimator()
    state, burn, _ = _path_state(x, estimator, 0.0)
    cs = ui_cs(state, alpha)
    if not isinstance(cs, CsPath):
        cs = CsPath(np.atleast_1d(cs.lower), np.atleast_1d(cs.upper))
    return CsPath(_pad(cs.lower, burn, -np.inf), _pad(cs.upper, burn, np.inf))
