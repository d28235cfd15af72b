#!/usr/bin/python
# vim: set tabstop=8 softtabstop=4 noexpandtab
#Copyright (c) 2026, The seqtt Authors
#All rights reserved. Distributed under the BSD 3-Clause license, see LICENSE.
""" Method registry: names used on the command line mapped to processes and intervals.

A ProcessSpec names one method and carries every hyperparameter any
method reads. It builds a streaming evaluator, the whole log trajectory
for a data vector, or the interval trajectory for a data vector.
"""
import math
from dataclasses import dataclass, field
import numpy as np
from .errors import DomainError
from .specfun import QuadratureSettings, DEFAULT_QUADRATURE
from .stats_core import (SampleStats, CsPath, KIND_EXTENDED, running_stats, check_alpha,
    anytime_p_value)
from . import universal_inference as ui
from . import scale_invariant as si
from . import baselines as bl

@dataclass(frozen=True)
class MethodInfo:
    """ Static description of an e-process method """
    kind: str
    filtration: str
    evaluator: type
    description: str

EPROCESS_METHODS = {
    'gauss-mix': MethodInfo(si.GaussMixEvaluator.kind, si.GaussMixEvaluator.filtration,
        si.GaussMixEvaluator, 'scale invariant Gaussian mixture martingale G_n^(c)'),
    'lai-ensm': MethodInfo(si.LaiEvaluator.kind, si.LaiEvaluator.filtration,
        si.LaiEvaluator, 'Lai extended martingale H_n'),
    'semi-one-sided': MethodInfo(si.SemiOneSidedEvaluator.kind, si.SemiOneSidedEvaluator.filtration,
        si.SemiOneSidedEvaluator, 'semi-one-sided mixture e-process G_n^(c-)'),
    'ui': MethodInfo(ui.UiProcess.kind, ui.UiProcess.filtration,
        ui.UiProcess, 'plug-in t-test e-process R_n^mu0'),
    'ui-one-sided': MethodInfo(ui.UiOneSidedProcess.kind, ui.UiOneSidedProcess.filtration,
        ui.UiOneSidedProcess, 'plug-in one-sided t-test e-process R_n^-'),
    'ui-z': MethodInfo(ui.UiZProcess.kind, ui.UiZProcess.filtration,
        ui.UiZProcess, 'plug-in Z-test martingale against N(mu0, sigma^2)'),
    'ui-z-one-sided': MethodInfo(ui.UiZOneSidedProcess.kind, ui.UiZOneSidedProcess.filtration,
        ui.UiZOneSidedProcess, 'plug-in one-sided Z-test e-process'),
    'jzs': MethodInfo(si.JzsEvaluator.kind, si.JzsEvaluator.filtration,
        si.JzsEvaluator, 'JZS Bayes factor 1/B (Cauchy prior, scale mixture rule)'),
    'jzs-quad': MethodInfo(si.JzsEvaluator.kind, si.JzsEvaluator.filtration,
        si.JzsEvaluator, 'JZS Bayes factor 1/B (adaptive Cauchy quadrature, slow)'),
    'median-sign': MethodInfo(bl.MedianSignEvaluator.kind, bl.MedianSignEvaluator.filtration,
        bl.MedianSignEvaluator, 'one-sided sign test supermartingale B_n^lambda'),
    'median-betabinom': MethodInfo(bl.MedianBetaBinomEvaluator.kind, bl.MedianBetaBinomEvaluator.filtration,
        bl.MedianBetaBinomEvaluator, 'beta-binomial mixture sign test supermartingale'),
}

CS_METHODS = {
    'ui': 'plug-in (universal inference) CS',
    'lai': 'Lai CS, active from n = lai_m',
    'gauss-mix': 'Gaussian mixture CS, closed form',
    'semi-one-sided': 'lower confidence bound from the semi-one-sided e-process',
    'plugin': 'stitched plug-in t-CS',
    'known-var': 'stitched normal mixture CS with known sigma',
    'median': 'median CS from empirical quantiles',
    'classical': 'fixed-n Student t interval (not a CS)',
}

@dataclass(frozen=True)
class ProcessSpec:
    """ One method plus its hyperparameters

    prior is None for empirical plug-in estimates or the NIG quadruple
    (mu0, nu0, a0, b0).
    """
    method: str
    mu0: float = 0.0
    c_sq: float = 1.0
    lai_m: int = 2
    prior: tuple = None
    burn_in: int = 0
    sigma: float = 1.0
    lam: float = 0.5
    beta_a: float = 1.0
    beta_b: float = 1.0
    stitch: bl.StitchParams = field(default_factory=bl.StitchParams)
    quadrature: QuadratureSettings = DEFAULT_QUADRATURE

    def __post_init__(self):
        if self.method not in EPROCESS_METHODS and self.method not in CS_METHODS:
            raise DomainError('unknown method %r' % (self.method,))
        if self.prior is not None:
            object.__setattr__(self, 'prior', tuple(float(p) for p in self.prior))
        si.SiProcessParams(self.c_sq, self.lai_m, self.mu0)
        if not self.sigma > 0:
            raise DomainError('sigma must be > 0, got %r' % (self.sigma,))
        if not (self.beta_a > 0 and self.beta_b > 0):
            raise DomainError('beta_a and beta_b must be > 0')
        self.estimator()

    @classmethod
    def from_config(cls, method, conf):
        """ Build from a loaded config dict (see seqtt.config.DEFAULTS) """
        prior = conf.get('prior')
        return cls(method,
                   mu0=float(conf['mu0']),
                   c_sq=float(conf['c_sq']),
                   lai_m=int(conf['lai_m']),
                   prior=tuple(prior) if prior else None,
                   burn_in=int(conf['burn_in']),
                   sigma=float(conf['sigma']),
                   lam=float(conf['lambda']),
                   beta_a=float(conf['beta_a']),
                   beta_b=float(conf['beta_b']),
                   stitch=bl.StitchParams(float(conf['eta']), float(conf['stitch_s'])),
                   quadrature=QuadratureSettings.from_config(conf.get('quadrature')))

    @property
    def has_eprocess(self):
        return self.method in EPROCESS_METHODS

    @property
    def has_cs(self):
        return self.method in CS_METHODS

    @property
    def info(self):
        if not self.has_eprocess:
            raise DomainError('method %r has no e-process' % (self.method,))
        return EPROCESS_METHODS[self.method]

    @property
    def kind(self):
        return self.info.kind

    @property
    def filtration(self):
        return self.info.filtration

    @property
    def ville_valid(self):
        """ False for extended NSMs: their 1/alpha crossings and p-values are not valid """
        return self.kind != KIND_EXTENDED

    def crossing_path(self, x, alpha, logs = None):
        """ bool array: mu0 rejected after each observation of x

        Extended NSMs reject once mu0 leaves the Lai interval (from n = lai_m);
        the other kinds reject once the process reaches 1/alpha. logs, when
        given, is log_path(x).
        """
        alpha = check_alpha(alpha)
        x = np.asarray(x, dtype=float)
        if not self.ville_valid:
            if len(x) == 0:
                return np.zeros(0, dtype=bool)
            cs = si.lai_cs(running_stats(x), self.lai_m, alpha)
            return ~np.asarray(cs.covers(self.mu0), dtype=bool)
        if logs is None:
            logs = self.log_path(x)
        return np.asarray(logs) >= -math.log(alpha)

    def p_value(self, logs):
        """ anytime p-value of a log trajectory; None for extended NSMs """
        if not self.ville_valid:
            return None
        return anytime_p_value(logs, log = True)

    def estimator(self):
        """ Fresh plug-in estimator for the ui family """
        if self.prior is None:
            return ui.PluginEstimator(burn_in = self.burn_in)
        return ui.PluginEstimator(ui.SCHEME_NIG, self.prior, self.burn_in)

    def evaluator(self):
        """ Streaming evaluator fed raw observations """
        name = self.method
        if name == 'gauss-mix':
            return si.GaussMixEvaluator(self.c_sq, self.mu0)
        if name == 'semi-one-sided':
            return si.SemiOneSidedEvaluator(self.c_sq, self.mu0)
        if name == 'lai-ensm':
            return si.LaiEvaluator(self.mu0)
        if name in ('jzs', 'jzs-quad'):
            return si.JzsEvaluator(self.mu0)
        if name == 'ui':
            return ui.UiProcess(self.estimator(), self.mu0)
        if name == 'ui-one-sided':
            return ui.UiOneSidedProcess(self.estimator(), self.mu0)
        if name == 'ui-z':
            return ui.UiZProcess(self.mu0, self.sigma, self.estimator())
        if name == 'ui-z-one-sided':
            return ui.UiZOneSidedProcess(self.sigma, self.estimator())
        if name == 'median-sign':
            return bl.MedianSignEvaluator(self.lam, self.mu0)
        if name == 'median-betabinom':
            return bl.MedianBetaBinomEvaluator(self.beta_a, self.beta_b, self.mu0)
        raise DomainError('method %r has no e-process' % (name,))

    def log_path(self, x):
        """ log process value after each observation of x """
        name = self.method
        x = np.asarray(x, dtype=float)
        if name == 'ui':
            return ui.ui_t_path(x, self.estimator(), self.mu0)
        if name == 'ui-one-sided':
            return ui.ui_t_path(x, self.estimator(), self.mu0, one_sided = True)
        if name == 'ui-z':
            return ui.ui_z_path(x, self.mu0, self.sigma, self.estimator())
        if name == 'ui-z-one-sided':
            return self.evaluator().trajectory(x)
        if name == 'jzs-quad':
            return _prefix_values(x - self.mu0,
                    lambda stats: -si.jzs_bayes_factor(stats, self.quadrature, log = True))

        stats = running_stats(x, self.mu0)
        if name == 'gauss-mix':
            return si.gauss_mix_martingale(stats, self.c_sq, log = True)
        if name == 'semi-one-sided':
            return si.semi_one_sided(stats, self.c_sq, log = True)
        if name == 'lai-ensm':
            return si.lai_ensm(stats, log = True)
        if name == 'jzs':
            return si.jzs_mixture_path(stats, log = True)
        if name == 'median-sign':
            return bl.median_sign_supermartingale(stats, self.lam, log = True)
        if name == 'median-betabinom':
            return bl.median_betabinom(stats, self.beta_a, self.beta_b, log = True)
        raise DomainError('method %r has no e-process' % (name,))

    def cs_path(self, x, alpha):
        """ CsPath of intervals after each observation of x """
        alpha = check_alpha(alpha)
        name = self.method
        x = np.asarray(x, dtype=float)
        if name == 'ui':
            return ui.ui_cs_path(x, alpha, self.estimator())
        if name == 'semi-one-sided':
            return _prefix_intervals(x, lambda stats: si.semi_one_sided_lower_cs(stats, self.c_sq, alpha))

        stats = running_stats(x)
        if name == 'lai':
            return si.lai_cs(stats, self.lai_m, alpha)
        if name == 'gauss-mix':
            return si.gauss_mix_cs(stats, self.c_sq, alpha)
        if name == 'plugin':
            return bl.plugin_t_cs(stats, alpha, self.stitch)
        if name == 'known-var':
            return bl.known_var_mix_cs(stats, self.sigma, alpha, self.stitch.s)
        if name == 'median':
            return bl.median_cs(stats, alpha)
        if name == 'classical':
            return bl.classical_t_ci(stats, alpha)
        raise DomainError('method %r has no confidence sequence' % (name,))

    @property
    def fixed_n_only(self):
        return self.method == 'classical'

def _prefix_values(x, fn):
    stats = SampleStats()
    out = np.empty(len(x))
    for k, value in enumerate(x):
        stats.push(value)
        out[k] = fn(stats)
    return out

def _prefix_intervals(x, fn):
    stats = SampleStats()
    lower = np.empty(len(x))
    upper = np.empty(len(x))
    for k, value in enumerate(x):
        stats.push(value)
        ci = fn(stats)
        lower[k], upper[k] = ci.lower, ci.upper
    return CsPath(lower, upper)
