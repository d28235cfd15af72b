#!/usr/bin/python
# vim: set tabstop=8 softtabstop=4 noexpandtab
#Copyright (c) 2026, The seqtt Authors
#All rights reserved. Distributed under the BSD 3-Clause license, see LICENSE.
""" Reference quantities for t-test e-values and intervals.

The reverse information projection of N(mu, sigma^2) onto the null
{N(0, s^2) : s > 0} is N(0, sigma^2 + mu^2); the likelihood ratio against it
is the log-optimal (numeraire) one-observation e-value and its e-power
1/2 log(1 + mu^2/sigma^2) caps every t-test process.
"""
import math
from dataclasses import dataclass
import numpy as np
from .errors import DomainError
from .stats_core import as_result

@dataclass(frozen=True)
class EffectSize:
    mu: float
    sigma: float = 1.0

    def __post_init__(self):
        if not self.sigma > 0:
            raise DomainError('sigma must be > 0, got %r' % (self.sigma,))

    @property
    def theta(self):
        """ standardized mean mu/sigma """
        return self.mu / self.sigma

    @property
    def projection_var(self):
        """ variance of the null element closest in KL: sigma^2 + mu^2 """
        return self.sigma ** 2 + self.mu ** 2

def kl_gauss(mu1, sig1_sq, mu2, sig2_sq):
    """ KL(N(mu1, sig1_sq) || N(mu2, sig2_sq)) """
    if not (sig1_sq > 0 and sig2_sq > 0):
        raise DomainError('variances must be > 0')
    return as_result(0.5 * np.log(sig2_sq / sig1_sq)
            + (sig1_sq + (mu1 - mu2) ** 2) / (2.0 * sig2_sq) - 0.5)

def epower_ceiling(effect, one_sided = False):
    """ 1/2 log(1 + theta^2); theta clipped at 0 for one-sided alternatives """
    theta = effect.theta
    if one_sided:
        theta = max(theta, 0.0)
    return 0.5 * math.log1p(theta * theta)

def minimax_lower_bound(alpha, n):
    """ sqrt((6 alpha - 9 alpha^2)^{-2/n} - 1), smallest worst-case half-width of a t-CI at level alpha """
    if not 0.0 < alpha < 1.0 / 3.0:
        raise DomainError('minimax bound needs 0 < alpha < 1/3, got alpha=%r' % (alpha,))
    if int(n) != n or n < 1:
        raise DomainError('n must be an integer >= 1, got %r' % (n,))
    base = 6.0 * alpha - 9.0 * alpha * alpha
    return math.sqrt(math.expm1(-2.0 * math.log(base) / n))

def numeraire_evalue(x1, effect, log = False):
    """ dN(mu, sigma^2)/dN(0, sigma^2 + mu^2) at x1 """
    x1 = np.asarray(x1, dtype=float)
    var = effect.sigma ** 2
    proj = effect.projection_var
    value = (0.5 * math.log(proj / var) - (x1 - effect.mu) ** 2 / (2.0 * var)
             + x1 * x1 / (2.0 * proj))
    if log:
        return as_result(value)
    return as_result(np.exp(value))

def numeraire_null_mean(effect, sigma0_sq):
    """ E[numeraire_evalue] under N(0, sigma0_sq); <= 1 with equality at the projection """
    if not sigma0_sq > 0:
        raise DomainError('sigma0_sq must be > 0')
    y = effect.projection_var
    z_sq = effect.mu ** 2 * sigma0_sq + effect.sigma ** 2 * y
    return y / math.sqrt(z_sq) * math.exp(effect.mu ** 2 * (sigma0_sq - y) / (2.0 * z_sq))

def location_numeraire_evalue(x1, mu0, log = False):
    """ dN(0, 1)/dN(mu0, mu0^2 + 1) at x1, an e-value for every N(mu0, sigma^2) """
    x1 = np.asarray(x1, dtype=float)
    spread = mu0 * mu0 + 1.0
    value = 0.5 * math.log(spread) + (x1 - mu0) ** 2 / (2.0 * spread) - x1 * x1 / 2.0
    if log:
        return as_result(value)
    return as_result(np.exp(value))
