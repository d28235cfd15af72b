#!/usr/bin/python
# vim: set tabstop=8 softtabstop=4 noexpandtab
#Copyright (c) 2026, The seqtt Authors
#All rights reserved. Distributed under the BSD 3-Clause license, see LICENSE.
""" Sample statistics, intervals and the evaluator contract.

Two containers carry the sufficient statistics every process reads:

    SampleStats  streaming, one observation at a time (scalar attributes)
    StatsPath    a whole sample path at once (numpy arrays indexed by n-1)

Both expose n, sum, sum_sq, centered_sum_sq and pos_count, so the closed
form processes in the other modules accept either one and return a float
or an array to match.
"""
import abc
import copy
import math
from dataclasses import dataclass
import numpy as np
from .errors import DomainError, DegenerateSampleError, NumericalError
from .nlog import vlog

KIND_MARTINGALE = 'martingale'
KIND_EPROCESS = 'e-process'
KIND_EXTENDED = 'extended-NSM'
KINDS = (KIND_MARTINGALE, KIND_EPROCESS, KIND_EXTENDED)

FILTRATION_CANONICAL = 'canonical'
FILTRATION_SCALE_INVARIANT = 'scale-invariant'

ADJUSTER_CLAMP = 1.0 + 1e-9
BISECT_MAX_ITER = 400
SEARCH_MAX_DOUBLINGS = 1100

def _neumaier(total, comp, value):
    """ One step of compensated summation, returns (total, comp) """
    t = total + value
    if abs(total) >= abs(value):
        comp += (total - t) + value
    else:
        comp += (value - t) + total
    return t, comp

class SampleStats(object):
    """ Streaming sufficient statistics of a sample

    sum and sum_sq use compensated summation; centered_sum_sq
    (sum of squared deviations from the mean) is tracked separately with
    Welford's recurrence so V_n - S_n^2/n never cancels.
    """

    def __init__(self, retain = False):
        self.n = 0
        self.pos_count = 0
        self.retained = [] if retain else None
        self._sum = 0.0
        self._sum_c = 0.0
        self._sq = 0.0
        self._sq_c = 0.0
        self._mean = 0.0
        self._m2 = 0.0

    def push(self, x):
        """ Add one observation in place and return self """
        x = float(x)
        if math.isnan(x):
            raise DomainError('NaN observation')

        self.n += 1
        if x > 0:
            self.pos_count += 1
        self._sum, self._sum_c = _neumaier(self._sum, self._sum_c, x)
        self._sq, self._sq_c = _neumaier(self._sq, self._sq_c, x * x)

        delta = x - self._mean
        self._mean += delta / self.n
        self._m2 += delta * (x - self._mean)

        if self.retained is not None:
            self.retained.append(x)
        return self

    def extend(self, xs):
        for x in xs:
            self.push(x)
        return self

    @property
    def sum(self):
        return self._sum + self._sum_c

    @property
    def sum_sq(self):
        return self._sq + self._sq_c

    @property
    def mean(self):
        if self.n == 0:
            return 0.0
        return self.sum / self.n

    @property
    def centered_sum_sq(self):
        """ sum (X_i - mean)^2, never negative """
        return max(self._m2, 0.0)

    @property
    def var_pop(self):
        """ s_n^2 = V_n/n - mean^2, the unbiased-free sample variance """
        if self.n == 0:
            return 0.0
        return self.centered_sum_sq / self.n

    def copy(self):
        return copy.deepcopy(self)

    def shifted(self, mu0):
        """ Statistics of X - mu0

        The sign count of X - mu0 needs the observations: without retained
        data pos_count is None for mu0 != 0, and the sign-based baselines
        raise DomainError on such statistics.
        """
        out = SampleStats(self.retained is not None)
        out.n = self.n
        out._sum = self.sum - self.n * mu0
        offset = self.mean - mu0
        # float products overflow to inf where ** raises
        out._sq = self.centered_sum_sq + self.n * (offset * offset)
        out._mean = self.mean - mu0
        out._m2 = self._m2
        if self.retained is not None:
            out.retained = [x - mu0 for x in self.retained]
            out.pos_count = sum(1 for x in out.retained if x > 0)
        else:
            out.pos_count = None if mu0 != 0 else self.pos_count
        return out

    def __repr__(self):
        return 'SampleStats(n=%s, sum=%r, sum_sq=%r, pos_count=%r)' % (
            self.n, self.sum, self.sum_sq, self.pos_count)

def update(stats, x):
    """ Copy of stats with x added """
    return stats.copy().push(x)

@dataclass(frozen=True)
class StatsPath:
    """ Running statistics for every prefix of one sample path

    Arrays are indexed by n - 1. data keeps the observations for quantile
    based methods.
    """
    n: np.ndarray
    sum: np.ndarray
    sum_sq: np.ndarray
    centered_sum_sq: np.ndarray
    pos_count: np.ndarray
    data: np.ndarray

    def __len__(self):
        return len(self.n)

    @property
    def mean(self):
        return self.sum / self.n

    @property
    def var_pop(self):
        return self.centered_sum_sq / self.n

    def shifted(self, mu0):
        return running_stats(self.data, mu0)

def running_stats(x, mu0 = 0.0):
    """ StatsPath of x - mu0 """
    x = np.asarray(x, dtype=float) - mu0
    if x.ndim != 1:
        raise DomainError('observations must be a 1-d sequence')
    if np.any(np.isnan(x)):
        raise DomainError('NaN observation')

    n = np.arange(1, len(x) + 1, dtype=float)
    total = np.cumsum(x)
    sq = np.cumsum(x * x)
    if len(x):
        # centered sums are shift invariant, anchor at x[0] to limit cancellation
        y = x - x[0]
        centered = np.maximum(np.cumsum(y * y) - np.cumsum(y) ** 2 / n, 0.0)
    else:
        centered = np.zeros(0)
    pos = np.cumsum(x > 0).astype(float)
    return StatsPath(n, total, sq, centered, pos, x)

def moments(stats):
    """ (n, S_n, V_n, centered) as float arrays for either container """
    return (np.asarray(stats.n, dtype=float), np.asarray(stats.sum, dtype=float),
            np.asarray(stats.sum_sq, dtype=float), np.asarray(stats.centered_sum_sq, dtype=float))

def as_result(value):
    """ float for 0-d values, array otherwise """
    if np.ndim(value) == 0:
        return float(value)
    return value

def t_statistic(stats, mu0 = 0.0):
    """ T_{n-1} = sqrt(n-1) (S_n - n mu0) / sqrt(n V_n - S_n^2) """
    n, s, _, centered = moments(stats)
    if np.any(n < 2):
        raise DomainError('t statistic needs n >= 2')
    if np.any(centered <= 0):
        raise DegenerateSampleError('t statistic undefined: all observations equal')
    # n V_n - S_n^2 = n * centered, shift invariant
    return as_result(np.sqrt(n - 1.0) * (s - n * mu0) / np.sqrt(n * centered))

def check_alpha(alpha, upper = 1.0):
    if not 0.0 < alpha < upper:
        raise DomainError('alpha must be in (0, %s), got %r' % (upper, alpha))
    return float(alpha)

def ville_threshold(alpha):
    """ 1/alpha: rejection level for unit-initialized NSMs and e-processes """
    return 1.0 / check_alpha(alpha)

def extended_ville_bound(eps, truncated_mean, tail_prob):
    """ Crossing bound for an extended NSM started at M_0

    P(exists n: M_n >= eps) <= E[M_0 1{M_0 < eps}] / eps + P(M_0 >= eps)
    """
    if not eps > 0:
        raise DomainError('eps must be > 0, got %r' % (eps,))
    if truncated_mean < 0 or not 0.0 <= tail_prob <= 1.0:
        raise DomainError('need truncated_mean >= 0 and tail_prob in [0, 1]')
    return min(1.0, truncated_mean / eps + tail_prob)

def running_p_values(trajectory, log = False):
    """ 1 ^ (running max)^-1 at every step """
    values = np.asarray(trajectory, dtype=float)
    if values.size == 0:
        return values
    if log:
        return np.minimum(1.0, np.exp(-np.maximum.accumulate(values)))
    if np.any(values < 0):
        raise DomainError('e-process values must be >= 0')
    with np.errstate(divide='ignore'):
        return np.minimum(1.0, 1.0 / np.maximum.accumulate(values))

def anytime_p_value(trajectory, log = False):
    """ p = 1 ^ (max_n M_n)^-1; 1 for an empty trajectory

    With log=True the trajectory holds log M_n.
    """
    p = running_p_values(trajectory, log)
    if p.size == 0:
        return 1.0
    return float(p[-1])

def adjust_evalue(x):
    """ Adjuster f(x) = (y - 1 - ln y) / ln^2 y with y = max(x, 1 + 1e-9) """
    if np.any(np.asarray(x) < 0):
        raise DomainError('adjust_evalue needs x >= 0')
    y = np.maximum(np.asarray(x, dtype=float), ADJUSTER_CLAMP)
    d = y - 1.0
    with np.errstate(over='ignore', invalid='ignore'):
        log_y = np.log1p(d)
        direct = (d - log_y) / (log_y * log_y)
        # d - log1p(d) cancels for small d
        series = (d * d / 2.0 - d ** 3 / 3.0 + d ** 4 / 4.0) / (d - d * d / 2.0 + d ** 3 / 3.0) ** 2
    out = np.where(d < 1e-4, series, direct)
    out = np.where(np.isinf(y), np.inf, out)
    return as_result(out)

@dataclass(frozen=True)
class CsInterval:
    """ One confidence interval; endpoints may be infinite """
    lower: float
    upper: float
    fixed_n_only: bool = False

    def __post_init__(self):
        if math.isnan(self.lower) or math.isnan(self.upper):
            raise NumericalError('interval endpoint is NaN')
        if self.lower > self.upper:
            raise NumericalError('interval lower %r > upper %r' % (self.lower, self.upper))

    @property
    def width(self):
        return self.upper - self.lower

    def contains(self, mu):
        return self.lower <= mu <= self.upper

    @classmethod
    def everything(cls, fixed_n_only = False):
        return cls(-math.inf, math.inf, fixed_n_only)

@dataclass(frozen=True)
class CsPath:
    """ Interval endpoints along a path, indexed by n - 1 """
    lower: np.ndarray
    upper: np.ndarray
    fixed_n_only: bool = False

    def __len__(self):
        return len(self.lower)

    @property
    def width(self):
        return self.upper - self.lower

    def covers(self, mu):
        """ bool array: mu inside the interval at each n """
        return (self.lower <= mu) & (mu <= self.upper)

    def interval(self, k):
        return CsInterval(float(self.lower[k]), float(self.upper[k]), self.fixed_n_only)

def make_interval(center, radius, fixed_n_only = False):
    """ [center - radius, center + radius] as CsInterval or CsPath """
    center = np.asarray(center, dtype=float)
    radius = np.asarray(radius, dtype=float)
    radius = np.where(np.isnan(radius), np.inf, radius)
    lower = np.where(np.isinf(radius), -np.inf, center - radius)
    upper = np.where(np.isinf(radius), np.inf, center + radius)
    if np.ndim(lower) == 0:
        return CsInterval(float(lower), float(upper), fixed_n_only)
    return CsPath(lower, upper, fixed_n_only)

def _reaches(value, threshold):
    return math.isfinite(value) and value >= threshold

def invert_to_cs(process_family, alpha, search_center, search_scale):
    """ {mu0 : M(mu0) < 1/alpha} for a family quasi-convex in mu0

    Walks outward from search_center doubling the step from search_scale
    until the family reaches the threshold, then bisects each bracket to
    relative width 1e-13. A side that never reaches it is infinite.
    Non-finite family values (overflow far from the data) count as not
    reaching the threshold.
    """
    threshold = ville_threshold(alpha)
    if not search_scale > 0:
        raise DomainError('search_scale must be > 0')

    if not process_family(search_center) < threshold:
        raise NumericalError('search center %r is outside the confidence set' % (search_center,))

    ends = []
    for sign in (-1.0, 1.0):
        inside = search_center
        outside = None
        step = float(search_scale)
        for _ in range(SEARCH_MAX_DOUBLINGS):
            point = search_center + sign * step
            if math.isinf(point):
                break
            if _reaches(process_family(point), threshold):
                outside = point
                break
            inside = point
            step *= 2.0

        if outside is None:
            ends.append(sign * math.inf)
            continue

        for _ in range(BISECT_MAX_ITER):
            mid = 0.5 * (inside + outside)
            if mid == inside or mid == outside:
                break
            if _reaches(process_family(mid), threshold):
                outside = mid
            else:
                inside = mid
            if abs(outside - inside) <= 1e-13 * max(1.0, abs(inside)):
                break
        ends.append(0.5 * (inside + outside))

    vlog(5, 'invert_to_cs alpha=%s -> [%r, %r]' % (alpha, ends[0], ends[1]))
    return CsInterval(ends[0], ends[1])

class ProcessEvaluator(abc.ABC):
    """ Streaming test process

    Observations are shifted by mu0 on entry and accumulated in
    self.stats; subclasses read the statistics in log_value(). kind and
    filtration are class constants.
    """
    kind = KIND_MARTINGALE
    filtration = FILTRATION_CANONICAL
    retain = False

    def __init__(self, mu0 = 0.0):
        self.mu0 = float(mu0)
        self.stats = SampleStats(self.retain)

    def update(self, x):
        """ Feed one raw observation """
        x = float(x)
        if math.isnan(x):
            raise DomainError('NaN observation')
        shifted = x - self.mu0
        self._observe(shifted)
        return self

    def _observe(self, x):
        self.stats.push(x)

    @abc.abstractmethod
    def log_value(self):
        """ log of the current process value, -inf allowed, +inf only for extended kinds """

    def value(self):
        """ exp(log_value()); saturates at inf above exp(709)

        log_value() is the authoritative result: martingale and e-process
        values past the double range are finite there.
        """
        lv = self.log_value()
        if lv > 709.0:
            return math.inf
        return math.exp(lv)

    def trajectory(self, xs):
        """ Feed xs and return the log value after each one """
        out = np.empty(len(xs))
        for k, x in enumerate(xs):
            self.update(x)
            out[k] = self.log_value()
        return out
