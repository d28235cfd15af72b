#!/usr/bin/python
# vim: set tabstop=8 softtabstop=4 noexpandtab
#Copyright (c) 2026, The seqtt Authors
#All rights reserved. Distributed under the BSD 3-Clause license, see LICENSE.
""" Seeded Monte Carlo replications of one method.

Replication r draws from its own Philox stream keyed by (seed, r), so a
replication's data do not depend on how many workers run or in which
order. Gaussian draws go through the inverse CDF.
"""
import math
import multiprocessing as mp
from dataclasses import dataclass
from functools import partial
import numpy as np
from .errors import DomainError
from .nlog import vlog
from .nfile import read_observations
from .specfun import gauss_quantile
from .stats_core import check_alpha

UNIFORM_BITS = 53
SEED_LIMIT = 2 ** 64

RECORD_HEADER = ['rep', 'crossed', 'first_cross', 'max_log_value', 'p_value', 'miscovered', 'final_width']

class Distribution(object):
    """ Data generating distribution parsed from 'normal:mu,sigma', 'uniform:mu,half_width' or 'file:path'

    file draws resample the file's observations with replacement.
    """

    def __init__(self, kind, params = (), data = None, text = None):
        self.kind = kind
        self.params = tuple(params)
        self.data = data
        self.text = text

    @classmethod
    def parse(cls, text):
        kind, sep, rest = text.partition(':')
        kind = kind.strip().lower()
        if not sep:
            raise DomainError('distribution %r needs the form kind:parameters' % (text,))

        if kind == 'file':
            data = read_observations(rest)
            if len(data) == 0:
                raise DomainError('distribution file %r has no observations' % (rest,))
            return cls(kind, (), data, text)

        try:
            params = tuple(float(v) for v in rest.split(','))
        except ValueError:
            raise DomainError('distribution %r has non-numeric parameters' % (text,))
        if len(params) != 2:
            raise DomainError('distribution %r needs two parameters' % (text,))

        if kind == 'normal':
            if not params[1] > 0:
                raise DomainError('normal sigma must be > 0 in %r' % (text,))
        elif kind == 'uniform':
            if not params[1] > 0:
                raise DomainError('uniform half_width must be > 0 in %r' % (text,))
        else:
            raise DomainError('unknown distribution kind %r' % (kind,))
        return cls(kind, params, None, text)

    @property
    def mean(self):
        if self.kind == 'file':
            return float(np.mean(self.data))
        return self.params[0]

    def draw(self, rng, size):
        if self.kind == 'file':
            return self.data[rng.integers(0, len(self.data), size = size)]
        u = uniforms(rng, size)
        if self.kind == 'normal':
            return self.params[0] + self.params[1] * gauss_quantile(u)
        return self.params[0] + self.params[1] * (2.0 * u - 1.0)

    def __repr__(self):
        return 'Distribution(%r)' % (self.text,)

def rep_generator(seed, rep):
    """ Generator for replication rep: Philox keyed by SeedSequence(seed, spawn_key=(rep,)) """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(int(seed), spawn_key = (int(rep),))))

def uniforms(rng, size):
    """ Uniforms on the open interval (0, 1) from 53 random bits """
    bits = rng.integers(0, 2 ** UNIFORM_BITS, size = size, dtype = np.uint64)
    return (bits.astype(float) + 0.5) / float(2 ** UNIFORM_BITS)

@dataclass(frozen=True)
class SimConfig:
    dist: Distribution
    spec: object
    n_max: int = 1000
    reps: int = 100
    seed: int = 0
    alpha: float = 0.05
    workers: int = 1

    def __post_init__(self):
        check_alpha(self.alpha)
        if int(self.reps) < 1:
            raise DomainError('reps must be >= 1')
        if int(self.n_max) < 1:
            raise DomainError('n_max must be >= 1')
        if not 0 <= int(self.seed) < SEED_LIMIT:
            raise DomainError('seed must be a 64-bit unsigned integer')
        if int(self.workers) < 1:
            raise DomainError('workers must be >= 1')

    @property
    def mu0(self):
        return self.spec.mu0

def sample(config, rep):
    """ Observations of replication rep """
    return config.dist.draw(rep_generator(config.seed, rep), int(config.n_max))

@dataclass(frozen=True)
class RepRecord:
    """ Outcome of one replication; e-process fields are None for interval-only methods and vice versa """
    rep: int
    crossed: bool = None
    first_cross: int = None
    max_log_value: float = None
    p_value: float = None
    miscovered: bool = None
    final_width: float = None

    def row(self):
        return [self.rep, self.crossed, self.first_cross, self.max_log_value,
                self.p_value, self.miscovered, self.final_width]

def evaluate(config, x, rep = 0):
    """ RepRecord for a fixed data vector """
    fields = {}
    spec = config.spec
    if spec.has_eprocess:
        logs = spec.log_path(x)
        hits = np.flatnonzero(spec.crossing_path(x, config.alpha, logs))
        fields['crossed'] = bool(hits.size)
        fields['first_cross'] = int(hits[0]) + 1 if hits.size else None
        fields['max_log_value'] = float(np.max(logs)) if logs.size else 0.0
        fields['p_value'] = spec.p_value(logs)
    if spec.has_cs:
        cs = spec.cs_path(x, config.alpha)
        fields['miscovered'] = not bool(np.all(cs.covers(config.dist.mean)))
        fields['final_width'] = float(cs.width[-1]) if len(cs) else math.inf
    return RepRecord(rep, **fields)

def run_replication(config, rep):
    record = evaluate(config, sample(config, rep), rep)
    vlog(5, 'rep %s: %r' % (rep, record))
    return record

def run(config):
    """ All replications in rep order; workers > 1 uses a process pool """
    vlog(3, 'Simulating %s reps of %s, n_max=%s, %r' % (config.reps, config.spec.method, config.n_max, config.dist))
    job = partial(run_replication, config)
    if config.workers == 1:
        return [job(rep) for rep in range(config.reps)]

    with mp.Pool(processes = config.workers) as pool:
        return pool.map(job, range(config.reps))

def _rate(flags):
    """ (mean, standard error) of booleans """
    values = np.asarray(flags, dtype=float)
    p = float(np.mean(values))
    return p, math.sqrt(p * (1.0 - p) / len(values))

def summarize(records):
    """ Aggregate means and standard errors over replications, in rep order """
    summary = {'reps': len(records)}
    crossed = [r.crossed for r in records if r.crossed is not None]
    if crossed:
        summary['crossing_rate'], summary['crossing_se'] = _rate(crossed)
        p_values = [r.p_value for r in records if r.p_value is not None]
        summary['mean_p_value'] = float(np.mean(p_values)) if p_values else None
        firsts = [r.first_cross for r in records if r.first_cross is not None]
        summary['first_cross_median'] = float(np.median(firsts)) if firsts else None

    covered = [r.miscovered for r in records if r.miscovered is not None]
    if covered:
        summary['miscoverage_rate'], summary['miscoverage_se'] = _rate(covered)
        widths = np.asarray([r.final_width for r in records], dtype=float)
        summary['mean_width'] = float(np.mean(widths))
        if np.all(np.isfinite(widths)) and len(widths) > 1:
            summary['width_se'] = float(np.std(widths, ddof = 1) / math.sqrt(len(widths)))
        else:
            summary['width_se'] = None
    return summary
