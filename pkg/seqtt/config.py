#!/usr/bin/python
# vim: set tabstop=8 softtabstop=4 noexpandtab
#Copyright (c) 2026, The seqtt Authors
#All rights reserved. Distributed under the BSD 3-Clause license, see LICENSE.
import copy
import json
import os
from .nlog import vlog

DEFAULTS = {
    'alpha': 0.05,
    'mu0': 0.0,
    'c_sq': 1.0,
    'optimal_n': None,
    'lai_m': 2,
    'eta': 0.5,
    'stitch_s': 1.25,
    'sigma': 1.0,
    'lambda': 0.5,
    'beta_a': 1.0,
    'beta_b': 1.0,
    'prior': None,
    'burn_in': 0,
    'n_max': 1000,
    'reps': 100,
    'seed': 0,
    'dist': 'normal:0,1',
    'workers': 1,
    'quadrature': {
        'abs_tol': 1e-13,
        'rel_tol': 1e-10,
        'max_subdivisions': 200,
    },
}
""" const dict: values used when neither the config file nor a flag sets them """

SEARCH_PATHS = [
    os.path.join('~', '.config', 'seqtt', 'config.json'),
    os.path.join('/etc', 'seqtt', 'config.json'),
]

def find_config():
    """ First config path that exists, honoring $CONFIG """
    if 'CONFIG' in os.environ and os.environ['CONFIG']:
        return os.environ['CONFIG']

    for path in SEARCH_PATHS:
        path = os.path.expanduser(path)
        if os.path.isfile(path):
            return path

    return None

def merge(base, override):
    """ Recursive dict merge, override wins """
    result = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(result.get(key), dict):
            result[key] = merge(result[key], value)
        else:
            result[key] = value
    return result

def load(configpath = None):
    """ Load JSON config file merged over DEFAULTS """

    if configpath is None:
        configpath = find_config()

    if configpath is None:
        vlog(3, 'No config file found, using defaults')
        return copy.deepcopy(DEFAULTS)

    try:
        with open(configpath, 'r') as f:
            loaded = json.load(f)
    except Exception as err:
        vlog(1, 'Unable to Open config {}: {}'.format(configpath, err))
        return copy.deepcopy(DEFAULTS)

    if not isinstance(loaded, dict):
        vlog(1, 'Ignoring config {}: top level must be an object'.format(configpath))
        return copy.deepcopy(DEFAULTS)

    unknown = sorted(set(loaded) - set(DEFAULTS))
    if unknown:
        vlog(2, 'Config {} has unknown keys: {}'.format(configpath, ', '.join(unknown)))

    vlog(4, 'Loaded config {}'.format(configpath))
    return merge(DEFAULTS, loaded)
