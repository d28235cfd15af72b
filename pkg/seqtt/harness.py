#!/usr/bin/python
# vim: set tabstop=8 softtabstop=4 noexpandtab
#Copyright (c) 2026, The seqtt Authors
#All rights reserved. Distributed under the BSD 3-Clause license, see LICENSE.
""" seqtt command line tool """
import argparse
import math
import sys
import numpy as np
from . import config
from .errors import SeqttError, UsageError, DomainError
from .methods import ProcessSpec, EPROCESS_METHODS, CS_METHODS
from .nfile import read_observations, open_output, write_csv, write_json
from .nlog import vlog, elog
from .optimality import EffectSize, minimax_lower_bound, epower_ceiling
from .scale_invariant import optimal_c_sq
from .simulate import Distribution, SimConfig, RECORD_HEADER, sample, evaluate, run, summarize

# flag name -> config key
FLAG_KEYS = {
    'alpha': 'alpha',
    'mu0': 'mu0',
    'c_sq': 'c_sq',
    'optimal_n': 'optimal_n',
    'lai_m': 'lai_m',
    'eta': 'eta',
    'stitch_s': 'stitch_s',
    'sigma': 'sigma',
    'lam': 'lambda',
    'beta_a': 'beta_a',
    'beta_b': 'beta_b',
    'prior': 'prior',
    'burn_in': 'burn_in',
    'n_max': 'n_max',
    'reps': 'reps',
    'seed': 'seed',
    'dist': 'dist',
    'workers': 'workers',
}

class ArgumentParser(argparse.ArgumentParser):
    """ argparse that raises UsageError instead of exiting """
    def error(self, message):
        raise UsageError('%s: %s' % (self.prog, message))

def _prior(text):
    try:
        values = [float(v) for v in text.split(',')]
    except ValueError:
        raise argparse.ArgumentTypeError('prior must be mu0,nu0,a0,b0')
    if len(values) != 4:
        raise argparse.ArgumentTypeError('prior must be mu0,nu0,a0,b0')
    return values

def _c_sq(text):
    if text == 'optimal':
        return text
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError('c-sq must be a positive number or "optimal"')

def build_parser(command):
    parser = ArgumentParser(prog = 'seqtt %s' % (command))
    parser.add_argument('--config', help = 'JSON config file (default $CONFIG, ~/.config/seqtt/config.json, /etc/seqtt/config.json)')
    parser.add_argument('--alpha', type = float)
    parser.add_argument('--mu0', type = float)
    parser.add_argument('--out', help = 'output CSV (default stdout)')
    parser.add_argument('--json', help = 'JSON summary sidecar')

    if command in ('eprocess', 'cs', 'simulate', 'replay'):
        parser.add_argument('--input', help = 'observation file, one value per line')
        parser.add_argument('--c-sq', dest = 'c_sq', type = _c_sq)
        parser.add_argument('--optimal-n', dest = 'optimal_n', type = int)
        parser.add_argument('--lai-m', dest = 'lai_m', type = int)
        parser.add_argument('--eta', type = float)
        parser.add_argument('--stitch-s', dest = 'stitch_s', type = float)
        parser.add_argument('--sigma', type = float)
        parser.add_argument('--lambda', dest = 'lam', type = float)
        parser.add_argument('--beta-a', dest = 'beta_a', type = float)
        parser.add_argument('--beta-b', dest = 'beta_b', type = float)
        parser.add_argument('--prior', type = _prior, help = 'NIG prior mu0,nu0,a0,b0')
        parser.add_argument('--burn-in', dest = 'burn_in', type = int)
        parser.add_argument('--n-max', dest = 'n_max', type = int)
        parser.add_argument('--reps', type = int)
        parser.add_argument('--seed', type = int)
        parser.add_argument('--dist')
        parser.add_argument('--workers', type = int)

    if command == 'replay':
        parser.add_argument('--methods', required = True, help = 'comma separated e-process methods')
        parser.add_argument('--trajectories', help = 'CSV of method,n,log_value')
    elif command in ('eprocess', 'cs', 'simulate'):
        parser.add_argument('--method', required = True)

    if command == 'bounds':
        parser.add_argument('--n', type = int, required = True)
        parser.add_argument('--theta', type = float, default = 1.0)
    return parser

def resolve(args):
    """ Config dict with flags layered over the config file over defaults """
    conf = config.load(args.config)
    for flag, key in FLAG_KEYS.items():
        value = getattr(args, flag, None)
        if value is not None:
            conf[key] = value

    if conf.get('c_sq') == 'optimal':
        if conf.get('optimal_n') is None:
            raise UsageError('--c-sq optimal needs --optimal-n')
        conf['c_sq'] = optimal_c_sq(int(conf['optimal_n']), float(conf['alpha']))
        vlog(3, 'Using optimal c_sq=%r for n=%s alpha=%s' % (conf['c_sq'], conf['optimal_n'], conf['alpha']))
    return conf

def _spec(method, conf):
    try:
        return ProcessSpec.from_config(method, conf)
    except DomainError as err:
        raise UsageError(str(err))

def _sim_config(spec, conf):
    return SimConfig(Distribution.parse(conf['dist']), spec, int(conf['n_max']),
                     int(conf['reps']), int(conf['seed']), float(conf['alpha']), int(conf['workers']))

def _datasets(args, conf, spec):
    """ (rep, observations) pairs: the input file as rep 0, else simulated reps """
    if args.input:
        yield 0, read_observations(args.input)
        return
    sim = _sim_config(spec, conf)
    for rep in range(sim.reps):
        yield rep, sample(sim, rep)

def cmd_eprocess(args, conf):
    """ rep,n,log_value rows of one e-process """
    spec = _spec(args.method, conf)
    if not spec.has_eprocess:
        raise UsageError('method %r is not an e-process; choose one of %s' % (args.method, ', '.join(sorted(EPROCESS_METHODS))))

    maxima = []
    def rows():
        for rep, x in _datasets(args, conf, spec):
            logs = spec.log_path(x)
            maxima.append(float(np.max(logs)) if logs.size else 0.0)
            for n, value in enumerate(logs, 1):
                yield rep, n, float(value)

    with open_output(args.out) as stream:
        count = write_csv(stream, ['rep', 'n', 'log_value'], rows())
    vlog(3, 'Wrote %s rows for %s' % (count, spec.method))

    if args.json:
        write_json(args.json, {
            'method': spec.method,
            'kind': spec.kind,
            'filtration': spec.filtration,
            'alpha': conf['alpha'],
            'rows': count,
            'max_log_value': maxima,
            'p_value': [spec.p_value([m]) for m in maxima],
        })
    return 0

def cmd_cs(args, conf):
    """ rep,n,lower,upper rows of one confidence sequence """
    spec = _spec(args.method, conf)
    if not spec.has_cs:
        raise UsageError('method %r has no confidence sequence; choose one of %s' % (args.method, ', '.join(sorted(CS_METHODS))))
    alpha = float(conf['alpha'])

    def rows():
        for rep, x in _datasets(args, conf, spec):
            cs = spec.cs_path(x, alpha)
            for k in range(len(cs)):
                yield rep, k + 1, float(cs.lower[k]), float(cs.upper[k])

    comments = ['fixed_n_only=true'] if spec.fixed_n_only else None
    with open_output(args.out) as stream:
        count = write_csv(stream, ['rep', 'n', 'lower', 'upper'], rows(), comments)
    vlog(3, 'Wrote %s rows for %s' % (count, spec.method))

    if args.json:
        write_json(args.json, {
            'method': spec.method,
            'alpha': alpha,
            'c_sq': spec.c_sq,
            'rows': count,
            'fixed_n_only': spec.fixed_n_only,
        })
    return 0

def cmd_simulate(args, conf):
    """ One record per replication plus an aggregate summary """
    spec = _spec(args.method, conf)
    if args.input:
        conf['dist'] = 'file:%s' % (args.input)
    sim = _sim_config(spec, conf)
    records = run(sim)

    with open_output(args.out) as stream:
        write_csv(stream, RECORD_HEADER, (r.row() for r in records))

    summary = summarize(records)
    summary.update({'method': spec.method, 'alpha': sim.alpha, 'n_max': sim.n_max,
                    'seed': sim.seed, 'dist': conf['dist']})
    for key in sorted(summary):
        vlog(3, '%s=%s' % (key, summary[key]))
    if args.json:
        write_json(args.json, summary)
    return 0

def cmd_bounds(args, conf):
    """ minimax width bound, e-power ceiling and optimal c^2 """
    alpha = float(conf['alpha'])
    n = args.n
    rows = [
        ('minimax_lower_bound', minimax_lower_bound(alpha, n)),
        ('epower_ceiling', epower_ceiling(EffectSize(args.theta, 1.0))),
        ('epower_ceiling_one_sided', epower_ceiling(EffectSize(args.theta, 1.0), one_sided = True)),
        ('optimal_c_sq', optimal_c_sq(n, alpha) if n >= 2 else math.nan),
    ]
    with open_output(args.out) as stream:
        write_csv(stream, ['quantity', 'value'], rows)
    if args.json:
        write_json(args.json, dict(rows, alpha = alpha, n = n, theta = args.theta))
    return 0

def cmd_replay(args, conf):
    """ Per-method evidence report for one observation file """
    if not args.input:
        raise UsageError('replay needs --input')
    x = read_observations(args.input)
    alpha = float(conf['alpha'])
    methods = [m.strip() for m in args.methods.split(',') if m.strip()]
    specs = [_spec(m, conf) for m in methods]
    for spec in specs:
        if not spec.has_eprocess:
            raise UsageError('method %r is not an e-process' % (spec.method,))

    status = 0
    report = []
    trajectories = []
    for spec in specs:
        try:
            logs = spec.log_path(x)
            hits = np.flatnonzero(spec.crossing_path(x, alpha, logs))
        except SeqttError as err:
            elog('%s: %s' % (spec.method, err))
            status = max(status, err.exit_code)
            report.append([spec.method, len(x), None, None, None, None, str(err)])
            continue
        top = float(np.max(logs)) if logs.size else 0.0
        report.append([spec.method, len(x), top, math.exp(top) if top < 709.0 else math.inf,
                       spec.p_value(logs), int(hits[0]) + 1 if hits.size else None, ''])
        trajectories.extend((spec.method, n, float(v)) for n, v in enumerate(logs, 1))

    with open_output(args.out) as stream:
        write_csv(stream, ['method', 'n', 'max_log_value', 'max_evalue', 'p_value', 'first_cross', 'error'], report)
    if args.trajectories:
        with open_output(args.trajectories) as stream:
            write_csv(stream, ['method', 'n', 'log_value'], trajectories)
    if args.json:
        write_json(args.json, {'alpha': alpha, 'input': args.input,
            'methods': {row[0]: dict(zip(['n', 'max_log_value', 'max_evalue', 'p_value', 'first_cross', 'error'], row[1:])) for row in report}})
    return status

COMMANDS = {
    'eprocess': cmd_eprocess,
    'cs': cmd_cs,
    'simulate': cmd_simulate,
    'bounds': cmd_bounds,
    'replay': cmd_replay,
}

def dump_help(full = False, stream = None):
    stream = stream or sys.stderr
    stream.write("""Sequential t-test toolkit

    help: {0} help
        Print this help message

    eprocess: {0} eprocess --method {{method}} [--input file | --dist d --reps r --n-max n --seed s]
        write rep,n,log_value rows of an e-process
        methods: {1}

    cs: {0} cs --method {{method}} [--input file | --dist d ...] --alpha a
        write rep,n,lower,upper rows of a confidence sequence
        methods: {2}

    simulate: {0} simulate --method {{method}} --dist d --reps r --n-max n --seed s [--workers k] [--json summary.json]
        per replication: crossing of 1/alpha (Lai boundary for lai-ensm), first crossing time,
        anytime p-value (empty for lai-ensm),
        miscoverage of the true mean, final width; summary with standard errors

    bounds: {0} bounds --alpha a --n n [--theta t]
        minimax t-CI width bound, e-power ceiling, optimal c^2

    replay: {0} replay --input file --methods m1,m2 [--trajectories file]
        max e-value, anytime p-value and first crossing per method

""".format('seqtt', ', '.join(sorted(EPROCESS_METHODS)), ', '.join(sorted(CS_METHODS))))
    if full:
        stream.write("""    Common flags:
        --alpha --mu0 --c-sq (number or 'optimal' with --optimal-n) --lai-m --eta --stitch-s
        --sigma --lambda --beta-a --beta-b --prior mu0,nu0,a0,b0 --burn-in
        --out file (default stdout) --json file --config file

    Distributions (--dist):
        normal:mu,sigma   uniform:mu,half_width   file:path (resampled)

    Exit codes:
        0 success, 1 usage error, 2 data error, 3 numerical failure

    Environment Variables:
        VERBOSE=[1-5] default 3
            1: errors only
            5: per replication detail
        SYSLOG=YES
            mirror log lines to syslog
        CONFIG={{path to JSON config}}

""")

def main(argv = None):
    if argv is None:
        argv = sys.argv
    vlog(5, argv)

    if len(argv) < 2:
        dump_help()
        return 1

    command = argv[1].lower()
    if command in ('help', '-h', '--help'):
        dump_help(True, sys.stdout)
        return 0
    if command not in COMMANDS:
        elog('unknown command %r' % (argv[1]))
        dump_help()
        return 1

    try:
        args = build_parser(command).parse_args(argv[2:])
        conf = resolve(args)
        return COMMANDS[command](args, conf)
    except SeqttError as err:
        elog('seqtt %s: %s' % (command, err))
        return err.exit_code
