#!/usr/bin/python
# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
#Copyright (c) 2026, The seqtt Authors
#All rights reserved. Distributed under the BSD 3-Clause license, see LICENSE.
import os
import json
import tempfile
import unittest
import logging as log
from .context import seqtt
from seqtt import config, errors, nfile, nlog

class BasicTestSuite(unittest.TestCase):
    """Package wiring, config, data files and error codes."""

    def setUp(self):
        self.LongMessage = True
        log.basicConfig(level=log.DEBUG)
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def path(self, name):
        return os.path.join(self.tmp.name, name)

    def test_exit_codes(self):
        self.assertEqual(errors.UsageError('x').exit_code, 1)
        self.assertEqual(errors.DomainError('x').exit_code, 1)
        self.assertEqual(errors.DataFileError('f', 'x').exit_code, 2)
        self.assertEqual(errors.DegenerateSampleError('x').exit_code, 2)
        self.assertEqual(errors.NumericalError('x').exit_code, 3)
        self.assertEqual(errors.QuadratureError('x').exit_code, 3)
        self.assertTrue(issubclass(errors.DomainError, ValueError))
        self.assertTrue(issubclass(errors.QuadratureError, errors.NumericalError))

    def test_data_file_error_names_line(self):
        err = errors.DataFileError('obs.txt', 'not a number', 7)
        self.assertEqual(str(err), 'obs.txt:7: not a number')

    def test_config_defaults_without_file(self):
        conf = config.load(self.path('missing.json'))
        self.assertEqual(conf['alpha'], 0.05)
        self.assertEqual(conf['dist'], 'normal:0,1')
        self.assertEqual(conf['quadrature']['max_subdivisions'], 200)

    def test_config_merges_over_defaults(self):
        with open(self.path('c.json'), 'w') as f:
            json.dump({'alpha': 0.1, 'quadrature': {'rel_tol': 1e-8}}, f)
        conf = config.load(self.path('c.json'))
        self.assertEqual(conf['alpha'], 0.1)
        self.assertEqual(conf['quadrature']['rel_tol'], 1e-8)
        self.assertEqual(conf['quadrature']['abs_tol'], 1e-13)
        self.assertEqual(conf['c_sq'], 1.0)

    def test_config_malformed_is_ignored(self):
        with open(self.path('bad.json'), 'w') as f:
            f.write('{ not json')
        self.assertEqual(config.load(self.path('bad.json')), config.DEFAULTS)

    def test_config_env_path(self):
        with open(self.path('env.json'), 'w') as f:
            json.dump({'seed': 11}, f)
        old = os.environ.get('CONFIG')
        os.environ['CONFIG'] = self.path('env.json')
        try:
            self.assertEqual(config.load()['seed'], 11)
        finally:
            if old is None:
                del os.environ['CONFIG']
            else:
                os.environ['CONFIG'] = old

    def test_read_observations(self):
        with open(self.path('x.txt'), 'w') as f:
            f.write('# paired differences\n1.5\n\n-2\n3e-1,\n')
        values = nfile.read_observations(self.path('x.txt'))
        self.assertEqual(list(values), [1.5, -2.0, 0.3])

    def test_read_observations_bad_line(self):
        with open(self.path('x.txt'), 'w') as f:
            f.write('1.0\nweight\n')
        with self.assertRaises(errors.DataFileError) as ctx:
            nfile.read_observations(self.path('x.txt'))
        self.assertEqual(ctx.exception.lineno, 2)

    def test_read_observations_missing_file(self):
        with self.assertRaises(errors.DataFileError):
            nfile.read_observations(self.path('nope.txt'))

    def test_write_csv_literals(self):
        with nfile.open_output(self.path('out/t.csv')) as stream:
            count = nfile.write_csv(stream, ['a', 'b', 'c'],
                    [[1, float('inf'), None], [True, -float('inf'), 0.5]], ['note=1'])
        self.assertEqual(count, 2)
        with open(self.path('out/t.csv')) as f:
            text = f.read()
        self.assertEqual(text, '# note=1\na,b,c\n1,inf,\ntrue,-inf,0.5\n')

    def test_write_json_non_finite(self):
        nfile.write_json(self.path('s.json'), {'x': float('inf'), 'y': [1, 2.5]})
        with open(self.path('s.json')) as f:
            data = json.load(f)
        self.assertEqual(data, {'x': 'inf', 'y': [1, 2.5]})

    def test_fmt_float(self):
        self.assertEqual(nlog.fmt_float(float('nan')), 'nan')
        self.assertEqual(nlog.fmt_float(0.1), '0.1')

if __name__ == '__main__':
    unittest.main()
