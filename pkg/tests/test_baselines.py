#!/usr/bin/python
# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
#Copyright (c) 2026, The seqtt Authors
#All rights reserved. Distributed under the BSD 3-Clause license, see LICENSE.
import math
import unittest
import logging as log
import numpy as np
from .context import seqtt
from seqtt import baselines as bl
from seqtt import scale_invariant as si
from seqtt import specfun
from seqtt.stats_core import SampleStats, running_stats
from seqtt.errors import DomainError

def stats_of(values, retain = False):
    return SampleStats(retain).extend(values)

class BaselinesTestSuite(unittest.TestCase):
    """Stitched, median and fixed-n comparison methods."""

    def setUp(self):
        self.LongMessage = True
        log.basicConfig(level=log.DEBUG)
        self.rng = np.random.default_rng(21)

    def test_stitch_params(self):
        with self.assertRaises(DomainError):
            bl.StitchParams(eta = 0.0)
        with self.assertRaises(DomainError):
            bl.StitchParams(s = 1.0)

    def test_variance_upper_cs(self):
        self.assertEqual(bl.variance_upper_cs(stats_of([1.0, 2.0]), 0.05).upper, math.inf)
        x = self.rng.normal(0.0, 2.0, 200000)
        ci = bl.variance_upper_cs(stats_of(x), 0.05)
        s_sq = float(np.var(x))
        self.assertGreater(ci.upper, s_sq)
        self.assertLess(ci.upper, 1.05 * s_sq)

    def test_variance_upper_cs_chained(self):
        x = self.rng.normal(0.0, 1.0, 100)
        stats = stats_of(x)
        params = bl.StitchParams()
        y = 1.0 + 2.0 * 1.5 / 99.0 * (math.log(specfun.riemann_zeta(1.25) / 0.05)
                + 1.25 * math.log(1.0 + math.log(99.0) / math.log(1.5)))
        den = specfun.wbar(0, y) - 1.0 / 99.0
        self.assertGreater(den, 0.0)
        ci = bl.variance_upper_cs(stats, 0.05, params)
        self.assertAlmostEqual(ci.upper, stats.var_pop / den, delta=1e-10 * ci.upper)

    def test_known_var_mix_cs(self):
        stats = stats_of([0.7])
        y = (1.0 + 2.0 * math.log(20.0) + 2.0 * math.log(specfun.riemann_zeta(1.25))
             + 2.5 * (1.0 - math.log(2.5)) + 2.5 * math.log(2.5))
        u = specfun.wbar(-1, y)
        self.assertAlmostEqual(u - math.log(u), y, delta=1e-10)
        ci = bl.known_var_mix_cs(stats, 2.0, 0.05)
        self.assertAlmostEqual(ci.upper - 0.7, 2.0 * math.sqrt(u), places=10)
        path = bl.known_var_mix_cs(running_stats(self.rng.normal(0.0, 1.0, 400)), 1.0, 0.05)
        self.assertTrue(np.all(np.diff(path.width) < 0.0))
        with self.assertRaises(DomainError):
            bl.known_var_mix_cs(stats, 0.0, 0.05)

    def test_plugin_t_cs(self):
        self.assertTrue(math.isinf(bl.plugin_t_cs(stats_of([1.0, 2.0]), 0.05).width))
        x = self.rng.normal(0.0, 1.0, 10000)
        stats = stats_of(x)
        wide = bl.plugin_t_cs(stats, 0.05)
        self.assertGreater(wide.width, si.gauss_mix_cs(stats, 1.0, 0.05).width)
        self.assertGreater(bl.plugin_t_cs(stats, 0.025).width, wide.width)
        self.assertTrue(wide.contains(stats.mean))

    def test_sign_supermartingale(self):
        stats = stats_of([0.3, -1.0, 2.0])
        self.assertEqual(bl.median_sign_supermartingale(stats, 0.0), 1.0)
        self.assertAlmostEqual(bl.median_sign_supermartingale(stats_of([0.2]), math.log(3.0)), 1.5, places=12)
        self.assertLess(bl.median_sign_supermartingale(stats_of([-1.0, -2.0]), 0.5), 1.0)
        with self.assertRaises(DomainError):
            bl.median_sign_supermartingale(stats_of([1.0, 2.0]).shifted(1.5), 0.5)
        with self.assertRaises(DomainError):
            bl.median_betabinom(stats_of([1.0, 2.0]).shifted(1.5), 2.0, 2.0)
        kept = stats_of([1.0, 2.0], retain = True).shifted(1.5)
        self.assertEqual(bl.median_sign_supermartingale(kept, 0.5),
                bl.median_sign_supermartingale(stats_of([-0.5, 0.5]), 0.5))

    def test_betabinom(self):
        self.assertAlmostEqual(bl.median_betabinom(stats_of([0.4])), 1.0, places=12)
        self.assertAlmostEqual(bl.median_betabinom(stats_of([0.4, 3.0])), 4.0 / 3.0, places=12)
        self.assertEqual(bl.median_betabinom(SampleStats()), 1.0)
        with self.assertRaises(DomainError):
            bl.median_betabinom(stats_of([1.0]), 0.0, 1.0)

    def test_betabinom_is_beta_mixture(self):
        for n, pos, a, b in ((10, 7, 2.0, 3.0), (25, 4, 1.0, 1.0), (6, 6, 1.5, 3.0)):
            stats = stats_of([1.0] * pos + [-1.0] * (n - pos))
            log_norm = specfun.log_beta(a, b)

            def integrand(p):
                lam = math.log(p / (1.0 - p))
                log_density = (a - 1.0) * math.log(p) + (b - 1.0) * math.log1p(-p) - log_norm
                return math.exp(bl.median_sign_supermartingale(stats, lam, log = True) + log_density)
            mixture = specfun.integrate(integrand, 0.0, 0.5) + specfun.integrate(integrand, 0.5, 1.0)
            self.assertAlmostEqual(mixture / bl.median_betabinom(stats, a, b), 1.0, delta=1e-8)

    def test_median_radius_level(self):
        self.assertAlmostEqual(bl.median_radius_level(100, 0.05), 0.2685, delta=1e-4)

    def test_median_cs(self):
        cs = bl.median_cs(running_stats([5.0] * 60), 0.05)
        self.assertEqual((cs.lower[0], cs.upper[0]), (-math.inf, math.inf))
        self.assertEqual((cs.lower[-1], cs.upper[-1]), (5.0, 5.0))
        with self.assertRaises(DomainError):
            bl.median_cs(stats_of([1.0, 2.0]), 0.05)

    def test_median_cs_streaming_matches_path(self):
        x = self.rng.normal(0.0, 1.0, 150)
        cs = bl.median_cs(running_stats(x), 0.1)
        for k in (10, 80, 149):
            ci = bl.median_cs(stats_of(x[:k + 1], retain = True), 0.1)
            self.assertEqual((ci.lower, ci.upper), (cs.lower[k], cs.upper[k]))

    def test_median_cs_monotone_transform(self):
        x = self.rng.normal(0.0, 1.0, 300)
        plain = bl.median_cs(running_stats(x), 0.05)
        cubed = bl.median_cs(running_stats(x ** 3), 0.05)
        np.testing.assert_allclose(cubed.lower, plain.lower ** 3, rtol=1e-12)
        np.testing.assert_allclose(cubed.upper, plain.upper ** 3, rtol=1e-12)
        active = np.isfinite(plain.width)
        medians = np.array([np.median(x[:k + 1]) for k in range(len(x))])
        self.assertTrue(np.all((plain.lower[active] <= medians[active]) & (medians[active] <= plain.upper[active])))

    def test_classical_t_ci(self):
        ci = bl.classical_t_ci(stats_of([0.0, 2.0]), 0.05)
        self.assertTrue(ci.fixed_n_only)
        self.assertAlmostEqual(ci.upper - 1.0, math.tan(0.475 * math.pi), places=8)
        ci = bl.classical_t_ci(stats_of([1.0, 1.0]), 0.05)
        self.assertEqual(ci.width, 0.0)
        with self.assertRaises(DomainError):
            bl.classical_t_ci(stats_of([1.0]), 0.05)
        path = bl.classical_t_ci(running_stats([0.0, 2.0, 1.0]), 0.05)
        self.assertTrue(path.fixed_n_only)
        self.assertTrue(math.isinf(path.width[0]))
        self.assertAlmostEqual(path.upper[1], 1.0 + math.tan(0.475 * math.pi), places=8)

    def test_median_epower(self):
        self.assertAlmostEqual(bl.median_epower(0.0), 0.0, places=14)
        self.assertAlmostEqual(bl.median_epower(1.0), 0.2556, delta=2e-4)
        self.assertLess(bl.median_sign_epower(0.0, 0.5), 0.0)
        self.assertGreater(bl.median_sign_epower(1.0, 0.5), 0.0)

    def test_are(self):
        are = bl.are_betabinom()
        self.assertAlmostEqual(are, 2.0 / math.pi, delta=1e-3)
        self.assertLess(abs(are - 0.627), 0.01)

    def test_evaluators(self):
        x = self.rng.normal(0.3, 1.0, 40)
        sign = bl.MedianSignEvaluator(0.5, 0.2).trajectory(x)
        np.testing.assert_allclose(sign, bl.median_sign_supermartingale(running_stats(x, 0.2), 0.5, log = True), rtol=1e-12, atol=1e-12)
        beta = bl.MedianBetaBinomEvaluator(2.0, 1.0, 0.2).trajectory(x)
        np.testing.assert_allclose(beta, bl.median_betabinom(running_stats(x, 0.2), 2.0, 1.0, log = True), rtol=1e-12, atol=1e-12)

if __name__ == '__main__':
    unittest.main()
