#!/usr/bin/python
# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
#Copyright (c) 2026, The seqtt Authors
#All rights reserved. Distributed under the BSD 3-Clause license, see LICENSE.
import math
import unittest
import logging as log
import numpy as np
from .context import seqtt
from seqtt import scale_invariant as si
from seqtt import specfun
from seqtt.stats_core import SampleStats, running_stats, t_statistic
from seqtt.errors import DomainError, DegenerateSampleError

def stats_of(values):
    return SampleStats().extend(values)

def gauss_mixture_of_ratios(stats, c_sq):
    """ int h_{theta,n} dN(0, 1/c^2)(theta) by quadrature over theta """
    width = 12.0 / math.sqrt(c_sq)
    log_norm = 0.5 * math.log(c_sq) - 0.5 * math.log(2.0 * math.pi)

    def integrand(theta):
        return math.exp(si.si_likelihood_ratio(theta, stats, log = True) + log_norm - 0.5 * c_sq * theta * theta)
    return specfun.integrate(integrand, -width, 0.0) + specfun.integrate(integrand, 0.0, width)

class ScaleInvariantTestSuite(unittest.TestCase):
    """Scale invariant likelihood ratios, mixtures and their intervals."""

    def setUp(self):
        self.LongMessage = True
        log.basicConfig(level=log.DEBUG)
        self.rng = np.random.default_rng(11)

    def test_params(self):
        si.SiProcessParams(0.5, 3, 1.0)
        with self.assertRaises(DomainError):
            si.SiProcessParams(c_sq = 0.0)
        with self.assertRaises(DomainError):
            si.SiProcessParams(lai_m = 1)

    def test_likelihood_ratio_at_zero(self):
        for x in ([1.3], [1.0, -0.5], list(self.rng.normal(0.0, 3.0, 40))):
            self.assertAlmostEqual(si.si_likelihood_ratio(0.0, stats_of(x)), 1.0, delta=1e-9)

    def test_likelihood_ratio_riemann_sum(self):
        stats = stats_of([1.0, 1.0])
        # n = 2: h = e^{-1} int exp(-y + 2 sqrt(y)) dy, trapezoid rule on u = sqrt(y)
        u = np.linspace(0.0, 12.0, 1200001)
        integrand = 2.0 * u * np.exp(-1.0 - u * u + 2.0 * u)
        brute = float(np.sum(integrand[1:] + integrand[:-1]) / 2.0 * (u[1] - u[0]))
        self.assertAlmostEqual(si.si_likelihood_ratio(1.0, stats) / brute, 1.0, delta=1e-8)

    def test_likelihood_ratio_sign_symmetry(self):
        x = [0.7, -0.2, 1.4]
        self.assertAlmostEqual(si.si_likelihood_ratio(-0.8, stats_of(x)),
                si.si_likelihood_ratio(0.8, stats_of([-v for v in x])), places=12)

    def test_likelihood_ratio_degenerate(self):
        with self.assertRaises(DegenerateSampleError):
            si.si_likelihood_ratio(1.0, stats_of([0.0, 0.0]))

    def test_lai_ensm(self):
        self.assertEqual(si.lai_ensm(stats_of([2.0])), math.inf)
        self.assertAlmostEqual(si.lai_ensm(stats_of([1.0, -1.0])), math.sqrt(math.pi), places=12)
        self.assertEqual(si.lai_ensm(stats_of([1.0, 1.0])), math.inf)

    def test_gauss_mix_examples(self):
        for c_sq in (0.1, 1.0, 7.0):
            self.assertAlmostEqual(si.gauss_mix_martingale(stats_of([-2.5]), c_sq), 1.0, places=12)
        self.assertAlmostEqual(si.gauss_mix_martingale(stats_of([1.0, 1.0]), 1.0), math.sqrt(3.0), places=12)
        with self.assertRaises(DegenerateSampleError):
            si.gauss_mix_martingale(stats_of([0.0]), 1.0)
        with self.assertRaises(DomainError):
            si.gauss_mix_martingale(stats_of([1.0]), -1.0)

    def test_gauss_mix_is_theta_mixture(self):
        x = [0.6, -0.3, 1.7, 0.2]
        for c_sq in (0.25, 1.0, 4.0):
            stats = stats_of(x)
            value = si.gauss_mix_martingale(stats, c_sq)
            self.assertAlmostEqual(gauss_mixture_of_ratios(stats, c_sq) / value, 1.0, delta=1e-6, msg='c_sq=%s' % c_sq)

    def test_gauss_mix_unit_expectation(self):
        # E[G_n] over the t_{n-1} law of T_{n-1}
        for n, c_sq in ((3, 1.0), (5, 0.25), (12, 4.0)):
            total = specfun.integrate(lambda t: math.exp(si.gauss_mix_log_t(t, n, c_sq)) * specfun.t_pdf(t, n - 1.0),
                    -math.inf, math.inf)
            self.assertAlmostEqual(total, 1.0, delta=1e-8, msg='n=%s' % n)

    def test_t_statistic_forms(self):
        for _ in range(50):
            n = int(self.rng.integers(2, 60))
            stats = stats_of(self.rng.normal(0.4, 2.0, n))
            t = t_statistic(stats)
            lai = si.lai_ensm(stats, log = True)
            gm = si.gauss_mix_martingale(stats, 0.7, log = True)
            self.assertAlmostEqual(si.lai_log_t(t, n), lai, delta=1e-10 * max(1.0, abs(lai)))
            self.assertAlmostEqual(si.gauss_mix_log_t(t, n, 0.7), gm, delta=1e-10 * max(1.0, abs(gm)))

    def test_scale_invariance(self):
        x = self.rng.normal(0.3, 1.0, 25)
        x = x - x.mean() + 0.5
        for scale in (0.01, 7.5):
            a, b = stats_of(x), stats_of(scale * x)
            self.assertAlmostEqual(si.gauss_mix_martingale(b, 2.0) / si.gauss_mix_martingale(a, 2.0), 1.0, delta=1e-10)
            self.assertAlmostEqual(si.lai_ensm(b) / si.lai_ensm(a), 1.0, delta=1e-10)
            self.assertAlmostEqual(si.semi_one_sided(b, 2.0) / si.semi_one_sided(a, 2.0), 1.0, delta=1e-10)
            self.assertAlmostEqual(si.jzs_mixture_path(b) / si.jzs_mixture_path(a), 1.0, delta=1e-10)
            self.assertAlmostEqual(si.si_likelihood_ratio(0.4, b) / si.si_likelihood_ratio(0.4, a), 1.0, delta=1e-9)

    def test_semi_one_sided(self):
        self.assertEqual(si.semi_one_sided(stats_of([-1.0]), 1.0), 0.0)
        self.assertAlmostEqual(si.semi_one_sided(stats_of([0.4]), 1.0), 2.0 - math.sqrt(2.0), places=12)
        x = self.rng.normal(0.2, 1.0, 30)
        path = running_stats(x)
        values = si.semi_one_sided(path, 1.0)
        self.assertTrue(np.all(values >= 0.0))
        self.assertTrue(np.all(values[path.sum <= 0] == 0.0))

    def test_lai_threshold(self):
        self.assertEqual(si.lai_threshold(2, 1.0), (0.0, 0.5))
        a, b = si.lai_threshold(2, 0.1)
        cauchy = 2.0 * (0.5 - math.atan(a) / math.pi + a / (math.pi * (1.0 + a * a)))
        self.assertAlmostEqual(cauchy, 0.1, delta=1e-10)
        self.assertAlmostEqual(b, (1.0 + a * a) ** 2 / 2.0, delta=1e-9 * b)
        self.assertGreater(si.lai_threshold(2, 0.05)[0], a)
        with self.assertRaises(DomainError):
            si.lai_threshold(1, 0.1)

    def test_lai_cs(self):
        self.assertTrue(math.isinf(si.lai_cs(stats_of([1.0, 2.0]), 3, 0.05).width))
        a, _ = si.lai_threshold(2, 0.1)
        ci = si.lai_cs(stats_of([1.0, -1.0]), 2, 0.1)
        # s^2 = 1 and (2b)^{1/2} = 1 + a^2
        self.assertAlmostEqual(ci.upper, a, delta=1e-9 * a)
        self.assertAlmostEqual(ci.lower, -a, delta=1e-9 * a)
        ci = si.lai_cs(stats_of([3.0, 3.0, 3.0]), 2, 0.05)
        self.assertEqual((ci.lower, ci.upper), (3.0, 3.0))

    def test_gauss_mix_cs(self):
        self.assertTrue(math.isinf(si.gauss_mix_cs(stats_of([1.0, -1.0, 2.0]), 1.0, 0.05).width))
        ci = si.gauss_mix_cs(stats_of([2.0] * 10), 1.0, 0.05)
        self.assertEqual((ci.lower, ci.upper), (2.0, 2.0))
        x = self.rng.normal(0.0, 1.0, 60)
        ci = si.gauss_mix_cs(stats_of(x), 1.0, 0.05)
        for mu0, inside in ((ci.lower + 1e-6, True), (ci.upper - 1e-6, True), (ci.upper + 1e-6, False)):
            value = si.gauss_mix_martingale(stats_of(x - mu0), 1.0)
            self.assertEqual(value < 20.0, inside)

    def test_optimal_c_sq(self):
        self.assertAlmostEqual(si.optimal_c_sq(2, 0.5), 2.0 * 0.0625 / 0.9375, places=12)
        self.assertAlmostEqual(si.optimal_c_sq(2000, 1.0 - 1e-9) / 2000.0, 1.0, delta=5e-3)
        with self.assertRaises(DomainError):
            si.optimal_c_sq(1, 0.05)
        x = self.rng.normal(0.0, 1.0, 15)
        stats = stats_of(x)
        c_sq = si.optimal_c_sq(15, 0.05)
        radius = si.gauss_mix_cs(stats, c_sq, 0.05).width / 2.0
        expected = math.sqrt((0.05 ** (-2.0 / 14.0) * 2.0 ** (15.0 / 14.0) - 2.0) * stats.var_pop)
        self.assertAlmostEqual(radius, expected, delta=1e-9 * expected)

    def test_semi_one_sided_lower_cs(self):
        self.assertEqual(si.semi_one_sided_lower_cs(stats_of([1.0]), 1.0, 0.05).lower, -math.inf)
        x = self.rng.normal(1.0, 1.0, 50)
        stats = stats_of(x)
        ci = si.semi_one_sided_lower_cs(stats, 1.0, 0.05)
        self.assertEqual(ci.upper, math.inf)
        self.assertLess(ci.lower, stats.mean)
        self.assertLess(si.semi_one_sided(stats_of(x - (ci.lower + 1e-6)), 1.0), 20.0)
        self.assertGreaterEqual(si.semi_one_sided(stats_of(x - (ci.lower - 1e-6)), 1.0), 20.0)

    def test_jzs_routes_agree(self):
        stats = stats_of([1.0, -1.0])
        quad = si.jzs_bayes_factor(stats)
        mix = si.jzs_bayes_factor(stats, method = 'scale-mixture')
        self.assertTrue(math.isfinite(quad) and quad > 0)
        self.assertAlmostEqual(quad / mix, 1.0, delta=1e-6)
        x = [0.9, 1.6, -0.3, 2.2, 0.4]
        quad = si.jzs_bayes_factor(stats_of(x), log = True)
        self.assertAlmostEqual(quad, si.jzs_bayes_factor(stats_of(x), method = 'scale-mixture', log = True), delta=1e-6)
        coarse = si.jzs_mixture_path(stats_of(x), nodes = 128, log = True)
        self.assertAlmostEqual(-quad, coarse, delta=1e-6)
        with self.assertRaises(DomainError):
            si.jzs_bayes_factor(stats, method = 'laplace')

    def test_jzs_null_mean(self):
        # 1/B is an e-value: E[1/B_n] <= 1 under N(0, sigma^2)
        for sigma in (1.0, 0.2):
            values = np.exp([si.jzs_mixture_path(running_stats(self.rng.normal(0.0, sigma, 10)), log = True)[-1]
                             for _ in range(3000)])
            mean = np.mean(values)
            se = np.std(values, ddof = 1) / math.sqrt(len(values))
            self.assertLessEqual(mean, 1.0 + 3.0 * se, 'sigma=%s' % sigma)

    def test_gauss_mix_far_from_data(self):
        stats = stats_of([1.0, -1.0, 2.0])
        for mu0 in (1e150, 3.9e153, -3.9e153):
            value = si.gauss_mix_martingale(stats.shifted(mu0), 1.0, log = True)
            self.assertTrue(math.isfinite(value), mu0)
            # S_n^2 / (n V_n) -> 1: G -> sqrt(c^2/(n+c^2)) ((n+c^2)/c^2)^{n/2}
            self.assertAlmostEqual(value, 0.5 * (3.0 * math.log(4.0) - math.log(4.0)), places=6)
        self.assertTrue(math.isfinite(si.jzs_mixture_path(stats.shifted(1e150), log = True)))

    def test_jzs_symmetry(self):
        x = [0.9, 1.6, -0.3, 2.2, 0.4]
        self.assertAlmostEqual(si.jzs_bayes_factor(stats_of(x)),
                si.jzs_bayes_factor(stats_of([-v for v in x])), delta=1e-9)

    def test_jzs_path_matches_points(self):
        x = self.rng.normal(0.5, 1.0, 20)
        path = si.jzs_mixture_path(running_stats(x), log = True)
        for k in (0, 7, 19):
            self.assertAlmostEqual(path[k], si.jzs_mixture_path(stats_of(x[:k + 1]), log = True), places=10)

    def test_evaluators(self):
        x = self.rng.normal(0.2, 1.0, 30)
        for evaluator, reference in (
                (si.GaussMixEvaluator(2.0, 0.1), si.gauss_mix_martingale(running_stats(x, 0.1), 2.0, log = True)),
                (si.SemiOneSidedEvaluator(2.0, 0.1), si.semi_one_sided(running_stats(x, 0.1), 2.0, log = True)),
                (si.LaiEvaluator(0.1), si.lai_ensm(running_stats(x, 0.1), log = True)),
                (si.JzsEvaluator(0.1), si.jzs_mixture_path(running_stats(x, 0.1), log = True))):
            np.testing.assert_allclose(evaluator.trajectory(x), reference, rtol=1e-9, atol=1e-9)
        self.assertEqual(si.LaiEvaluator.kind, 'extended-NSM')
        self.assertEqual(si.SemiOneSidedEvaluator.kind, 'e-process')
        self.assertEqual(si.GaussMixEvaluator.filtration, 'scale-invariant')

if __name__ == '__main__':
    unittest.main()
