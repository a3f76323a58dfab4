import math

import numpy as np
from django.test import SimpleTestCase

from OSCOPSapp.derivatives import HarmonicPair
from OSCOPSapp.exceptions import ArgumentError
from OSCOPSapp.quadrature import (
    KnotTriple,
    cheb_coeffs,
    make_range,
    quad_basic,
    quad_composite,
    quad_error_estimate,
    quad_harmonic,
    reduced_integrals,
    simpson_weight_sum,
    transfer_matrix,
)
from OSCOPSapp.reference import QuadBenchmark, exact_quad_value, oracle_integrate
from OSCOPSapp.weights import Oscillation, WeightKind, eval_weight


def regular(x):
    return 1.0 / (1.0 + x)


def weighted(f, kind, osc):
    return lambda x: f(x) * eval_weight(kind, osc.phase(x))


def slope(steps, errors):
    return float(np.polyfit(np.log(steps), np.log(np.abs(errors)), 1)[0])


class RangeMapTests(SimpleTestCase):
    def test_examples(self):
        rm = make_range(0.9, 1.1, Oscillation(10.0))
        self.assertAlmostEqual(rm.c, 1.0, places=15)
        self.assertAlmostEqual(rm.h, 0.1, places=15)
        self.assertAlmostEqual(rm.phi_c, 10.0, places=13)
        self.assertAlmostEqual(rm.lam, 1.0, places=14)

        rm = make_range(-1.0, 1.0, Oscillation(0.0))
        self.assertEqual((rm.c, rm.h, rm.phi_c, rm.lam), (0.0, 1.0, 0.0, 0.0))

        rm = make_range(0.0, 2 * math.pi, Oscillation(1.0, math.pi))
        self.assertAlmostEqual(rm.c, math.pi, places=15)
        self.assertAlmostEqual(rm.h, math.pi, places=15)
        self.assertAlmostEqual(rm.phi_c, 2 * math.pi, places=14)
        self.assertAlmostEqual(rm.x_at(rm.y_at(1.3)), 1.3, places=15)

    def test_invalid_ranges(self):
        with self.assertRaises(ArgumentError):
            make_range(1.0, 1.0, Oscillation(1.0))
        with self.assertRaises(ArgumentError):
            make_range(2.0, 1.0, Oscillation(1.0))
        with self.assertRaises(ArgumentError):
            make_range(1.0, 1.0 + 1e-13, Oscillation(1.0))
        with self.assertRaises(ArgumentError):
            make_range(0.0, math.inf, Oscillation(1.0))


class TransferMatrixTests(SimpleTestCase):
    def test_examples(self):
        rm = make_range(-0.5, 0.5, Oscillation(1.0))
        np.testing.assert_allclose(transfer_matrix(rm, -1), [[0.5, 0.0], [0.0, 0.5]], atol=1e-16)

        rm = make_range(0.0, 1.0, Oscillation(math.pi))
        r = transfer_matrix(rm, -1)
        np.testing.assert_allclose(r, [[0.0, -0.5], [0.5, 0.0]], atol=1e-16)

        rm = make_range(-1.0, 1.0, Oscillation(1.0, 1.0))
        r = transfer_matrix(rm, 1)
        np.testing.assert_allclose(r, [[math.cosh(1), math.sinh(1)], [math.sinh(1), math.cosh(1)]], rtol=1e-15)


class KnotTests(SimpleTestCase):
    def test_centred_knot_is_exactly_symmetric(self):
        k = KnotTriple.from_samples(1.0, 2.0, 3.0)
        self.assertEqual((k.y2, k.rho), (0.0, 1.0))
        self.assertEqual((k.left, k.mid, k.right), (1.0, 2.0, 3.0))

    def test_ordering_is_enforced(self):
        with self.assertRaises(ArgumentError):
            KnotTriple(x0=0.0, x2=1.0, x1=1.0, f0=0.0, f2=0.0, f1=0.0)
        with self.assertRaises(ArgumentError):
            quad_basic(regular, WeightKind.COS, Oscillation(1.0), 0.0, 1.0, 1.5)

    def test_chebyshev_examples(self):
        c = cheb_coeffs(KnotTriple.from_samples(1.0, 1.0, 1.0))
        self.assertEqual((c.beta02, c.beta12, c.beta22), (1.0, 0.0, 0.0))
        c = cheb_coeffs(KnotTriple.from_samples(-1.0, 0.0, 1.0))
        self.assertEqual((c.beta02, c.beta12, c.beta22), (0.0, 1.0, 0.0))
        c = cheb_coeffs(KnotTriple.from_samples(1.0, 0.0, 1.0))
        self.assertEqual((c.beta02, c.beta12, c.beta22), (0.5, 0.0, 0.5))

    def test_interpolant_hits_shifted_knots(self):
        k = KnotTriple.from_samples(0.7, -1.2, 2.5, y2=1.0 / 3.0)
        self.assertAlmostEqual(k.rho, 2.0, places=15)
        interpolant = cheb_coeffs(k)
        np.testing.assert_allclose(interpolant(np.array([-1.0, 1.0 / 3.0, 1.0])), [0.7, -1.2, 2.5], atol=1e-14)


class ReducedIntegralTests(SimpleTestCase):
    def test_zero_frequency(self):
        self.assertEqual(reduced_integrals(KnotTriple.from_samples(1.0, 1.0, 1.0), 0.0, -1), (2.0, 0.0))
        k = KnotTriple.from_samples(0.3, -0.4, 1.1)
        i1, i2 = reduced_integrals(k, 0.0, 1)
        self.assertAlmostEqual(i1, (0.3 + 4 * -0.4 + 1.1) / 3, places=15)
        self.assertEqual(i2, 0.0)
        self.assertAlmostEqual(simpson_weight_sum(k), i1, places=15)

    def test_constant_at_unit_frequency(self):
        i1, i2 = reduced_integrals(KnotTriple.from_samples(1.0, 1.0, 1.0), 1.0, -1)
        self.assertAlmostEqual(i1, 2 * math.sin(1.0), delta=1e-13)
        self.assertAlmostEqual(i2, 0.0, delta=1e-15)


class BasicRuleTests(SimpleTestCase):
    def test_classical_simpson_example(self):
        outcome = quad_basic(lambda x: -regular(x) ** 2, WeightKind.COS, Oscillation(0.0), 0.9, 1.1, 1.0)
        self.assertAlmostEqual(outcome.value, -0.050125523, delta=1e-9)
        true_error = (1 / 2.1 - 1 / 1.9) - outcome.value
        self.assertAlmostEqual(true_error, 2.1e-7, delta=0.1e-7)
        self.assertAlmostEqual(outcome.est_error, true_error, delta=0.05 * abs(true_error))
        self.assertEqual(outcome.alpha0, 0.0)

    def test_constant_and_linear_factors(self):
        for omega in (3.7, 50.0):
            outcome = quad_basic(lambda x: 1.0, WeightKind.COS, Oscillation(omega), -1.0, 1.0, 0.0)
            self.assertAlmostEqual(outcome.value, 2 * math.sin(omega) / omega, delta=1e-13)
        outcome = quad_basic(lambda x: x, WeightKind.SIN, Oscillation(1.0), -1.0, 1.0, 0.0)
        self.assertAlmostEqual(outcome.value, 2 * (math.sin(1.0) - math.cos(1.0)), delta=1e-14)

    def test_quadratics_are_integrated_exactly(self):
        polynomials = (lambda x: 1.0, lambda x: x - 0.2, lambda x: 3 * x * x - x + 0.5)
        for lam in (0.0, 1.0, 10.0, 100.0):
            osc = Oscillation(lam / 0.5, 0.3)
            for kind in WeightKind:
                for f in polynomials:
                    outcome = quad_basic(f, kind, osc, 0.5, 1.5, 1.0)
                    g = weighted(f, kind, osc)
                    ref = oracle_integrate(g, 0.5, 1.5, omega=osc.omega)
                    # Every factor is positive on [0.5, 1.5]; |g| <= 1 bounds the trigonometric integrands.
                    scale = abs(ref) if kind.eta == 1 else oracle_integrate(f, 0.5, 1.5)
                    self.assertLessEqual(abs(outcome.value - ref), 1e-12 * scale,
                                         msg=f"lambda={lam} kind={kind.name}")
                outcome = quad_basic(polynomials[0], kind, osc, 0.5, 1.5, 1.0)
                self.assertEqual(outcome.est_error, 0.0)

    def test_quadratics_with_shifted_knot(self):
        f = lambda x: 2 * x * x - x  # noqa: E731
        osc = Oscillation(12.0)
        outcome = quad_basic(f, WeightKind.COS, osc, 0.0, 1.0, 0.3)
        ref = oracle_integrate(weighted(f, WeightKind.COS, osc), 0.0, 1.0, omega=12.0)
        self.assertAlmostEqual(outcome.value, ref, delta=1e-13)

    def test_classical_limit(self):
        f, osc0 = regular, Oscillation(0.0, 0.4)
        a, b = 0.9, 1.1
        g = weighted(f, WeightKind.COS, osc0)
        simpson = (b - a) / 6 * (g(a) + 4 * g((a + b) / 2) + g(b))
        self.assertTrue(math.isclose(quad_basic(f, WeightKind.COS, osc0, a, b, 1.0).value, simpson, rel_tol=1e-12))

        tiny = Oscillation(1e-8, 0.4)
        g = weighted(f, WeightKind.COS, tiny)
        simpson = (b - a) / 6 * (g(a) + 4 * g((a + b) / 2) + g(b))
        self.assertTrue(math.isclose(quad_basic(f, WeightKind.COS, tiny, a, b, 1.0).value, simpson, rel_tol=1e-10))


class ErrorEstimateTests(SimpleTestCase):
    def test_alpha0_vanishes_for_centred_knot(self):
        rm = make_range(0.9, 1.1, Oscillation(5.0))
        k = KnotTriple.sample(regular, rm, 1.0)
        terms = quad_error_estimate(k, rm.lam, -1, -0.375, 0.75, rm)
        self.assertEqual(terms.alpha0, 0.0)

    def test_vanishes_for_quadratic_factors(self):
        rm = make_range(0.0, 1.0, Oscillation(8.0))
        k = KnotTriple.sample(lambda x: x * x, rm, 0.5)
        terms = quad_error_estimate(k, rm.lam, -1, 0.0, 0.0, rm)
        self.assertEqual((terms.alpha0, terms.reduced_err1, terms.reduced_err2, terms.est_error), (0.0, 0.0, 0.0, 0.0))

    def test_classical_limit(self):
        rm = make_range(0.9, 1.1, Oscillation(0.0))
        k = KnotTriple.sample(regular, rm, 1.0)
        f4c = 24.0 / 2.0 ** 5
        terms = quad_error_estimate(k, 0.0, -1, -6.0 / 16.0, f4c, rm)
        self.assertAlmostEqual(terms.est_error, -rm.h ** 5 / 90 * f4c, delta=1e-20)

    def test_taylor_alpha0_without_centre_value(self):
        rm = make_range(0.9, 1.1, Oscillation(0.0))
        k = KnotTriple.sample(regular, rm, rm.c + rm.h / 3)
        f3c, f4c = -6.0 / 16.0, 24.0 / 32.0
        terms = quad_error_estimate(k, 0.0, -1, f3c, f4c, rm)
        expected = -(3 + k.rho) * k.y2 * terms.alpha3 / 4 - k.y2 ** 2 * terms.alpha4
        self.assertAlmostEqual(terms.alpha0, expected, delta=1e-18)

        exact = quad_error_estimate(k, 0.0, -1, f3c, f4c, rm, fc=regular(rm.c))
        self.assertAlmostEqual(exact.alpha0, -k.y2 * exact.alpha3 - k.y2 ** 2 * exact.alpha4,
                               delta=0.05 * abs(exact.alpha0))

    def test_shifted_knot_estimate_tracks_true_error(self):
        a, b = 0.9, 1.1
        x2 = 1.0 + 0.1 / 3
        outcome = quad_basic(regular, WeightKind.COS, Oscillation(0.0), a, b, x2)
        true_error = math.log(2.1 / 1.9) - outcome.value
        self.assertGreater(outcome.est_error / true_error, 1 / 1.5)
        self.assertLess(outcome.est_error / true_error, 1.5)


class ConvergenceTests(SimpleTestCase):
    def single_interval_errors(self, shift):
        osc, steps, errors = Oscillation(10.0), [0.2, 0.1, 0.05, 0.025], []
        g = weighted(regular, WeightKind.COS, osc)
        for h in steps:
            a, b = 1.0 - h, 1.0 + h
            outcome = quad_basic(regular, WeightKind.COS, osc, a, b, 1.0 + shift * h)
            errors.append(oracle_integrate(g, a, b, omega=osc.omega) - outcome.value)
        return steps, errors

    def test_centred_knot_gains_a_power(self):
        steps, errors = self.single_interval_errors(0.0)
        self.assertAlmostEqual(slope(steps, errors), 5.0, delta=0.15)

    def test_shifted_knot_is_fourth_order(self):
        steps, errors = self.single_interval_errors(1.0 / 3.0)
        self.assertAlmostEqual(slope(steps, errors), 4.0, delta=0.15)

    def test_error_decays_like_inverse_square_frequency(self):
        a, b = 0.9, 1.1
        f = lambda x: -regular(x) ** 2  # noqa: E731
        t_lambda = 2 * math.pi / 0.1

        def window_peak(lo, hi):
            peak = 0.0
            for omega in np.arange(lo, hi, 0.5).tolist():
                osc = Oscillation(omega)
                ref = oracle_integrate(weighted(f, WeightKind.COS, osc), a, b, tol=1e-12, omega=omega)
                peak = max(peak, abs(ref - quad_basic(f, WeightKind.COS, osc, a, b, 1.0).value))
            return peak

        ratio = window_peak(2 * t_lambda, 3 * t_lambda) / window_peak(4 * t_lambda, 5 * t_lambda)
        self.assertGreater(ratio, 2.4)
        self.assertLess(ratio, 5.6)


class HarmonicRuleTests(SimpleTestCase):
    def test_single_factor_matches_basic_rule(self):
        osc = Oscillation(17.0, 0.2)
        for kind in WeightKind:
            pair = HarmonicPair.single(regular, kind, osc)
            np.testing.assert_allclose(
                quad_harmonic(pair, 0.8, 1.0, 0.9).value,
                quad_basic(regular, kind, osc, 0.8, 1.0, 0.9).value,
                rtol=1e-14,
            )

    def test_benchmark_values(self):
        case = QuadBenchmark()
        self.assertAlmostEqual(quad_harmonic(case.pair(0.0), case.a, case.b, case.c).value, -0.050125523, delta=1e-9)
        error = exact_quad_value(case, 100.0) - quad_harmonic(case.pair(100.0), case.a, case.b, case.c).value
        self.assertLess(abs(error), 1.05 * 2.5e-5)

    def test_agrees_with_oracle_on_random_instances(self):
        rng = np.random.default_rng(20240611)

        def rational(coeffs, q):
            return lambda x: (coeffs[0] + coeffs[1] * x + coeffs[2] * x * x) / (1.0 + q * x * x)

        for trial in range(40):
            eta = -1 if trial < 30 else 1
            omega = float(rng.uniform(0.0, 200.0 if eta == -1 else 20.0))
            osc = Oscillation(omega, float(rng.uniform(-math.pi, math.pi)))
            f1 = rational(rng.uniform(-2.0, 2.0, 3), float(rng.uniform(0.05, 0.3)))
            f2 = rational(rng.uniform(-2.0, 2.0, 3), float(rng.uniform(0.05, 0.3)))
            pair = HarmonicPair(f1=f1, f2=f2, eta=eta, osc=osc)
            a = float(rng.uniform(-1.0, 1.0))
            b = a + 2 * float(rng.uniform(0.025, 0.1))

            outcome = quad_harmonic(pair, a, b, (a + b) / 2)
            ref = oracle_integrate(pair, a, b, omega=omega)
            tolerance = max(1e-12, 3.0 * abs(outcome.est_error))
            self.assertLessEqual(abs(ref - outcome.value), tolerance, msg=f"trial {trial}")


class CompositeRuleTests(SimpleTestCase):
    def test_composite_against_oracle(self):
        osc = Oscillation(10.0)
        outcome = quad_composite(regular, WeightKind.COS, osc, 0.0, 2.0, 16)
        ref = oracle_integrate(weighted(regular, WeightKind.COS, osc), 0.0, 2.0, omega=10.0)
        self.assertEqual(len(outcome.panels), 16)
        self.assertLessEqual(abs(ref - outcome.value), 3.0 * outcome.est_magnitude + 1e-12)
        self.assertAlmostEqual(outcome.est_error, sum(p.est_error for p in outcome.panels), delta=1e-18)

    def test_panel_count_is_validated(self):
        for panels in (0, -2, 1.5, True):
            with self.assertRaises(ArgumentError):
                quad_composite(regular, WeightKind.COS, Oscillation(1.0), 0.0, 1.0, panels)
