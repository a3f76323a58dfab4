import math
import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from OSCOPSapp.exceptions import ArgumentError
from OSCOPSapp.sweeps import (
    DIAGNOSTIC_COLUMN,
    QUAD_COLUMNS,
    SweepConfig,
    derivative_error,
    format_cell,
    run_sweep,
    scale_error,
)


class SweepConfigTests(SimpleTestCase):
    def test_defaults_per_target(self):
        cfg = SweepConfig(target="d1_2pt")
        self.assertEqual((cfg.omega_max, cfg.scaling), (80.0, "linear"))
        self.assertEqual(cfg.omega_grid().size, 801)
        cfg = SweepConfig(target="quad")
        self.assertEqual((cfg.omega_max, cfg.scaling), (500.0, "none"))
        self.assertEqual(cfg.omega_grid().size, 5001)
        self.assertEqual(cfg.columns, QUAD_COLUMNS)

    def test_grid_includes_upper_end(self):
        grid = SweepConfig(target="d2_3pt", omega_min=1.0, omega_max=2.0, omega_step=0.25).omega_grid()
        np.testing.assert_allclose(grid, [1.0, 1.25, 1.5, 1.75, 2.0])

    def test_invalid_configurations(self):
        invalid = (
            {"target": "d3_5pt"},
            {"target": "quad", "scaling": "quadratic"},
            {"target": "d1_2pt", "diagnostics": True},
            {"target": "d1_2pt", "omega_step": 0.0},
            {"target": "d1_2pt", "omega_min": 5.0, "omega_max": 1.0},
            {"target": "d1_2pt", "omega_max": math.inf},
            {"target": "d1_2pt", "emit_gnuplot": True},
            {"target": "d1_2pt", "scaling": "cubic"},
        )
        for kwargs in invalid:
            with self.assertRaises(ArgumentError, msg=str(kwargs)):
                SweepConfig(**kwargs)


class ScalingTests(SimpleTestCase):
    def test_scale_error(self):
        self.assertEqual(scale_error(0.3, 0.5, "linear"), 0.3)
        self.assertEqual(scale_error(0.3, -1.0, "quadratic"), 0.3)
        self.assertEqual(scale_error(0.3, 3.0, "none"), 0.3)
        self.assertAlmostEqual(scale_error(0.3, 3.0, "linear"), 0.1, places=16)
        self.assertAlmostEqual(scale_error(0.3, -3.0, "quadratic"), 0.3 / 9, places=16)

    def test_format_cell(self):
        self.assertEqual(format_cell(None), "")
        self.assertEqual(format_cell(math.nan), "")
        self.assertEqual(format_cell(0.1), "0.10000000000000001")
        self.assertEqual(format_cell(0.1, digits=6), "0.1")


class DerivativeSweepTests(SimpleTestCase):
    def test_two_point_amplitude_and_bound(self):
        result = run_sweep(SweepConfig(target="d1_2pt"))
        errors = result.column("abs_error")
        self.assertEqual(len(result.rows), 801)
        self.assertAlmostEqual(np.max(np.abs(errors)), 0.627e-3, delta=0.01 * 0.627e-3)
        self.assertFalse(np.any(np.abs(errors) > result.column("bound")))

        omegas, scaled = result.column("omega"), result.column("scaled_error")
        low = omegas <= 1.0
        np.testing.assert_array_equal(scaled[low], errors[low])
        np.testing.assert_allclose(scaled[~low], errors[~low] / omegas[~low], rtol=1e-15)

    def test_four_point_amplitude(self):
        result = run_sweep(SweepConfig(target="d1_4pt", scaling="none"))
        errors = result.column("abs_error")
        self.assertAlmostEqual(np.max(np.abs(errors)), 0.633e-5, delta=0.01 * 0.633e-5)
        np.testing.assert_array_equal(result.column("scaled_error"), errors)

    def test_second_derivative_scaled_amplitude_is_flat(self):
        result = run_sweep(SweepConfig(target="d2_3pt", omega_min=1.0, omega_max=80.0))
        scaled = np.abs(result.column("scaled_error"))
        inner = scaled[1:-1]
        peaks = inner[(inner > scaled[:-2]) & (inner >= scaled[2:])]
        self.assertGreater(peaks.size, 10)
        self.assertLess((peaks.max() - peaks.min()) / peaks.max(), 0.05)

    def test_bound_column_is_frequency_uniform_for_first_derivatives(self):
        _, bound_low = derivative_error("d1_2pt", 0.0)
        _, bound_high = derivative_error("d1_2pt", 75.0)
        self.assertEqual(bound_low, bound_high)


class QuadSweepTests(SimpleTestCase):
    def test_error_and_envelope(self):
        result = run_sweep(SweepConfig(target="quad", diagnostics=True))
        self.assertEqual(result.columns, QUAD_COLUMNS + (DIAGNOSTIC_COLUMN,))
        omegas, errors = result.column("omega"), result.column("abs_error")
        self.assertLess(np.max(np.abs(errors)), 8e-5)

        envelope = result.column("envelope")
        self.assertTrue(np.all(np.isnan(envelope[omegas <= 1.0])))
        beyond = omegas > 20 * math.pi
        self.assertFalse(np.any(np.abs(errors[beyond]) > 1.05 * envelope[beyond]))

        spacing = result.column(DIAGNOSTIC_COLUMN)
        late = spacing[omegas > 400.0]
        t_lambda = 20 * math.pi
        self.assertFalse(np.any(np.isnan(late)))
        np.testing.assert_allclose(2 * late, t_lambda, rtol=0.01)

    def test_linear_scaling(self):
        plain = run_sweep(SweepConfig(target="quad", omega_max=20.0))
        scaled = run_sweep(SweepConfig(target="quad", omega_max=20.0, scaling="linear"))
        omegas = plain.column("omega")
        high = omegas > 1.0
        np.testing.assert_allclose(scaled.column("scaled_error")[high],
                                   plain.column("abs_error")[high] / omegas[high], rtol=1e-15)


class CsvOutputTests(SimpleTestCase):
    def test_header_format_and_determinism(self):
        with tempfile.TemporaryDirectory() as tmp:
            first, second = Path(tmp, "a.csv"), Path(tmp, "b.csv")
            run_sweep(SweepConfig(target="quad", omega_max=3.0, output_path=first))
            run_sweep(SweepConfig(target="quad", omega_max=3.0, output_path=second))
            self.assertEqual(first.read_bytes(), second.read_bytes())

            lines = first.read_text(encoding="utf-8").split("\n")
            self.assertEqual(lines[0], "omega,abs_error,scaled_error,envelope")
            self.assertEqual(lines[-1], "")
            self.assertEqual(len(lines), 2 + 31)
            self.assertTrue(lines[1].startswith("0,"))
            self.assertTrue(lines[1].endswith(","))
            self.assertNotIn("\r", first.read_text(encoding="utf-8"))
            self.assertAlmostEqual(float(lines[-2].split(",")[3]), 0.0025 / 3.0, places=15)
