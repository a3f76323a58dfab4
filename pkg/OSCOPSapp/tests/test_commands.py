import io
import json
import tempfile
from pathlib import Path
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings


class SweepCommandTests(SimpleTestCase):
    def call(self, *args):
        out = io.StringIO()
        call_command("sweep", *args, stdout=out)
        return out.getvalue()

    def test_writes_csv_with_derivative_header(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp, "d1.csv")
            output = self.call("--target", "d1_2pt", "--omega-max", "5", "--out", str(path))
            self.assertIn("Wrote 51 rows", output)
            lines = path.read_text(encoding="utf-8").splitlines()
            self.assertEqual(lines[0], "omega,abs_error,scaled_error,bound")
            self.assertEqual(len(lines), 52)

    def test_scaling_switch_changes_only_scaled_column(self):
        with tempfile.TemporaryDirectory() as tmp:
            linear, quadratic = Path(tmp, "lin.csv"), Path(tmp, "quad.csv")
            self.call("--target", "d2_3pt", "--omega-max", "4", "--out", str(linear))
            self.call("--target", "d2_3pt", "--omega-max", "4", "--scaling", "quadratic", "--out", str(quadratic))
            rows_lin = [line.split(",") for line in linear.read_text(encoding="utf-8").splitlines()[1:]]
            rows_quad = [line.split(",") for line in quadratic.read_text(encoding="utf-8").splitlines()[1:]]
            for lin, quad in zip(rows_lin, rows_quad):
                self.assertEqual((lin[0], lin[1], lin[3]), (quad[0], quad[1], quad[3]))
                omega, error = float(lin[0]), float(lin[1])
                if omega > 1.0:
                    self.assertAlmostEqual(float(quad[2]), error / omega ** 2, delta=1e-15 * abs(error))
                else:
                    self.assertEqual(lin[2], quad[2])

    def test_gnuplot_script(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp, "quad.csv")
            self.call("--target", "quad", "--omega-max", "10", "--out", str(path), "--gnuplot")
            script = Path(tmp, "quad.gp").read_text(encoding="utf-8")
            self.assertIn("quad.csv", script)
            self.assertIn("quad.png", script)
            self.assertIn("8.0e-5", script)

    def test_diagnostics_column(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp, "quad.csv")
            self.call("--target", "quad", "--omega-max", "10", "--out", str(path), "--diagnostics")
            header = path.read_text(encoding="utf-8").splitlines()[0]
            self.assertEqual(header, "omega,abs_error,scaled_error,envelope,diag_envelope_peak_spacing")

    def test_usage_errors(self):
        with self.assertRaises(CommandError):
            self.call("--target", "quad", "--scaling", "quadratic", "--out", "unused.csv")
        with self.assertRaises(CommandError):
            self.call("--target", "d1_2pt", "--diagnostics", "--out", "unused.csv")
        with self.assertRaises(CommandError):
            self.call("--target", "d1_2pt", "--omega-step", "0", "--out", "unused.csv")
        with self.assertRaises(CommandError):
            self.call("--target", "d1_2pt", "--omega-min", "9", "--omega-max", "1", "--out", "unused.csv")
        with self.assertRaises(CommandError):
            self.call("--target", "d9_9pt")

    def test_unwritable_output(self):
        with tempfile.TemporaryDirectory() as tmp:
            with self.assertRaises(CommandError):
                self.call("--target", "d1_2pt", "--omega-max", "1", "--out", str(Path(tmp, "missing", "x.csv")))


class ReportCommandTests(SimpleTestCase):
    def test_every_acceptance_check_passes(self):
        out = io.StringIO()
        call_command("report", "--json", stdout=out)
        text = out.getvalue()
        report = json.loads(text[: text.rindex("}") + 1])
        self.assertTrue(report["passed"], msg=[c for c in report["checks"] if not c["passed"]])
        self.assertIsNone(report["audit"])
        names = {check["name"] for check in report["checks"]}
        self.assertIn("A2(exact)", names)
        self.assertIn("d2_3pt affine growth residual", names)
        self.assertAlmostEqual(report["quasi_period"], report["expected_quasi_period"],
                               delta=0.1 * report["expected_quasi_period"])

    @override_settings(OSC_OPS_PRECISION_AUDIT=True)
    def test_table_with_precision_audit(self):
        out = io.StringIO()
        call_command("report", stdout=out)
        text = out.getvalue()
        self.assertIn("0F1 precision audit", text)
        self.assertIn("All checks passed.", text)

    @override_settings(OSC_OPS_OMEGA_STEP=0.25)
    def test_configured_step_reaches_the_report(self):
        report = {"passed": True, "checks": [{"name": "x", "value": 0, "criterion": "0", "passed": True}],
                  "quasi_period": None, "expected_quasi_period": 62.83, "audit": None}
        with mock.patch("OSCOPSapp.management.commands.report.run_report", return_value=report) as build:
            call_command("report", stdout=io.StringIO())
        self.assertEqual(build.call_args.kwargs["omega_step"], 0.25)
