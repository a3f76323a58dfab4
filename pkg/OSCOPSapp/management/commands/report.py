import json
import logging

from django.core.management.base import BaseCommand, CommandError

from OSCOPSapp.exceptions import OscOpsError
from OSCOPSapp.serializers import report_options
from OSCOPSapp.sweeps import run_report

logger = logging.getLogger(__name__)


def format_value(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.4e}"
    return str(value)


class Command(BaseCommand):
    help = "Run every sweep and print the acceptance checks; exits nonzero when a check fails."

    def add_arguments(self, parser):
        parser.add_argument("--json", action="store_true", help="Print the report as JSON instead of a table")

    def handle(self, *args, **options):
        try:
            report = run_report(**report_options())
        except OscOpsError as e:
            raise CommandError(str(e)) from e

        if options["json"]:
            self.stdout.write(json.dumps(report, indent=2))
        else:
            self.write_table(report)

        failed = [check["name"] for check in report["checks"] if not check["passed"]]
        if failed:
            raise CommandError(f"{len(failed)} check(s) failed: {', '.join(failed)}")
        self.stdout.write(self.style.SUCCESS("All checks passed."))

    def write_table(self, report: dict):
        width = max(len(check["name"]) for check in report["checks"])
        for check in report["checks"]:
            status = self.style.SUCCESS("ok  ") if check["passed"] else self.style.ERROR("FAIL")
            self.stdout.write(
                f"{status} {check['name']:<{width}}  {format_value(check['value']):>12}  ({check['criterion']})"
            )
        self.stdout.write(
            f"estimated lambda quasi-period: {format_value(report['quasi_period'])}"
            f" (T_lambda = {report['expected_quasi_period']:.4e})"
        )

        if report["audit"]:
            self.stdout.write("0F1 precision audit (b, lambda, eta, value, relative error):")
            for row in report["audit"]:
                self.stdout.write(
                    f"  {row['b_twice']}/2  {row['lam']:>6g}  {row['eta']:+d}  "
                    f"{row['value']: .16e}  {row['rel_error']:.2e}"
                )
