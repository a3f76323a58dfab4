import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError
from django.template.loader import render_to_string

from OSCOPSapp.exceptions import OscOpsError
from OSCOPSapp.serializers import SweepConfigSerializer
from OSCOPSapp.sweeps import SCALINGS, TARGETS, SweepConfig, run_sweep

logger = logging.getLogger(__name__)

_TITLES = {
    "d1_2pt": "First derivative, two-point Leibniz formula",
    "d1_4pt": "First derivative, four-point Leibniz formula",
    "d2_3pt": "Second derivative, three-point Leibniz formula",
    "quad": "Interpolatory Simpson sum, error I - Q",
}
_YLABELS = {
    "none": "error",
    "linear": "error / omega (|omega| > 1)",
    "quadratic": "error / omega^2 (|omega| > 1)",
}


def serializer_errors(errors) -> str:
    """Flatten DRF validation errors into one line."""
    parts = []
    for field, messages in errors.items():
        text = "; ".join(str(m) for m in messages)
        parts.append(text if field == "non_field_errors" else f"{field}: {text}")
    return " | ".join(parts)


def render_gnuplot(cfg: SweepConfig, csv_path: Path) -> Path:
    script_path = csv_path.with_suffix(".gp")
    context = {
        "title": _TITLES[cfg.target],
        "csv_name": csv_path.name,
        "script_name": script_path.name,
        "png_name": csv_path.with_suffix(".png").name,
        "columns": cfg.columns,
        "ylabel": _YLABELS[cfg.scaling],
        "series_title": f"{cfg.target} ({cfg.scaling} scaling)",
        "omega_min": cfg.omega_min,
        "omega_max": cfg.omega_max,
        # Fixed y-scale of the quadrature figure.
        "yrange": "8.0e-5" if cfg.is_quad else None,
        "has_envelope": cfg.is_quad,
        "has_bound": not cfg.is_quad and cfg.scaling == "none",
    }
    script_path.write_text(render_to_string("OSCOPSapp/figure.gp", context), encoding="utf-8")
    return script_path


class Command(BaseCommand):
    help = "Sweep omega over a grid for one formula and write exact-minus-approximate errors as CSV."

    def add_arguments(self, parser):
        parser.add_argument("--target", required=True, choices=TARGETS)
        parser.add_argument("--omega-min", type=float, default=None)
        parser.add_argument("--omega-max", type=float, default=None)
        parser.add_argument("--omega-step", type=float, default=None)
        parser.add_argument("--scaling", choices=SCALINGS, default=None)
        parser.add_argument("--out", default=None, help="CSV path (default: <target>.csv)")
        parser.add_argument("--gnuplot", action="store_true", help="Also write <out stem>.gp")
        parser.add_argument(
            "--diagnostics",
            action="store_true",
            help="Add the diag_envelope_peak_spacing column (target quad only)",
        )

    def handle(self, *args, **options):
        target = options["target"]
        ser = SweepConfigSerializer(data={
            "target": target,
            "omega_min": options["omega_min"],
            "omega_max": options["omega_max"],
            "omega_step": options["omega_step"],
            "scaling": options["scaling"],
            "out": options["out"] or f"{target}.csv",
            "gnuplot": options["gnuplot"],
            "diagnostics": options["diagnostics"],
        })
        if not ser.is_valid():
            raise CommandError(serializer_errors(ser.errors))

        try:
            cfg = ser.to_config()
            result = run_sweep_command(cfg)
        except OscOpsError as e:
            raise CommandError(str(e)) from e
        except OSError as e:
            raise CommandError(f"Cannot write sweep output: {e}") from e

        self.stdout.write(self.style.SUCCESS(f"Wrote {len(result.rows)} rows to {cfg.output_path}"))
        if cfg.emit_gnuplot:
            self.stdout.write(self.style.SUCCESS(f"Wrote gnuplot script {cfg.output_path.with_suffix('.gp')}"))


def run_sweep_command(cfg: SweepConfig):
    result = run_sweep(cfg)
    if cfg.emit_gnuplot:
        script = render_gnuplot(cfg, cfg.output_path)
        logger.info("Wrote gnuplot script %s", script)
    return result
