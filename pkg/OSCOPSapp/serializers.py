import math

from django.conf import settings
from rest_framework import serializers

from . import sweeps
from .hypergeom import MAX_B_TWICE
from .sweeps import SCALINGS, TARGETS, SweepConfig


def sweep_defaults(target: str) -> dict:
    """Sweep range, step and output precision for a target, from settings."""
    if target == "quad":
        omega_range = getattr(settings, "OSC_OPS_QUAD_OMEGA_RANGE", sweeps.QUAD_OMEGA_RANGE)
        scaling = "none"
    else:
        omega_range = getattr(settings, "OSC_OPS_DERIV_OMEGA_RANGE", sweeps.DERIV_OMEGA_RANGE)
        scaling = "linear"
    return {
        "omega_min": float(omega_range[0]),
        "omega_max": float(omega_range[1]),
        "omega_step": float(getattr(settings, "OSC_OPS_OMEGA_STEP", sweeps.OMEGA_STEP)),
        "scaling": scaling,
        "csv_digits": int(getattr(settings, "OSC_OPS_CSV_DIGITS", sweeps.CSV_DIGITS)),
        "envelope_coeff": float(getattr(settings, "OSC_OPS_ENVELOPE_COEFF", sweeps.ENVELOPE_COEFF)),
    }


def report_options() -> dict:
    """Keyword arguments of run_report, from the same settings the sweeps use."""
    return {
        "envelope_coeff": float(getattr(settings, "OSC_OPS_ENVELOPE_COEFF", sweeps.ENVELOPE_COEFF)),
        "slack": float(getattr(settings, "OSC_OPS_ENVELOPE_SLACK", sweeps.ENVELOPE_SLACK)),
        "audit": bool(getattr(settings, "OSC_OPS_PRECISION_AUDIT", False)),
        "omega_step": float(getattr(settings, "OSC_OPS_OMEGA_STEP", sweeps.OMEGA_STEP)),
    }


class SweepConfigSerializer(serializers.Serializer):
    target = serializers.ChoiceField(choices=TARGETS)
    omega_min = serializers.FloatField(required=False, allow_null=True, default=None)
    omega_max = serializers.FloatField(required=False, allow_null=True, default=None)
    omega_step = serializers.FloatField(required=False, allow_null=True, default=None)
    scaling = serializers.ChoiceField(choices=SCALINGS, required=False, allow_null=True, default=None)
    out = serializers.CharField(required=False, allow_blank=False, allow_null=True, default=None)
    gnuplot = serializers.BooleanField(required=False, default=False)
    diagnostics = serializers.BooleanField(required=False, default=False)

    # Upper limit on the number of frequencies; None means unlimited.
    max_rows = None

    def validate_omega_step(self, value):
        if value is not None and not value > 0:
            raise serializers.ValidationError("omega_step must be positive.")
        return value

    def validate(self, attrs):
        defaults = sweep_defaults(attrs["target"])
        for name in ("omega_min", "omega_max", "omega_step", "scaling"):
            if attrs.get(name) is None:
                attrs[name] = defaults[name]

        for name in ("omega_min", "omega_max", "omega_step"):
            if not math.isfinite(attrs[name]):
                raise serializers.ValidationError({name: "Must be finite."})
        if attrs["omega_min"] > attrs["omega_max"]:
            raise serializers.ValidationError({"omega_max": "omega_max must not be below omega_min."})
        if attrs["target"] == "quad" and attrs["scaling"] == "quadratic":
            raise serializers.ValidationError({"scaling": "Quadratic scaling is not defined for target quad."})
        if attrs["diagnostics"] and attrs["target"] != "quad":
            raise serializers.ValidationError({"diagnostics": "The diagnostic column is only produced for target quad."})
        if attrs["gnuplot"] and not attrs.get("out"):
            raise serializers.ValidationError({"gnuplot": "A gnuplot script needs --out for its data file."})

        if self.max_rows is not None:
            rows = math.floor((attrs["omega_max"] - attrs["omega_min"]) / attrs["omega_step"] + 1e-9) + 1
            if rows > self.max_rows:
                raise serializers.ValidationError(
                    f"The sweep would produce {rows} rows; at most {self.max_rows} are allowed."
                )
        return attrs

    def to_config(self) -> SweepConfig:
        data = self.validated_data
        defaults = sweep_defaults(data["target"])
        return SweepConfig(
            target=data["target"],
            omega_min=data["omega_min"],
            omega_max=data["omega_max"],
            omega_step=data["omega_step"],
            scaling=data["scaling"],
            output_path=data.get("out"),
            emit_gnuplot=data["gnuplot"],
            diagnostics=data["diagnostics"],
            envelope_coeff=defaults["envelope_coeff"],
            csv_digits=defaults["csv_digits"],
        )


class SweepRequestSerializer(SweepConfigSerializer):
    """Sweep parameters accepted over HTTP: rows come back in the response, nothing is written."""
    out = None
    gnuplot = None

    max_rows = 10001

    def validate(self, attrs):
        attrs["out"] = None
        attrs["gnuplot"] = False
        return super().validate(attrs)


class HypBasisQuerySerializer(serializers.Serializer):
    lam = serializers.FloatField()
    eta = serializers.ChoiceField(choices=(-1, 1))
    b_max_twice = serializers.IntegerField(min_value=1, max_value=MAX_B_TWICE, default=7)

    def validate_lam(self, value):
        if not math.isfinite(value):
            raise serializers.ValidationError("lam must be finite.")
        return value

    def validate_b_max_twice(self, value):
        if value % 2 == 0:
            raise serializers.ValidationError("b_max_twice must be odd.")
        return value
