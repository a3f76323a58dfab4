"""
Frequency sweeps over the two benchmark cases and the acceptance report.

This module stays free of Django so the sweeps can be driven from tests or
scripts directly; the management commands and API views only translate
settings, arguments and errors around it.
"""
from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .derivatives import deriv_error_report, phi_d1_2pt, phi_d1_4pt, phi_d2_3pt
from .exceptions import ArgumentError
from .hypergeom import contiguous_residual, precision_audit
from .quadrature import quad_basic, quad_harmonic
from .reference import DerivativeBenchmark, QuadBenchmark, exact_quad_value
from .weights import Oscillation, WeightKind

logger = logging.getLogger(__name__)

TARGETS = ("d1_2pt", "d1_4pt", "d2_3pt", "quad")
SCALINGS = ("none", "linear", "quadratic")

DERIVATIVE_COLUMNS = ("omega", "abs_error", "scaled_error", "bound")
QUAD_COLUMNS = ("omega", "abs_error", "scaled_error", "envelope")
DIAGNOSTIC_COLUMN = "diag_envelope_peak_spacing"

DERIV_OMEGA_RANGE = (0.0, 80.0)
QUAD_OMEGA_RANGE = (0.0, 500.0)
OMEGA_STEP = 0.1
ENVELOPE_COEFF = 0.0025
ENVELOPE_SLACK = 1.05
CSV_DIGITS = 17

_FORMULAS = {
    "d1_2pt": phi_d1_2pt,
    "d1_4pt": phi_d1_4pt,
    "d2_3pt": phi_d2_3pt,
}
_REPORT_ORDERS = {
    "d1_2pt": (3,),
    "d1_4pt": (5,),
    "d2_3pt": (3, 4),
}


@dataclass(frozen=True)
class SweepConfig:
    """
    One sweep over w_k = omega_min + k * omega_step, k = 0, 1, ... up to omega_max.

    omega_max and scaling default per target: derivative targets sweep
    [0, 80] with linear scaling, the quadrature target sweeps [0, 500] unscaled.
    """
    target: str
    omega_min: float = 0.0
    omega_max: float | None = None
    omega_step: float = OMEGA_STEP
    scaling: str | None = None
    output_path: Path | None = None
    emit_gnuplot: bool = False
    diagnostics: bool = False
    envelope_coeff: float = ENVELOPE_COEFF
    csv_digits: int = CSV_DIGITS

    def __post_init__(self):
        if self.target not in TARGETS:
            raise ArgumentError(f"Unknown target {self.target!r}; expected one of {', '.join(TARGETS)}.")
        if self.omega_max is None:
            upper = QUAD_OMEGA_RANGE[1] if self.is_quad else DERIV_OMEGA_RANGE[1]
            object.__setattr__(self, "omega_max", upper)
        if self.scaling is None:
            object.__setattr__(self, "scaling", "none" if self.is_quad else "linear")
        if self.output_path is not None:
            object.__setattr__(self, "output_path", Path(self.output_path))

        if self.scaling not in SCALINGS:
            raise ArgumentError(f"Unknown scaling {self.scaling!r}; expected one of {', '.join(SCALINGS)}.")
        if self.is_quad and self.scaling == "quadratic":
            raise ArgumentError("Quadratic scaling is not defined for the quadrature target.")
        if self.diagnostics and not self.is_quad:
            raise ArgumentError("The envelope diagnostic column is only available for the quadrature target.")
        if not (math.isfinite(self.omega_min) and math.isfinite(self.omega_max)):
            raise ArgumentError("Sweep bounds must be finite.")
        if not (math.isfinite(self.omega_step) and self.omega_step > 0):
            raise ArgumentError(f"omega_step must be positive, got {self.omega_step!r}.")
        if self.omega_min > self.omega_max:
            raise ArgumentError(f"omega_min={self.omega_min} exceeds omega_max={self.omega_max}.")
        if self.emit_gnuplot and self.output_path is None:
            raise ArgumentError("A gnuplot script needs an output path for its data file.")

    @property
    def is_quad(self) -> bool:
        return self.target == "quad"

    @property
    def columns(self) -> tuple[str, ...]:
        if self.is_quad:
            return QUAD_COLUMNS + ((DIAGNOSTIC_COLUMN,) if self.diagnostics else ())
        return DERIVATIVE_COLUMNS

    def omega_grid(self) -> np.ndarray:
        count = int(math.floor((self.omega_max - self.omega_min) / self.omega_step + 1e-9)) + 1
        return self.omega_min + np.arange(count) * self.omega_step


@dataclass
class SweepResult:
    config: SweepConfig
    rows: list[tuple] = field(default_factory=list)

    @property
    def columns(self) -> tuple[str, ...]:
        return self.config.columns

    def column(self, name: str) -> np.ndarray:
        index = self.columns.index(name)
        return np.array([np.nan if row[index] is None else row[index] for row in self.rows])

    def as_dicts(self) -> list[dict]:
        return [dict(zip(self.columns, row)) for row in self.rows]


def scale_error(error: float, omega: float, scaling: str) -> float:
    """error / w or error / w**2 when |w| > 1, the error itself otherwise."""
    if scaling == "none" or abs(omega) <= 1.0:
        return error
    if scaling == "linear":
        return error / omega
    return error / (omega * omega)


def derivative_error(target: str, omega: float, case: DerivativeBenchmark | None = None) -> tuple[float, float]:
    """(exact - approximation, frequency-uniform bound) for one derivative formula."""
    case = case or DerivativeBenchmark()
    pair, spec = case.pair(omega), case.stencil(omega)
    exact = case.exact_d1(omega) if target.startswith("d1") else case.exact_d2(omega)
    error = exact - _FORMULAS[target](pair, spec)
    orders = _REPORT_ORDERS[target]
    report = deriv_error_report(pair, target, spec, case.magnitudes(target, orders), case.point_values(orders))
    return error, report.absolute_error_bound


def quad_error(omega: float, case: QuadBenchmark | None = None) -> float:
    """exact - Simpson sum for the quadrature case, interior knot at the centre."""
    case = case or QuadBenchmark()
    outcome = quad_harmonic(case.pair(omega), case.a, case.b, case.c)
    return exact_quad_value(case, omega) - outcome.value


def _running_max(values: np.ndarray, reach: int) -> np.ndarray:
    padded = np.pad(values, reach, constant_values=-np.inf)
    return np.lib.stride_tricks.sliding_window_view(padded, 2 * reach + 1).max(axis=1)


def envelope_peaks(omegas: np.ndarray, errors: np.ndarray, half_length: float) -> np.ndarray:
    """
    Indices of the long-wavelength peaks of the upper envelope of |error| * w.

    The carrier oscillates with period 2 pi in w, so the envelope is a running
    maximum over +-pi; its peaks are kept at least T/4 apart, T = 2 pi / h.
    """
    omegas = np.asarray(omegas, dtype=float)
    if omegas.size < 2:
        return np.array([], dtype=int)
    step = omegas[1] - omegas[0]
    magnitude = np.where(omegas > 1.0, np.abs(errors) * omegas, 0.0)
    envelope = _running_max(magnitude, max(1, int(round(math.pi / step))))
    separation = max(1, int(round(2 * math.pi / half_length / 4 / step)))
    long_wave = _running_max(envelope, separation)

    peaks = []
    for i in np.flatnonzero((magnitude > 0) & (magnitude == envelope) & (envelope == long_wave)):
        if not peaks or i - peaks[-1] >= separation:
            peaks.append(int(i))
    return np.array(peaks, dtype=int)


def peak_spacing_column(omegas: np.ndarray, errors: np.ndarray, half_length: float) -> list[float | None]:
    """Spacing in w between the last two envelope peaks seen at or before each row."""
    peaks = envelope_peaks(omegas, errors, half_length)
    column: list[float | None] = [None] * len(omegas)
    for previous, current, nxt in zip(peaks, peaks[1:], list(peaks[2:]) + [len(omegas)]):
        spacing = float(omegas[current] - omegas[previous])
        for i in range(current, nxt):
            column[i] = spacing
    return column


def run_sweep(cfg: SweepConfig) -> SweepResult:
    omegas = cfg.omega_grid()
    logger.info("Sweep %s: %d frequencies in [%g, %g], scaling=%s",
                cfg.target, omegas.size, cfg.omega_min, cfg.omega_max, cfg.scaling)
    result = SweepResult(config=cfg)

    if cfg.is_quad:
        case = QuadBenchmark()
        errors = np.fromiter((quad_error(float(w), case) for w in omegas), float, count=omegas.size)
        spacing = peak_spacing_column(omegas, errors, case.h) if cfg.diagnostics else None
        for i, (omega, error) in enumerate(zip(omegas.tolist(), errors.tolist())):
            envelope = cfg.envelope_coeff / omega if omega > 1.0 else None
            row = (omega, error, scale_error(error, omega, cfg.scaling), envelope)
            result.rows.append(row + ((spacing[i],) if spacing is not None else ()))
    else:
        case = DerivativeBenchmark()
        for omega in omegas.tolist():
            error, bound = derivative_error(cfg.target, omega, case)
            result.rows.append((omega, error, scale_error(error, omega, cfg.scaling), bound))

    if cfg.output_path is not None:
        write_csv(result, cfg.output_path)
    logger.info("Sweep %s finished: %d rows", cfg.target, len(result.rows))
    return result


def format_cell(value: float | None, digits: int = CSV_DIGITS) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    return format(value, f".{digits}g")


def write_csv(result: SweepResult, path: Path) -> Path:
    path = Path(path)
    digits = result.config.csv_digits
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(result.columns)
        for row in result.rows:
            writer.writerow([format_cell(value, digits) for value in row])
    logger.info("Wrote %s", path)
    return path


# ─────────────────────────────────────────────
# Acceptance report
# ─────────────────────────────────────────────

def _check(name: str, value, criterion: str, passed: bool) -> dict:
    return {"name": name, "value": value, "criterion": criterion, "passed": bool(passed)}


def _within(value: float, expected: float, rtol: float) -> bool:
    return abs(value - expected) <= rtol * abs(expected)


def _interior_maxima(values: np.ndarray) -> np.ndarray:
    inner = values[1:-1]
    return np.flatnonzero((inner > values[:-2]) & (inner >= values[2:])) + 1


def _derivative_checks(case: DerivativeBenchmark, omega_step: float) -> list[dict]:
    checks = []
    expected = {"d1_2pt": (0.627e-3, 0.625e-3), "d1_4pt": (0.633e-5, 0.625e-5)}
    label = {"d1_2pt": "A2", "d1_4pt": "A4"}
    for target, (exact_amp, est_amp) in expected.items():
        sweep = run_sweep(SweepConfig(target=target, omega_step=omega_step))
        errors, bounds = sweep.column("abs_error"), sweep.column("bound")
        omegas = sweep.column("omega")
        estimates = [
            abs(deriv_error_report(case.pair(w), target, case.stencil(w),
                                   case.magnitudes(target, _REPORT_ORDERS[target]),
                                   case.point_values(_REPORT_ORDERS[target])).leading_estimate)
            for w in omegas.tolist()
        ]
        amplitude = float(np.max(np.abs(errors)))
        checks.append(_check(f"{label[target]}(exact)", amplitude, f"{exact_amp:.3e} within 1%",
                             _within(amplitude, exact_amp, 0.01)))
        estimate = float(max(estimates))
        checks.append(_check(f"{label[target]}(est.)", estimate, f"{est_amp:.3e} within 0.5%",
                             _within(estimate, est_amp, 0.005)))
        violations = int(np.count_nonzero(np.abs(errors) > bounds))
        checks.append(_check(f"{target} uniform bound violations", violations, "0", violations == 0))

        defect = 0.0
        for omega in (0.0, 1.0, 2.5, 7.0):
            shifted = derivative_error(target, omega + 2 * math.pi, case)[0]
            defect = max(defect, abs(derivative_error(target, omega, case)[0] - shifted))
        checks.append(_check(f"{target} 2pi-periodicity defect", defect, "<= 1e-12", defect <= 1e-12))

    sweep = run_sweep(SweepConfig(target="d2_3pt", omega_step=omega_step))
    omegas, scaled = sweep.column("omega"), np.abs(sweep.column("scaled_error"))
    beyond = omegas > 1.0
    peaks = scaled[beyond][_interior_maxima(scaled[beyond])]
    variation = float((peaks.max() - peaks.min()) / peaks.max()) if peaks.size else None
    checks.append(_check("d2_3pt scaled amplitude variation", variation, "< 5%",
                         variation is not None and variation < 0.05))

    ladder = 1.0 + 2 * math.pi * np.arange(13)
    growth = np.array([derivative_error("d2_3pt", float(w), case)[0] for w in ladder])
    fit = np.polynomial.polynomial.Polynomial.fit(ladder, growth, 1)
    residual = float(np.max(np.abs(growth - fit(ladder))) / np.max(np.abs(growth)))
    checks.append(_check("d2_3pt affine growth residual", residual, "< 2%", residual < 0.02))
    return checks


def _quad_checks(envelope_coeff: float, slack: float, omega_step: float) -> tuple[list[dict], float | None]:
    case = QuadBenchmark()
    cfg = SweepConfig(target="quad", omega_step=omega_step, envelope_coeff=envelope_coeff)
    sweep = run_sweep(cfg)
    omegas, errors = sweep.column("omega"), sweep.column("abs_error")

    largest = float(np.max(np.abs(errors)))
    checks = [_check("max |quad error| on [0, 500]", largest, "< 8.0e-5", largest < 8.0e-5)]

    t_lambda = 2 * math.pi / case.h
    beyond = omegas > t_lambda
    envelope = envelope_coeff / omegas[beyond]
    strict = int(np.count_nonzero(np.abs(errors[beyond]) > envelope))
    loose = int(np.count_nonzero(np.abs(errors[beyond]) > slack * envelope))
    checks.append(_check("envelope violations beyond T_lambda (strict)", strict, "informational", True))
    checks.append(_check(f"envelope violations beyond T_lambda (slack {slack:g})", loose, "0", loose == 0))

    peaks = envelope_peaks(omegas, errors, case.h)
    late = peaks[omegas[peaks] > 2 * t_lambda]
    quasi_period = float(2 * np.median(np.diff(omegas[late]))) if late.size > 1 else None
    return checks, quasi_period


def _limit_checks() -> list[dict]:
    checks = []
    case = DerivativeBenchmark()
    spec = case.stencil(0.0)
    f, x, h = case.f, case.x_eval, case.h
    classical = (f(x + h) - f(x - h)) / (2 * h)
    defect = abs(phi_d1_2pt(case.pair(0.0), spec) - classical) / abs(classical)

    quad_case = QuadBenchmark()
    outcome = quad_basic(lambda t: -f(t) ** 2, WeightKind.COS, Oscillation(0.0), quad_case.a, quad_case.b, quad_case.c)
    g = [-f(t) ** 2 for t in (quad_case.a, quad_case.c, quad_case.b)]
    simpson = quad_case.h / 3 * (g[0] + 4 * g[1] + g[2])
    defect = max(defect, abs(outcome.value - simpson) / abs(simpson))
    checks.append(_check("classical limit defect at w = 0", defect, "<= 1e-12", defect <= 1e-12))

    residual = max(
        contiguous_residual(lam, eta, b_twice)
        for lam in (0.1, 1.0, 5.0, 20.0, 50.0)
        for eta in (-1, 1)
        for b_twice in (3, 5, 7)
    )
    checks.append(_check("0F1 contiguous relation residual", residual, "<= 1e-13", residual <= 1e-13))
    return checks


def run_report(
    envelope_coeff: float = ENVELOPE_COEFF,
    slack: float = ENVELOPE_SLACK,
    audit: bool = False,
    omega_step: float = OMEGA_STEP,
) -> dict:
    checks = _derivative_checks(DerivativeBenchmark(), omega_step)
    quad, quasi_period = _quad_checks(envelope_coeff, slack, omega_step)
    checks.extend(quad)
    checks.extend(_limit_checks())

    audit_rows = None
    if audit:
        audit_rows = precision_audit()
        worst = max(row["rel_error"] for row in audit_rows)
        logger.info("0F1 precision audit: %d rows, worst relative error %.3e", len(audit_rows), worst)

    return {
        "passed": all(check["passed"] for check in checks),
        "checks": checks,
        "quasi_period": quasi_period,
        "expected_quasi_period": 2 * math.pi / QuadBenchmark().h,
        "audit": audit_rows,
    }
