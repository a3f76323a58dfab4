"""
0F1(b; z) at half-odd-integer b and z = eta * lambda**2 / 4.

These are the moments the interpolatory Simpson sums are built from. At
b = 1/2 and b = 3/2 they are elementary:

    0F1(1/2; -l^2/4) = cos l        0F1(1/2; +l^2/4) = cosh l
    0F1(3/2; -l^2/4) = sin(l)/l     0F1(3/2; +l^2/4) = sinh(l)/l

Higher b are obtained either from the ascending series or from the two
closed forms propagated upward in b with the contiguous relation

    0F1(b-1; z) - 0F1(b; z) = z / (b (b-1)) * 0F1(b+1; z)

which is assumed to be the recurrence the method's derivation refers to.

Regimes:
    eta = +1: series for lambda <= LAMBDA_SWITCH, upward recurrence beyond.
    eta = -1: series for lambda <= b_max, upward recurrence beyond. Upward
              recurrence on the oscillatory branch loses digits when
              lambda < b (spherical Bessel functions below their turning point).

Accuracy: relative error around 1e-15 away from zeros of 0F1 for
lambda <= 50 and b <= 9/2. Near a zero only the absolute error (about 1e-16
times the largest series term, or the recurrence inputs) is meaningful. On the
oscillatory branch the values at lambda close to 10 carry the largest
rounding, a few units of 1e-15 relative for b = 5/2.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import mpmath

from .exceptions import ArgumentError, ConvergenceError, RangeError
from .weights import HYPERBOLIC_LIMIT, check_eta

logger = logging.getLogger(__name__)

LAMBDA_SWITCH = 10.0
SERIES_CUTOFF = 1e-17
MAX_B_TWICE = 13
MAX_ABS_Z = 1e8
_MAX_SERIES_TERMS = 500


@dataclass(frozen=True)
class HypArg:
    """
    Argument of 0F1(b; z) with b = b_twice / 2 and z = eta * lam**2 / 4.

    z is carried as (lam, eta) so that its sign survives at tiny lambda.
    """
    b_twice: int
    lam: float
    eta: int

    def __post_init__(self):
        validate_b_twice(self.b_twice)
        check_eta(self.eta)
        if not math.isfinite(self.lam):
            raise ArgumentError(f"lambda must be finite, got {self.lam!r}.")
        object.__setattr__(self, "lam", abs(float(self.lam)))
        if abs(self.z) > MAX_ABS_Z:
            raise ArgumentError(f"|z| = {abs(self.z):g} exceeds {MAX_ABS_Z:g}.")

    @classmethod
    def from_z(cls, b_twice: int, z: float) -> "HypArg":
        if not math.isfinite(z):
            raise ArgumentError(f"z must be finite, got {z!r}.")
        return cls(b_twice=b_twice, lam=2.0 * math.sqrt(abs(z)), eta=1 if z > 0 else -1)

    @property
    def b(self) -> float:
        return self.b_twice / 2

    @property
    def z(self) -> float:
        return self.eta * (0.5 * self.lam) ** 2


def validate_b_twice(b_twice: int) -> int:
    if isinstance(b_twice, bool) or not isinstance(b_twice, int):
        raise ArgumentError(f"b_twice must be an odd integer, got {b_twice!r}.")
    if b_twice < 1 or b_twice % 2 == 0:
        raise ArgumentError(f"b_twice must be odd and >= 1, got {b_twice}.")
    if b_twice > MAX_B_TWICE:
        raise ArgumentError(f"b = {b_twice}/2 is beyond the supported {MAX_B_TWICE}/2.")
    return b_twice


def _series(b: float, lam: float, eta: int) -> float:
    q = eta * (0.5 * lam) ** 2
    term = total = 1.0
    for j in range(_MAX_SERIES_TERMS):
        term *= q / ((b + j) * (j + 1))
        total += term
        if abs(term) <= SERIES_CUTOFF * abs(total):
            return total
    raise ConvergenceError(f"0F1 series did not converge for b={b}, lambda={lam}.")


def _closed_forms(lam: float, eta: int) -> tuple[float, float]:
    if eta == 1:
        if lam > HYPERBOLIC_LIMIT:
            raise RangeError(f"0F1 at lambda={lam:g} overflows double precision.")
        first = math.cosh(lam)
        second = math.sinh(lam) / lam if lam else 1.0
    else:
        first = math.cos(lam)
        second = math.sin(lam) / lam if lam else 1.0
    return first, second


def _uses_series(lam: float, eta: int, b_max_twice: int) -> bool:
    if eta == 1:
        return lam <= LAMBDA_SWITCH
    return lam <= b_max_twice / 2


def hyp0f1_basis(lam: float, eta: int, b_max_twice: int) -> list[float]:
    """[0F1(1/2; z), 0F1(3/2; z), ..., 0F1(b_max; z)] with z = eta * lam**2 / 4."""
    top = HypArg(b_twice=b_max_twice, lam=lam, eta=eta)
    lam, eta = top.lam, top.eta
    count = (b_max_twice + 1) // 2

    values = list(_closed_forms(lam, eta))[:count]
    if count <= 2:
        return values

    if _uses_series(lam, eta, b_max_twice):
        logger.debug("0F1 basis by series: lambda=%g eta=%d b_max=%d/2", lam, eta, b_max_twice)
        values.extend(_series(k + 0.5, lam, eta) for k in range(2, count))
        return values

    logger.debug("0F1 basis by upward recurrence: lambda=%g eta=%d b_max=%d/2", lam, eta, b_max_twice)
    z = top.z
    for k in range(1, count - 1):
        b = k + 0.5
        values.append((values[k - 1] - values[k]) * b * (b - 1.0) / z)
    return values


def hyp0f1(arg: HypArg) -> float:
    return hyp0f1_basis(arg.lam, arg.eta, arg.b_twice)[-1]


def contiguous_residual(lam: float, eta: int, b_twice: int) -> float:
    """Relative residual of the contiguous relation at b = b_twice / 2 (b >= 3/2)."""
    if b_twice < 3:
        raise ArgumentError("The contiguous relation needs b >= 3/2.")
    values = hyp0f1_basis(lam, eta, b_twice + 2)
    k = (b_twice - 1) // 2
    b = b_twice / 2
    z = eta * (0.5 * abs(lam)) ** 2
    lower, middle = values[k - 1], values[k]
    upper = z / (b * (b - 1.0)) * values[k + 1]
    scale = max(abs(lower), abs(middle), abs(upper))
    return abs(lower - middle - upper) / scale


def precision_audit(lambdas=(0.1, 1.0, 5.0, 10.0, 20.0, 50.0), b_max_twice: int = 9) -> list[dict]:
    """Compare the kernel against a 50-digit mpmath reference, one row per (b, lambda, eta)."""
    rows = []
    for eta in (-1, 1):
        for lam in lambdas:
            values = hyp0f1_basis(lam, eta, b_max_twice)
            for index, value in enumerate(values):
                b_twice = 2 * index + 1
                with mpmath.workdps(50):
                    exact = mpmath.hyp0f1(mpmath.mpf(b_twice) / 2, eta * mpmath.mpf(lam) ** 2 / 4)
                    abs_err = float(abs(mpmath.mpf(value) - exact))
                    magnitude = float(abs(exact))
                rows.append({
                    "b_twice": b_twice,
                    "lam": lam,
                    "eta": eta,
                    "value": value,
                    "reference": float(exact),
                    "abs_error": abs_err,
                    "rel_error": abs_err / magnitude if magnitude else abs_err,
                })
    return rows
