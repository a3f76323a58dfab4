"""
The four weight functions g_{s,eta} and their closed derivative cycle.

    (s, eta) = (1, -1) -> cos     (2, -1) -> sin
    (s, eta) = (1, +1) -> cosh    (2, +1) -> sinh

Every oscillatory formula in the package handles the weight factor exactly
through this module; only the regular factor f(x) is ever approximated.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .exceptions import ArgumentError, RangeError

# exp() overflows just above 709.78; keep a margin so cosh/sinh stay finite.
HYPERBOLIC_LIMIT = 700.0


class WeightKind(enum.Enum):
    COS = (1, -1)
    SIN = (2, -1)
    COSH = (1, 1)
    SINH = (2, 1)

    @property
    def s(self) -> int:
        return self.value[0]

    @property
    def eta(self) -> int:
        return self.value[1]

    @property
    def partner(self) -> "WeightKind":
        return WeightKind.from_pair(3 - self.s, self.eta)

    @classmethod
    def from_pair(cls, s: int, eta: int) -> "WeightKind":
        try:
            return cls((int(s), int(eta)))
        except ValueError:
            raise ArgumentError(f"No weight function for s={s!r}, eta={eta!r}.") from None


@dataclass(frozen=True)
class Oscillation:
    omega: float
    delta: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.omega) and math.isfinite(self.delta)):
            raise ArgumentError(f"omega and delta must be finite, got {self.omega!r}, {self.delta!r}.")

    def phase(self, x: float) -> float:
        return self.omega * x + self.delta


_ELEMENTARY = {
    WeightKind.COS: math.cos,
    WeightKind.SIN: math.sin,
    WeightKind.COSH: math.cosh,
    WeightKind.SINH: math.sinh,
}


def check_eta(eta: int) -> int:
    if eta not in (-1, 1):
        raise ArgumentError(f"eta must be -1 or +1, got {eta!r}.")
    return eta


def eval_weight(kind: WeightKind, t: float) -> float:
    if not math.isfinite(t):
        raise ArgumentError(f"Weight argument must be finite, got {t!r}.")
    if kind.eta == 1 and abs(t) > HYPERBOLIC_LIMIT:
        raise RangeError(f"{kind.name.lower()}({t!r}) overflows double precision (|t| > {HYPERBOLIC_LIMIT}).")
    return _ELEMENTARY[kind](t)


def weight_pair(eta: int, t: float) -> tuple[float, float]:
    """(g_{1,eta}(t), g_{2,eta}(t))"""
    check_eta(eta)
    return (
        eval_weight(WeightKind.from_pair(1, eta), t),
        eval_weight(WeightKind.from_pair(2, eta), t),
    )


def weight_derivative(kind: WeightKind, m: int) -> tuple[int, WeightKind]:
    """
    Return (c, kind_out) with d^m g_kind(t)/dt^m = c * g_kind_out(t).

    The cycle has period 4 in m:
        m = 4k+1 -> eta^s     g_{3-s}
        m = 4k+2 -> eta       g_s
        m = 4k+3 -> eta^(s-1) g_{3-s}
        m = 4k+4 -> 1         g_s
    """
    if isinstance(m, bool) or not isinstance(m, int) or m < 0:
        raise ArgumentError(f"Derivative order must be a non-negative integer, got {m!r}.")

    s, eta = kind.s, kind.eta
    phase = m % 4
    if phase == 0:
        return 1, kind
    if phase == 1:
        return eta ** s, kind.partner
    if phase == 2:
        return eta, kind
    return eta ** (s - 1), kind.partner
