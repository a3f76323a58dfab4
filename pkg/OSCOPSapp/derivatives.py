"""
Derivatives of harmonic pairs Phi(x) = f1(x) g1(wx+d) + f2(x) g2(wx+d).

The Leibniz expansion keeps the weight factor exact and only discretizes the
regular factors, so the error of the first-derivative formulas does not grow
with the frequency and the second-derivative error grows linearly in |w|.

Sign convention for every error quantity in this module:
    error = exact value - approximation
"""
from __future__ import annotations

import logging
import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exceptions import ArgumentError
from .weights import Oscillation, WeightKind, check_eta, weight_derivative, weight_pair

logger = logging.getLogger(__name__)

MAX_DERIVATIVE_ORDER = 6
SCHEMES = ("d1_2pt", "d1_4pt", "d2_3pt")

RealFunction = Callable[[float], float]

# Centred difference weights for f^(m), offsets -k..k, to be divided by h**m.
_F = Fraction
CENTRAL_COEFFICIENTS: dict[int, dict[int, tuple[Fraction, ...]]] = {
    2: {
        1: (_F(-1, 2), _F(0), _F(1, 2)),
        2: (_F(1), _F(-2), _F(1)),
        3: (_F(-1, 2), _F(1), _F(0), _F(-1), _F(1, 2)),
        4: (_F(1), _F(-4), _F(6), _F(-4), _F(1)),
        5: (_F(-1, 2), _F(2), _F(-5, 2), _F(0), _F(5, 2), _F(-2), _F(1, 2)),
        6: (_F(1), _F(-6), _F(15), _F(-20), _F(15), _F(-6), _F(1)),
    },
    4: {
        1: (_F(1, 12), _F(-2, 3), _F(0), _F(2, 3), _F(-1, 12)),
        2: (_F(-1, 12), _F(4, 3), _F(-5, 2), _F(4, 3), _F(-1, 12)),
        3: (_F(1, 8), _F(-1), _F(13, 8), _F(0), _F(-13, 8), _F(1), _F(-1, 8)),
        4: (_F(-1, 6), _F(2), _F(-13, 2), _F(28, 3), _F(-13, 2), _F(2), _F(-1, 6)),
        5: (_F(1, 6), _F(-3, 2), _F(13, 3), _F(-29, 6), _F(0), _F(29, 6), _F(-13, 3), _F(3, 2), _F(-1, 6)),
        6: (_F(-1, 4), _F(3), _F(-13), _F(29), _F(-75, 2), _F(29), _F(-13), _F(3), _F(-1, 4)),
    },
}


def _zero(x: float) -> float:
    return 0.0


@dataclass(frozen=True)
class HarmonicPair:
    """
    f1 * g_{1,eta} + f2 * g_{2,eta} sharing one Oscillation.

    f1 and f2 are called only at the stencil points each operation names, so
    they must be safe to call concurrently if the pair is shared across threads.
    """
    f1: RealFunction
    f2: RealFunction
    eta: int
    osc: Oscillation

    def __post_init__(self):
        check_eta(self.eta)

    @classmethod
    def single(cls, f: RealFunction, kind: WeightKind, osc: Oscillation) -> "HarmonicPair":
        """Degenerate pair for one basic function f * g_kind."""
        if kind.s == 1:
            return cls(f1=f, f2=_zero, eta=kind.eta, osc=osc)
        return cls(f1=_zero, f2=f, eta=kind.eta, osc=osc)

    def factor(self, index: int) -> RealFunction:
        if index == 1:
            return self.f1
        if index == 2:
            return self.f2
        raise ArgumentError(f"Factor index must be 1 or 2, got {index!r}.")

    def weights_at(self, x: float) -> tuple[float, float]:
        return weight_pair(self.eta, self.osc.phase(x))

    def __call__(self, x: float) -> float:
        g1, g2 = self.weights_at(x)
        return self.f1(x) * g1 + self.f2(x) * g2


@dataclass(frozen=True)
class StencilSpec:
    x: float
    h: float
    omega: float = 0.0
    lam: float = field(init=False)

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.h) and math.isfinite(self.omega)):
            raise ArgumentError("Stencil point, step and frequency must be finite.")
        if self.h <= 0:
            raise ArgumentError(f"Step h must be positive, got {self.h!r}.")
        object.__setattr__(self, "lam", self.h * self.omega)

    @classmethod
    def for_pair(cls, x: float, h: float, osc: Oscillation) -> "StencilSpec":
        return cls(x=x, h=h, omega=osc.omega)


@dataclass(frozen=True)
class DerivErrorReport:
    which: str
    absolute_error_bound: float
    leading_estimate: float
    # Mean-value points of the remainder are all taken at the stencil centre.
    theta_assumption: float = 1.0
    # True when the signed f^(k)(x) behind the estimate came from differencing the factors.
    approximate_estimate: bool = False


def _check_stencil(p: HarmonicPair, spec: StencilSpec):
    if spec.omega != p.osc.omega:
        raise ArgumentError(
            f"Stencil was built for omega={spec.omega!r} but the pair oscillates at {p.osc.omega!r}."
        )


def central_difference(f: RealFunction, x: float, m: int, h: float, order: int = 2) -> float:
    """Classical centred O(h**order) approximation of f^(m)(x); m = 0 returns f(x)."""
    if order not in CENTRAL_COEFFICIENTS:
        raise ArgumentError(f"Difference order must be 2 or 4, got {order!r}.")
    if isinstance(m, bool) or not isinstance(m, int) or m < 0 or m > MAX_DERIVATIVE_ORDER:
        raise ArgumentError(f"Derivative order must be an integer in [0, {MAX_DERIVATIVE_ORDER}], got {m!r}.")
    if h <= 0:
        raise ArgumentError(f"Step h must be positive, got {h!r}.")
    if m == 0:
        return f(x)

    weights = CENTRAL_COEFFICIENTS[order][m]
    reach = len(weights) // 2
    total = 0.0
    for offset, weight in zip(range(-reach, reach + 1), weights):
        if weight:
            total += float(weight) * f(x + offset * h)
    return total / h ** m


def phi_exact_d1(p: HarmonicPair, f1p: float, f2p: float, x: float) -> float:
    omega, eta = p.osc.omega, p.eta
    g1, g2 = p.weights_at(x)
    return (f1p + omega * p.f2(x)) * g1 + (f2p + eta * omega * p.f1(x)) * g2


def phi_exact_d2(p: HarmonicPair, f1p: float, f2p: float, f1pp: float, f2pp: float, x: float) -> float:
    omega, eta = p.osc.omega, p.eta
    f1, f2 = p.f1(x), p.f2(x)
    g1, g2 = p.weights_at(x)
    first = f1pp + 2.0 * omega * f2p + eta * omega * omega * f1
    second = f2pp + 2.0 * eta * omega * f1p + eta * omega * omega * f2
    return first * g1 + second * g2


def phi_d1_2pt(p: HarmonicPair, spec: StencilSpec) -> float:
    _check_stencil(p, spec)
    x, h, lam, eta = spec.x, spec.h, spec.lam, p.eta
    f1m, f1c, f1p = p.f1(x - h), p.f1(x), p.f1(x + h)
    f2m, f2c, f2p = p.f2(x - h), p.f2(x), p.f2(x + h)
    g1, g2 = p.weights_at(x)

    first = f1p - f1m + 2.0 * lam * f2c
    second = f2p - f2m + 2.0 * eta * lam * f1c
    return (first * g1 + second * g2) / (2.0 * h)


def phi_d1_4pt(p: HarmonicPair, spec: StencilSpec) -> float:
    _check_stencil(p, spec)
    x, h, lam, eta = spec.x, spec.h, spec.lam, p.eta
    g1, g2 = p.weights_at(x)

    def spread(f):
        return f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)

    first = spread(p.f1) + 12.0 * lam * p.f2(x)
    second = spread(p.f2) + 12.0 * eta * lam * p.f1(x)
    return (first * g1 + second * g2) / (12.0 * h)


def phi_d2_3pt(p: HarmonicPair, spec: StencilSpec) -> float:
    _check_stencil(p, spec)
    x, h, lam, eta = spec.x, spec.h, spec.lam, p.eta
    f1m, f1c, f1p = p.f1(x - h), p.f1(x), p.f1(x + h)
    f2m, f2c, f2p = p.f2(x - h), p.f2(x), p.f2(x + h)
    g1, g2 = p.weights_at(x)

    centre = eta * lam * lam - 2.0
    first = f1p + centre * f1c + f1m + lam * (f2p - f2m)
    second = f2p + centre * f2c + f2m + eta * lam * (f1p - f1m)
    return (first * g1 + second * g2) / (h * h)


def _leibniz_brackets(p: HarmonicPair, n: int, derivative: Callable[[int, int], float]) -> tuple[float, float]:
    """
    Coefficients (A1, A2) with Phi^(n)(x) = A1 g1 + A2 g2, given
    derivative(factor, m) -> f_factor^(m)(x).
    """
    omega = p.osc.omega
    brackets = {1: 0.0, 2: 0.0}
    for k in range(n + 1):
        scale = math.comb(n, k) * omega ** k
        if k and scale == 0.0:
            continue
        for factor in (1, 2):
            coeff, kind_out = weight_derivative(WeightKind.from_pair(factor, p.eta), k)
            brackets[kind_out.s] += scale * coeff * derivative(factor, n - k)
    return brackets[1], brackets[2]


def _check_general(n: int, order: int):
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ArgumentError(f"Derivative order n must be a non-negative integer, got {n!r}.")
    if n > MAX_DERIVATIVE_ORDER:
        raise ArgumentError(f"Derivative order n={n} exceeds the supported {MAX_DERIVATIVE_ORDER}.")
    if order not in CENTRAL_COEFFICIENTS:
        raise ArgumentError(f"Difference order must be 2 or 4, got {order!r}.")


def phi_dn_general(p: HarmonicPair, n: int, order: int, spec: StencilSpec) -> float:
    """
    Discrete Leibniz n-th derivative: every f^(n-k) is replaced by its centred
    O(h**order) difference, every g^(k) is taken exactly.

    With order 2 the first derivative of f is the same two-point difference the
    dedicated three-point second-derivative formula uses in its cross term, so
    for n = 1, 2 both paths compute the same quantity up to rounding.
    """
    _check_general(n, order)
    _check_stencil(p, spec)
    x, h = spec.x, spec.h
    if n == 0:
        return p(x)

    def derivative(factor: int, m: int) -> float:
        return central_difference(p.factor(factor), x, m, h, order)

    a1, a2 = _leibniz_brackets(p, n, derivative)
    g1, g2 = p.weights_at(x)
    return a1 * g1 + a2 * g2


def general_error_law(
    p: HarmonicPair,
    n: int,
    order: int,
    spec: StencilSpec,
    exact: Callable[[int, int, float], float],
) -> list[float]:
    """
    Error of phi_dn_general split into its Leibniz terms k = 0..n.

    exact(factor, m, x) must return f_factor^(m)(x). Term k carries the factor
    |omega|**k times the O(h**order) error of f^(n-k); the k = n term is exact,
    so the largest frequency power that survives is |omega|**(n-1).
    """
    _check_general(n, order)
    _check_stencil(p, spec)
    x, h, omega = spec.x, spec.h, p.osc.omega
    g1, g2 = p.weights_at(x)
    weights = {1: g1, 2: g2}

    terms = []
    for k in range(n + 1):
        scale = math.comb(n, k) * omega ** k
        term = 0.0
        for factor in (1, 2):
            m = n - k
            if m == 0:
                continue
            coeff, kind_out = weight_derivative(WeightKind.from_pair(factor, p.eta), k)
            miss = exact(factor, m, x) - central_difference(p.factor(factor), x, m, h, order)
            term += scale * coeff * miss * weights[kind_out.s]
        terms.append(term)
    return terms


_REQUIRED_ORDERS = {
    "d1_2pt": (3,),
    "d1_4pt": (5,),
    "d2_3pt": (3, 4),
}


def _lookup(table: Mapping, factor: int, order: int, label: str) -> float:
    try:
        return float(table[(factor, order)])
    except KeyError:
        raise ArgumentError(f"Missing {label} for factor {factor}, derivative order {order}.") from None


def deriv_error_report(
    p: HarmonicPair,
    which: str,
    spec: StencilSpec,
    f_derivative_magnitudes: Mapping[tuple[int, int], float],
    point_values: Mapping[tuple[int, int], float] | None = None,
) -> DerivErrorReport:
    """
    Frequency-uniform bound and signed leading estimate for one of the three
    dedicated formulas.

    f_derivative_magnitudes maps (factor, k) to sup |f_factor^(k)| over
    [x-h, x+h] ([x-2h, x+2h] for d1_4pt). point_values, when given, maps the
    same keys to signed f_factor^(k)(x) for the estimate. Without them the
    signed values are APPROXIMATED by O(h**4) centred differences of spacing
    h/4 on the factors at x, and the report is flagged approximate_estimate.
    The suprema only ever feed the bound.

    For eta = -1 the bounds use |g| <= 1. For eta = +1 each term is weighted by
    |g_{s,+1}| at the stencil centre since cosh and sinh are unbounded.
    """
    if which not in _REQUIRED_ORDERS:
        raise ArgumentError(f"Unknown scheme {which!r}; expected one of {', '.join(SCHEMES)}.")
    _check_stencil(p, spec)

    sup = {
        (factor, k): abs(_lookup(f_derivative_magnitudes, factor, k, "derivative magnitude"))
        for factor in (1, 2)
        for k in _REQUIRED_ORDERS[which]
    }
    h, omega, eta = spec.h, p.osc.omega, p.eta
    approximate = point_values is None
    if approximate:
        val = {
            (factor, k): central_difference(p.factor(factor), spec.x, k, h / 4.0, order=4)
            for factor in (1, 2)
            for k in _REQUIRED_ORDERS[which]
        }
    else:
        val = {
            (factor, k): _lookup(point_values, factor, k, "derivative value")
            for factor in (1, 2)
            for k in _REQUIRED_ORDERS[which]
        }

    g1, g2 = p.weights_at(spec.x)
    w1, w2 = (1.0, 1.0) if eta == -1 else (abs(g1), abs(g2))

    if which == "d1_2pt":
        bound = h * h / 6.0 * (sup[1, 3] * w1 + sup[2, 3] * w2)
        estimate = -h * h / 6.0 * (val[1, 3] * g1 + val[2, 3] * g2)
    elif which == "d1_4pt":
        bound = h ** 4 / 30.0 * (sup[1, 5] * w1 + sup[2, 5] * w2)
        estimate = h ** 4 / 30.0 * (val[1, 5] * g1 + val[2, 5] * g2)
    else:
        w = abs(omega)
        bound = h * h / 12.0 * (
            (sup[1, 4] + 4.0 * w * sup[2, 3]) * w1 + (sup[2, 4] + 4.0 * w * sup[1, 3]) * w2
        )
        estimate = -h * h / 12.0 * (
            (val[1, 4] + 4.0 * omega * val[2, 3]) * g1
            + (val[2, 4] + 4.0 * eta * omega * val[1, 3]) * g2
        )

    logger.debug("%s error report at x=%g h=%g omega=%g: bound=%.6e estimate=%.6e",
                 which, spec.x, h, omega, bound, estimate)
    return DerivErrorReport(which=which, absolute_error_bound=bound, leading_estimate=estimate,
                            approximate_estimate=approximate)


def approximate_suprema(
    p: HarmonicPair,
    which: str,
    spec: StencilSpec,
    samples: int = 41,
) -> dict[tuple[int, int], float]:
    """
    APPROXIMATE sup |f_factor^(k)| over the stencil support, by sampling O(h**4)
    centred differences of spacing h/4 at `samples` equally spaced points.

    Undersampling or rough factors make the result too small; pass true
    suprema to deriv_error_report when they are known.
    """
    if which not in _REQUIRED_ORDERS:
        raise ArgumentError(f"Unknown scheme {which!r}; expected one of {', '.join(SCHEMES)}.")
    if samples < 2:
        raise ArgumentError("At least two sample points are needed.")
    reach = 2.0 * spec.h if which == "d1_4pt" else spec.h
    step = spec.h / 4.0
    grid = np.linspace(spec.x - reach, spec.x + reach, samples)

    suprema = {}
    for factor in (1, 2):
        f = p.factor(factor)
        for k in _REQUIRED_ORDERS[which]:
            values = np.fromiter((central_difference(f, float(t), k, step, 4) for t in grid), float, count=samples)
            suprema[factor, k] = float(np.max(np.abs(values)))
    return suprema
