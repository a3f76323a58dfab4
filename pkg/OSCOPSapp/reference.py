"""
Closed forms of the two benchmark cases and brute-force oracles.

The oracles use different mathematics from the library (composite
Gauss-Legendre with Richardson extrapolation, Ridders-extrapolated
differences) so agreement with the interpolatory formulas is evidence rather
than a restatement of the same computation.
"""
from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .derivatives import HarmonicPair, StencilSpec, phi_exact_d1, phi_exact_d2
from .exceptions import ArgumentError, ConvergenceError
from .weights import Oscillation, WeightKind

logger = logging.getLogger(__name__)

GAUSS_NODES = 8
MAX_DOUBLINGS = 24
MIN_TOLERANCE = 1e-14

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(GAUSS_NODES)
# Gauss-Legendre with 8 nodes converges like panel**16.
_RICHARDSON_DENOMINATOR = 2.0 ** (2 * GAUSS_NODES) - 1.0


def _regular(x: float) -> float:
    return 1.0 / (1.0 + x)


def _regular_derivative(m: int, x: float) -> float:
    return (-1) ** m * math.factorial(m) / (1.0 + x) ** (m + 1)


@dataclass(frozen=True)
class DerivativeBenchmark:
    """f(x) cos(wx) with f = 1/(1+x), differentiated at x = 1 with step 0.1."""
    x_eval: float = 1.0
    h: float = 0.1
    delta: float = 0.0
    kind: WeightKind = WeightKind.COS

    @staticmethod
    def f(x: float) -> float:
        return _regular(x)

    @staticmethod
    def f_derivative(m: int, x: float) -> float:
        return _regular_derivative(m, x)

    def pair(self, omega: float) -> HarmonicPair:
        return HarmonicPair.single(self.f, self.kind, Oscillation(omega, self.delta))

    def stencil(self, omega: float) -> StencilSpec:
        return StencilSpec(x=self.x_eval, h=self.h, omega=omega)

    def exact_d1(self, omega: float) -> float:
        x = self.x_eval
        return phi_exact_d1(self.pair(omega), self.f_derivative(1, x), 0.0, x)

    def exact_d2(self, omega: float) -> float:
        x = self.x_eval
        return phi_exact_d2(self.pair(omega), self.f_derivative(1, x), 0.0, self.f_derivative(2, x), 0.0, x)

    def reach(self, which: str) -> float:
        return 2 * self.h if which == "d1_4pt" else self.h

    def magnitudes(self, which: str, orders: tuple[int, ...]) -> dict[tuple[int, int], float]:
        """sup |f^(k)| over the stencil support; |f^(k)| decreases on x > -1, so it sits at the left end."""
        left = self.x_eval - self.reach(which)
        table = {}
        for k in orders:
            table[1, k] = abs(self.f_derivative(k, left))
            table[2, k] = 0.0
        return table

    def point_values(self, orders: tuple[int, ...]) -> dict[tuple[int, int], float]:
        table = {}
        for k in orders:
            table[1, k] = self.f_derivative(k, self.x_eval)
            table[2, k] = 0.0
        return table


@dataclass(frozen=True)
class QuadBenchmark:
    """-f^2 cos(wx) - w f sin(wx) with f = 1/(1+x) over [0.9, 1.1]; its primitive is f cos(wx)."""
    a: float = 0.9
    b: float = 1.1
    delta: float = 0.0

    @property
    def c(self) -> float:
        return (self.b + self.a) / 2

    @property
    def h(self) -> float:
        return (self.b - self.a) / 2

    @staticmethod
    def f(x: float) -> float:
        return _regular(x)

    def pair(self, omega: float) -> HarmonicPair:
        f = self.f

        def f1(x):
            return -f(x) ** 2

        def f2(x):
            return -omega * f(x)

        return HarmonicPair(f1=f1, f2=f2, eta=-1, osc=Oscillation(omega, self.delta))

    def primitive(self, omega: float, x: float) -> float:
        return self.f(x) * math.cos(omega * x + self.delta)


def exact_quad_value(case: QuadBenchmark, omega: float) -> float:
    c, h = case.c, case.h
    phi_c, lam = omega * c + case.delta, h * omega
    half_span = (1.0 + c) / 2
    numerator = (h / 2) * math.cos(phi_c) * math.cos(lam) + half_span * math.sin(phi_c) * math.sin(lam)
    return -numerator / (half_span ** 2 - (h / 2) ** 2)


def _gauss_panels(f: Callable[[float], float], a: float, b: float, panels: int) -> tuple[float, float]:
    """Composite 8-point Gauss-Legendre value of the integral of f and of |f|."""
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mids = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mids[:, None] + half[:, None] * _NODES[None, :]).ravel()
    weights = (half[:, None] * _WEIGHTS[None, :]).ravel()
    values = np.fromiter((f(float(x)) for x in nodes), float, count=nodes.size)
    terms = weights * values
    return math.fsum(terms), math.fsum(np.abs(terms))


def oracle_integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-13,
    omega: float = 0.0,
    max_doublings: int = MAX_DOUBLINGS,
) -> float:
    """
    Integral of f over [a, b] by panel doubling with Richardson extrapolation.

    Starts from max(8, 8 ceil(|lambda|)) panels, lambda = (b - a) omega / 2,
    and stops when two successive levels agree to tol relative to the larger
    of the result and the integral of |f|.
    """
    if not (math.isfinite(a) and math.isfinite(b)) or a >= b:
        raise ArgumentError(f"Oracle range must satisfy a < b, got [{a!r}, {b!r}].")
    if tol < MIN_TOLERANCE:
        raise ArgumentError(f"Tolerance {tol!r} is below the supported {MIN_TOLERANCE}.")

    lam = 0.5 * (b - a) * abs(omega)
    panels = max(8, 8 * math.ceil(lam))
    coarse, _ = _gauss_panels(f, a, b, panels)
    for level in range(1, max_doublings + 1):
        panels *= 2
        fine, absolute = _gauss_panels(f, a, b, panels)
        extrapolated = fine + (fine - coarse) / _RICHARDSON_DENOMINATOR
        if abs(fine - coarse) <= tol * max(abs(extrapolated), absolute):
            logger.debug("oracle_integrate converged on [%g, %g] after %d doublings (%d panels)",
                         a, b, level, panels)
            return extrapolated
        coarse = fine
    raise ConvergenceError(
        f"oracle_integrate did not reach tol={tol:g} on [{a!r}, {b!r}] within {max_doublings} doublings."
    )


def oracle_derivative(f: Callable[[float], float], x: float, n: int, step: float = 0.1) -> float:
    """
    Ridders extrapolation of centred differences for f'(x) (n = 1) or f''(x) (n = 2).

    `step` is the initial increment: it need not be small, but f should change
    noticeably over it.
    """
    if n not in (1, 2):
        raise ArgumentError(f"oracle_derivative supports n = 1 or 2, got {n!r}.")
    if not step > 0:
        raise ArgumentError(f"Initial step must be positive, got {step!r}.")

    shrink = 1.4
    shrink2 = shrink * shrink
    table_size = 10
    safe = 2.0

    def difference(hh: float) -> float:
        if n == 1:
            return (f(x + hh) - f(x - hh)) / (2.0 * hh)
        return (f(x + hh) - 2.0 * f(x) + f(x - hh)) / (hh * hh)

    hh = step
    tableau = {(0, 0): difference(hh)}
    err = math.inf
    result = tableau[0, 0]
    for i in range(1, table_size):
        hh /= shrink
        tableau[0, i] = difference(hh)
        fac = shrink2
        for j in range(1, i + 1):
            tableau[j, i] = (tableau[j - 1, i] * fac - tableau[j - 1, i - 1]) / (fac - 1.0)
            fac *= shrink2
            errt = max(abs(tableau[j, i] - tableau[j - 1, i]), abs(tableau[j, i] - tableau[j - 1, i - 1]))
            if errt <= err:
                err = errt
                result = tableau[j, i]
        if abs(tableau[i, i] - tableau[i - 1, i - 1]) >= safe * err:
            break
    return result
