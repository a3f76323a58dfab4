"""
Interpolatory Simpson sums for integrals of f(x) * g_{s,eta}(wx + d).

The regular factor f is replaced by its quadratic interpolant on three knots
and the product with the weight is then integrated exactly, so the rule stays
accurate however many oscillations fall inside [a, b].

Knot convention (kept throughout the module):

    a = x0 < x2 < x1 = b

The interior sample is f2 and the right endpoint is f1. Public constructors
name the samples (left, mid, right) instead. With x2 at the centre the rule
reduces to the classical (h/3)(f0 + 4 f2 + f1) when w -> 0.

Errors are reported as exact - approximation.
"""
from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import chebyshev

from .derivatives import HarmonicPair, central_difference
from .exceptions import ArgumentError
from .hypergeom import hyp0f1_basis
from .weights import Oscillation, WeightKind, check_eta, weight_pair

logger = logging.getLogger(__name__)

DEGENERATE_RTOL = 1e-12

RealFunction = Callable[[float], float]


@dataclass(frozen=True)
class RangeMap:
    """[a, b] mapped onto [-1, 1] by x = c + h y."""
    a: float
    b: float
    c: float
    h: float
    phi_c: float
    lam: float

    def x_at(self, y: float) -> float:
        return self.c + self.h * y

    def y_at(self, x: float) -> float:
        return (x - self.c) / self.h


def make_range(a: float, b: float, osc: Oscillation) -> RangeMap:
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ArgumentError(f"Range ends must be finite, got [{a!r}, {b!r}].")
    if a >= b:
        raise ArgumentError(f"Range must satisfy a < b, got [{a!r}, {b!r}].")
    c = (b + a) / 2
    h = (b - a) / 2
    if h < DEGENERATE_RTOL * max(abs(a), abs(b), 1.0):
        raise ArgumentError(f"Range [{a!r}, {b!r}] is too short to resolve its centre phase.")
    return RangeMap(a=a, b=b, c=c, h=h, phi_c=osc.omega * c + osc.delta, lam=h * osc.omega)


@dataclass(frozen=True)
class KnotTriple:
    x0: float
    x2: float
    x1: float
    f0: float
    f2: float
    f1: float
    y2: float = field(init=False)
    rho: float = field(init=False)

    def __post_init__(self):
        if not self.x0 < self.x2 < self.x1:
            raise ArgumentError(
                f"Knots must satisfy a < x2 < b, got a={self.x0!r}, x2={self.x2!r}, b={self.x1!r}."
            )
        c = (self.x0 + self.x1) / 2
        if self.x2 == c:
            y2, rho = 0.0, 1.0
        else:
            y2 = (self.x2 - c) / ((self.x1 - self.x0) / 2)
            rho = (1.0 + y2) / (1.0 - y2)
        object.__setattr__(self, "y2", y2)
        object.__setattr__(self, "rho", rho)

    @classmethod
    def sample(cls, f: RealFunction, rm: RangeMap, x2: float) -> "KnotTriple":
        if not rm.a < x2 < rm.b:
            raise ArgumentError(f"Interior knot {x2!r} is not strictly inside [{rm.a!r}, {rm.b!r}].")
        return cls(x0=rm.a, x2=x2, x1=rm.b, f0=f(rm.a), f2=f(x2), f1=f(rm.b))

    @classmethod
    def from_samples(cls, left: float, mid: float, right: float, y2: float = 0.0) -> "KnotTriple":
        """Samples on the fundamental range [-1, 1] with the interior knot at y2."""
        return cls(x0=-1.0, x2=y2, x1=1.0, f0=left, f2=mid, f1=right)

    @property
    def left(self) -> float:
        return self.f0

    @property
    def mid(self) -> float:
        return self.f2

    @property
    def right(self) -> float:
        return self.f1


@dataclass(frozen=True)
class ChebCoeffs:
    beta02: float
    beta12: float
    beta22: float

    def __call__(self, y):
        """The interpolant sum_i beta_i2 T_i(y)."""
        return chebyshev.chebval(y, (self.beta02, self.beta12, self.beta22))


@dataclass(frozen=True)
class QuadErrorTerms:
    alpha0: float
    alpha3: float
    alpha4: float
    reduced_err1: float
    reduced_err2: float
    est_error: float


@dataclass(frozen=True)
class QuadOutcome:
    value: float
    est_error: float
    alpha0: float
    alpha3: float
    alpha4: float
    # The leading estimate with every phase made unfavourable.
    est_magnitude: float = 0.0
    # Per-factor breakdown (f1, f2) for harmonic pairs.
    factor_terms: tuple[QuadErrorTerms, ...] = ()


@dataclass(frozen=True)
class CompositeOutcome:
    value: float
    est_error: float
    est_magnitude: float
    panels: tuple[QuadOutcome, ...]


def transfer_matrix(rm: RangeMap, eta: int) -> np.ndarray:
    """[[R1, eta R2], [R2, R1]] with R_s = h g_{s,eta}(phi_c)."""
    check_eta(eta)
    g1, g2 = weight_pair(eta, rm.phi_c)
    r1, r2 = rm.h * g1, rm.h * g2
    return np.array([[r1, eta * r2], [r2, r1]])


def _knot_terms(k: KnotTriple) -> tuple[float, float]:
    rho = k.rho
    return 1.0 / rho, 2.0 + rho + 1.0 / rho


def cheb_coeffs(k: KnotTriple) -> ChebCoeffs:
    if not (math.isfinite(k.rho) and k.rho > 0):
        raise ArgumentError(f"Knot ratio must be finite and positive, got {k.rho!r}.")
    inv, mid = _knot_terms(k)
    rho = k.rho
    return ChebCoeffs(
        beta02=((3.0 - inv) * k.f0 + mid * k.f2 + (3.0 - rho) * k.f1) / 8.0,
        beta12=(k.f1 - k.f0) / 2.0,
        beta22=((1.0 + inv) * k.f0 - mid * k.f2 + (1.0 + rho) * k.f1) / 8.0,
    )


def simpson_weight_sum(k: KnotTriple) -> float:
    """(1/3)[(2 - 1/rho) f0 + (2 + rho + 1/rho) f2 + (2 - rho) f1]; the w -> 0 value of I1."""
    inv, mid = _knot_terms(k)
    return ((2.0 - inv) * k.f0 + mid * k.f2 + (2.0 - k.rho) * k.f1) / 3.0


def reduced_integrals(k: KnotTriple, lam: float, eta: int) -> tuple[float, float]:
    """
    (I1, I2) = integrals over [-1, 1] of the interpolant times g_{1,eta}(lam y)
    and g_{2,eta}(lam y), written with 0F1(5/2) and 0F1(7/2) so that no
    cancellation occurs at small lam.
    """
    _, _, f52, f72 = hyp0f1_basis(lam, eta, 7)
    i1 = simpson_weight_sum(k) * f52 + eta * lam * lam / 15.0 * (k.f0 + k.f1) * f72
    i2 = lam / 3.0 * (k.f1 - k.f0) * f52
    return i1, i2


def quad_error_estimate(
    k: KnotTriple,
    lam: float,
    eta: int,
    f3c: float,
    f4c: float,
    rm: RangeMap,
    s: int = 1,
    fc: float | None = None,
) -> QuadErrorTerms:
    """
    Leading term of exact - approximation for the s-th basic rule.

    alpha0 is the value of the interpolation error at the centre. With f(c)
    known it is computed from the samples exactly; otherwise from its Taylor
    approximation in terms of alpha3 and alpha4. It is zero when the interior
    knot sits at the centre.
    """
    h = rm.h
    alpha3 = h ** 3 * f3c / 6.0
    alpha4 = h ** 4 * f4c / 24.0

    y2 = k.y2
    if y2 == 0.0:
        alpha0 = 0.0
    elif fc is not None:
        inv, mid = _knot_terms(k)
        alpha0 = ((1.0 - inv) * k.f0 + mid * k.f2 + (1.0 - k.rho) * k.f1) / 4.0 - fc
    else:
        alpha0 = -(3.0 + k.rho) * y2 * alpha3 / 4.0 - y2 * y2 * alpha4

    _, _, f52, f72 = hyp0f1_basis(lam, eta, 7)
    err1 = -4.0 / 3.0 * ((alpha0 + alpha4) * f52 - 0.8 * alpha4 * f72)
    err2 = -4.0 / 15.0 * lam * alpha3 * f72

    row = transfer_matrix(rm, eta)[s - 1]
    est = row[0] * err1 + row[1] * err2
    return QuadErrorTerms(alpha0=alpha0, alpha3=alpha3, alpha4=alpha4,
                          reduced_err1=err1, reduced_err2=err2, est_error=float(est))


def centre_derivatives(f: RealFunction, rm: RangeMap) -> tuple[float, float]:
    """O(h**2) f'''(c) and f''''(c) from the 5-point stencil of spacing h/2."""
    step = rm.h / 2
    return (
        central_difference(f, rm.c, 3, step, order=2),
        central_difference(f, rm.c, 4, step, order=2),
    )


def _check_s(kind: WeightKind) -> int:
    if not isinstance(kind, WeightKind):
        raise ArgumentError(f"Expected a WeightKind, got {kind!r}.")
    return kind.s


def quad_basic(
    f: RealFunction,
    kind: WeightKind,
    osc: Oscillation,
    a: float,
    b: float,
    x2: float,
    f3c: float | None = None,
    f4c: float | None = None,
) -> QuadOutcome:
    s = _check_s(kind)
    rm = make_range(a, b, osc)
    knots = KnotTriple.sample(f, rm, x2)
    i1, i2 = reduced_integrals(knots, rm.lam, kind.eta)
    r = transfer_matrix(rm, kind.eta)
    value = r[s - 1, 0] * i1 + r[s - 1, 1] * i2

    if f3c is None or f4c is None:
        d3, d4 = centre_derivatives(f, rm)
        f3c = d3 if f3c is None else f3c
        f4c = d4 if f4c is None else f4c
    fc = knots.f2 if knots.y2 == 0.0 else f(rm.c)
    terms = quad_error_estimate(knots, rm.lam, kind.eta, f3c, f4c, rm, s=s, fc=fc)
    magnitude = abs(r[s - 1, 0]) * abs(terms.reduced_err1) + abs(r[s - 1, 1]) * abs(terms.reduced_err2)

    logger.debug("quad_basic %s on [%g, %g]: lambda=%g rho=%g value=%.16e est=%.3e",
                 kind.name, a, b, rm.lam, knots.rho, value, terms.est_error)
    return QuadOutcome(
        value=float(value),
        est_error=terms.est_error,
        alpha0=terms.alpha0,
        alpha3=terms.alpha3,
        alpha4=terms.alpha4,
        est_magnitude=float(magnitude),
        factor_terms=(terms,),
    )


def quad_harmonic(
    p: HarmonicPair,
    a: float,
    b: float,
    x2: float,
    centre_values: dict[int, tuple[float, float]] | None = None,
) -> QuadOutcome:
    """
    Simpson sum for f1 g_{1,eta} + f2 g_{2,eta} over [a, b].

    centre_values optionally maps factor index to (f'''(c), f''''(c)); missing
    factors get O(h**2) differences.
    """
    rm = make_range(a, b, p.osc)
    eta = p.eta
    r = transfer_matrix(rm, eta)
    r1, r2 = r[0, 0], r[1, 0]
    centre_values = centre_values or {}

    integrals = {}
    terms = {}
    for index in (1, 2):
        f = p.factor(index)
        knots = KnotTriple.sample(f, rm, x2)
        integrals[index] = reduced_integrals(knots, rm.lam, eta)
        f3c, f4c = centre_values.get(index) or centre_derivatives(f, rm)
        fc = knots.f2 if knots.y2 == 0.0 else f(rm.c)
        terms[index] = quad_error_estimate(knots, rm.lam, eta, f3c, f4c, rm, s=index, fc=fc)

    (i1_f1, i2_f1), (i1_f2, i2_f2) = integrals[1], integrals[2]
    value = (i1_f1 + i2_f2) * r1 + (i1_f2 + eta * i2_f1) * r2

    e1, e2 = terms[1], terms[2]
    est = (e1.reduced_err1 + e2.reduced_err2) * r1 + (e2.reduced_err1 + eta * e1.reduced_err2) * r2
    magnitude = (
        abs(r1) * (abs(e1.reduced_err1) + abs(e2.reduced_err2))
        + abs(r2) * (abs(e2.reduced_err1) + abs(e1.reduced_err2))
    )

    logger.debug("quad_harmonic on [%g, %g]: lambda=%g value=%.16e est=%.3e", a, b, rm.lam, value, est)
    return QuadOutcome(
        value=float(value),
        est_error=float(est),
        alpha0=e1.alpha0,
        alpha3=e1.alpha3,
        alpha4=e1.alpha4,
        est_magnitude=float(magnitude),
        factor_terms=(e1, e2),
    )


def quad_composite(
    f: RealFunction,
    kind: WeightKind,
    osc: Oscillation,
    a: float,
    b: float,
    panels: int,
) -> CompositeOutcome:
    """The basic rule summed over `panels` equal subranges, interior knots centred."""
    if isinstance(panels, bool) or not isinstance(panels, int) or panels < 1:
        raise ArgumentError(f"Panel count must be a positive integer, got {panels!r}.")
    edges = np.linspace(a, b, panels + 1)
    outcomes = []
    for left, right in zip(edges[:-1], edges[1:]):
        left, right = float(left), float(right)
        outcomes.append(quad_basic(f, kind, osc, left, right, (left + right) / 2))
    return CompositeOutcome(
        value=math.fsum(o.value for o in outcomes),
        est_error=math.fsum(o.est_error for o in outcomes),
        est_magnitude=math.fsum(o.est_magnitude for o in outcomes),
        panels=tuple(outcomes),
    )
