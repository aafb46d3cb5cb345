"""Root finding for branch-crossing equations.

The increasing branch a*tanh(a*x) and the decreasing branch b*coth(b*x)
intersect in exactly one point when a > b > 0, because their difference

    F(x) = a*tanh(a*x) - b*coth(b*x)

is strictly increasing, tends to -inf at 0+ and to a - b at +inf.  The
solver brackets the root by expansion, bisects, and finishes with a few
Newton steps using the closed-form derivative

    F'(x) = a^2*sech(a*x)^2 + b^2*csch(b*x)^2 > 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .exceptions import DomainError, NoCrossingError
from .hyperbolic import coth, csch2, sech2

RESIDUAL_SCALE = 1e-14  # target |F(x)| <= RESIDUAL_SCALE * (a + b)


@dataclass(frozen=True)
class CrossingPoint:
    """A solved intersection of an increasing and a decreasing branch."""

    a: float
    b: float
    x: float
    height: float  # common value a*tanh(a*x) = b*coth(b*x)

    @property
    def residual(self) -> float:
        return abs(_gap(self.a, self.b, self.x))


def _gap(a: float, b: float, x: float) -> float:
    return a * math.tanh(a * x) - b * coth(b * x)


def _gap_derivative(a: float, b: float, x: float) -> float:
    return a * a * sech2(a * x) + b * b * csch2(b * x)


@lru_cache(maxsize=None)
def _solve(a: float, b: float) -> CrossingPoint:
    lo = 1.0 / (2.0 * (a + b))
    for _ in range(200):
        if _gap(a, b, lo) < 0.0:
            break
        lo /= 2.0
    else:  # pragma: no cover - unreachable for a > b > 0
        raise NoCrossingError(f"no sign change below bracket for a={a}, b={b}")
    hi = 1.0
    for _ in range(200):
        if _gap(a, b, hi) > 0.0:
            break
        hi *= 2.0
    else:
        raise NoCrossingError(f"branches a={a}, b={b} do not cross")

    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if _gap(a, b, mid) < 0.0:
            lo = mid
        else:
            hi = mid

    x = 0.5 * (lo + hi)
    target = RESIDUAL_SCALE * (a + b)
    for _ in range(5):
        f = _gap(a, b, x)
        if abs(f) <= target:
            break
        step = f / _gap_derivative(a, b, x)
        x -= step
        if abs(step) <= 1e-17 * x:
            break

    return CrossingPoint(a=a, b=b, x=x, height=a * math.tanh(a * x))


def solve_crossing(a: float, b: float) -> CrossingPoint:
    """Unique positive root of a*tanh(a*x) = b*coth(b*x), for a > b > 0."""
    a = float(a)
    b = float(b)
    if not (a > 0.0 and b > 0.0) or not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError(f"frequencies must be finite and positive, got a={a}, b={b}")
    if a <= b:
        # F tends to a - b <= 0 at infinity while staying negative, no root.
        raise NoCrossingError(f"no crossing for a={a} <= b={b}")
    return _solve(a, b)


@lru_cache(maxsize=None)
def solve_t10() -> float:
    """Unique positive solution of tanh(t) = 1/t (equivalently t = coth(t))."""
    t = 1.2
    for _ in range(50):
        f = math.tanh(t) - 1.0 / t
        if f == 0.0:
            break
        step = f / (sech2(t) + 1.0 / (t * t))
        t -= step
        if abs(step) <= 1e-17 * t:
            break
    return t


@dataclass(frozen=True)
class CrossingPartials:
    """Closed-form partial derivatives of the crossing (x, height) in (a, b)."""

    dx_da: float
    dx_db: float
    du_da: float
    du_db: float


def crossing_partials(a: float, b: float) -> CrossingPartials:
    """Partials of the crossing modulus x(a,b) and height u(a,b)."""
    point = solve_crossing(a, b)
    x = point.x
    denom = a * a * sech2(a * x) + b * b * csch2(b * x)
    dx_da = (-math.tanh(a * x) - a * x * sech2(a * x)) / denom
    dx_db = (coth(b * x) - b * x * csch2(b * x)) / denom
    du_da = -b * b * csch2(b * x) * dx_da
    du_db = a * a * sech2(a * x) * dx_db
    return CrossingPartials(dx_da=dx_da, dx_db=dx_db, du_da=du_da, du_db=du_db)


@dataclass(frozen=True)
class AuxInequalities:
    """Values of the auxiliary positive quantities behind the height bounds."""

    f_val: float  # sinh(t)cosh(t) - t
    g_prime: float  # derivative of (sinh(t)cosh(t) - t) / t^2
    tanh_gap: float  # t - tanh(t)


def aux_inequalities(t: float) -> AuxInequalities:
    """Evaluate sinh*cosh - t, the derivative of its t^-2 rescaling, and t - tanh t.

    All three are strictly positive for t > 0 and vanish as t -> 0+.
    """
    t = float(t)
    if t <= 0.0:
        raise DomainError(f"t must be positive, got {t}")
    f_val = 0.5 * math.sinh(2.0 * t) - t
    g_prime = 2.0 * math.cosh(t) * (t * math.cosh(t) - math.sinh(t)) / t**3
    return AuxInequalities(f_val=f_val, g_prime=g_prime, tanh_gap=t - math.tanh(t))
