"""Suprema, critical moduli, and the inequality verification suites.

Suprema of the normalized eigenvalues over all S^1-invariant metrics reduce
to one-dimensional optimization over the conformal modulus, and every
extremum sits at a crossing of an increasing and a decreasing branch (or
escapes to infinity, for the second annulus eigenvalue).  Each closed-form
supremum here is cross-checked against a dense grid search in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .branches import (
    Branch,
    BranchKind,
    SurfaceKind,
    lambda_bar,
    mu_bar,
    sigma_bar,
    sigma_bar_grid,
    spectrum,
)
from .crossings import solve_crossing, solve_t10
from .exceptions import DomainError

# Largest modulus on the default search grid.  Past T ~ 19 the even annulus
# branch saturates to exactly 4*pi in double precision, which would make the
# strict inequality sigma_bar_2 < 4*pi vacuously fail at float resolution.
GRID_T_MIN = 1e-2
GRID_T_MAX = 18.0
GRID_POINTS = 10**4

# Step for the one-sided slope classification of critical moduli.
CHARACTER_STEP = 1e-4


class Character(Enum):
    LOCAL_MAX = "local_max"
    LOCAL_MIN = "local_min"


@dataclass(frozen=True)
class SupremumResult:
    kind: SurfaceKind
    j: int
    value: float
    attained: bool
    attaining_modulus: float | None


@dataclass(frozen=True)
class CriticalMetric:
    kind: SurfaceKind
    modulus: float
    branches: tuple[Branch, ...]
    value: float
    character: Character
    eigen_multiplicity: int
    indices: tuple[int, ...]  # eigenvalue indices j for which T is critical


def default_grid(n: int = GRID_POINTS) -> np.ndarray:
    return np.geomspace(GRID_T_MIN, GRID_T_MAX, n)


def grid_supremum(
    kind: SurfaceKind, j: int, grid: np.ndarray | None = None, refine: bool = True
) -> tuple[float, float]:
    """(max value, argmax modulus) of sigma_bar_j over a log-spaced grid.

    The maximum sits at a kink (two branches crossing), so a single pass only
    locates it to first order in the grid spacing; a second linear pass over
    the bracketing coarse cells recovers ~1e-7 relative accuracy.
    """
    if grid is None:
        grid = default_grid()
    values = sigma_bar_grid(kind, j, grid)[j - 1]
    i = int(np.argmax(values))
    if refine:
        lo = grid[max(i - 3, 0)]
        hi = grid[min(i + 3, len(grid) - 1)]
        fine = np.linspace(lo, hi, GRID_POINTS)
        values = sigma_bar_grid(kind, j, fine)[j - 1]
        i = int(np.argmax(values))
        return float(values[i]), float(fine[i])
    return float(values[i]), float(grid[i])


def sup_sigma_mobius(j: int) -> SupremumResult:
    """Supremum of the j-th Mobius eigenvalue; always attained, at T_{k,1}."""
    j = int(j)
    if j < 1:
        raise DomainError(f"eigenvalue index must be >= 1, got {j}")
    k = (j + 1) // 2
    point = solve_crossing(2.0 * k, 1.0)
    return SupremumResult(
        kind=SurfaceKind.MOBIUS_BAND,
        j=j,
        value=2.0 * math.pi * point.height,
        attained=True,
        attaining_modulus=point.x,
    )


def sup_sigma_annulus(j: int) -> SupremumResult:
    """Supremum of the j-th annulus eigenvalue.

    Odd j = 2k-1: attained at the linear/even crossing T = t10/k with value
    4*pi*k/t10.  j = 2: the even branch increases to 4*pi but never reaches
    it.  Even j = 2k > 2: attained at the even/odd crossing t_{k,1}.
    """
    j = int(j)
    if j < 1:
        raise DomainError(f"eigenvalue index must be >= 1, got {j}")
    t10 = solve_t10()
    if j % 2 == 1:
        k = (j + 1) // 2
        return SupremumResult(
            kind=SurfaceKind.ANNULUS,
            j=j,
            value=4.0 * math.pi * k / t10,
            attained=True,
            attaining_modulus=t10 / k,
        )
    k = j // 2
    if k == 1:
        return SupremumResult(
            kind=SurfaceKind.ANNULUS,
            j=2,
            value=4.0 * math.pi,
            attained=False,
            attaining_modulus=None,
        )
    point = solve_crossing(float(k), 1.0)
    return SupremumResult(
        kind=SurfaceKind.ANNULUS,
        j=j,
        value=4.0 * math.pi * point.height,
        attained=True,
        attaining_modulus=point.x,
    )


def _classify(kind: SurfaceKind, j: int, T0: float) -> Character | None:
    """Character of sigma_bar_j at T0 from one-sided finite differences."""
    d = CHARACTER_STEP
    v_left = sigma_bar(kind, j, T0 - d)
    v_mid = sigma_bar(kind, j, T0)
    v_right = sigma_bar(kind, j, T0 + d)
    slope_l = (v_mid - v_left) / d
    slope_r = (v_right - v_mid) / d
    tol = 1e-6 * max(abs(v_mid), 1.0)
    if slope_l > tol and slope_r < -tol:
        return Character.LOCAL_MAX
    if slope_l < -tol and slope_r > tol:
        return Character.LOCAL_MIN
    return None


def _critical_indices(kind: SurfaceKind, modulus: float, value: float) -> dict[Character, list[int]]:
    """Scan which eigenvalue indices are critical at a crossing modulus."""
    # only indices whose eigenvalue equals the crossing value can be critical
    count = 4
    hit = None
    while hit is None:
        for entry in spectrum(kind, modulus, count):
            if abs(entry.value - value) <= 1e-8 * max(value, 1.0):
                hit = entry
                break
        else:
            if count > 4096:  # pragma: no cover - defensive
                raise RuntimeError("crossing value not found in spectrum")
            count *= 4
    found: dict[Character, list[int]] = {Character.LOCAL_MAX: [], Character.LOCAL_MIN: []}
    for j in range(hit.index_range[0], hit.index_range[1] + 1):
        character = _classify(kind, j, modulus)
        if character is not None:
            found[character].append(j)
    return found


def critical_set(kind: SurfaceKind, max_mode: int) -> list[CriticalMetric]:
    """All critical moduli with modes up to max_mode, with classifications.

    Mobius: every even/odd crossing T_{k,l}, l <= k <= max_mode, carries a
    multiplicity-4 eigenspace.  Annulus: even/odd crossings t_{m,n} with
    n < m <= max_mode (multiplicity 4) plus the linear/even crossings at
    T = t10/m (multiplicity 3).
    """
    max_mode = int(max_mode)
    if max_mode < 1:
        raise DomainError(f"max_mode must be >= 1, got {max_mode}")
    results: list[CriticalMetric] = []

    def emit(modulus, branches, value, eigen_multiplicity):
        by_char = _critical_indices(kind, modulus, value)
        for character, indices in by_char.items():
            if indices:
                results.append(
                    CriticalMetric(
                        kind=kind,
                        modulus=modulus,
                        branches=branches,
                        value=value,
                        character=character,
                        eigen_multiplicity=eigen_multiplicity,
                        indices=tuple(indices),
                    )
                )

    if kind is SurfaceKind.MOBIUS_BAND:
        for k in range(1, max_mode + 1):
            for l in range(1, k + 1):
                point = solve_crossing(2.0 * k, 2.0 * l - 1.0)
                branches = (
                    Branch(BranchKind.EVEN_HYPERBOLIC, 2 * k),
                    Branch(BranchKind.ODD_HYPERBOLIC, 2 * l - 1),
                )
                emit(point.x, branches, 2.0 * math.pi * point.height, 4)
    else:
        t10 = solve_t10()
        for m in range(1, max_mode + 1):
            branches = (
                Branch(BranchKind.LINEAR, 0),
                Branch(BranchKind.EVEN_HYPERBOLIC, m),
            )
            emit(t10 / m, branches, 4.0 * math.pi * m / t10, 3)
        for m in range(2, max_mode + 1):
            for n in range(1, m):
                point = solve_crossing(float(m), float(n))
                branches = (
                    Branch(BranchKind.EVEN_HYPERBOLIC, m),
                    Branch(BranchKind.ODD_HYPERBOLIC, n),
                )
                emit(point.x, branches, 4.0 * math.pi * point.height, 4)
    return results


@dataclass(frozen=True)
class InequalityRecord:
    label: str
    lhs: float
    rhs: float

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs


def verify_first_intersection_max(max_mode: int) -> list[InequalityRecord]:
    """Check that crossing heights increase along antidiagonals of the lattice.

    For all integers k >= l > c > 0 with k + c <= max_mode, the even-branch
    value at T_{k,l} is strictly below the value at T_{k+c,l-c}.
    """
    records = []
    for k in range(1, max_mode + 1):
        for l in range(1, k + 1):
            for c in range(1, l):
                if k + c > max_mode:
                    continue
                lhs = lambda_bar(
                    SurfaceKind.MOBIUS_BAND, k, solve_crossing(2.0 * k, 2.0 * l - 1.0).x
                )
                rhs = lambda_bar(
                    SurfaceKind.MOBIUS_BAND,
                    k + c,
                    solve_crossing(2.0 * (k + c), 2.0 * (l - c) - 1.0).x,
                )
                records.append(
                    InequalityRecord(label=f"k={k},l={l},c={c}", lhs=lhs, rhs=rhs)
                )
    return records


@dataclass(frozen=True)
class NoAsymptoteRecord:
    k: int
    limit_value: float  # even-branch limit at half the mode
    crossing_value: float  # even-branch value at its first crossing
    t_k: float  # solution of 2k*tanh(2kt) = 1/t
    t_k1: float  # first crossing modulus

    @property
    def margin(self) -> float:
        return self.crossing_value - self.limit_value


def verify_no_asymptote(max_even: int) -> list[NoAsymptoteRecord]:
    """For even k, the supremum at the first crossing beats the half-mode limit.

    Also replays the intermediate comparison point: T_k defined by
    2k*tanh(2k*T_k) = 1/T_k satisfies 2k*T_k = t10 and T_k < T_{k,1}.
    """
    t10 = solve_t10()
    records = []
    for k in range(2, max_even + 1, 2):
        t_k1 = solve_crossing(2.0 * k, 1.0).x
        t_k = t10 / (2.0 * k)
        records.append(
            NoAsymptoteRecord(
                k=k,
                limit_value=2.0 * math.pi * k,
                crossing_value=lambda_bar(SurfaceKind.MOBIUS_BAND, k, t_k1),
                t_k=t_k,
                t_k1=t_k1,
            )
        )
    return records


def mobius_supremum_consistency(k: int) -> tuple[float, float, float]:
    """The supremum value through three routes: closed form, even and odd branch."""
    point = solve_crossing(2.0 * k, 1.0)
    return (
        2.0 * math.pi * point.height,
        lambda_bar(SurfaceKind.MOBIUS_BAND, k, point.x),
        mu_bar(SurfaceKind.MOBIUS_BAND, 1, point.x),
    )


def annulus_even_supremum_report(k: int) -> dict[str, float]:
    """Both readings of the even-index annulus supremum for k > 1.

    The crossing identity forces value = 4*pi*k*tanh(k*t_{k,1}) which equals
    4*pi*coth(t_{k,1}); the halved-argument variant is recorded alongside for
    comparison (the discrete oracle arbitrates in the tests).
    """
    point = solve_crossing(float(k), 1.0)
    t = point.x
    return {
        "modulus": t,
        "crossing_value": 4.0 * math.pi * point.height,
        "even_branch_value": 4.0 * math.pi * k * math.tanh(k * t),
        "odd_branch_value": float(4.0 * math.pi * (1.0 / math.tanh(t))),
        "halved_argument_variant": 4.0 * math.pi * k * math.tanh(0.5 * k * t),
    }
