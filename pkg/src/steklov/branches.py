"""Closed-form normalized Steklov eigenvalue branches.

On the flat cylinder [-T, T] x S^1 separation of variables gives harmonic
functions alpha(t)*beta(theta) with alpha in {cosh(kt), sinh(kt), t, 1}.
Each profile yields one eigenvalue branch as a function of the conformal
modulus T; normalizing by total boundary length removes the conformal
factor entirely, so the branches below are functions of T alone.

Mobius band (quotient by (t, theta) ~ (-t, theta + pi)):
    even branch   4*pi*k * tanh(2kT)        theta-frequency 2k
    odd branch    2*pi*(2l-1) * coth((2l-1)T)  theta-frequency 2l-1
Annulus (no quotient, two boundary circles, length 4*pi*f(T)):
    even branch   4*pi*k * tanh(kT)
    odd branch    4*pi*n * coth(nT)
    linear branch 4*pi / T                  (profile t, frequency 0)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .crossings import solve_crossing
from .exceptions import DomainError, UnsupportedBranchError
from .hyperbolic import coth

# Relative tolerance under which two branch values at the same modulus are
# treated as a genuine crossing and merged into one spectrum entry.  The
# crossing solver locates moduli to ~1e-14, so this cleanly separates true
# crossings from near-misses.
MERGE_RTOL = 1e-9


class SurfaceKind(Enum):
    ANNULUS = "annulus"
    MOBIUS_BAND = "mobius"


class BranchKind(Enum):
    EVEN_HYPERBOLIC = "even_hyperbolic"  # cosh profile, increasing in T
    ODD_HYPERBOLIC = "odd_hyperbolic"  # sinh profile, decreasing in T
    LINEAR = "linear"  # profile t, annulus only


@dataclass(frozen=True)
class Branch:
    """One separated-variables eigenvalue family: parity plus Fourier mode."""

    kind: BranchKind
    mode: int  # Fourier frequency in theta; 0 for the linear branch

    @property
    def multiplicity(self) -> int:
        return 1 if self.kind is BranchKind.LINEAR else 2

    def label(self) -> str:
        return f"{self.kind.value}:{self.mode}"


@dataclass(frozen=True)
class EigenvalueEntry:
    """One entry of the ordered spectrum, possibly a merged crossing."""

    value: float
    branches: tuple[Branch, ...]
    index_range: tuple[int, int]  # positions occupied, counting multiplicity

    @property
    def branch(self) -> Branch:
        return self.branches[0]

    @property
    def multiplicity(self) -> int:
        return self.index_range[1] - self.index_range[0] + 1


def _check_modulus(T: float) -> float:
    T = float(T)
    if math.isnan(T) or T <= 0.0:
        raise DomainError(f"conformal modulus must be positive, got {T}")
    return T


def _check_mode(k) -> int:
    if k != int(k) or k < 1:
        raise DomainError(f"mode index must be a positive integer, got {k}")
    return int(k)


def lambda_bar(kind: SurfaceKind, mode_index: int, T: float):
    """Even (cosh-profile) normalized eigenvalue; increasing in T."""
    k = _check_mode(mode_index)
    T = _check_modulus(T)
    if math.isinf(T):
        return 4.0 * math.pi * k
    freq = 2 * k if kind is SurfaceKind.MOBIUS_BAND else k
    return 4.0 * math.pi * k * math.tanh(freq * T)


def mu_bar(kind: SurfaceKind, mode_index: int, T: float):
    """Odd (sinh-profile) normalized eigenvalue; decreasing in T, +inf at 0+."""
    l = _check_mode(mode_index)
    T = _check_modulus(T)
    if kind is SurfaceKind.MOBIUS_BAND:
        freq = 2 * l - 1
        scale = 2.0 * math.pi * freq
    else:
        freq = l
        scale = 4.0 * math.pi * l
    if math.isinf(T):
        return scale
    return scale * coth(freq * T)


def nu_bar(T: float, kind: SurfaceKind = SurfaceKind.ANNULUS):
    """Linear-profile normalized eigenvalue 4*pi/T; annulus only."""
    if kind is SurfaceKind.MOBIUS_BAND:
        raise UnsupportedBranchError("the Mobius band has no linear branch")
    T = _check_modulus(T)
    if math.isinf(T):
        return 0.0
    return 4.0 * math.pi / T


def branch_value(kind: SurfaceKind, branch: Branch, T: float) -> float:
    """Evaluate a Branch descriptor at modulus T."""
    if branch.kind is BranchKind.LINEAR:
        return nu_bar(T, kind)
    if branch.kind is BranchKind.EVEN_HYPERBOLIC:
        k = branch.mode // 2 if kind is SurfaceKind.MOBIUS_BAND else branch.mode
        return lambda_bar(kind, k, T)
    l = (branch.mode + 1) // 2 if kind is SurfaceKind.MOBIUS_BAND else branch.mode
    return mu_bar(kind, l, T)


def _even_branch(kind: SurfaceKind, k: int) -> Branch:
    mode = 2 * k if kind is SurfaceKind.MOBIUS_BAND else k
    return Branch(BranchKind.EVEN_HYPERBOLIC, mode)


def _odd_branch(kind: SurfaceKind, l: int) -> Branch:
    mode = 2 * l - 1 if kind is SurfaceKind.MOBIUS_BAND else l
    return Branch(BranchKind.ODD_HYPERBOLIC, mode)


def spectrum(kind: SurfaceKind, T: float, count: int) -> list[EigenvalueEntry]:
    """First `count` nonzero normalized eigenvalues, merged at crossings.

    Enough modes are scanned that the smallest unscanned branch value exceeds
    the returned maximum; both hyperbolic branch values grow without bound in
    the mode at fixed T, so the scan always terminates.
    """
    T = _check_modulus(T)
    if math.isinf(T):
        raise DomainError("spectrum requires a finite modulus")
    count = int(count)
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")

    candidates: list[tuple[float, Branch]] = []
    if kind is SurfaceKind.ANNULUS:
        candidates.append((nu_bar(T), Branch(BranchKind.LINEAR, 0)))

    m = 0
    while True:
        m += 1
        candidates.append((lambda_bar(kind, m, T), _even_branch(kind, m)))
        candidates.append((mu_bar(kind, m, T), _odd_branch(kind, m)))
        total = sum(2 if b.kind is not BranchKind.LINEAR else 1 for _, b in candidates)
        if total >= count:
            values = sorted(
                v for v, b in candidates for _ in range(b.multiplicity)
            )
            kth = values[count - 1]
            unscanned = min(lambda_bar(kind, m + 1, T), mu_bar(kind, m + 1, T))
            if unscanned > kth:
                break
        if m > 100000:  # pragma: no cover - defensive
            raise RuntimeError("mode scan failed to terminate")

    candidates.sort(key=lambda vb: vb[0])
    entries: list[EigenvalueEntry] = []
    position = 1
    i = 0
    while i < len(candidates) and position <= count:
        value, branch = candidates[i]
        group = [branch]
        j = i + 1
        while j < len(candidates) and _coincide(value, candidates[j][0]):
            group.append(candidates[j][1])
            j += 1
        mult = sum(b.multiplicity for b in group)
        entries.append(
            EigenvalueEntry(
                value=value,
                branches=tuple(group),
                index_range=(position, position + mult - 1),
            )
        )
        position += mult
        i = j
    return entries


def _coincide(v1: float, v2: float) -> bool:
    scale = max(abs(v1), abs(v2), 1.0)
    return abs(v1 - v2) <= MERGE_RTOL * scale


def sigma_bar(kind: SurfaceKind, j: int, T: float) -> float:
    """The j-th nonzero normalized eigenvalue, counted with multiplicity."""
    j = int(j)
    if j < 1:
        raise DomainError(f"eigenvalue index must be >= 1, got {j}")
    for entry in spectrum(kind, T, j):
        if entry.index_range[0] <= j <= entry.index_range[1]:
            return entry.value
    raise RuntimeError("spectrum did not cover the requested index")  # pragma: no cover


def sigma_bar_grid(kind: SurfaceKind, j_max: int, T) -> np.ndarray:
    """Vectorized sigma_bar for j = 1..j_max over an array of moduli.

    Returns an array of shape (j_max, len(T)).  Used as an independent
    grid-search route; raises if the mode cutoff could have missed a value.
    """
    T = np.asarray(T, dtype=float)
    if np.any(T <= 0.0) or not np.all(np.isfinite(T)):
        raise DomainError("moduli must be positive and finite")
    j_max = int(j_max)
    n_modes = j_max + 2
    rows = []
    if kind is SurfaceKind.ANNULUS:
        rows.append(4.0 * math.pi / T)
    for m in range(1, n_modes + 1):
        if kind is SurfaceKind.MOBIUS_BAND:
            lam = 4.0 * math.pi * m * np.tanh(2 * m * T)
            mus = 2.0 * math.pi * (2 * m - 1) * coth((2 * m - 1) * T)
        else:
            lam = 4.0 * math.pi * m * np.tanh(m * T)
            mus = 4.0 * math.pi * m * coth(m * T)
        rows.extend([lam, lam, mus, mus])
    stacked = np.sort(np.vstack(rows), axis=0)
    out = stacked[:j_max]
    # completeness: the smallest omitted branch values must exceed row j_max
    m = n_modes + 1
    if kind is SurfaceKind.MOBIUS_BAND:
        omitted = np.minimum(
            4.0 * math.pi * m * np.tanh(2 * m * T),
            2.0 * math.pi * (2 * m - 1) * coth((2 * m - 1) * T),
        )
    else:
        omitted = np.minimum(
            4.0 * math.pi * m * np.tanh(m * T), 4.0 * math.pi * m * coth(m * T)
        )
    if not np.all(omitted > out[-1]):  # pragma: no cover - cutoff is generous
        raise RuntimeError("mode cutoff too small for requested j_max")
    return out


def mobius_crossing_modulus(k: int, l: int) -> float:
    """Modulus where the k-th even and l-th odd Mobius branches meet (l <= k).

    Returns +inf when k < l (no crossing) and 0 for l = 0, matching the
    endpoint conventions of the interval decomposition.
    """
    if l == 0:
        return 0.0
    if k < l:
        return math.inf
    return solve_crossing(2.0 * k, 2.0 * l - 1.0).x


def sigma_bar_piecewise_mobius(j: int, T: float) -> tuple[float, Branch]:
    """Identify which branch carries the j-th Mobius eigenvalue at modulus T.

    The pair sigma_bar(2k-1) = sigma_bar(2k) with k = ceil(j/2) follows the
    k-th even branch until its first crossing, then alternates between odd
    and even branches across the crossing lattice; the case analysis below
    walks the interval decomposition of (0, inf) by those crossing moduli.
    """
    j = int(j)
    if j < 1:
        raise DomainError(f"eigenvalue index must be >= 1, got {j}")
    T = _check_modulus(T)
    kind = SurfaceKind.MOBIUS_BAND
    k = (j + 1) // 2
    s = k // 2
    for jj in range(s + 1):
        if T < mobius_crossing_modulus(k - jj, jj + 1):
            return lambda_bar(kind, k - jj, T), _even_branch(kind, k - jj)
        if T < mobius_crossing_modulus(k - jj - 1, jj + 1):
            return mu_bar(kind, jj + 1, T), _odd_branch(kind, jj + 1)
    raise RuntimeError("interval decomposition did not cover T")  # pragma: no cover
