"""Explicit free boundary minimal immersions and their pointwise checks.

Three closed-form families, each parametrized on [-T*, T*] x S^1 and scaled
so the boundary lands on the unit sphere:

  * catenoid-type annuli in B^3:
        (cosh(nt)cos(n th), cosh(nt)sin(n th), n t) / r
    with n*T* equal to the root of tanh(s) = 1/s;
  * annuli in B^4 for integer m > n >= 1:
        (m sinh(nt)cos(n th), m sinh(nt)sin(n th),
         n cosh(mt)cos(m th), n cosh(mt)sin(m th)) / r
    with T* the root of m*tanh(mt) = n*coth(nt);
  * Mobius bands in B^4: the same four-component map with m even and n odd,
    which descends through the identification (t, th) ~ (-t, th + pi).

Every identity used to certify these surfaces (conformality, harmonicity,
unit boundary norm, boundary orthogonality, vanishing total stress-energy,
and the vanishing of the summed eigenvalue-perturbation form) is evaluated
numerically on grids here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .crossings import solve_crossing, solve_t10
from .exceptions import ConstraintError, DomainError, ParameterError


class FamilyKind(Enum):
    CATENOID_B3 = "catenoid"
    ANNULUS_B4 = "annulus"
    MOBIUS_B4 = "mobius"


@dataclass(frozen=True)
class ImmersionFamily:
    family: FamilyKind
    m: int  # cosh-profile frequency (unused for the catenoid)
    n: int  # sinh-profile frequency; winding number for the catenoid
    T_star: float
    radius: float
    ambient_dim: int

    @property
    def is_quotient(self) -> bool:
        return self.family is FamilyKind.MOBIUS_B4


def catenoid_b3(n: int) -> ImmersionFamily:
    n = int(n)
    if n < 1:
        raise ParameterError(f"winding number must be >= 1, got {n}")
    t10 = solve_t10()
    radius = math.sqrt(t10 * t10 + math.cosh(t10) ** 2)
    return ImmersionFamily(
        family=FamilyKind.CATENOID_B3,
        m=0,
        n=n,
        T_star=t10 / n,
        radius=radius,
        ambient_dim=3,
    )


def annulus_b4(m: int, n: int) -> ImmersionFamily:
    m, n = int(m), int(n)
    if not m > n >= 1:
        raise ParameterError(f"need m > n >= 1, got m={m}, n={n}")
    return _b4_family(FamilyKind.ANNULUS_B4, m, n)


def mobius_b4(m: int, n: int) -> ImmersionFamily:
    m, n = int(m), int(n)
    if m % 2 != 0 or n % 2 != 1:
        raise ParameterError(f"need m even and n odd, got m={m}, n={n}")
    if not m > n >= 1:
        raise ParameterError(f"need m > n >= 1, got m={m}, n={n}")
    return _b4_family(FamilyKind.MOBIUS_B4, m, n)


def _b4_family(kind: FamilyKind, m: int, n: int) -> ImmersionFamily:
    t_star = solve_crossing(float(m), float(n)).x
    radius = math.sqrt(
        m * m * math.sinh(n * t_star) ** 2 + n * n * math.cosh(m * t_star) ** 2
    )
    return ImmersionFamily(
        family=kind, m=m, n=n, T_star=t_star, radius=radius, ambient_dim=4
    )


def make_family(family: FamilyKind, m: int | None = None, n: int | None = None) -> ImmersionFamily:
    if family is FamilyKind.CATENOID_B3:
        if n is None:
            raise ParameterError("catenoid family requires n")
        return catenoid_b3(n)
    if m is None or n is None:
        raise ParameterError("four-dimensional families require m and n")
    if family is FamilyKind.ANNULUS_B4:
        return annulus_b4(m, n)
    return mobius_b4(m, n)


def evaluate(fam: ImmersionFamily, t, theta, check_domain: bool = True):
    """Position and first derivatives of the immersion, broadcast over grids.

    Returns (u, du_dt, du_dtheta), each with a trailing axis of length
    ambient_dim.
    """
    t = np.asarray(t, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if check_domain and np.any(np.abs(t) > fam.T_star * (1.0 + 1e-12)):
        raise DomainError(f"|t| must not exceed T* = {fam.T_star}")
    t, theta = np.broadcast_arrays(t, theta)
    r = fam.radius
    if fam.family is FamilyKind.CATENOID_B3:
        n = fam.n
        ch, sh = np.cosh(n * t), np.sinh(n * t)
        c, s = np.cos(n * theta), np.sin(n * theta)
        u = np.stack([ch * c, ch * s, n * t], axis=-1) / r
        ut = np.stack([n * sh * c, n * sh * s, np.full_like(t, float(n))], axis=-1) / r
        uth = np.stack([-n * ch * s, n * ch * c, np.zeros_like(t)], axis=-1) / r
        return u, ut, uth
    m, n = fam.m, fam.n
    shn, chn = np.sinh(n * t), np.cosh(n * t)
    shm, chm = np.sinh(m * t), np.cosh(m * t)
    cn, sn = np.cos(n * theta), np.sin(n * theta)
    cm, sm = np.cos(m * theta), np.sin(m * theta)
    u = np.stack([m * shn * cn, m * shn * sn, n * chm * cm, n * chm * sm], axis=-1) / r
    mn = m * n
    ut = np.stack([mn * chn * cn, mn * chn * sn, mn * shm * cm, mn * shm * sm], axis=-1) / r
    uth = np.stack(
        [-mn * shn * sn, mn * shn * cn, -mn * chm * sm, mn * chm * cm], axis=-1
    ) / r
    return u, ut, uth


def boundary_eigenvalue_factor(fam: ImmersionFamily) -> float:
    """Scalar c with du/dt = c*u on the t = T* boundary circle."""
    if fam.family is FamilyKind.CATENOID_B3:
        return fam.n * math.tanh(fam.n * fam.T_star)
    return fam.m * math.tanh(fam.m * fam.T_star)


@dataclass(frozen=True)
class IdentityReport:
    conformal_residual: float
    harmonic_residual: float
    harmonic_order: float
    boundary_norm_residual: float
    free_boundary_angle: float
    stress_energy_residual: float
    boundary_factor_deviation: float


def verify_identities(fam: ImmersionFamily, n_t: int = 200, n_theta: int = 400) -> IdentityReport:
    """Evaluate every pointwise certification identity on a parameter grid."""
    T = fam.T_star
    t = np.linspace(-T, T, n_t)
    theta = np.linspace(0.0, 2.0 * math.pi, n_theta, endpoint=False)
    tt = t[:, None]
    th = theta[None, :]
    u, ut, uth = evaluate(fam, tt, th)

    cross = np.einsum("...i,...i->...", ut, uth)
    norm_t = np.einsum("...i,...i->...", ut, ut)
    norm_th = np.einsum("...i,...i->...", uth, uth)
    conformal = float(np.max(np.abs(cross) + np.abs(norm_t - norm_th)))
    stress = float(np.max(np.abs(norm_t - norm_th)) + np.max(np.abs(cross)))

    ub, utb, _ = evaluate(fam, np.array([[-T], [T]]), th)
    norms = np.linalg.norm(ub, axis=-1)
    boundary_norm = float(np.max(np.abs(norms - 1.0)))

    unit = ub / norms[..., None]
    proj = np.einsum("...i,...i->...", utb, unit)[..., None] * unit
    rejection = np.linalg.norm(utb - proj, axis=-1)
    angle = float(np.max(rejection / np.linalg.norm(utb, axis=-1)))

    c = boundary_eigenvalue_factor(fam)
    factor_dev = float(np.max(np.linalg.norm(utb - c * ub * np.array([[-1.0], [1.0]])[..., None], axis=-1)))

    res_h = _fd_laplacian_residual(fam, T / 512.0)
    res_h2 = _fd_laplacian_residual(fam, T / 1024.0)
    order = math.log2(res_h / res_h2) if res_h2 > 0 else math.inf

    return IdentityReport(
        conformal_residual=conformal,
        harmonic_residual=res_h,
        harmonic_order=order,
        boundary_norm_residual=boundary_norm,
        free_boundary_angle=angle,
        stress_energy_residual=stress,
        boundary_factor_deviation=factor_dev,
    )


def _fd_laplacian_residual(fam: ImmersionFamily, h: float, n_samples: int = 40) -> float:
    """Max flat 5-point Laplacian of the components over interior samples."""
    T = fam.T_star
    t = np.linspace(-T + 2 * h, T - 2 * h, n_samples)[:, None]
    th = np.linspace(0.0, 2.0 * math.pi, n_samples, endpoint=False)[None, :]

    def pos(dt, dth):
        return evaluate(fam, t + dt, th + dth, check_domain=False)[0]

    lap = (
        pos(h, 0.0) + pos(-h, 0.0) + pos(0.0, h) + pos(0.0, -h) - 4.0 * pos(0.0, 0.0)
    ) / (h * h)
    return float(np.max(np.abs(lap)))


Component = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class QFormSample:
    """A symmetric 2-tensor variation h, given by its three flat components."""

    h_tt: Component
    h_ttheta: Component
    h_thetatheta: Component


def _grids(fam: ImmersionFamily, n_t: int, n_theta: int):
    if n_t % 2 == 0:
        n_t += 1  # Simpson weights need an odd node count
    T = fam.T_star
    t = np.linspace(-T, T, n_t)
    theta = np.linspace(0.0, 2.0 * math.pi, n_theta, endpoint=False)
    wt = np.ones(n_t)
    wt[1:-1:2] = 4.0
    wt[2:-1:2] = 2.0
    wt *= (t[1] - t[0]) / 3.0
    wth = 2.0 * math.pi / n_theta
    return t, theta, wt, wth


def boundary_constraint_residual(
    fam: ImmersionFamily, sample: QFormSample, n_theta: int = 512
) -> float:
    """Integral of h evaluated on the unit boundary tangent, over the boundary."""
    theta = np.linspace(0.0, 2.0 * math.pi, n_theta, endpoint=False)
    wth = 2.0 * math.pi / n_theta
    total = 0.0
    for t_side in (-fam.T_star, fam.T_star):
        tt = np.full_like(theta, t_side)
        _, ut, _ = evaluate(fam, tt, theta)
        f = np.sqrt(np.einsum("...i,...i->...", ut, ut))
        total += float(np.sum(sample.h_thetatheta(tt, theta) / f) * wth)
    return total


def q_form_components(
    fam: ImmersionFamily,
    sample: QFormSample,
    n_t: int = 201,
    n_theta: int = 256,
    constraint_tol: float = 1e-8,
) -> np.ndarray:
    """Eigenvalue-perturbation quadratic form of each coordinate function.

    The form pairs the stress-energy tensor of each component with the
    variation h over the interior and adds the boundary term weighted by the
    Steklov eigenvalue of the induced metric; for an admissible h the sum
    over components must vanish.
    """
    residual = boundary_constraint_residual(fam, sample)
    scale = _constraint_scale(fam, sample)
    if abs(residual) > constraint_tol * (scale + 1.0):
        raise ConstraintError(
            f"variation violates the boundary length constraint: {residual:.3e}"
        )

    t, theta, wt, wth = _grids(fam, n_t, n_theta)
    tt = t[:, None]
    th = theta[None, :]
    u, ut, uth = evaluate(fam, tt, th)
    f2 = np.einsum("...i,...i->...", ut, ut)  # conformal factor squared

    h_tt = np.broadcast_to(sample.h_tt(tt, th), f2.shape)
    h_tth = np.broadcast_to(sample.h_ttheta(tt, th), f2.shape)
    h_thth = np.broadcast_to(sample.h_thetatheta(tt, th), f2.shape)

    tau_tt = 0.5 * (ut**2 - uth**2)  # per-component stress-energy, flat frame
    tau_tth = ut * uth

    integrand = (
        tau_tt * h_tt[..., None]
        + 2.0 * tau_tth * h_tth[..., None]
        - tau_tt * h_thth[..., None]
    ) / f2[..., None]
    interior = (wt[:, None, None] * integrand).sum(axis=(0, 1)) * wth

    # eigenvalue of the induced metric (equals 1 for these unit-ball surfaces)
    c = boundary_eigenvalue_factor(fam)
    ut_b = evaluate(fam, fam.T_star, 0.0)[1]
    sigma = c / float(np.linalg.norm(ut_b))

    boundary = np.zeros(fam.ambient_dim)
    for t_side in (-fam.T_star, fam.T_star):
        tb = np.full_like(theta, t_side)
        ub, utb, _ = evaluate(fam, tb, theta)
        fb = np.sqrt(np.einsum("...i,...i->...", utb, utb))
        weight = np.asarray(sample.h_thetatheta(tb, theta) / fb)
        boundary += np.einsum("j,ji->i", np.broadcast_to(weight, theta.shape), ub**2) * wth

    return -interior - 0.5 * sigma * boundary


def q_form_sum(
    fam: ImmersionFamily,
    sample: QFormSample,
    n_t: int = 201,
    n_theta: int = 256,
    constraint_tol: float = 1e-8,
) -> float:
    return float(np.sum(q_form_components(fam, sample, n_t, n_theta, constraint_tol)))


def _constraint_scale(fam: ImmersionFamily, sample: QFormSample, n_theta: int = 512) -> float:
    theta = np.linspace(0.0, 2.0 * math.pi, n_theta, endpoint=False)
    wth = 2.0 * math.pi / n_theta
    total = 0.0
    for t_side in (-fam.T_star, fam.T_star):
        tt = np.full_like(theta, t_side)
        _, ut, _ = evaluate(fam, tt, theta)
        f = np.sqrt(np.einsum("...i,...i->...", ut, ut))
        total += float(np.sum(np.abs(sample.h_thetatheta(tt, theta)) / f) * wth)
    return total


def make_admissible(fam: ImmersionFamily, sample: QFormSample) -> QFormSample:
    """Project a variation onto the fixed-boundary-length constraint.

    Subtracts a multiple of the induced metric, which leaves the interior
    pairing unchanged (the stress-energy tensor is trace-free) and shifts the
    boundary integral to zero.
    """
    numerator = boundary_constraint_residual(fam, sample)
    theta = np.linspace(0.0, 2.0 * math.pi, 512, endpoint=False)
    wth = 2.0 * math.pi / 512
    denom = 0.0
    for t_side in (-fam.T_star, fam.T_star):
        tt = np.full_like(theta, t_side)
        _, ut, _ = evaluate(fam, tt, theta)
        denom += float(np.sum(np.sqrt(np.einsum("...i,...i->...", ut, ut))) * wth)
    alpha = numerator / denom

    def f2_of(t, th):
        _, ut, _ = evaluate(fam, t, th, check_domain=False)
        return np.einsum("...i,...i->...", ut, ut)

    return QFormSample(
        h_tt=lambda t, th: sample.h_tt(t, th) - alpha * f2_of(t, th),
        h_ttheta=sample.h_ttheta,
        h_thetatheta=lambda t, th: sample.h_thetatheta(t, th) - alpha * f2_of(t, th),
    )


@dataclass(frozen=True)
class InjectivityReport:
    injective: bool
    covering_degree: int
    min_image_separation: float
    threshold: float


def covering_degree(fam: ImmersionFamily) -> int:
    if fam.family is FamilyKind.CATENOID_B3:
        return fam.n
    return math.gcd(fam.m, fam.n)


def injectivity_scan(
    fam: ImmersionFamily,
    n_t: int = 48,
    n_theta: int = 96,
    separation_tol: float = 0.1,
) -> InjectivityReport:
    """Grid-scale injectivity check, with covering detection for gcd > 1.

    When the mode pair shares a factor d the parametrization repeats after a
    theta shift of 2*pi/d and the map is a d-fold covering; otherwise every
    pair of image points closer than separation_tol times the smallest image
    edge must come from neighbouring (or identified) parameters.  Samples sit
    at cell centers, strictly inside the fundamental domain, so each sample
    is a unique quotient representative; the certificate is at grid scale
    and says nothing about the measure-zero seam circle itself.
    """
    from scipy.spatial import cKDTree

    d = covering_degree(fam)
    T = fam.T_star
    if d > 1:
        t = np.linspace(-T, T, 17)[:, None]
        th = np.linspace(0.0, 2.0 * math.pi, 33)[None, :]
        u0 = evaluate(fam, t, th)[0]
        u1 = evaluate(fam, t, th + 2.0 * math.pi / d)[0]
        gap = float(np.max(np.linalg.norm(u1 - u0, axis=-1)))
        if gap > 1e-10:  # pragma: no cover - periodicity is exact
            raise RuntimeError("expected covering periodicity not observed")
        return InjectivityReport(
            injective=False, covering_degree=d, min_image_separation=0.0, threshold=0.0
        )

    if fam.is_quotient:
        dt = T / n_t
        t_vals = (np.arange(n_t) + 0.5) * dt
    else:
        dt = 2.0 * T / n_t
        t_vals = -T + (np.arange(n_t) + 0.5) * dt
    th_vals = np.linspace(0.0, 2.0 * math.pi, n_theta, endpoint=False)
    dth = th_vals[1] - th_vals[0]

    params = np.array([(tv, thv) for tv in t_vals for thv in th_vals])
    pts = evaluate(fam, params[:, 0], params[:, 1])[0]

    tree = cKDTree(pts)
    edge = _min_image_edge(fam, t_vals, th_vals)
    threshold = separation_tol * edge
    pairs = tree.query_pairs(threshold, output_type="ndarray")
    injective = True
    for i, j in pairs:
        if not _params_adjacent(fam, params[i], params[j], dt, dth):
            injective = False
            break

    min_sep = math.inf
    dists, idx = tree.query(pts, k=2)
    for p, (dist, other) in enumerate(zip(dists[:, 1], idx[:, 1])):
        if not _params_adjacent(fam, params[p], params[other], dt, dth):
            min_sep = min(min_sep, float(dist))
    return InjectivityReport(
        injective=injective,
        covering_degree=1,
        min_image_separation=min_sep,
        threshold=threshold,
    )


def _min_image_edge(fam: ImmersionFamily, t_vals, th_vals) -> float:
    tt = t_vals[:, None]
    th = th_vals[None, :]
    u = evaluate(fam, tt, th)[0]
    d_t = np.linalg.norm(np.diff(u, axis=0), axis=-1)
    d_th = np.linalg.norm(u - np.roll(u, 1, axis=1), axis=-1)
    return float(min(np.min(d_t), np.min(d_th)))


def _params_adjacent(fam, p, q, dt, dth) -> bool:
    def close(a, b):
        ddt = abs(a[0] - b[0])
        ddth = abs(a[1] - b[1]) % (2.0 * math.pi)
        ddth = min(ddth, 2.0 * math.pi - ddth)
        return ddt <= 1.5 * dt and ddth <= 1.5 * dth

    if close(p, q):
        return True
    if fam.is_quotient:
        mirrored = (-q[0], (q[1] + math.pi) % (2.0 * math.pi))
        return close(p, mirrored)
    return False


def radial_monotonicity_margin(fam: ImmersionFamily, n_samples: int = 200) -> float:
    """Min of d/dt |u|^2 over t in (0, T*]; positive for the B^4 families."""
    if fam.family is FamilyKind.CATENOID_B3:
        raise DomainError("radial monotonicity applies to the 4-dimensional families")
    t = np.linspace(1e-6, fam.T_star, n_samples)
    m, n = fam.m, fam.n
    deriv = (
        m * m * n * np.sinh(2.0 * n * t) + n * n * m * np.sinh(2.0 * m * t)
    ) / fam.radius**2
    return float(np.min(deriv))
