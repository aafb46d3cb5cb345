"""Discrete Dirichlet-to-Neumann oracle on the flat cylinder and its quotient.

This is the independent numerical check on every closed-form eigenvalue: a
second-order 5-point discretization of the flat Laplacian, one harmonic
extension solve per boundary node (direct sparse factorization, reused
across columns), a one-sided second-order normal derivative, and a dense
Jacobi eigensolve of the resulting boundary operator.

The quotient surface is discretized on the fundamental domain [0, T] x S^1:
the stencil at the seam row t = 0 reaches across to the node shifted by half
a turn, which encodes the identification exactly at grid level.  The theta
node count must be even so the half-turn shift lands on grid nodes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from .branches import SurfaceKind, spectrum
from .exceptions import DomainError
from .jacobi import jacobi_eigenvalues


@dataclass(frozen=True)
class OracleProblem:
    kind: SurfaceKind
    T: float
    grid: tuple[int, int]  # (n_t intervals, n_theta nodes)
    boundary_weight: float = 1.0  # conformal factor at the boundary

    def __post_init__(self):
        n_t, n_theta = self.grid
        if self.T <= 0.0 or not math.isfinite(self.T):
            raise DomainError(f"modulus must be positive and finite, got {self.T}")
        if n_t < 4 or n_theta < 4:
            raise DomainError(f"grid too coarse: {self.grid}")
        if n_theta % 2 != 0:
            raise DomainError("n_theta must be even (half-turn shift must be on-grid)")
        if self.boundary_weight <= 0.0:
            raise DomainError("boundary weight must be positive")


@dataclass(frozen=True)
class DtNMatrix:
    entries: np.ndarray  # symmetrized dense boundary operator
    weights: np.ndarray  # boundary quadrature weights (uniform)
    asymmetry: float  # relative asymmetry of the raw assembly
    size: int = field(default=0)

    def __post_init__(self):
        object.__setattr__(self, "size", self.entries.shape[0])


def _theta_laplacian(n_theta: int, h_theta: float) -> sp.csr_matrix:
    main = -2.0 * np.ones(n_theta)
    off = np.ones(n_theta)
    D = sp.diags([off[:-1], main, off[:-1]], [-1, 0, 1], format="lil")
    D[0, n_theta - 1] = 1.0
    D[n_theta - 1, 0] = 1.0
    return (D / (h_theta * h_theta)).tocsr()


def _assemble_annulus(p: OracleProblem):
    n_t, n_theta = p.grid
    h_t = 2.0 * p.T / n_t
    h_theta = 2.0 * math.pi / n_theta
    n_i = n_t - 1

    Dtt = sp.diags(
        [np.ones(n_i - 1), -2.0 * np.ones(n_i), np.ones(n_i - 1)], [-1, 0, 1]
    ) / (h_t * h_t)
    Dthth = _theta_laplacian(n_theta, h_theta)
    L = sp.kron(Dtt, sp.identity(n_theta)) + sp.kron(sp.identity(n_i), Dthth)

    n_b = 2 * n_theta
    C = sp.lil_matrix((n_i * n_theta, n_b))
    for j in range(n_theta):
        C[j, j] = 1.0 / (h_t * h_t)  # interior row 1 <- bottom boundary
        C[(n_i - 1) * n_theta + j, n_theta + j] = 1.0 / (h_t * h_t)
    return L.tocsc(), C.tocsc(), h_t, n_theta, n_b


def _assemble_mobius(p: OracleProblem):
    n_t, n_theta = p.grid
    h_t = p.T / n_t
    h_theta = 2.0 * math.pi / n_theta
    n_half = n_theta // 2
    n_unknown = n_half + (n_t - 1) * n_theta

    def sid(j):
        return np.asarray(j) % n_half

    def rid(i, j):
        return n_half + (i - 1) * n_theta + (np.asarray(j) % n_theta)

    rows, cols, vals = [], [], []
    inv_t2 = 1.0 / (h_t * h_t)
    inv_th2 = 1.0 / (h_theta * h_theta)

    def add(r, c, v):
        rows.append(np.asarray(r, dtype=np.int64).ravel())
        cols.append(np.asarray(c, dtype=np.int64).ravel())
        vals.append(np.broadcast_to(v, rows[-1].shape).astype(float).ravel())

    # seam row: the t = -h_t neighbour is the half-turn shifted node at t = +h_t
    s = np.arange(n_half)
    add(s, s, -2.0 * inv_t2 - 2.0 * inv_th2)
    add(s, sid(s + 1), inv_th2)
    add(s, sid(s - 1), inv_th2)
    add(s, rid(1, s), inv_t2)
    add(s, rid(1, s + n_half), inv_t2)

    j = np.arange(n_theta)
    for i in range(1, n_t):
        me = rid(i, j)
        add(me, me, -2.0 * inv_t2 - 2.0 * inv_th2)
        add(me, rid(i, j + 1), inv_th2)
        add(me, rid(i, j - 1), inv_th2)
        if i == 1:
            add(me, sid(j), inv_t2)
        else:
            add(me, rid(i - 1, j), inv_t2)
        if i < n_t - 1:
            add(me, rid(i + 1, j), inv_t2)

    L = sp.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(n_unknown, n_unknown),
    ).tocsc()

    C = sp.lil_matrix((n_unknown, n_theta))
    for jj in range(n_theta):
        C[rid(n_t - 1, jj), jj] = inv_t2
    return L, C.tocsc(), h_t, n_theta, n_theta


def assemble_dtn(p: OracleProblem) -> DtNMatrix:
    """Assemble the dense boundary operator by harmonic extension columns."""
    if p.kind is SurfaceKind.ANNULUS:
        L, C, h_t, n_theta, n_b = _assemble_annulus(p)
    else:
        L, C, h_t, n_theta, n_b = _assemble_mobius(p)

    lu = splu(L)
    U = -lu.solve(C.toarray())  # interior values of each boundary basis extension

    n_t = p.grid[0]
    f = p.boundary_weight
    A = np.zeros((n_b, n_b))
    if p.kind is SurfaceKind.ANNULUS:
        n_i = n_t - 1
        row = lambda i: U[(i - 1) * n_theta : i * n_theta, :]  # noqa: E731
        eye_bottom = np.zeros((n_theta, n_b))
        eye_bottom[:, :n_theta] = np.eye(n_theta)
        eye_top = np.zeros((n_theta, n_b))
        eye_top[:, n_theta:] = np.eye(n_theta)
        A[:n_theta, :] = (3.0 * eye_bottom - 4.0 * row(1) + row(2)) / (2.0 * h_t * f)
        A[n_theta:, :] = (3.0 * eye_top - 4.0 * row(n_i) + row(n_i - 1)) / (
            2.0 * h_t * f
        )
    else:
        n_half = n_theta // 2

        def row(i):
            return U[n_half + (i - 1) * n_theta : n_half + i * n_theta, :]

        A[:, :] = (3.0 * np.eye(n_theta) - 4.0 * row(n_t - 1) + row(n_t - 2)) / (
            2.0 * h_t * f
        )

    sym = 0.5 * (A + A.T)
    asym = float(np.max(np.abs(A - A.T)) / max(np.max(np.abs(A)), 1e-300))
    weights = np.full(n_b, 2.0 * math.pi / n_theta * f)
    return DtNMatrix(entries=sym, weights=weights, asymmetry=asym)


def rayleigh_quotient(dtn: DtNMatrix, data: np.ndarray) -> float:
    """Weighted Rayleigh quotient of boundary data against the operator."""
    data = np.asarray(data, dtype=float)
    num = float(data @ (dtn.weights * (dtn.entries @ data)))
    den = float(data @ (dtn.weights * data))
    return num / den


def oracle_spectrum(p: OracleProblem, count: int) -> np.ndarray:
    """Smallest `count` eigenvalues of the discrete boundary operator."""
    dtn = assemble_dtn(p)
    eigs = jacobi_eigenvalues(dtn.entries)
    return eigs[:count]


def closed_form_sigma(kind: SurfaceKind, T: float, f: float, count: int) -> np.ndarray:
    """First `count` nonzero unnormalized eigenvalues from the branch formulas."""
    length = (2.0 if kind is SurfaceKind.MOBIUS_BAND else 4.0) * math.pi * f
    values = []
    for entry in spectrum(kind, T, count):
        values.extend([entry.value / length] * entry.multiplicity)
    return np.array(values[:count])


# below this absolute error an eigenvalue is reproduced exactly (e.g. the
# linear annulus branch, which the scheme differentiates without truncation
# error) and a convergence order cannot be fitted
EXACT_FLOOR = 1e-10


@dataclass(frozen=True)
class ConvergenceReport:
    grids: tuple[tuple[int, int], ...]
    errors: np.ndarray  # (levels, eigenvalues) absolute error vs closed form
    orders: np.ndarray  # per-eigenvalue order; NaN where the error is exact
    observed_order: float  # median over eigenvalues with a fittable order


def convergence_study(
    p: OracleProblem, levels: list[tuple[int, int]], n_eigs: int = 5
) -> ConvergenceReport:
    """Richardson-style convergence order against the closed-form spectrum."""
    if len(levels) < 3:
        raise DomainError("need at least 3 grid levels")
    exact = closed_form_sigma(p.kind, p.T, p.boundary_weight, n_eigs)
    errors = []
    for grid in levels:
        prob = OracleProblem(
            kind=p.kind, T=p.T, grid=grid, boundary_weight=p.boundary_weight
        )
        eigs = oracle_spectrum(prob, n_eigs + 1)[1:]  # drop the constant mode
        errors.append(np.abs(eigs - exact))
    errors = np.array(errors)
    hs = np.array([2.0 * p.T / g[0] for g in levels])
    # least-squares slope of log(error) vs log(h) across all levels
    orders = np.full(n_eigs, math.nan)
    for i in range(n_eigs):
        if np.max(errors[:, i]) > EXACT_FLOOR:
            orders[i] = np.polyfit(np.log(hs), np.log(errors[:, i]), 1)[0]
    fitted = orders[np.isfinite(orders)]
    return ConvergenceReport(
        grids=tuple(tuple(g) for g in levels),
        errors=errors,
        orders=orders,
        observed_order=float(np.median(fitted)) if fitted.size else math.nan,
    )
