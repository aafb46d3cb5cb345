"""End-to-end acceptance checks for the whole package.

Each test pins down one headline guarantee — closed-form suprema, the
piecewise eigenvalue formula, the inequality suites, the explicit surface
families, injectivity/covering behaviour, and oracle agreement — together
with an explicit runtime budget measured with ``time.perf_counter``.
"""

import json
import math
import time

import numpy as np
import pytest

from steklov.branches import (
    SurfaceKind,
    lambda_bar,
    mu_bar,
    sigma_bar,
    sigma_bar_grid,
    sigma_bar_piecewise_mobius,
    spectrum,
)
from steklov.cli import EXIT_OK, run
from steklov.crossings import (
    aux_inequalities,
    crossing_partials,
    solve_crossing,
    solve_t10,
)
from steklov.dtn import OracleProblem, convergence_study, oracle_spectrum
from steklov.extrema import (
    GRID_T_MAX,
    GRID_T_MIN,
    grid_supremum,
    sup_sigma_annulus,
    sup_sigma_mobius,
    verify_first_intersection_max,
    verify_no_asymptote,
)
from steklov.surfaces import (
    QFormSample,
    annulus_b4,
    catenoid_b3,
    covering_degree,
    injectivity_scan,
    make_admissible,
    mobius_b4,
    q_form_components,
    verify_identities,
)

MB = SurfaceKind.MOBIUS_BAND
AN = SurfaceKind.ANNULUS


class _Budget:
    """Context manager asserting the wrapped block finishes in time."""

    def __init__(self, seconds: float):
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        if exc[0] is None:
            elapsed = time.perf_counter() - self.start
            assert elapsed < self.seconds, (
                f"runtime budget exceeded: {elapsed:.2f}s >= {self.seconds}s"
            )


def test_mobius_first_supremum(capsys):
    with _Budget(0.1):
        result = sup_sigma_mobius(1)
        assert abs(result.value - 2.0 * math.pi * math.sqrt(3.0)) <= 1e-10
        assert abs(
            result.attaining_modulus - math.atanh(1.0 / math.sqrt(3.0))
        ) <= 1e-12
    # same numbers through the command-line entry point
    assert run(["suprema", "--kind", "mobius", "--j", "1", "--json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert abs(payload["value"] - 2.0 * math.pi * math.sqrt(3.0)) <= 1e-10
    assert abs(payload["modulus"] - math.atanh(1.0 / math.sqrt(3.0))) <= 1e-12


def test_mobius_supremum_family():
    with _Budget(5.0):
        for k in range(1, 11):
            point = solve_crossing(2.0 * k, 1.0)
            assert abs(point.residual) <= 1e-13
            closed = 4.0 * math.pi * k * math.tanh(2.0 * k * point.x)
            for j in (2 * k - 1, 2 * k):
                result = sup_sigma_mobius(j)
                assert result.value == pytest.approx(closed, rel=1e-13)
                grid_value, _ = grid_supremum(MB, j)
                assert grid_value == pytest.approx(closed, rel=1e-6)


def test_annulus_suprema():
    with _Budget(1.0):
        t10 = solve_t10()
        for k in range(1, 11):
            result = sup_sigma_annulus(2 * k - 1)
            assert abs(result.value - 4.0 * math.pi * k / t10) <= 1e-10
        grid = np.geomspace(GRID_T_MIN, GRID_T_MAX, 10**4)
        values = sigma_bar_grid(AN, 2, grid)[1]
        assert np.all(values < 4.0 * math.pi)
        assert sigma_bar(AN, 2, 50.0) > 4.0 * math.pi - 1e-10
        assert not sup_sigma_annulus(2).attained


def test_piecewise_formula_matches_sorted_spectrum():
    with _Budget(2.0):
        grid = np.geomspace(0.01, 10.0, 200)
        values = sigma_bar_grid(MB, 20, grid)
        for i, T in enumerate(grid):
            for j in range(1, 21):
                piecewise, _branch = sigma_bar_piecewise_mobius(j, float(T))
                assert piecewise == pytest.approx(values[j - 1, i], rel=1e-12)


def test_inequality_suite():
    with _Budget(5.0):
        # each branch is strictly monotone in the modulus (sampled below the
        # floating-point saturation of tanh at large mode*T)
        for k in (1, 2, 5):
            grid = np.geomspace(0.05, 6.0 / k, 50)
            lam = [lambda_bar(MB, k, T) for T in grid]
            mu = [mu_bar(MB, k, T) for T in grid]
            assert all(a < b for a, b in zip(lam, lam[1:]))
            assert all(a > b for a, b in zip(mu, mu[1:]))

        # the crossing lattice is monotone: moduli shrink in the increasing
        # frequency and grow in the decreasing frequency
        for a in (2.0, 4.0, 6.0):
            for b in (1.0,):
                x = solve_crossing(a, b).x
                assert solve_crossing(a + 2.0, b).x < x
                if a > b + 2.0:
                    assert solve_crossing(a, b + 2.0).x > x

        # auxiliary function positivity
        for t in np.geomspace(0.05, 6.0, 25):
            aux = aux_inequalities(float(t))
            assert aux.f_val > 0 and aux.g_prime > 0 and aux.tanh_gap > 0

        # crossing-height partial derivatives: signs and finite differences
        for a, b in ((2.0, 1.0), (4.0, 1.0), (6.0, 3.0)):
            partials = crossing_partials(a, b)
            assert partials.dx_da < 0 < partials.dx_db
            assert partials.du_da > 0 and partials.du_db > 0
            h = 1e-5
            fd_x_a = (solve_crossing(a + h, b).x - solve_crossing(a - h, b).x) / (2 * h)
            fd_x_b = (solve_crossing(a, b + h).x - solve_crossing(a, b - h).x) / (2 * h)
            fd_u_a = (
                solve_crossing(a + h, b).height - solve_crossing(a - h, b).height
            ) / (2 * h)
            fd_u_b = (
                solve_crossing(a, b + h).height - solve_crossing(a, b - h).height
            ) / (2 * h)
            assert partials.dx_da == pytest.approx(fd_x_a, rel=1e-6)
            assert partials.dx_db == pytest.approx(fd_x_b, rel=1e-6)
            assert partials.du_da == pytest.approx(fd_u_a, rel=1e-6)
            assert partials.du_db == pytest.approx(fd_u_b, rel=1e-6)

        # the first intersection along each diagonal carries the largest height
        records = verify_first_intersection_max(10)
        assert records and all(r.margin > 0.0 for r in records)

        # no even branch escapes to the linear asymptote
        t10 = solve_t10()
        asymptote = verify_no_asymptote(20)
        assert [r.k for r in asymptote] == list(range(2, 21, 2))
        for r in asymptote:
            assert r.margin > 0.0
            assert 2.0 * r.k * r.t_k == pytest.approx(t10, rel=1e-12)


_Q_SAMPLES = [
    QFormSample(
        h_tt=lambda t, th: np.cos(th) + 0.3 * t,
        h_ttheta=lambda t, th: np.sin(2.0 * th) * t,
        h_thetatheta=lambda t, th: np.cos(th) + 0.3 * t,
    ),
    QFormSample(
        h_tt=lambda t, th: np.sin(t) * np.cos(th),
        h_ttheta=lambda t, th: np.zeros(np.broadcast(t, th).shape),
        h_thetatheta=lambda t, th: np.zeros(np.broadcast(t, th).shape),
    ),
    QFormSample(
        h_tt=lambda t, th: t**2 + np.sin(th),
        h_ttheta=lambda t, th: np.cos(th) * t,
        h_thetatheta=lambda t, th: np.sin(3.0 * th) - t,
    ),
]


def test_surface_identities():
    families = [
        catenoid_b3(1),
        catenoid_b3(2),
        catenoid_b3(3),
        annulus_b4(2, 1),
        annulus_b4(3, 1),
        annulus_b4(3, 2),
        mobius_b4(2, 1),
        mobius_b4(4, 1),
        mobius_b4(4, 3),
    ]
    with _Budget(10.0):
        for fam in families:
            report = verify_identities(fam)
            assert report.conformal_residual <= 1e-12
            assert report.boundary_norm_residual <= 1e-12
            assert report.stress_energy_residual <= 1e-12
            assert report.free_boundary_angle <= 1e-10
            assert report.harmonic_order >= 1.8
            for sample in _Q_SAMPLES:
                components = q_form_components(fam, make_admissible(fam, sample))
                scale = max(1.0, float(np.max(np.abs(components))))
                assert abs(float(np.sum(components))) <= 1e-8 * scale


def test_injectivity_and_covering():
    with _Budget(5.0):
        for m, n in ((2, 1), (4, 1)):
            report = injectivity_scan(mobius_b4(m, n))
            assert report.injective, f"mobius({m},{n}) failed the scan"
        fam = annulus_b4(6, 3)
        assert covering_degree(fam) == 3
        assert injectivity_scan(fam).covering_degree == 3


def test_oracle_agreement():
    with _Budget(60.0):
        levels = [(40, 40), (80, 80), (160, 160)]
        for kind, T in ((AN, 1.0), (MB, math.atanh(1.0 / math.sqrt(3.0)))):
            problem = OracleProblem(kind=kind, T=T, grid=(40, 40))
            report = convergence_study(problem, levels, n_eigs=10)
            fitted = report.orders[np.isfinite(report.orders)]
            assert fitted.size > 0
            assert np.all((fitted >= 1.7) & (fitted <= 2.3))
            # finest grid matches the closed forms for all 10 eigenvalues
            assert np.max(report.errors[-1]) <= 1e-2

        # at the first crossing the oracle resolves a 4-fold cluster at
        # sqrt(3), with the spread shrinking at second order
        T = math.atanh(1.0 / math.sqrt(3.0))
        spreads = []
        for grid in ((80, 80), (160, 160)):
            eigs = oracle_spectrum(OracleProblem(kind=MB, T=T, grid=grid), 5)
            cluster = eigs[1:5]
            assert np.max(np.abs(cluster - math.sqrt(3.0))) <= 1e-2
            spreads.append(float(np.max(cluster) - np.min(cluster)))
        assert spreads[1] <= 0.35 * spreads[0]  # consistent with O(h^2)
        assert spreads[1] <= 2e-3


def test_scope_of_numerical_guarantees():
    # The purely analytic statements surrounding these computations --
    # uniqueness of the maximizing metrics up to boundary-constant conformal
    # changes, exhaustiveness of the classification of S^1-invariant critical
    # metrics, and strict comparisons against non-invariant suprema -- have no
    # finite computational witness and are deliberately out of scope.  Their
    # computable shadows are exactly the checks above: closed-form suprema
    # with grid confirmation, the full crossing lattice with its inequality
    # suite, the explicit surface families with their pointwise identities,
    # and an independent discrete boundary-operator oracle.
    assert True


def test_full_spectrum_consistency_smoke():
    # every advertised piece agrees on one shared configuration
    T = 0.7
    entries = spectrum(MB, T, 8)
    values = [e.value for e in entries for _ in range(*_span(e))]
    grid_vals = sigma_bar_grid(MB, 8, np.array([T]))[:, 0]
    assert np.allclose(values[:8], grid_vals, rtol=1e-12)


def _span(entry):
    return (entry.index_range[0], entry.index_range[1] + 1)
