import math

import pytest

from src.core.appendix import (
    PerturbationProfile,
    energy_report,
    nijenhuis_energy_closed_form,
    nijenhuis_energy_quadrature,
    richardson_check,
    scalar_bound_sequence,
    scalar_integral_upper_bound,
    toric_profile_energy,
    trapezoid_error_bound,
)
from src.core.errors import UnderResolved


def test_quadrature_matches_closed_form():
    energy = nijenhuis_energy_quadrature(PerturbationProfile(0.5, 2, 256))
    assert energy == pytest.approx(2 * math.pi**2, rel=1e-6)


def test_energy_grows_like_k_squared():
    base = nijenhuis_energy_quadrature(PerturbationProfile(0.5, 2, 256))
    doubled = nijenhuis_energy_quadrature(PerturbationProfile(0.5, 4, 256))
    assert doubled / base == pytest.approx(4, rel=1e-6)
    one = nijenhuis_energy_quadrature(PerturbationProfile(1.0, 1, 256))
    for k in (2, 3, 5):
        assert nijenhuis_energy_quadrature(PerturbationProfile(1.0, k, 256)) == pytest.approx(k**2 * one, rel=1e-8)


def test_zero_profile_has_no_energy():
    assert nijenhuis_energy_quadrature(PerturbationProfile(0.5, 0, 16)) == 0


def test_under_resolved_grid():
    with pytest.raises(UnderResolved) as info:
        nijenhuis_energy_quadrature(PerturbationProfile(0.5, 10, 100))
    assert info.value.required == 800


@pytest.mark.parametrize("epsilon,k,grid_n", [(0.0, 1, 16), (-1.0, 1, 16), (1.0, -1, 16), (1.0, 1, 1)])
def test_profile_validation(epsilon, k, grid_n):
    with pytest.raises(ValueError):
        PerturbationProfile(epsilon, k, grid_n)


def test_closed_form_expressions():
    assert nijenhuis_energy_closed_form(1.0, 1) == pytest.approx((2 * math.pi**2, 2 * math.pi**2))
    derived, displayed = nijenhuis_energy_closed_form(0.5, 2)
    assert derived == pytest.approx(2 * math.pi**2)
    assert displayed == pytest.approx(math.pi**2 / 2)
    assert nijenhuis_energy_closed_form(1.0, 3).derived == pytest.approx(
        nijenhuis_energy_closed_form(0.5, 3).derived * 4
    )


def test_scalar_integral_upper_bound():
    assert scalar_integral_upper_bound(0, 0) == 0
    assert scalar_integral_upper_bound(6, 100) == pytest.approx(24 * math.pi - 50)
    assert scalar_integral_upper_bound(6, 102) - scalar_integral_upper_bound(6, 100) == pytest.approx(-1)
    with pytest.raises(ValueError):
        scalar_integral_upper_bound(6, -1)


def test_bound_sequence_turns_negative():
    rows = scalar_bound_sequence(0.5, [1, 2, 4, 8], c1_dot_omega=6)
    bounds = [row.scalar_bound for row in rows]
    assert bounds == sorted(bounds, reverse=True)
    assert len(set(bounds)) == 4
    assert bounds[-1] < 0
    assert all(row.grid_n >= 8 * row.k**2 for row in rows)


def test_toric_profile_energy():
    assert toric_profile_energy(1.0, 3, 128) == pytest.approx(18 * math.pi**2, rel=1e-6)
    assert toric_profile_energy(0.5, 2, 256) == pytest.approx(
        nijenhuis_energy_quadrature(PerturbationProfile(0.5, 2, 256)), rel=1e-10
    )
    with pytest.raises(UnderResolved):
        toric_profile_energy(1.0, 5, 64)


def test_energy_report():
    report = energy_report(PerturbationProfile(0.5, 2, 256), c1_dot_omega=6)
    assert report.energy_closed_form == pytest.approx(2 * math.pi**2)
    assert report.energy_paper_expression == pytest.approx(math.pi**2 / 2)
    assert report.discrepancy_factor == pytest.approx(0.25, rel=1e-6)
    assert report.scalar_bound == pytest.approx(24 * math.pi - math.pi**2, rel=1e-6)
    assert list(report.to_dict()) == [
        "epsilon",
        "k",
        "grid_n",
        "energy_quadrature",
        "energy_closed_form",
        "energy_paper_expression",
        "scalar_bound",
        "discrepancy_factor",
    ]


def test_energy_report_uses_configured_c1_omega():
    report = energy_report(PerturbationProfile(1.0, 1, 64))
    assert report.scalar_bound == pytest.approx(4 * math.pi * 9 - math.pi**2, rel=1e-6)


@pytest.mark.parametrize("grid_n", [65, 129, 257])
def test_quadrature_error_is_second_order(grid_n):
    oracle = nijenhuis_energy_closed_form(0.5, 2).derived
    coarse = PerturbationProfile(0.5, 2, grid_n)
    fine = PerturbationProfile(0.5, 2, 2 * grid_n - 1)
    assert abs(nijenhuis_energy_quadrature(coarse) - oracle) <= trapezoid_error_bound(coarse)
    assert trapezoid_error_bound(coarse) / trapezoid_error_bound(fine) == pytest.approx(4)


def test_richardson_extrapolation_hits_the_oracle():
    check = richardson_check(PerturbationProfile(0.5, 2, 65))
    oracle = nijenhuis_energy_closed_form(0.5, 2).derived
    assert check.extrapolated == pytest.approx(oracle, rel=1e-10)
    assert abs(check.fine - oracle) <= abs(check.coarse - oracle) + 1e-10
    assert check.error_bound == pytest.approx(trapezoid_error_bound(PerturbationProfile(0.5, 2, 65)))
