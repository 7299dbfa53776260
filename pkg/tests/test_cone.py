import math
from fractions import Fraction as F

import numpy as np
import pytest

from src.core.cone import (
    NormalFan,
    ReducedChart,
    SupportVector,
    action_on_cone,
    builtin_fan,
    default_support,
    dp1_action_closed_form,
    dp1_action_derivative,
    dp1_action_second_derivative,
    dp1_critical_alpha,
    dp1_polygon,
    gauge_fix,
    minimize_action,
    minimize_action_multistart,
    polygon_from_support,
    quadric_polygon,
    random_support,
    scan_line,
    support_from_polygon,
)
from src.core.cohomology import quadric_threshold
from src.core.errors import InvalidFan, NegativeAlpha, NotConverged, OutsideCone, UnknownSurface
from src.core.invariants import interior_barycenter, virtual_action
from src.core.polygon import area


@pytest.mark.parametrize("name,count", [("cp2", 3), ("quadric", 4), ("dp1", 4), ("dp2", 5), ("dp3", 6)])
def test_builtin_fans(name, count):
    fan = builtin_fan(name)
    assert len(fan) == count
    assert fan.name == name


def test_unknown_surface():
    with pytest.raises(UnknownSurface):
        builtin_fan("dp4")


@pytest.mark.parametrize(
    "rays",
    [
        [(1, 0), (0, 1)],
        [(1, 0), (0, -1), (-1, 0), (0, 1)],
        [(1, 0), (1, 2), (-1, -1)],
        [(2, 0), (0, 1), (-1, -1)],
    ],
)
def test_invalid_fans(rays):
    with pytest.raises(InvalidFan):
        NormalFan(tuple(rays))


def test_cp2_support_gives_the_simplex():
    polygon = polygon_from_support(builtin_fan("cp2"), (0, 0, 1))
    assert polygon.vertices == ((0, 0), (1, 0), (0, 1))


def test_quadric_support_gives_a_rectangle():
    polygon = polygon_from_support(builtin_fan("quadric"), ("0", "0", "3", "1/2"))
    assert polygon.vertices == ((0, 0), (3, 0), (3, F(1, 2)), (0, F(1, 2)))


def test_dp1_family_polygon():
    assert dp1_polygon(1).vertices == ((0, 0), (2, 0), (1, 1), (0, 1))
    assert dp1_polygon("1/2").vertices == ((0, 0), (F(3, 2), 0), (F(1, 2), 1), (0, 1))


def test_outside_cone_names_the_edge():
    with pytest.raises(OutsideCone) as info:
        polygon_from_support(builtin_fan("quadric"), (0, 0, 0, 1))
    assert info.value.lattice_length == 0
    with pytest.raises(OutsideCone):
        polygon_from_support(builtin_fan("dp1"), (0.0, 0.0, 1.0, 1.0 + 1e-14))


def test_float_support_gives_float_polygon():
    polygon = polygon_from_support(builtin_fan("dp1"), (0.0, 0.0, 2.0, 1.0))
    assert not polygon.exact
    assert virtual_action(polygon) == pytest.approx(111 / 13, rel=1e-12)


def test_support_round_trip(random_polygons):
    for polygon in random_polygons(10, seed=7):
        fan, support = support_from_polygon(polygon)
        rebuilt = polygon_from_support(fan, support)
        assert rebuilt.vertices == polygon.vertices


def test_gauge_fix_quadric_exact():
    fixed = gauge_fix(builtin_fan("quadric"), (0, 0, 4, 1))
    assert fixed.values == (1, F(1, 4), 1, F(1, 4))
    polygon = polygon_from_support(builtin_fan("quadric"), fixed)
    assert area(polygon) == 1
    assert interior_barycenter(polygon) == (0, 0)
    assert gauge_fix(builtin_fan("quadric"), fixed) == fixed


def test_gauge_fix_collapses_the_cp2_cone():
    fan = builtin_fan("cp2")
    a = gauge_fix(fan, (0, 0, 1)).as_array()
    b = gauge_fix(fan, ("1/3", 2, 5)).as_array()
    np.testing.assert_allclose(a, b, atol=1e-12)
    assert float(area(polygon_from_support(fan, SupportVector(tuple(a))))) == pytest.approx(1.0)


def test_action_on_cone():
    assert action_on_cone(builtin_fan("cp2"), (1, 2, 3)) == 9
    assert action_on_cone(builtin_fan("quadric"), (0, 0, 1, 1)) == 8
    assert action_on_cone(builtin_fan("quadric"), (0, 0, 2, 1)) == 9


def test_action_is_scale_invariant():
    fan = builtin_fan("dp2")
    support = (F(1, 2), 1, F(3, 4), 1, 1)
    tripled = tuple(3 * F(v) for v in support)
    assert virtual_action(polygon_from_support(fan, support)) == virtual_action(
        polygon_from_support(fan, tripled)
    )


def test_reduced_chart_dimension():
    assert [ReducedChart(builtin_fan(n)).dimension for n in ("cp2", "quadric", "dp1", "dp2", "dp3")] == [
        0,
        1,
        1,
        2,
        3,
    ]


def test_reduced_chart_round_trip():
    chart = ReducedChart(builtin_fan("dp3"))
    z = np.array([0.05, -0.02, 0.03])
    np.testing.assert_allclose(chart.to_chart(chart.to_support(z)), z, atol=1e-12)


@pytest.mark.parametrize("alpha", ["1/2", 1, 2, "7/3", 10])
def test_dp1_pipeline_matches_closed_form(alpha):
    assert virtual_action(dp1_polygon(alpha)) == dp1_action_closed_form(alpha)


def test_dp1_closed_form_values():
    assert dp1_action_closed_form(0) == 9
    assert dp1_action_closed_form(1) == F(111, 13)
    assert dp1_action_closed_form(10) == F(16689, 661)
    assert dp1_action_closed_form(5) == F(2799, 181)
    assert dp1_action_second_derivative(0) == 48
    assert dp1_action_second_derivative(1) == F(2352, 2197)


def test_dp1_rejects_negative_alpha():
    with pytest.raises(NegativeAlpha):
        dp1_action_closed_form(-1)
    with pytest.raises(NegativeAlpha):
        dp1_polygon("-1/2")


@pytest.mark.parametrize("alpha", ["0.1", "0.5", "1", "2", "5"])
def test_dp1_finite_differences(alpha):
    alpha, h = F(alpha), F(1, 10**4)
    f = dp1_action_closed_form
    first = (f(alpha + h) - f(alpha - h)) / (2 * h)
    second = (f(alpha + h) - 2 * f(alpha) + f(alpha - h)) / h**2
    assert float(first) == pytest.approx(float(dp1_action_derivative(alpha)), rel=1e-6, abs=1e-9)
    assert float(second) == pytest.approx(float(dp1_action_second_derivative(alpha)), rel=1e-5)


def test_dp1_pipeline_finite_differences():
    h = F(1, 10**4)
    for alpha in (F(1, 2), F(2)):
        f = [virtual_action(dp1_polygon(alpha + k * h)) for k in (-1, 0, 1)]
        second = (f[2] - 2 * f[1] + f[0]) / h**2
        assert float(second) == pytest.approx(float(dp1_action_second_derivative(alpha)), rel=1e-5)


def test_dp1_second_derivative_is_positive():
    for alpha in np.linspace(0.01, 50, 200):
        assert dp1_action_second_derivative(float(alpha)) > 0


def test_dp1_critical_alpha():
    alpha = dp1_critical_alpha(1e-12)
    assert 0 < alpha < 1
    assert abs(dp1_action_derivative(alpha)) < 1e-11
    assert dp1_action_second_derivative(alpha) > 0
    assert dp1_action_closed_form(alpha) < 9
    assert dp1_action_closed_form(alpha) < 12


@pytest.mark.parametrize("name,expected", [("cp2", 9.0), ("quadric", 8.0), ("dp3", 6.0)])
def test_minimizer_symmetric_surfaces(name, expected):
    result = minimize_action(builtin_fan(name))
    assert result.converged
    assert result.action == pytest.approx(expected, abs=1e-8)
    assert max(abs(d) for d in result.displacement) < 1e-10
    assert all(e > 0 for e in result.hessian_eigenvalues)
    assert result.surface == name


def test_minimizer_recenters_from_an_asymmetric_start():
    result = minimize_action(builtin_fan("quadric"), initial=(0, 0, 2, 1))
    assert result.converged
    assert result.action == pytest.approx(8.0, abs=1e-10)
    assert max(abs(d) for d in result.displacement) < 1e-10


def test_minimizer_output_is_gauge_fixed():
    fan = builtin_fan("dp2")
    result = minimize_action(fan)
    polygon = polygon_from_support(fan, result.support)
    assert float(area(polygon)) == pytest.approx(1.0)
    np.testing.assert_allclose([float(c) for c in interior_barycenter(polygon)], [0, 0], atol=1e-9)


def test_dp1_minimizer_matches_bisection():
    result = minimize_action(builtin_fan("dp1"))
    assert result.converged
    assert result.action == pytest.approx(float(dp1_action_closed_form(dp1_critical_alpha())), abs=1e-8)
    assert result.futaki_norm_sq_over_pi2 > 1e-6


def test_minimizer_from_given_start():
    fan = builtin_fan("quadric")
    result = minimize_action(fan, initial=(0, 0, 5, 1))
    assert result.action == pytest.approx(8.0, abs=1e-8)


def test_minimizer_rejects_start_outside_cone():
    with pytest.raises(OutsideCone):
        minimize_action(builtin_fan("quadric"), initial=(0, 0, -1, 1))


def test_unconverged_result_raises_on_demand():
    from src.core.config import get_config

    options = get_config().minimizer.model_copy(update={"max_iterations": 1, "restarts": 1})
    result = minimize_action(builtin_fan("dp3"), options)
    assert not result.converged
    with pytest.raises(NotConverged):
        result.raise_for_status()


@pytest.mark.parametrize("name", ["cp2", "quadric", "dp1", "dp2", "dp3"])
def test_multistart_agrees(name):
    outcome = minimize_action_multistart(builtin_fan(name), starts=10, seed=1)
    assert len(outcome.results) == 10
    assert all(r.converged for r in outcome.results)
    assert outcome.spread < 1e-7
    assert all(e > 0 for e in outcome.best.hessian_eigenvalues)


def test_dp2_minimizer_has_nonzero_displacement():
    result = minimize_action(builtin_fan("dp2"))
    assert result.converged
    assert result.futaki_norm_sq_over_pi2 > 1e-6


def test_random_support_is_inside_cone():
    rng = np.random.default_rng(0)
    fan = builtin_fan("dp3")
    for _ in range(20):
        support = random_support(fan, rng)
        assert support.exact
        polygon_from_support(fan, support)


def test_default_support():
    assert default_support(builtin_fan("dp2")).values == (1, 1, 1, 1, 1)


def test_scan_dp1_matches_closed_form():
    table = scan_line(builtin_fan("dp1"), (0, 0, 1, 1), (0, 0, 1, 0), ("1/10", 5), 50)
    assert len(table.rows) == 50
    assert table.rows[0].t == pytest.approx(0.1)
    assert table.rows[-1].t == 5
    for row in table.rows:
        assert row.inside_cone
        assert row.action == pytest.approx(dp1_action_closed_form(row.t), rel=1e-10)
        assert row.min_vertex_scalar > 0


def test_scan_quadric_is_increasing_and_crosses_threshold():
    table = scan_line(builtin_fan("quadric"), (0, 0, 1, 0), (0, 0, 0, 1), (1, 5), 41)
    actions = [row.action for row in table.rows]
    assert actions == sorted(actions)
    for row in table.rows:
        assert row.disp_x == 0 and row.disp_y == 0
        assert (row.action >= 12) == (row.t >= quadric_threshold())


def test_scan_flags_points_outside_cone():
    table = scan_line(builtin_fan("quadric"), (0, 0, 1, 1), (0, 0, 1, 0), (-2, 0), 3)
    assert [row.inside_cone for row in table.rows] == [False, False, True]
    assert math.isnan(table.rows[0].action)
    assert table.csv_rows()[0][-1] == "false"


def test_scan_zero_direction_and_single_step():
    table = scan_line(builtin_fan("dp2"), (1, 1, 1, 1, 1), (0, 0, 0, 0, 0), (0, 1), 5)
    assert len({row.action for row in table.rows}) == 1
    assert len(scan_line(builtin_fan("dp2"), (1, 1, 1, 1, 1), (0, 0, 0, 0, 0), (0, 1), 1).rows) == 1


def test_scan_workers_keep_order():
    args = (builtin_fan("dp1"), (0, 0, 1, 1), (0, 0, 1, 0), (0, 3), 13)
    assert scan_line(*args, workers=4).csv_rows() == scan_line(*args).csv_rows()


def test_quadric_polygon_is_the_class_rectangle():
    polygon = quadric_polygon(4)
    assert area(polygon) == 4
    assert virtual_action(polygon) == F(25, 2)
