"""Study harness: restriction, refinement studies, presets, and fitting."""

import math

import numpy as np
import pytest

from mbeflow import (
    ConfigurationError,
    Field,
    FitError,
    ReferenceSpec,
    accuracy_problem,
    c0_from_anchor,
    convergence_study,
    error_vs_reference,
    fit_power_law,
    geometric_sample_times,
    make_grid,
    relaxation_problem,
    restrict_to_coarse,
    run_example1,
    sample_function,
    temporal_order_study,
)
from mbeflow.harness import EXAMPLE1_MENU


def test_problem_presets():
    p = accuracy_problem()
    assert (p.dims, p.L, p.delta, p.final_time) == (2, math.pi, 0.1, 1.0)
    q = relaxation_problem(1.0, 100.0)
    assert (q.dims, q.L, q.delta, q.final_time) == (1, 6.0, 1.0, 100.0)


def test_example1_menu_presets():
    assert EXAMPLE1_MENU == {
        1.0: (128, 0.1, 100.0),
        0.1: (128, 0.01, 200.0),
        0.01: (256, 0.001, 500.0),
        0.001: (512, 0.0001, 1000.0),
    }


def test_restriction_commutes_with_sampling():
    # Nested nodes are bitwise equal, so restriction of a sampled field is
    # the coarsely sampled field, with no interpolation noise.
    fine = sample_function(make_grid(1, 512, math.pi), np.sin)
    coarse_grid = make_grid(1, 128, math.pi)
    direct = sample_function(coarse_grid, np.sin)
    assert np.array_equal(restrict_to_coarse(fine, coarse_grid).values, direct.values)

    f2 = sample_function(make_grid(2, 16, 2.0), lambda x, y: np.sin(x) * np.cos(y))
    c2 = make_grid(2, 4, 2.0)
    d2 = sample_function(c2, lambda x, y: np.sin(x) * np.cos(y))
    assert np.array_equal(restrict_to_coarse(f2, c2).values, d2.values)


def test_restriction_rejects_non_nested_grids():
    fine = Field(make_grid(1, 48, 1.0), np.zeros(48))
    with pytest.raises(ConfigurationError, match="nest"):
        restrict_to_coarse(fine, make_grid(1, 32, 1.0))
    with pytest.raises(ConfigurationError, match="domain"):
        restrict_to_coarse(fine, make_grid(1, 24, 2.0))


def test_error_vs_reference_zero_for_consistent_fields():
    fine = sample_function(make_grid(1, 64, math.pi), np.sin)
    coarse = sample_function(make_grid(1, 16, math.pi), np.sin)
    assert error_vs_reference(coarse, fine) == 0.0
    # One perturbed node contributes sqrt(h) * eps in 1D.
    bumped = coarse.copy()
    bumped.values[3] += 2e-3
    h = coarse.grid.h
    assert error_vs_reference(bumped, fine) == pytest.approx(math.sqrt(h) * 2e-3, rel=1e-12)


def test_c0_anchor_value():
    c0 = c0_from_anchor(0.005, 128, math.pi)
    assert c0 == pytest.approx(0.005 * (64.0 / math.pi) ** 2, rel=1e-15)
    assert c0 == pytest.approx(2.0750578409950777, rel=1e-14)


def test_convergence_study_validates_before_running():
    p = accuracy_problem()
    c0 = c0_from_anchor(0.005, 128, p.L)
    with pytest.raises(ConfigurationError, match="ascending"):
        convergence_study(p, [128, 64], c0, ReferenceSpec(512, 1e-5))
    with pytest.raises(ConfigurationError, match="twice"):
        convergence_study(p, [64, 128], c0, ReferenceSpec(128, 1e-5))
    with pytest.raises(ConfigurationError, match="min"):
        convergence_study(p, [64, 128], c0, ReferenceSpec(256, 0.01))
    with pytest.raises(ConfigurationError, match="nest"):
        convergence_study(p, [48, 96], c0, ReferenceSpec(200, 1e-9))


def test_temporal_study_validates_tau_list():
    p = accuracy_problem()
    with pytest.raises(ConfigurationError, match="descending"):
        temporal_order_study(p, 64, [1e-3, 2e-3], 1e-5)
    with pytest.raises(ConfigurationError, match="min"):
        temporal_order_study(p, 64, [2e-3, 1e-3], 5e-4)


def test_temporal_study_rows_have_orders():
    # Scaled-down check that the plumbing produces ratios and orders; the
    # production-scale order window is asserted in the acceptance tests.
    p = accuracy_problem(final_time=0.1)
    rows = temporal_order_study(p, 32, [4e-3, 2e-3], 2.5e-4)
    assert rows[0].order is None
    assert rows[0].ratio is None
    assert rows[1].ratio == pytest.approx(rows[0].error / rows[1].error, rel=1e-12)
    assert rows[1].order == pytest.approx(math.log2(rows[1].ratio), rel=1e-12)
    assert all(r.error > 0 for r in rows)


def test_geometric_sample_times_span_decades():
    times = geometric_sample_times(1.0, 100.0, samples_per_decade=31)
    assert len(times) == 62  # 10^(62/31) = 100 is excluded; T is logged anyway
    assert times[0] == 1.0
    assert times[-1] < 100.0
    ratios = np.diff(np.log10(np.asarray(times)))
    assert ratios == pytest.approx(np.full(61, 1.0 / 31.0), rel=1e-9)
    with pytest.raises(ConfigurationError):
        geometric_sample_times(0.0, 10.0)
    with pytest.raises(ConfigurationError):
        geometric_sample_times(5.0, 5.0)


def test_fit_power_law_recovers_exact_slope():
    t = np.geomspace(10.0, 300.0, 40)
    series = list(zip(t, 3.0 * t**-0.5))
    fit = fit_power_law(series, (20.0, 250.0))
    assert fit.slope == pytest.approx(-0.5, rel=1e-12)
    assert fit.intercept == pytest.approx(math.log(3.0), rel=1e-12)
    assert fit.residual < 1e-12
    assert fit.window == (20.0, 250.0)


def test_fit_power_law_failure_modes():
    t = np.geomspace(1.0, 100.0, 30)
    series = list(zip(t, t**0.3))
    with pytest.raises(FitError, match="window"):
        fit_power_law(series, (50.0, 50.0))
    with pytest.raises(FitError, match="at least 8"):
        fit_power_law(series, (99.0, 100.0))
    bad = [(float(x), 1.0 - 0.1 * i) for i, x in enumerate(t)]
    with pytest.raises(FitError, match="non-positive"):
        fit_power_law(bad, (1.5, 100.0))
    with pytest.raises(FitError, match="pairs"):
        fit_power_law([1.0, 2.0, 3.0], (0.5, 2.5))


def test_run_example1_uses_menu_defaults():
    final, records = run_example1(1.0, T=1.0)
    assert final.grid.J == 128  # J and tau from the menu, T overridden
    assert final.grid.dims == 1
    assert records[0].t == 0.0
    assert records[-1].t == 1.0
    assert records[-1].energy < records[0].energy


def test_run_example1_rejects_unknown_delta_without_overrides():
    with pytest.raises(ConfigurationError, match="delta"):
        run_example1(0.42)
