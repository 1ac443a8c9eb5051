import dataclasses

import numpy as np
import pytest

from qdot import (
    CapacitanceNetwork,
    Capacitive,
    DeviceSpec,
    Direct,
    InvalidParameterError,
    InvariantViolation,
    OperatingPoint,
    evaluate,
)
from qdot.observables import TransportReport
from qdot.sweep import (
    Axis,
    GridSpec,
    SweepPointError,
    classify,
    onsager_check,
    region_disjointness,
    sweep,
    zero_contour,
)

from conftest import baseline_device


def fake_report(J_rho=0.0, J_u=0.0):
    zero = dict.fromkeys(f.name for f in dataclasses.fields(TransportReport))
    zero.update({k: 0.0 for k in zero})
    zero.update(J_rho=J_rho, J_u=J_u, p=(1.0, 0.0, 0.0, 0.0), N_dot=np.zeros((2, 2)))
    return TransportReport(**zero)


def test_axis_validation():
    with pytest.raises(InvalidParameterError):
        Axis.linspace("dT", 0, 1, 1)
    with pytest.raises(InvalidParameterError):
        Axis.linspace("dT", 1, 0, 5)
    with pytest.raises(InvalidParameterError):
        Axis("mu", (0.0, 1.0))


def test_grid_rejects_infeasible_temperatures():
    with pytest.raises(InvalidParameterError):
        GridSpec((Axis.linspace("dT", -20, 20, 3),), baseline_device(), OperatingPoint(7.5))


def test_grid_rejects_U_axis_for_capacitive_model():
    dev = DeviceSpec(0, 0, 1.0, Capacitive(CapacitanceNetwork(0.1, 0.1, 0.1, 0.1, 0.1)))
    with pytest.raises(InvalidParameterError):
        GridSpec((Axis.linspace("U", 0, 1, 3),), dev, OperatingPoint(1.0))


def test_equilibrium_U_sweep_has_no_current():
    grid = GridSpec((Axis.linspace("U", 0, 80, 17),), baseline_device(), OperatingPoint(7.5))
    result = sweep(grid)
    for name in ("J_rho", "J_u", "J_S", "Q_L_out"):
        assert np.abs(result.field(name)).max() < 1e-12
    regions = region_disjointness(result)
    assert regions.particle_count == regions.energy_count == 0


def test_heat_current_reverses_with_coupling():
    # dT = 0.2, dV = 3 curve
    grid = GridSpec((Axis.linspace("U", 0, 80, 81),), baseline_device(), OperatingPoint(7.5, 0.2, 3.0))
    J_u = sweep(grid).field("J_u")
    assert J_u[0] > 0 and J_u[-1] < 0
    assert (np.diff(np.sign(J_u)) != 0).sum() == 1


def test_rows_are_row_major():
    grid = GridSpec(
        (Axis.linspace("dT", -1, 1, 3), Axis.linspace("dV", 0, 2, 4)), baseline_device(), OperatingPoint(7.5)
    )
    result = sweep(grid)
    coords = [c for c, _, _ in result.rows()]
    assert coords[0] == {"dT": -1.0, "dV": 0.0}
    assert coords[1] == {"dT": -1.0, "dV": 2 / 3}
    assert coords[4] == {"dT": 0.0, "dV": 0.0}
    assert result.field("J_rho").shape == (3, 4)
    assert result.field("J_rho")[2, 3] == evaluate(baseline_device(), OperatingPoint(7.5, 1.0, 2.0)).J_rho


@pytest.mark.parametrize(
    "dT, dV, J_rho, J_u, particle, energy",
    [
        (5, 5, -0.01, 0.5, True, False),
        (-5, -5, 0.01, -0.5, True, False),
        (0.2, 3, 0.02, -0.05, False, True),
        (5, -5, -0.01, -0.5, False, False),
        (0, 3, -0.01, -0.5, False, False),
    ],
)
def test_classify(dT, dV, J_rho, J_u, particle, energy):
    flags = classify(fake_report(J_rho, J_u), dT, dV)
    assert (flags.inverse_particle, flags.inverse_energy) == (particle, energy)
    assert not flags.dead_band


def test_classify_dead_band():
    flags = classify(fake_report(-1e-13, 0.3), 5, 5)
    assert flags.dead_band and not flags.inverse_particle


def test_classify_refuses_double_inversion():
    with pytest.raises(InvariantViolation):
        classify(fake_report(-0.1, -0.1), 1, 1)


def test_sweep_reports_failing_coordinates(monkeypatch):
    import qdot.sweep as sw

    real = sw.evaluate

    def flaky(device, op):
        if op.dV > 0.9:
            raise FloatingPointError("boom")
        return real(device, op)

    monkeypatch.setattr(sw, "evaluate", flaky)
    grid = GridSpec((Axis.linspace("dV", 0, 1, 3),), baseline_device(), OperatingPoint(7.5))
    with pytest.raises(SweepPointError) as info:
        sweep(grid)
    assert info.value.coords == {"dV": 1.0}


def test_parallel_sweep_is_identical():
    grid = GridSpec(
        (Axis.linspace("dT", -2, 2, 7), Axis.linspace("dV", -2, 2, 5)), baseline_device(), OperatingPoint(7.5)
    )
    a = sweep(grid, workers=1)
    b = sweep(grid, workers=3)
    for name in ("J_rho", "J_u", "J_S", "p00", "inverse_particle"):
        assert np.array_equal(a.field(name), b.field(name))


def test_flags_invariant_under_rate_rescaling():
    axes = (Axis.linspace("dT", -5, 5, 11), Axis.linspace("dV", -5, 5, 11))
    a = sweep(GridSpec(axes, baseline_device(gamma=1.0), OperatingPoint(7.5)))
    b = sweep(GridSpec(axes, baseline_device(gamma=3.7), OperatingPoint(7.5)))
    for name in ("inverse_particle", "inverse_energy"):
        assert np.array_equal(a.field(name), b.field(name))


@pytest.fixture(scope="module")
def force_plane():
    axes = (Axis.linspace("dT", -5, 5, 41), Axis.linspace("dV", -5, 5, 41))
    return sweep(GridSpec(axes, baseline_device(40.0), OperatingPoint(7.5)))


def test_positive_quantity_has_no_contour(force_plane):
    assert zero_contour(force_plane, "J_S") == []


def test_contour_points_are_roots(force_plane):
    lines = zero_contour(force_plane, "J_rho")
    assert lines
    for line in lines:
        for dT, dV in line[:: max(1, len(line) // 10)]:
            assert abs(evaluate(baseline_device(40.0), OperatingPoint(7.5, dT, dV)).J_rho) < 1e-12


def test_contour_bounds_inverse_particle_region(force_plane):
    lines = zero_contour(force_plane, "J_rho")
    pts = np.vstack(lines)
    first = pts[(pts[:, 0] > 0) & (pts[:, 1] > 0)]
    assert len(first) > 0
    # every inverse-particle grid node in the first quadrant has a zero
    # contour point below it along dV (J_rho > 0 at small bias)
    flags = force_plane.field("inverse_particle")
    dT, dV = force_plane.coordinate_arrays()
    for i, j in zip(*np.nonzero(flags & (dT > 0))):
        assert (np.abs(first[:, 0] - dT[i, j]) < 0.25).any()


def test_contour_is_mirror_symmetric(force_plane):
    pts = np.vstack(zero_contour(force_plane, "J_rho"))
    mirrored = -pts
    dist = np.sqrt(((mirrored[:, None, :] - pts[None, :, :]) ** 2).sum(-1)).min(axis=1)
    assert dist.max() < 1e-8


def test_regions_disjoint_and_nonempty(force_plane):
    regions = region_disjointness(force_plane)
    assert regions.particle_count > 0 and regions.energy_count > 0


def test_mixed_sign_quadrants_have_no_inverse_points():
    axes = (Axis.linspace("dT", 0.5, 5, 5), Axis.linspace("dV", -5, -0.5, 5))
    regions = region_disjointness(sweep(GridSpec(axes, baseline_device(40.0), OperatingPoint(7.5))))
    assert regions.particle_count == regions.energy_count == 0


def test_region_overlap_is_reported(force_plane):
    import qdot.sweep as sw

    flags = list(force_plane.flags)
    flags[0] = sw.PointClassification(True, True, False)
    bad = dataclasses.replace(force_plane, flags=tuple(flags))
    with pytest.raises(InvariantViolation, match="overlap"):
        region_disjointness(bad)


def test_onsager_baseline_device():
    result = onsager_check(baseline_device(40.0), 7.5)
    assert result.asymmetry < 1e-5
    assert result.L[0, 0] > 0 and result.L[1, 1] > 0


def test_onsager_second_order_convergence():
    dev = baseline_device(40.0)
    ref = onsager_check(dev, 7.5, h=1e-4).L
    e1 = np.abs(onsager_check(dev, 7.5, h=0.2).L - ref).max()
    e2 = np.abs(onsager_check(dev, 7.5, h=0.1).L - ref).max()
    assert 3.5 < e1 / e2 < 4.5


def test_onsager_uncoupled_analytic():
    gamma = np.ones((2, 2, 2))
    gamma[0, ..., 1] = 3.0  # top dot: gamma_L = 1, gamma_R = 3
    dev = DeviceSpec(1.0, -2.0, gamma, Direct(U=0.0, U_t0=0.5, U_b0=0.25))
    T = 2.0
    L = onsager_check(dev, T).L
    expected = np.zeros((2, 2))
    for E, g_eff in ((1.5, 0.75), (-1.75, 0.5)):
        f = 1 / (1 + np.exp(E / T))
        expected += g_eff * f * (1 - f) * np.array([[1, E], [E, E**2]])
    np.testing.assert_allclose(L, expected, rtol=1e-6)
    assert np.sign(L[0, 1]) == np.sign(expected[0, 1])
