import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qdot import CapacitanceNetwork, Capacitive, Direct, InvalidParameterError, PaperSymmetric
from qdot.electrostatics import (
    charging_energies,
    coupling_energy,
    electrostatic_energy,
    lead_offsets,
    solve_potentials,
    symmetric_coupling_energy,
)

caps = st.floats(0.01, 2.0)
volts = st.floats(-10, 10)


def substitution_residual(net, Q_t, Q_b, V_L, V_R, phi_t, phi_b):
    # charges recovered from the potentials, dot by dot
    q_t = net.C_tL * (phi_t - V_L) + net.C_tR * (phi_t - V_R) + net.C * (phi_t - phi_b)
    q_b = net.C_bL * (phi_b - V_L) + net.C_bR * (phi_b - V_R) + net.C * (phi_b - phi_t)
    return max(abs(q_t - Q_t), abs(q_b - Q_b))


def test_potentials_vanish_for_empty_unbiased_network():
    net = CapacitanceNetwork(0.1, 0.2, 0.3, 0.4, 0.5)
    assert solve_potentials(net, 0, 0, 0, 0) == (0.0, 0.0)


def test_symmetric_network_gives_equal_potentials():
    net = CapacitanceNetwork.symmetric(0.2, 0.7)
    phi_t, phi_b = solve_potentials(net, 1, 1, 0, 0)
    assert phi_t == pytest.approx(phi_b, rel=1e-15)


@given(caps, caps, caps, caps, st.floats(0, 2), st.floats(-3, 3), st.floats(-3, 3), volts, volts)
def test_potentials_satisfy_charge_equations(a, b, c, d, C, Q_t, Q_b, V_L, V_R):
    net = CapacitanceNetwork(a, b, c, d, C)
    phi = solve_potentials(net, Q_t, Q_b, V_L, V_R)
    scale = max(1.0, abs(Q_t), abs(Q_b), abs(V_L), abs(V_R))
    assert substitution_residual(net, Q_t, Q_b, V_L, V_R, *phi) < 1e-12 * scale


@given(caps, caps, caps, caps, st.floats(0, 2), volts, volts)
def test_second_difference_is_coupling_energy(a, b, c, d, C, V_L, V_R):
    net = CapacitanceNetwork(a, b, c, d, C)
    e = {(i, j): electrostatic_energy(net, i, j, V_L, V_R) for i in (0, 1) for j in (0, 1)}
    second = e[1, 1] - e[1, 0] - e[0, 1] + e[0, 0]
    # the electrostatic energies themselves grow like C V^2
    scale = max(1.0, max(abs(v) for v in e.values()))
    assert abs(second - coupling_energy(net)) < 1e-12 * scale


def test_empty_unbiased_energy_is_zero():
    assert electrostatic_energy(CapacitanceNetwork(0.1, 0.2, 0.3, 0.4, 0.5), 0, 0) == 0.0


@given(caps, caps, caps, caps, st.floats(0, 2), volts)
def test_common_voltage_is_a_gauge(a, b, c, d, C, V):
    # raising both leads by V shifts each single-occupation charging energy by
    # exactly q V and leaves the inter-dot coupling unchanged
    net = CapacitanceNetwork(a, b, c, d, C)

    def diffs(v):
        e = {(i, j): electrostatic_energy(net, i, j, v, v) for i in (0, 1) for j in (0, 1)}
        return np.array([e[1, 0] - e[0, 0], e[0, 1] - e[0, 0], e[1, 1] - e[1, 0] - e[0, 1] + e[0, 0]])

    np.testing.assert_allclose(diffs(V) - diffs(0.0), [V, V, 0.0], atol=1e-10)


@given(st.floats(0.01, 2), st.floats(0, 2))
def test_symmetric_closed_form(C_a, C):
    net = CapacitanceNetwork.symmetric(C_a, C)
    assert coupling_energy(net) == pytest.approx(symmetric_coupling_energy(C_a, C), rel=1e-12, abs=1e-12)


def test_capacitive_equal_capacitances():
    # C = C_alpha = q^2/20: U = 20 C / (4 C (2 C)) = 20/8
    net = CapacitanceNetwork.symmetric(1 / 20, 1 / 20)
    ch = charging_energies(Capacitive(net))
    assert ch.U == pytest.approx(2.5, rel=1e-14)
    assert ch.U_t1 - ch.U_t0 == pytest.approx(ch.U, rel=1e-15)
    assert ch.U_b1 - ch.U_b0 == pytest.approx(ch.U, rel=1e-15)


def test_direct_passthrough():
    ch = charging_energies(Direct(U=10, U_t0=0, U_b0=0))
    assert (ch.U, ch.U_t1, ch.U_b1) == (10, 10, 10)


def test_capacitive_decoupled_limit():
    ch = charging_energies(Capacitive(CapacitanceNetwork(0.1, 0.2, 0.3, 0.4, 0.0)))
    assert ch.U == 0.0


def test_paper_symmetric_offsets_match_capacitive():
    offsets = lead_offsets(PaperSymmetric(20.0, 2.5), 0.0)
    np.testing.assert_allclose(offsets, 3.75, rtol=0, atol=1e-14)
    full = lead_offsets(Capacitive(CapacitanceNetwork.symmetric(1 / 20, 1 / 20)), 0.0)
    np.testing.assert_allclose(offsets, full, rtol=0, atol=1e-12)


def test_paper_symmetric_continuation_beyond_bound():
    model = PaperSymmetric(20.0, 40.0)
    assert not model.feasible
    np.testing.assert_allclose(lead_offsets(model, 0.0), -15.0, atol=1e-14)
    with pytest.raises(InvalidParameterError):
        model.to_capacitive()


@settings(max_examples=200)
@given(st.floats(1, 100), st.floats(0, 0.999), st.floats(-10, 10))
def test_paper_symmetric_matches_capacitive_when_feasible(kappa, frac, dV):
    model = PaperSymmetric(kappa, frac * kappa / 4)
    closed = lead_offsets(model, dV)
    full = lead_offsets(model.to_capacitive(), dV)
    scale = max(1.0, kappa, abs(dV))
    np.testing.assert_allclose(closed, full, rtol=0, atol=1e-12 * scale)


lead_symmetric_models = st.one_of(
    st.builds(PaperSymmetric, kappa=st.floats(1, 50), U=st.floats(0, 80)),
    st.builds(Direct, U=st.floats(0, 80), U_t0=st.floats(-20, 20), U_b0=st.floats(-20, 20)),
    st.builds(
        lambda c_t, c_b, c: Capacitive(CapacitanceNetwork(c_t, c_t, c_b, c_b, c)),
        caps, caps, st.floats(0, 2),
    ),
)


@given(lead_symmetric_models, st.floats(-20, 20))
def test_bias_reversal_swaps_leads(model, dV):
    fwd = lead_offsets(model, dV)
    rev = lead_offsets(model, -dV)
    np.testing.assert_allclose(fwd[:, ::-1], rev, rtol=0, atol=1e-12 * max(1, abs(dV)))


@given(lead_symmetric_models, st.floats(-20, 20))
def test_lead_offset_sum_is_bias_independent(model, dV):
    np.testing.assert_allclose(
        lead_offsets(model, dV).sum(axis=1), lead_offsets(model, 0.0).sum(axis=1), atol=1e-11
    )


@given(lead_symmetric_models, st.floats(-20, 20))
def test_coupling_step_is_exact(model, dV):
    ch = charging_energies(model, dV)
    assert ch.U_t1 - ch.U_t0 == pytest.approx(ch.U, abs=1e-12 * max(1, abs(ch.U_t0)))
    assert ch.U_b1 - ch.U_b0 == pytest.approx(ch.U, abs=1e-12 * max(1, abs(ch.U_b0)))


def test_invalid_networks():
    with pytest.raises(InvalidParameterError):
        CapacitanceNetwork(0.0, 1, 1, 1, 1)
    with pytest.raises(InvalidParameterError):
        PaperSymmetric(0.0, 1.0)
    with pytest.raises(InvalidParameterError):
        Direct(U=-1.0)
