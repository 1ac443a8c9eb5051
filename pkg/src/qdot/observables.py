"""Particle, heat, energy and entropy currents at a stationary state.

Internally every flow is counted positive *into the dots* from the lead.
The reported transport quantities are views on these:

* ``J_rho = N_L`` -- particle current entering from the left lead,
* ``J_u = Q_R_in`` -- heat deposited into the right reservoir,
* ``Q_L_out`` -- heat drawn out of the left reservoir.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .device import Dot, Lead, channel_state
from .errors import InvariantViolation
from .kinetics import IN, OUT, RateTable

CHARGE_TOL = 1e-12
ENERGY_TOL = 1e-10
FIRST_LAW_TOL = 1e-10
SECOND_LAW_TOL = 1e-12
DECOMPOSITION_TOL = 1e-14

_EMPTY = np.array([[channel_state(d, n, 0) for n in (0, 1)] for d in Dot])
_FULL = np.array([[channel_state(d, n, 1) for n in (0, 1)] for d in Dot])


def channel_flows(rates: RateTable, p) -> np.ndarray:
    """Net electron flow into each dot through each channel.

    Returns an array indexed ``[dot, n_other, lead]``.
    """
    p = np.asarray(p, dtype=float)
    r = rates.rates
    return r[..., IN] * p[_EMPTY][..., None] - r[..., OUT] * p[_FULL][..., None]


def particle_current(lead, rates: RateTable, p, dot=None) -> float:
    """Electrons per unit time entering the dots from ``lead``.

    With ``dot`` given, only that dot's contribution is returned.
    """
    flows = channel_flows(rates, p)[..., lead]
    if dot is not None:
        flows = flows[dot]
    return float(flows.sum())


def heat_current(lead, rates: RateTable, p) -> float:
    """Heat flow at ``lead`` with the reporting sign convention.

    For the left lead this is the heat extracted from the reservoir; for the
    right lead the heat deposited into it. Each tunnelling electron carries
    its transition energy measured from the lead's chemical potential.
    """
    return _heat(lead, rates, channel_flows(rates, p))


def energy_current(lead, rates: RateTable, p) -> float:
    """Total energy entering the dots from ``lead``."""
    return _energy(lead, rates, channel_flows(rates, p))


def _heat(lead, rates, flows):
    into_dots = float((rates.energies[..., lead] * flows[..., lead]).sum())
    return into_dots if lead == Lead.L else -into_dots


def _energy(lead, rates, flows):
    carried = rates.energies[..., lead] + rates.baths[lead].mu
    return float((carried * flows[..., lead]).sum())


def entropy_currents(Q_L_out, Q_R_in, J_rho, dV, baths):
    """Entropy production ``J_S`` and its split into ``(J_S_r, J_S_f)``.

    ``J_S_r`` is the part carried by the heat current across the temperature
    difference and ``J_S_f`` the part dissipated by the bias. ``J_rho`` and
    ``dV`` are accepted for the identity ``J_S_f = J_rho dV / T_L`` which
    holds when the first law does; ``J_S_f`` itself is formed from the heat
    currents.
    """
    T_L, T_R = baths[Lead.L].T, baths[Lead.R].T
    J_S = Q_R_in / T_R - Q_L_out / T_L
    J_S_r = Q_R_in * (1 / T_R - 1 / T_L)
    J_S_f = (Q_R_in - Q_L_out) / T_L
    return J_S, J_S_r, J_S_f


@dataclass(frozen=True)
class TransportReport:
    N_L: float
    N_R: float
    Q_L_out: float
    Q_R_in: float
    E_L: float
    E_R: float
    J_rho: float
    J_u: float
    J_S: float
    J_S_r: float
    J_S_f: float
    residual_charge: float
    residual_energy: float
    residual_firstlaw: float
    p: tuple
    N_dot: np.ndarray  # particle current into each dot, [dot, lead]

    def currents(self) -> dict:
        names = ("N_L", "N_R", "Q_L_out", "Q_R_in", "E_L", "E_R", "J_rho", "J_u", "J_S", "J_S_r", "J_S_f")
        return {k: getattr(self, k) for k in names}


def transport_report(rates: RateTable, p) -> TransportReport:
    flows = channel_flows(rates, p)
    N_dot = flows.sum(axis=1)
    N_L, N_R = float(N_dot[:, Lead.L].sum()), float(N_dot[:, Lead.R].sum())
    Q_L_out = _heat(Lead.L, rates, flows)
    Q_R_in = _heat(Lead.R, rates, flows)
    E_L = _energy(Lead.L, rates, flows)
    E_R = _energy(Lead.R, rates, flows)
    baths = rates.baths
    dV = baths[Lead.L].mu - baths[Lead.R].mu
    J_S, J_S_r, J_S_f = entropy_currents(Q_L_out, Q_R_in, N_L, dV, baths)
    return TransportReport(
        N_L=N_L,
        N_R=N_R,
        Q_L_out=Q_L_out,
        Q_R_in=Q_R_in,
        E_L=E_L,
        E_R=E_R,
        J_rho=N_L,
        J_u=Q_R_in,
        J_S=J_S,
        J_S_r=J_S_r,
        J_S_f=J_S_f,
        residual_charge=N_L + N_R,
        residual_energy=E_L + E_R,
        residual_firstlaw=(Q_R_in - Q_L_out) - N_L * dV,
        p=tuple(float(x) for x in p),
        N_dot=N_dot,
    )


def invariant_failures(report: TransportReport) -> list[str]:
    """Names of the conservation laws and bounds that ``report`` violates."""
    failed = []
    if not abs(report.residual_charge) < CHARGE_TOL:
        failed.append(f"charge conservation (residual {report.residual_charge:.3e})")
    if not abs(report.residual_energy) < ENERGY_TOL:
        failed.append(f"energy conservation (residual {report.residual_energy:.3e})")
    if not abs(report.residual_firstlaw) < FIRST_LAW_TOL:
        failed.append(f"first law (residual {report.residual_firstlaw:.3e})")
    if not report.J_S >= -SECOND_LAW_TOL:
        failed.append(f"second law (J_S = {report.J_S:.3e})")
    gap = report.J_S - (report.J_S_r + report.J_S_f)
    if not abs(gap) < DECOMPOSITION_TOL:
        failed.append(f"entropy decomposition (gap {gap:.3e})")
    return failed


def check_invariants(report: TransportReport) -> TransportReport:
    failed = invariant_failures(report)
    if failed:
        raise InvariantViolation("; ".join(failed))
    return report
