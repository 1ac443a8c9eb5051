"""Tunnelling rates and the master-equation generator."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .device import BathSpec, DeviceSpec, Dot, Lead, channel_state
from .electrostatics import ChargingEnergies

IN, OUT = 0, 1
RATE_FLOOR = 1e-300


def fermi_plus(x, bath: BathSpec):
    """Occupation ``1 / (1 + exp((x - mu) / T))`` of the bath at energy ``x``.

    Evaluated through the logistic function, so arguments far outside the
    float exponent range give 0 or 1 without overflow.
    """
    return expit(-(np.asarray(x) - bath.mu) / bath.T)


def fermi_minus(x, bath: BathSpec):
    return expit((np.asarray(x) - bath.mu) / bath.T)


@dataclass(frozen=True)
class RateTable:
    """Tunnelling rates for every (dot, other-dot occupation, lead) channel.

    Attributes
    ----------
    rates : ndarray, shape (2, 2, 2, 2)
        ``rates[dot, n, lead, direction]`` with ``direction`` 0 for an electron
        entering the dot and 1 for one leaving it.
    energies : ndarray, shape (2, 2, 2)
        Energy of the transition measured from the lead's chemical potential,
        ``eps_alpha + U_alpha0 - mu_nu + n U``. This is the Fermi argument
        times ``T_nu`` and also the heat carried per tunnelling electron.
    baths : tuple of BathSpec
        ``(left, right)``.
    """

    rates: np.ndarray
    energies: np.ndarray
    baths: tuple

    @property
    def chemical_potentials(self) -> np.ndarray:
        return np.array([b.mu for b in self.baths])

    @property
    def temperatures(self) -> np.ndarray:
        return np.array([b.T for b in self.baths])


def rate_table(device: DeviceSpec, baths, offsets: np.ndarray, charging: ChargingEnergies) -> RateTable:
    """Tunnelling rates for ``device`` attached to ``baths``.

    ``offsets`` is the ``[dot, lead]`` array from
    :func:`qdot.electrostatics.lead_offsets` for the same operating point, and
    ``charging`` supplies the inter-dot coupling ``U``.
    """
    n = np.array([0.0, 1.0])
    # energies[dot, n, lead]
    energies = device.levels[:, None, None] + offsets[:, None, :] + charging.U * n[None, :, None]
    temps = np.array([baths[Lead.L].T, baths[Lead.R].T])
    z = energies / temps
    rates = np.empty((2, 2, 2, 2))
    rates[..., IN] = device.gamma * expit(-z)
    rates[..., OUT] = device.gamma * expit(z)
    rates[rates < RATE_FLOOR] = 0.0
    return RateTable(rates=rates, energies=energies, baths=tuple(baths))


# state index of each [dot, n_other] channel with the dot empty / occupied
_EMPTY = np.array([[channel_state(d, n, 0) for n in (0, 1)] for d in Dot])
_FULL = np.array([[channel_state(d, n, 1) for n in (0, 1)] for d in Dot])
_DIAG = np.diag_indices(4)


@dataclass(frozen=True)
class Generator:
    M: np.ndarray
    rates: RateTable


def build_generator(rates: RateTable) -> Generator:
    """Assemble the 4x4 rate matrix ``M`` of ``dp/dt = M p``.

    ``M[j, i]`` is the rate from state ``i`` to state ``j``; the diagonal holds
    the negative escape rates, so every column sums to zero.
    """
    total = rates.rates.sum(axis=2)  # [dot, n, direction]
    M = np.zeros((4, 4))
    M[_FULL, _EMPTY] = total[..., IN]
    M[_EMPTY, _FULL] = total[..., OUT]
    M[_DIAG] = -M.sum(axis=0)
    return Generator(M=M, rates=rates)
