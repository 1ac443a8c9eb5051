"""Charging energies of two capacitively coupled dots.

Three charging models are supported:

* :class:`Capacitive` -- full electrostatic model built from the five
  capacitances of the network (four dot-lead, one inter-dot).
* :class:`PaperSymmetric` -- all four dot-lead capacitances equal, parametrised
  by ``kappa = q**2 / C_alpha`` and the inter-dot coupling ``U``. ``U`` is an
  independent knob; values with ``U >= kappa / 4`` have no physical
  capacitance realisation and use the algebraic continuation of the
  symmetric-network formulas.
* :class:`Direct` -- charging energies given explicitly.

Lead voltages follow the symmetric split used in :mod:`qdot.device`:
``V_L = +dV/2``, ``V_R = -dV/2`` and ``mu_nu = q V_nu`` with ``q = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .device import Dot, Lead
from .errors import InvalidParameterError

Q_E = 1.0


@dataclass(frozen=True)
class CapacitanceNetwork:
    C_tL: float
    C_tR: float
    C_bL: float
    C_bR: float
    C: float

    def __post_init__(self):
        caps = (self.C_tL, self.C_tR, self.C_bL, self.C_bR)
        if not all(c > 0 for c in caps) or not self.C >= 0:
            raise InvalidParameterError(f"capacitances must be positive, got {self}")
        if not self.determinant > 0:
            raise InvalidParameterError("capacitance matrix is singular")

    @classmethod
    def symmetric(cls, C_alpha: float, C: float) -> "CapacitanceNetwork":
        return cls(C_alpha, C_alpha, C_alpha, C_alpha, C)

    @property
    def C_sigma_t(self) -> float:
        return self.C_tL + self.C_tR + self.C

    @property
    def C_sigma_b(self) -> float:
        return self.C_bL + self.C_bR + self.C

    @property
    def determinant(self) -> float:
        return self.C_sigma_t * self.C_sigma_b - self.C**2

    def matrix(self) -> np.ndarray:
        return np.array([[self.C_sigma_t, -self.C], [-self.C, self.C_sigma_b]])


@dataclass(frozen=True)
class Capacitive:
    network: CapacitanceNetwork


@dataclass(frozen=True)
class PaperSymmetric:
    kappa: float
    U: float

    def __post_init__(self):
        if not self.kappa > 0:
            raise InvalidParameterError(f"kappa must be positive, got {self.kappa}")
        if not self.U >= 0:
            raise InvalidParameterError(f"U must be non-negative, got {self.U}")

    @property
    def feasible(self) -> bool:
        """Whether a symmetric capacitance network realises this ``(kappa, U)``."""
        return self.U < self.kappa / 4

    def to_capacitive(self) -> Capacitive:
        """Equivalent :class:`Capacitive` model; only defined when :attr:`feasible`."""
        if not self.feasible:
            raise InvalidParameterError(
                f"U={self.U} exceeds the symmetric-network bound kappa/4={self.kappa / 4}"
            )
        C_alpha = Q_E**2 / self.kappa
        # invert U = q^2 C / (4 C_a (C_a + C)) for C
        C = 4 * self.U * C_alpha**2 / (Q_E**2 - 4 * self.U * C_alpha)
        return Capacitive(CapacitanceNetwork.symmetric(C_alpha, C))


@dataclass(frozen=True)
class Direct:
    U: float
    U_t0: float = 0.0
    U_b0: float = 0.0

    def __post_init__(self):
        if not self.U >= 0:
            raise InvalidParameterError(f"U must be non-negative, got {self.U}")


@dataclass(frozen=True)
class ChargingEnergies:
    U: float
    U_t0: float
    U_b0: float

    @property
    def U_t1(self) -> float:
        return self.U_t0 + self.U

    @property
    def U_b1(self) -> float:
        return self.U_b0 + self.U

    def single(self) -> np.ndarray:
        """``[U_t0, U_b0]`` indexed by :class:`~qdot.device.Dot`."""
        return np.array([self.U_t0, self.U_b0])


def _source_terms(net: CapacitanceNetwork, Q_t, Q_b, V_L, V_R) -> np.ndarray:
    return np.array([
        Q_t + net.C_tL * V_L + net.C_tR * V_R,
        Q_b + net.C_bL * V_L + net.C_bR * V_R,
    ])


def solve_potentials(net: CapacitanceNetwork, Q_t, Q_b, V_L, V_R) -> tuple[float, float]:
    """Dot potentials ``(phi_t, phi_b)`` for the given dot charges and lead voltages."""
    a_t, a_b = _source_terms(net, Q_t, Q_b, V_L, V_R)
    det = net.determinant
    phi_t = (net.C_sigma_b * a_t + net.C * a_b) / det
    phi_b = (net.C * a_t + net.C_sigma_t * a_b) / det
    return phi_t, phi_b


def electrostatic_energy(net: CapacitanceNetwork, n_t, n_b, V_L=0.0, V_R=0.0) -> float:
    """Electrostatic energy of the occupation state ``(n_t, n_b)``."""
    a = _source_terms(net, n_t * Q_E, n_b * Q_E, V_L, V_R)
    phi = solve_potentials(net, n_t * Q_E, n_b * Q_E, V_L, V_R)
    return 0.5 * float(a @ phi)


def coupling_energy(net: CapacitanceNetwork) -> float:
    """Inter-dot coupling ``U = q^2 C / (C_sigma_t C_sigma_b - C^2)``."""
    return Q_E**2 * net.C / net.determinant


def symmetric_coupling_energy(C_alpha: float, C: float) -> float:
    return Q_E**2 * C / (4 * C_alpha * (C_alpha + C))


def charging_energies(model, dV: float = 0.0) -> ChargingEnergies:
    if isinstance(model, Capacitive):
        net = model.network
        V_L, V_R = dV / 2, -dV / 2
        e00 = electrostatic_energy(net, 0, 0, V_L, V_R)
        e10 = electrostatic_energy(net, 1, 0, V_L, V_R)
        e01 = electrostatic_energy(net, 0, 1, V_L, V_R)
        return ChargingEnergies(U=coupling_energy(net), U_t0=e10 - e00, U_b0=e01 - e00)
    if isinstance(model, PaperSymmetric):
        u0 = model.kappa / 4 - model.U / 2
        return ChargingEnergies(U=model.U, U_t0=u0, U_b0=u0)
    if isinstance(model, Direct):
        return ChargingEnergies(U=model.U, U_t0=model.U_t0, U_b0=model.U_b0)
    raise InvalidParameterError(f"unknown charging model {model!r}")


def lead_offsets(model, dV: float = 0.0, charging: ChargingEnergies | None = None) -> np.ndarray:
    """Charging energies referenced to each lead's chemical potential.

    Returns a ``(2, 2)`` array indexed ``[dot, lead]`` holding
    ``U_alpha0 - mu_nu``. ``charging`` may be passed to reuse a value already
    computed by :func:`charging_energies` for the same ``dV``.
    """
    if isinstance(model, PaperSymmetric):
        base = model.kappa / 4 - model.U / 2
        row = [base - dV / 2, base + dV / 2]
        return np.array([row, row])
    if charging is None:
        charging = charging_energies(model, dV)
    mu = np.empty(2)
    mu[Lead.L], mu[Lead.R] = dV / 2, -dV / 2
    out = np.empty((2, 2))
    out[Dot.T] = charging.U_t0 - mu
    out[Dot.B] = charging.U_b0 - mu
    return out
