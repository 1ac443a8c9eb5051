"""Physical configuration of the double-dot device and its operating point.

Units are natural throughout: energies in units of hbar*gamma, rates in units
of gamma, and k_B = q = 1. A value such as ``k_B T = 7.5 hbar gamma``
therefore enters as the plain float ``7.5``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import InvalidParameterError


class Dot(enum.IntEnum):
    T = 0  # top dot
    B = 1  # bottom dot


class Lead(enum.IntEnum):
    L = 0
    R = 1


class SystemState(NamedTuple):
    n_t: int
    n_b: int


# p = (p00, p10, p01, p11): the top-dot occupation is the fast index.
STATES = (SystemState(0, 0), SystemState(1, 0), SystemState(0, 1), SystemState(1, 1))


def state_index(n_t: int, n_b: int) -> int:
    """Position of the occupation state ``(n_t, n_b)`` in the probability vector."""
    if n_t not in (0, 1) or n_b not in (0, 1):
        raise InvalidParameterError(f"occupations must be 0 or 1, got ({n_t}, {n_b})")
    return n_t + 2 * n_b


def decompose(index: int) -> SystemState:
    """Inverse of :func:`state_index`."""
    if index not in (0, 1, 2, 3):
        raise InvalidParameterError(f"state index must be in 0..3, got {index}")
    return STATES[index]


def channel_state(dot: int, other: int, occupied: int) -> int:
    """Index of the state where ``dot`` has ``occupied`` electrons and the other dot ``other``."""
    if dot == Dot.T:
        return state_index(occupied, other)
    return state_index(other, occupied)


@dataclass(frozen=True)
class BathSpec:
    T: float
    mu: float

    def __post_init__(self):
        if not self.T > 0:
            raise InvalidParameterError(f"bath temperature must be positive, got T={self.T}")


@dataclass(frozen=True)
class OperatingPoint:
    """Mean temperature, temperature difference ``T_L - T_R`` and bias ``mu_L - mu_R``."""

    T_mean: float
    dT: float = 0.0
    dV: float = 0.0

    def __post_init__(self):
        if not self.T_mean - abs(self.dT) / 2 > 0:
            raise InvalidParameterError(
                f"operating point gives a non-positive bath temperature "
                f"(T_mean={self.T_mean}, dT={self.dT})"
            )


def baths_from_operating_point(op: OperatingPoint) -> tuple[BathSpec, BathSpec]:
    """Left and right baths, with the bias split symmetrically around zero."""
    left = BathSpec(T=op.T_mean + op.dT / 2, mu=op.dV / 2)
    right = BathSpec(T=op.T_mean - op.dT / 2, mu=-op.dV / 2)
    return left, right


def level_energies(delta_eps: float) -> tuple[float, float]:
    """Dot levels ``(eps_t, eps_b)`` placed symmetrically around zero."""
    return delta_eps / 2, -delta_eps / 2


def _as_gamma_table(gamma) -> np.ndarray:
    table = np.broadcast_to(np.asarray(gamma, dtype=float), (2, 2, 2)).copy()
    table.setflags(write=False)
    return table


def connected_channels(gamma: np.ndarray) -> bool:
    """True if the four-state graph has a spanning set of open tunnel channels.

    ``gamma`` is indexed ``[dot, n_other, lead]``. Channel ``(dot, n)`` links the
    two states that differ only in the occupation of ``dot``.
    """
    parent = list(range(4))

    def find(i):
        while parent[i] != i:
            i = parent[i]
        return i

    for dot in Dot:
        for n in (0, 1):
            if gamma[dot, n].sum() > 0:
                a = find(channel_state(dot, n, 0))
                b = find(channel_state(dot, n, 1))
                parent[a] = b
    return len({find(i) for i in range(4)}) == 1


@dataclass(frozen=True)
class DeviceSpec:
    """Dot levels, bare tunnel couplings and charging model.

    ``gamma`` is indexed ``[dot, n_other, lead]`` (see :class:`Dot`, :class:`Lead`);
    a scalar or any array broadcastable to ``(2, 2, 2)`` is accepted.
    ``charging`` is one of the models in :mod:`qdot.electrostatics`.
    """

    eps_t: float
    eps_b: float
    gamma: np.ndarray = field(default=1.0)
    charging: object = None

    def __post_init__(self):
        table = _as_gamma_table(self.gamma)
        if np.any(table < 0) or not np.all(np.isfinite(table)):
            raise InvalidParameterError("tunnel couplings must be finite and non-negative")
        if not connected_channels(table):
            raise InvalidParameterError("tunnel couplings leave the state graph disconnected")
        object.__setattr__(self, "gamma", table)
        if self.charging is None:
            from .electrostatics import Direct

            object.__setattr__(self, "charging", Direct(U=0.0))

    @classmethod
    def from_level_difference(cls, delta_eps, gamma=1.0, charging=None):
        eps_t, eps_b = level_energies(delta_eps)
        return cls(eps_t=eps_t, eps_b=eps_b, gamma=gamma, charging=charging)

    @property
    def levels(self) -> np.ndarray:
        return np.array([self.eps_t, self.eps_b])

    @property
    def lead_symmetric(self) -> bool:
        return bool(np.array_equal(self.gamma[..., Lead.L], self.gamma[..., Lead.R]))

    def __eq__(self, other):
        if not isinstance(other, DeviceSpec):
            return NotImplemented
        return (
            self.eps_t == other.eps_t
            and self.eps_b == other.eps_b
            and np.array_equal(self.gamma, other.gamma)
            and self.charging == other.charging
        )

    __hash__ = None
