"""Stationary distribution of the four-state master equation."""

from __future__ import annotations

import math
import warnings
from typing import NamedTuple

import numpy as np
import scipy.linalg

from .device import BathSpec, DeviceSpec, Dot, STATES, channel_state
from .electrostatics import ChargingEnergies
from .errors import InvalidParameterError, ReducibleGeneratorError
from .kinetics import Generator

PIVOT_TOL = 1e-13
CLAMP_TOL = 1e-13


class ProbabilityVector(NamedTuple):
    p00: float
    p10: float
    p01: float
    p11: float

    @classmethod
    def from_array(cls, values) -> "ProbabilityVector":
        return cls(*(float(v) for v in values))


def _closed_channels(M: np.ndarray) -> list[str]:
    closed = []
    for dot in Dot:
        for n in (0, 1):
            empty = channel_state(dot, n, 0)
            full = channel_state(dot, n, 1)
            if M[full, empty] == 0 or M[empty, full] == 0:
                closed.append(f"dot {dot.name.lower()} (other dot n={n})")
    return closed


def _reducible(M: np.ndarray, detail: str = "") -> ReducibleGeneratorError:
    closed = ", ".join(_closed_channels(M)) or "none identified"
    return ReducibleGeneratorError(f"no unique stationary state{detail}; closed channels: {closed}")


def _solve_gth(M: np.ndarray) -> np.ndarray:
    # Grassmann-Taksar-Heyman state reduction on the off-diagonal rates.
    # Only sums and products of non-negative numbers occur, so every
    # component keeps full relative accuracy however small it is.
    # Plain floats: for a 4x4 matrix the array overhead would dominate.
    n = M.shape[0]
    R = M.T.tolist()  # R[i][j] = rate i -> j
    for k in range(n - 1, 0, -1):
        row = R[k]
        s = 0.0
        for j in range(k):
            s += row[j]
        if not s > 0:
            raise _reducible(M)
        for i in range(k):
            ri = R[i]
            ri[k] /= s
            f = ri[k]
            for j in range(k):
                if j != i:
                    ri[j] += f * row[j]
    pi = [1.0] + [0.0] * (n - 1)
    for k in range(1, n):
        acc = 0.0
        for i in range(k):
            acc += pi[i] * R[i][k]
        pi[k] = acc
    total = sum(pi)
    return np.array(pi) / total


def _solve_replace_row(M: np.ndarray) -> np.ndarray:
    scale = np.abs(M).sum(axis=0).max()
    A = M / scale
    A[0] = 1.0
    with warnings.catch_warnings():
        # a singular factorisation is reported through the pivot check below
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(A, check_finite=False)
    if np.abs(np.diag(lu)).min() < PIVOT_TOL:
        raise _reducible(M, " (vanishing pivot)")
    return scipy.linalg.lu_solve((lu, piv), np.array([1.0, 0.0, 0.0, 0.0]), check_finite=False)


def solve_stationary(gen: Generator, method: str = "gth") -> ProbabilityVector:
    """Solve ``M p = 0`` with ``sum(p) = 1``.

    ``method="gth"`` (default) eliminates states one by one without
    subtraction and stays accurate when some escape rates are many orders of
    magnitude below others. ``method="lu"`` replaces the first row of the
    norm-scaled generator by the normalisation row and solves the resulting
    system by LU with partial pivoting.

    Raises
    ------
    ReducibleGeneratorError
        If the stationary state is not unique.
    """
    M = gen.M
    if not np.abs(M).max() > 0:
        raise ReducibleGeneratorError("no unique stationary state: all rates vanish")
    if method == "gth":
        p = _solve_gth(M)
    elif method == "lu":
        p = _solve_replace_row(M)
    else:
        raise ValueError(f"unknown method {method!r}")
    if p.min() < -CLAMP_TOL:
        raise ReducibleGeneratorError(f"stationary solve produced negative probability {p.min():.3e}")
    if p.min() < 0:
        p = np.clip(p, 0.0, None)
        p /= p.sum()
    return ProbabilityVector.from_array(p)


def spectral_gap(gen: Generator) -> float:
    """Slowest non-zero relaxation rate of ``M``."""
    lam = np.sort(np.abs(np.linalg.eigvals(gen.M).real))
    return float(lam[1])


def _conserving(D: np.ndarray) -> np.ndarray:
    # columns of a probability-conserving increment sum to zero; set the
    # diagonal from the off-diagonal entries, as for M itself
    D = D.copy()
    np.fill_diagonal(D, 0.0)
    D[np.diag_indices_from(D)] = -D.sum(axis=0)
    return D


def _rk4_increment(M: np.ndarray, dt: float) -> np.ndarray:
    """``P - I`` for one classical RK4 step ``p -> P p`` of ``dp/dt = M p``."""

    def f(y):
        return M @ y

    # stages applied to every basis vector at once, with the identity part
    # of y kept implicit: y = I + Y
    eye = np.eye(M.shape[0])
    k1 = f(eye)
    k2 = f(eye + dt / 2 * k1)
    k3 = f(eye + dt / 2 * k2)
    k4 = f(eye + dt * k3)
    return _conserving(dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4))


def _compose(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    # (I + A)(I + B) - I, without ever forming I + A
    return _conserving(A + B + A @ B)


def evolve(gen: Generator, p0, t_final: float, dt: float) -> ProbabilityVector:
    """Integrate ``dp/dt = M p`` from ``p0`` to ``t_final`` with fixed-step RK4.

    The step is shortened to ``t_final / ceil(t_final / dt)`` so that an
    integer number of steps lands on ``t_final``. Because the system is
    linear and autonomous, the ``n`` identical steps are composed by binary
    exponentiation of the one-step propagator ``P``. ``P`` is carried as
    ``P - I``: slow states change by far less than one ulp of 1 per step, and
    forming ``I + (P - I)`` would round those changes away.
    """
    M = gen.M
    rate = np.abs(np.diag(M)).max()
    if not dt > 0 or dt * rate >= 0.1:
        raise InvalidParameterError(f"step dt={dt} violates dt*max|M_ii| < 0.1 (max|M_ii|={rate})")
    if t_final < 0:
        raise InvalidParameterError("t_final must be non-negative")
    p = np.asarray(p0, dtype=float)
    steps = math.ceil(t_final / dt) if t_final > 0 else 0
    if steps == 0 or rate == 0:
        return ProbabilityVector.from_array(p)
    power = _rk4_increment(M, t_final / steps)
    total = np.zeros_like(power)
    while steps:
        if steps & 1:
            total = _compose(total, power)
        steps >>= 1
        if steps:
            power = _compose(power, power)
    return ProbabilityVector.from_array(p + total @ p)


def gibbs_equilibrium(device: DeviceSpec, bath: BathSpec, charging: ChargingEnergies) -> ProbabilityVector:
    """Grand-canonical distribution of the four states in contact with one bath.

    ``bath`` may also be a pair of baths, which must then be identical.
    """
    if isinstance(bath, (tuple, list)):
        left, right = bath
        if left != right:
            raise InvalidParameterError("Gibbs state requires identical baths")
        bath = left
    energy = np.array([
        s.n_t * (device.eps_t + charging.U_t0)
        + s.n_b * (device.eps_b + charging.U_b0)
        + s.n_t * s.n_b * charging.U
        - bath.mu * (s.n_t + s.n_b)
        for s in STATES
    ])
    w = np.exp(-(energy - energy.min()) / bath.T)
    return ProbabilityVector.from_array(w / w.sum())
