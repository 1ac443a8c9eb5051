"""Randomised invariant suite over feasible parameter draws."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

import numpy as np

from .device import DeviceSpec, OperatingPoint, baths_from_operating_point
from .electrostatics import (
    CapacitanceNetwork,
    Capacitive,
    Direct,
    PaperSymmetric,
    charging_energies,
    coupling_energy,
    electrostatic_energy,
    lead_offsets,
    symmetric_coupling_energy,
)
from .kinetics import RateTable, build_generator, rate_table
from .observables import invariant_failures, transport_report
from .steady_state import evolve, gibbs_equilibrium, solve_stationary, spectral_gap
from .sweep import onsager_check

FAULTS = ("rate_sign",)


@dataclass(frozen=True)
class Draw:
    device: DeviceSpec
    op: OperatingPoint


def random_charging(rng: np.random.Generator):
    kind = rng.integers(3)
    if kind == 0:
        return PaperSymmetric(kappa=rng.uniform(5, 40), U=rng.uniform(0, 60))
    if kind == 1:
        return Direct(U=rng.uniform(0, 40), U_t0=rng.uniform(-10, 10), U_b0=rng.uniform(-10, 10))
    caps = rng.uniform(0.05, 0.5, size=4)
    return Capacitive(CapacitanceNetwork(*caps, C=rng.uniform(0, 0.5)))


def random_device(rng: np.random.Generator, lead_symmetric: bool = False) -> DeviceSpec:
    gamma = rng.uniform(0.2, 2.0, size=(2, 2, 2))
    if lead_symmetric:
        gamma[..., 1] = gamma[..., 0]
    return DeviceSpec.from_level_difference(rng.uniform(-6, 6), gamma, random_charging(rng))


def random_operating_point(rng: np.random.Generator) -> OperatingPoint:
    T = rng.uniform(1, 12)
    return OperatingPoint(T, rng.uniform(-1.6, 1.6) * T, rng.uniform(-10, 10))


def random_draw(rng: np.random.Generator) -> Draw:
    return Draw(random_device(rng), random_operating_point(rng))


def symmetric_charging(rng: np.random.Generator):
    """A charging model whose lead offsets swap exactly under ``dV -> -dV``."""
    kind = rng.integers(3)
    if kind == 0:
        return PaperSymmetric(kappa=rng.uniform(5, 40), U=rng.uniform(0, 60))
    if kind == 1:
        return Direct(U=rng.uniform(0, 40), U_t0=rng.uniform(-10, 10), U_b0=rng.uniform(-10, 10))
    c_t, c_b = rng.uniform(0.05, 0.5, size=2)
    return Capacitive(CapacitanceNetwork(c_t, c_t, c_b, c_b, C=rng.uniform(0, 0.5)))


def linear_response_device(rng: np.random.Generator) -> tuple[DeviceSpec, float]:
    """Device and temperature with transition energies within a few ``T`` of the leads."""
    T = rng.uniform(3, 12)
    device = DeviceSpec.from_level_difference(
        rng.uniform(-3, 3),
        rng.uniform(0.2, 2.0, size=(2, 2, 2)),
        Direct(U=rng.uniform(0, 2 * T), U_t0=rng.uniform(-2 * T, 0), U_b0=rng.uniform(-2 * T, 0)),
    )
    return device, T


def _solve(device, op, fault=None):
    baths = baths_from_operating_point(op)
    charging = charging_energies(device.charging, op.dV)
    rates = rate_table(device, baths, lead_offsets(device.charging, op.dV, charging), charging)
    if fault == "rate_sign":
        corrupted = rates.rates.copy()
        corrupted[0, 0, 0, 0] *= -1
        rates = dataclasses.replace(rates, rates=corrupted)
    gen = build_generator(rates)
    p = solve_stationary(gen)
    return charging, rates, gen, p, transport_report(rates, p)


def relaxation_time(gen) -> float:
    return 50.0 / spectral_gap(gen)


def oracle_step(gen) -> float:
    return 0.05 / np.abs(np.diag(gen.M)).max()


# --- individual checks; each returns a list of failure messages ------------


def check_equilibrium(device, T, fault=None) -> list[str]:
    op = OperatingPoint(T, 0.0, 0.0)
    charging, rates, gen, p, report = _solve(device, op, fault)
    failures = []
    worst = max(abs(v) for v in report.currents().values())
    if not worst < 1e-12:
        failures.append(f"equilibrium nullity (max |current| {worst:.3e})")
    gibbs = gibbs_equilibrium(device, baths_from_operating_point(op), charging)
    err = np.abs(np.subtract(p, gibbs)).max()
    if not err < 1e-12:
        failures.append(f"Gibbs equality (max deviation {err:.3e})")
    return failures


def check_oracle(device, op, fault=None) -> list[str]:
    _, _, gen, p, _ = _solve(device, op, fault)
    pt = evolve(gen, (1.0, 0.0, 0.0, 0.0), relaxation_time(gen), oracle_step(gen))
    err = np.abs(np.subtract(p, pt)).max()
    return [] if err < 1e-8 else [f"oracle equivalence (max deviation {err:.3e})"]


def check_conservation(device, op, fault=None) -> list[str]:
    report = _solve(device, op, fault)[-1]
    return invariant_failures(report)


def check_mirror(device, op, fault=None) -> list[str]:
    fwd = _solve(device, op, fault)[-1]
    rev = _solve(device, OperatingPoint(op.T_mean, -op.dT, -op.dV), fault)[-1]
    failures = []
    if not abs(fwd.J_rho + rev.J_rho) < 1e-12:
        failures.append(f"mirror antisymmetry of J_rho (residual {fwd.J_rho + rev.J_rho:.3e})")
    if not abs(fwd.Q_R_in + rev.Q_L_out) < 1e-12:
        failures.append(f"mirror antisymmetry of heat (residual {fwd.Q_R_in + rev.Q_L_out:.3e})")
    return failures


def check_onsager(device, T) -> list[str]:
    result = onsager_check(device, T)
    failures = []
    if not result.asymmetry < 1e-5:
        failures.append(f"Onsager reciprocity (relative asymmetry {result.asymmetry:.3e})")
    if not (result.L[0, 0] > 0 and result.L[1, 1] > 0):
        failures.append("positive diagonal response coefficients")
    return failures


def check_electrostatics(rng) -> list[str]:
    net = CapacitanceNetwork(*rng.uniform(0.05, 0.5, size=4), C=rng.uniform(0, 0.5))
    V_L, V_R = rng.uniform(-5, 5, size=2)
    e = {(nt, nb): electrostatic_energy(net, nt, nb, V_L, V_R) for nt in (0, 1) for nb in (0, 1)}
    second = e[1, 1] - e[1, 0] - e[0, 1] + e[0, 0]
    failures = []
    if not abs(second - coupling_energy(net)) < 1e-12:
        failures.append(f"coupling energy vs second difference ({second - coupling_energy(net):.3e})")
    c_a, c = rng.uniform(0.05, 0.5, size=2)
    sym = CapacitanceNetwork.symmetric(c_a, c)
    if not abs(coupling_energy(sym) - symmetric_coupling_energy(c_a, c)) < 1e-12:
        failures.append("symmetric coupling energy closed form")
    kappa = 1 / c_a
    U = symmetric_coupling_energy(c_a, c)
    dV = rng.uniform(-5, 5)
    closed = lead_offsets(PaperSymmetric(kappa, U), dV)
    full = lead_offsets(Capacitive(sym), dV)
    if not np.abs(closed - full).max() < 1e-12:
        failures.append(f"closed-form lead offsets vs capacitive ({np.abs(closed - full).max():.3e})")
    return failures


@dataclass
class ValidationReport:
    seed: int
    trials: int
    counts: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        lines = [f"validation seed={self.seed} trials={self.trials}"]
        for name, n in self.counts.items():
            bad = len({f[0] for f in self.failures if f[1] == name})
            lines.append(f"  {'PASS' if bad == 0 else 'FAIL'} {name}: {n - bad}/{n}")
        for trial, name, message, draw in self.failures[:20]:
            lines.append(f"  trial {trial} [{name}] {message}\n    draw: {draw}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def run_validation(seed: int = 0, trials: int = 1000, fault: str | None = None) -> ValidationReport:
    """Run the invariant suite on ``trials`` draws from ``numpy.random.default_rng(seed)``.

    ``fault`` injects a known defect (see :data:`FAULTS`) to confirm the
    suite detects it.
    """
    if fault is not None and fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}")
    rng = np.random.default_rng(seed)
    report = ValidationReport(seed, trials)
    names = ("equilibrium", "oracle", "conservation", "mirror", "onsager", "electrostatics")
    report.counts = {n: 0 for n in names}
    for trial in range(trials):
        draw = random_draw(rng)
        mirror_dev = dataclasses.replace(
            random_device(rng, lead_symmetric=True), charging=symmetric_charging(rng)
        )
        lr_device, lr_T = linear_response_device(rng)
        checks = {
            "equilibrium": (lambda: check_equilibrium(draw.device, draw.op.T_mean, fault), draw),
            "oracle": (lambda: check_oracle(draw.device, draw.op, fault), draw),
            "conservation": (lambda: check_conservation(draw.device, draw.op, fault), draw),
            "mirror": (lambda: check_mirror(mirror_dev, draw.op, fault), Draw(mirror_dev, draw.op)),
            "onsager": (lambda: check_onsager(lr_device, lr_T), (lr_device, lr_T)),
            "electrostatics": (lambda: check_electrostatics(rng), f"rng state after trial {trial}"),
        }
        for name, (run, context) in checks.items():
            report.counts[name] += 1
            try:
                messages = run()
            except Exception as exc:  # a failed solve is a failed invariant
                messages = [f"{type(exc).__name__}: {exc}"]
            for m in messages:
                report.failures.append((trial, name, m, context))
    return report
