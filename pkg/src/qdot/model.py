"""End-to-end evaluation of one device at one operating point."""

from __future__ import annotations

from dataclasses import dataclass

from .device import DeviceSpec, OperatingPoint, baths_from_operating_point
from .electrostatics import ChargingEnergies, charging_energies, lead_offsets
from .kinetics import Generator, RateTable, build_generator, rate_table
from .observables import TransportReport, transport_report
from .steady_state import ProbabilityVector, solve_stationary


@dataclass(frozen=True)
class Solution:
    charging: ChargingEnergies
    rates: RateTable
    generator: Generator
    p: ProbabilityVector
    report: TransportReport


def solve(device: DeviceSpec, op: OperatingPoint) -> Solution:
    baths = baths_from_operating_point(op)
    charging = charging_energies(device.charging, op.dV)
    offsets = lead_offsets(device.charging, op.dV, charging)
    rates = rate_table(device, baths, offsets, charging)
    gen = build_generator(rates)
    p = solve_stationary(gen)
    return Solution(charging, rates, gen, p, transport_report(rates, p))


def evaluate(device: DeviceSpec, op: OperatingPoint) -> TransportReport:
    """Stationary transport report for ``device`` at ``op``."""
    return solve(device, op).report
