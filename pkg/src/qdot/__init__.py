"""Steady-state transport through two Coulomb-coupled quantum dots."""

from .device import (
    BathSpec,
    DeviceSpec,
    Dot,
    Lead,
    OperatingPoint,
    SystemState,
    baths_from_operating_point,
    decompose,
    level_energies,
    state_index,
)
from .electrostatics import (
    CapacitanceNetwork,
    Capacitive,
    ChargingEnergies,
    Direct,
    PaperSymmetric,
    charging_energies,
    lead_offsets,
)
from .errors import InvalidParameterError, InvariantViolation, ReducibleGeneratorError
from .model import evaluate, solve
from .observables import TransportReport
from .steady_state import ProbabilityVector

__version__ = "0.1.0"
