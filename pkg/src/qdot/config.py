"""JSON run configuration: parsing, validation and conversion to model objects."""

from __future__ import annotations

import json
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .device import DeviceSpec, OperatingPoint
from .electrostatics import CapacitanceNetwork, Capacitive, Direct, PaperSymmetric
from .errors import InvalidParameterError
from .sweep import Axis, GridSpec


class ConfigError(InvalidParameterError):
    pass


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class PaperSymmetricConfig(_Strict):
    model: Literal["paper_symmetric"]
    kappa: float = Field(gt=0)
    U: float = Field(ge=0)


class DirectConfig(_Strict):
    model: Literal["direct"]
    U: float = Field(ge=0)
    U_t0: float = 0.0
    U_b0: float = 0.0


class CapacitiveConfig(_Strict):
    model: Literal["capacitive"]
    C_tL: float = Field(gt=0)
    C_tR: float = Field(gt=0)
    C_bL: float = Field(gt=0)
    C_bR: float = Field(gt=0)
    C: float = Field(ge=0)


ChargingConfig = Annotated[
    Union[PaperSymmetricConfig, DirectConfig, CapacitiveConfig], Field(discriminator="model")
]

# gamma[dot][n_other][lead], or a single number for uniform coupling
GammaTable = list[list[list[Annotated[float, Field(ge=0)]]]]


class DeviceConfig(_Strict):
    delta_eps: float
    gamma: Union[Annotated[float, Field(gt=0)], GammaTable] = 1.0
    charging: ChargingConfig

    @model_validator(mode="after")
    def _gamma_shape(self):
        if isinstance(self.gamma, list):
            if len(self.gamma) != 2 or any(len(a) != 2 or any(len(b) != 2 for b in a) for a in self.gamma):
                raise ValueError("gamma table must have shape [2][2][2] (dot, n_other, lead)")
        return self


class OperatingConfig(_Strict):
    T: float = Field(gt=0)
    dT: float = 0.0
    dV: float = 0.0

    @model_validator(mode="after")
    def _positive_baths(self):
        if not self.T - abs(self.dT) / 2 > 0:
            raise ValueError(f"dT={self.dT} makes a bath temperature non-positive for T={self.T}")
        return self


class AxisConfig(_Strict):
    name: Literal["U", "dT", "dV"]
    min: Optional[float] = None
    max: Optional[float] = None
    steps: Optional[int] = Field(default=None, ge=2)
    values: Optional[list[float]] = None

    @model_validator(mode="after")
    def _one_form(self):
        ranged = (self.min, self.max, self.steps)
        if self.values is not None:
            if any(v is not None for v in ranged):
                raise ValueError("give either values or min/max/steps, not both")
            if not self.values:
                raise ValueError("values must be non-empty")
        elif any(v is None for v in ranged):
            raise ValueError("min, max and steps are all required")
        elif not self.min < self.max:
            raise ValueError("min must be smaller than max")
        return self

    def to_axis(self) -> Axis:
        if self.values is not None:
            return Axis(self.name, tuple(self.values))
        return Axis.linspace(self.name, self.min, self.max, self.steps)


class GridConfig(_Strict):
    axes: list[AxisConfig] = Field(min_length=1, max_length=2)


class OutputConfig(_Strict):
    path: Optional[str] = None
    format: Literal["csv"] = "csv"
    precision: Optional[int] = Field(default=None, ge=1, le=17)


class RunConfig(_Strict):
    device: DeviceConfig
    operating: OperatingConfig
    grid: Optional[GridConfig] = None
    output: OutputConfig = OutputConfig()

    def to_device(self) -> DeviceSpec:
        ch = self.device.charging
        if isinstance(ch, PaperSymmetricConfig):
            charging = PaperSymmetric(kappa=ch.kappa, U=ch.U)
        elif isinstance(ch, DirectConfig):
            charging = Direct(U=ch.U, U_t0=ch.U_t0, U_b0=ch.U_b0)
        else:
            charging = Capacitive(CapacitanceNetwork(ch.C_tL, ch.C_tR, ch.C_bL, ch.C_bR, ch.C))
        return DeviceSpec.from_level_difference(self.device.delta_eps, self.device.gamma, charging)

    def to_operating_point(self) -> OperatingPoint:
        return OperatingPoint(self.operating.T, self.operating.dT, self.operating.dV)

    def to_grid(self) -> Optional[GridSpec]:
        if self.grid is None:
            return None
        axes = [a.to_axis() for a in self.grid.axes]
        return GridSpec(tuple(axes), self.to_device(), self.to_operating_point())

    def dumps(self) -> str:
        return self.model_dump_json(indent=2)


def _describe(err: ValidationError) -> str:
    lines = []
    for e in err.errors():
        loc = ".".join(str(x) for x in e["loc"] if not str(x).startswith("function-after"))
        lines.append(f"{loc or '<root>'}: {e['msg']}")
    return "\n".join(lines)


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON run configuration.

    Raises :class:`ConfigError` with line numbers for malformed JSON and key
    paths for schema violations, including the physical checks performed when
    building the device, operating point and grid.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    try:
        config = RunConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(_describe(exc)) from exc
    for key, build in (("device", config.to_device), ("grid", config.to_grid)):
        try:
            build()
        except InvalidParameterError as exc:
            raise ConfigError(f"{key}: {exc}") from exc
    return config


def load_config(path) -> RunConfig:
    with open(path) as fh:
        return parse_config(fh.read())
