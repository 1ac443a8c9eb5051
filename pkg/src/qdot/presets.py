"""Named run configurations ``fig2a`` .. ``fig6``.

Every preset uses ``T = 7.5``, ``delta_eps = 3``, ``kappa = 20`` and uniform
``gamma = 1``, plus its own fixed forces. The ``fig2*`` presets add a
"family" axis of curve values, which must be given with ``--set`` except for
the ``dT=0.2, dV=3`` curve that ``fig2c``, ``fig2d`` and ``fig5`` share.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .config import ConfigError, RunConfig

BASE = {
    "device": {
        "delta_eps": 3.0,
        "gamma": 1.0,
        "charging": {"model": "paper_symmetric", "kappa": 20.0, "U": 40.0},
    },
    "operating": {"T": 7.5, "dT": 0.0, "dV": 0.0},
}

U_RANGE = {"name": "U", "min": 0.0, "max": 80.0, "steps": 161}
FORCE_PLANE = [
    {"name": "dT", "min": -5.0, "max": 5.0, "steps": 201},
    {"name": "dV", "min": -5.0, "max": 5.0, "steps": 201},
]


@dataclass(frozen=True)
class _Figure:
    fixed: dict
    axes: list
    family: Optional[str] = None
    family_default: Optional[list] = None
    contour: Optional[str] = None


FIGURES = {
    "fig2a": _Figure({"dT": 5.0}, [U_RANGE], family="dV"),
    "fig2b": _Figure({"dV": 5.0}, [U_RANGE], family="dT"),
    "fig2c": _Figure({"dT": 0.2}, [U_RANGE], family="dV", family_default=[3.0]),
    "fig2d": _Figure({"dV": 3.0}, [U_RANGE], family="dT", family_default=[0.2]),
    "fig3": _Figure({"U": 40.0}, FORCE_PLANE, contour="J_rho"),
    "fig4": _Figure({"U": 40.0}, FORCE_PLANE, contour="J_u"),
    "fig5": _Figure({"dT": 0.2, "dV": 3.0}, [U_RANGE]),
    "fig6": _Figure({"U": 40.0}, FORCE_PLANE),
}

_DEVICE_KEYS = {"delta_eps": ("device", "delta_eps"), "gamma": ("device", "gamma")}
_CHARGING_KEYS = {"kappa", "U"}
_OPERATING_KEYS = {"T", "dT", "dV"}


@dataclass(frozen=True)
class FigurePreset:
    name: str
    config: RunConfig
    contour: Optional[str]


def _number(key, text):
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"--set {key}: expected a number, got {text!r}") from None


def figure_config(name: str, overrides: Optional[dict] = None) -> FigurePreset:
    """Build the run configuration for figure ``name`` with ``overrides`` applied.

    ``overrides`` maps keys to strings as given on the command line:
    ``T``, ``dT``, ``dV``, ``U``, ``kappa``, ``delta_eps``, ``gamma`` for fixed
    values; ``<axis>_min``, ``<axis>_max``, ``<axis>_steps`` for swept axes;
    and a comma-separated list for the ``fig2*`` family axis (e.g. ``dV=1,3,5``).
    """
    if name not in FIGURES:
        raise ConfigError(f"unknown figure {name!r}; valid names: {', '.join(FIGURES)}")
    fig = FIGURES[name]
    overrides = dict(overrides or {})
    data = {
        "device": {**BASE["device"], "charging": dict(BASE["device"]["charging"])},
        "operating": dict(BASE["operating"]),
    }
    axes = [dict(a) for a in fig.axes]
    swept = {a["name"]: a for a in axes}
    fixed = dict(fig.fixed)
    family = fig.family_default

    for key, text in overrides.items():
        stem, _, attr = key.rpartition("_")
        if fig.family is not None and key == fig.family:
            family = [_number(key, t) for t in text.split(",")]
        elif stem in swept and attr in ("min", "max", "steps"):
            swept[stem][attr] = int(text) if attr == "steps" else _number(key, text)
        elif key in swept:
            raise ConfigError(f"--set {key}: {key} is swept in {name}; use {key}_min/{key}_max/{key}_steps")
        elif key in _OPERATING_KEYS or key in _CHARGING_KEYS or key in _DEVICE_KEYS:
            fixed[key] = _number(key, text)
        else:
            raise ConfigError(f"--set {key}: unknown override key")

    if fig.family is not None:
        if family is None:
            raise ConfigError(
                f"{name} plots a family of curves in {fig.family}; the values are not stated, "
                f"supply them with --set {fig.family}=v1,v2,..."
            )
        axes.insert(0, {"name": fig.family, "values": sorted(family)})

    for key, value in fixed.items():
        if key in _OPERATING_KEYS:
            data["operating"][key] = value
        elif key in _CHARGING_KEYS:
            data["device"]["charging"][key] = value
        else:
            data["device"][key] = value
    data["grid"] = {"axes": axes}

    from .config import parse_config
    import json

    return FigurePreset(name, parse_config(json.dumps(data)), fig.contour)
