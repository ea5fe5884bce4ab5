"""Run configuration: a small TOML file with ``[params]``, ``[sim]``, ``[state]``.

Example::

    percent = true          # rate-like inputs below are in percent

    [params]
    lambda = 0.3
    pi_n = 2.0              # 2 % -> 0.02

    [sim]
    n_paths = 400
    seed = 7

    [state]                 # reference state for one-step comparisons
    pi = 3.0

    [initial]               # simulation start; defaults to the steady state
    x = 0.01

Missing keys take the library defaults. Command-line flags override values
from the file.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, fields
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from mogir import model_core
from mogir.errors import InvalidConfig
from mogir.model_core import EconState, ModelParams
from mogir.simulation import SimConfig

OUTPUT_FORMATS = ("table", "csv", "json")

# keys divided by 100 when ``percent = true``
PERCENT_KEYS = {
    "params": ("delta", "r", "pi_n", "sigma_pi"),
    "state": ("pi", "i"),
    "initial": ("pi", "i"),
}

_PARAM_ALIASES = {"lambda": "lam"}
_PARAM_KEYS = {f.name for f in fields(ModelParams)}
_SIM_KEYS = {"horizon", "burn_in", "n_paths", "seed"}
_STATE_KEYS = {"x", "pi", "y_pot", "i"}
_TOP_KEYS = {"percent", "params", "sim", "state", "initial"}


@dataclass(frozen=True)
class RunConfig:
    params: ModelParams
    sim: SimConfig
    reference_state: EconState
    output_format: str = "table"
    output_path: Path | None = None


def _number(section: str, key: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidConfig("NonNumericValue", f"[{section}] {key} must be a number, got {value!r}")
    return float(value)


def _section(raw: dict, name: str) -> dict:
    sec = raw.get(name, {})
    if not isinstance(sec, dict):
        raise InvalidConfig("MalformedSection", f"[{name}] must be a table")
    return sec


def _state(sec: dict, name: str, base: EconState, scale: float) -> EconState:
    values = {f.name: getattr(base, f.name) for f in fields(EconState)}
    for key, value in sec.items():
        if key not in _STATE_KEYS:
            raise InvalidConfig("UnknownKey", f"[{name}] has unknown key {key!r}")
        v = _number(name, key, value)
        values[key] = v / scale if key in PERCENT_KEYS[name] else v
    return EconState(**values)


def parse_config(raw: dict) -> tuple[ModelParams, dict, EconState, EconState | None]:
    unknown = set(raw) - _TOP_KEYS
    if unknown:
        raise InvalidConfig("UnknownKey", f"unknown top-level keys {sorted(unknown)}")
    percent = raw.get("percent", False)
    if not isinstance(percent, bool):
        raise InvalidConfig("NonBooleanPercent", f"percent must be true or false, got {percent!r}")
    scale = 100.0 if percent else 1.0

    values = {}
    for key, value in _section(raw, "params").items():
        name = _PARAM_ALIASES.get(key, key)
        if name not in _PARAM_KEYS:
            raise InvalidConfig("UnknownKey", f"[params] has unknown key {key!r}")
        v = _number("params", key, value)
        values[name] = v / scale if name in PERCENT_KEYS["params"] else v
    params = model_core.validate_params(ModelParams(**values))

    sim = {}
    for key, value in _section(raw, "sim").items():
        if key not in _SIM_KEYS:
            raise InvalidConfig("UnknownKey", f"[sim] has unknown key {key!r}")
        if isinstance(value, bool) or not isinstance(value, int):
            raise InvalidConfig("NonIntegerSetting", f"[sim] {key} must be an integer, got {value!r}")
        sim[key] = value

    steady = model_core.steady_state(params)
    reference = _state(_section(raw, "state"), "state", steady, scale)
    initial = None
    if "initial" in raw:
        initial = _state(_section(raw, "initial"), "initial", steady, scale)
    return params, sim, reference, initial


def load_run_config(
    path: str | Path | None = None,
    *,
    seed: int | None = None,
    output_format: str = "table",
    output_path: str | Path | None = None,
) -> RunConfig:
    raw: dict = {}
    if path is not None:
        try:
            with open(path, "rb") as fh:
                raw = tomllib.load(fh)
        except OSError as exc:
            raise InvalidConfig("UnreadableConfig", f"{path}: {exc.strerror or exc}")
        except tomllib.TOMLDecodeError as exc:
            raise InvalidConfig("MalformedConfig", f"{path}: {exc}")
    params, sim, reference, initial = parse_config(raw)
    if seed is not None:
        sim["seed"] = seed
    if output_format not in OUTPUT_FORMATS:
        raise InvalidConfig("UnknownFormat", f"format must be one of {OUTPUT_FORMATS}")
    return RunConfig(
        params=params,
        sim=SimConfig(initial=initial, **sim),
        reference_state=reference,
        output_format=output_format,
        output_path=Path(output_path) if output_path is not None else None,
    )
