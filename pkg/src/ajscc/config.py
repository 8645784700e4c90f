"""Flat key=value run configuration: presets, file parsing, validation.

The format is one `key = value` pair per line, '#' comments and blank lines
allowed. Unknown keys are rejected by name. Loading re-runs every dataclass
invariant, so a config file cannot smuggle in inconsistent parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path

from .circuit import CircuitConfig
from .errors import ParameterError
from .experiments import SweepSpec
from .mapping import MappingParams
from .presets import paper_mapping, prototype_mapping

MAPPING_KEYS = {
    "delta_h": float,
    "v_r": float,
    "num_levels": int,
    "gain": float,
    "connector_len": float,
    "t_offset": float,
    "t_max_raw": float,
    "h_offset": float,
    "h_max_raw": float,
}
CIRCUIT_KEYS = {
    "rail_low": float,
    "rail_high": float,
    "sat_margin": float,
    "sat_margin_low": float,
    "saturation_voltage": float,
    "threshold_tolerance": float,
}
RUN_KEYS = {
    "csnr_db_list": "float_list",
    "trials": int,
    "seed": int,
    "encoder": str,
    "input_distribution": str,
    "fixed_v_t": float,
    "fixed_v_h": float,
    "num_sensors": int,
    "out_dir": str,
}


@dataclass(frozen=True)
class RunConfig:
    """Everything a CLI command needs: mapping, circuit, channel/sweep, output."""

    mapping: MappingParams
    circuit: CircuitConfig
    csnr_db_list: tuple[float, ...]
    trials: int
    seed: int
    encoder: str = "ideal"
    input_distribution: str = "uniform"
    fixed_v_t: float | None = None
    fixed_v_h: float | None = None
    num_sensors: int = 3
    out_dir: str = "."


def paper_run_config(seed: int = 12345) -> RunConfig:
    """Reference setup: 11 levels, delta_h 0.3 V, three FDMA sensors."""
    return RunConfig(
        mapping=paper_mapping(),
        circuit=CircuitConfig(seed=seed),
        csnr_db_list=tuple(float(c) for c in range(0, 45, 5)),
        trials=10000,
        seed=seed,
    )


def prototype_run_config(seed: int = 12345) -> RunConfig:
    """Same as the reference setup with zero-length connectors."""
    return replace(paper_run_config(seed), mapping=prototype_mapping())


PRESETS = {"paper": paper_run_config, "prototype": prototype_run_config}


def _parse_value(key: str, kind, raw: str):
    try:
        if kind is float:
            return float(raw)
        if kind is int:
            return int(raw)
        if kind == "float_list":
            return tuple(float(part.strip()) for part in raw.split(",") if part.strip())
    except ValueError:
        raise ParameterError(f"config key '{key}': cannot parse value {raw!r}") from None
    return raw


def parse_kv_text(text: str) -> dict:
    """Parse key=value lines into a typed dict; unknown keys are named and rejected."""
    values = {}
    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParameterError(f"config line {line_no}: expected key=value, got {line!r}")
        key, _, raw = line.partition("=")
        key = key.strip()
        raw = raw.strip()
        if key in MAPPING_KEYS:
            values[key] = _parse_value(key, MAPPING_KEYS[key], raw)
        elif key in CIRCUIT_KEYS:
            values[key] = _parse_value(key, CIRCUIT_KEYS[key], raw)
        elif key in RUN_KEYS:
            values[key] = _parse_value(key, RUN_KEYS[key], raw)
        else:
            raise ParameterError(f"unknown config key '{key}' (line {line_no})")
    return values


def apply_overrides(base: RunConfig, values: dict) -> RunConfig:
    """Overlay parsed key=value entries on a base config, revalidating everything."""
    mapping_updates = {k: v for k, v in values.items() if k in MAPPING_KEYS}
    circuit_updates = {k: v for k, v in values.items() if k in CIRCUIT_KEYS}
    run_updates = {k: v for k, v in values.items() if k in RUN_KEYS}
    mapping = replace(base.mapping, **mapping_updates) if mapping_updates else base.mapping
    circuit = replace(base.circuit, **circuit_updates) if circuit_updates else base.circuit
    run = replace(base, mapping=mapping, circuit=circuit, **run_updates)
    if "seed" in run_updates:
        run = replace(run, circuit=replace(run.circuit, seed=run.seed))
    _validate_run(run)
    return run


def load_run_config(path, base: RunConfig) -> RunConfig:
    return apply_overrides(base, parse_kv_text(Path(path).read_text(encoding="utf-8")))


def _validate_run(run: RunConfig) -> None:
    if run.trials < 1:
        raise ParameterError("trials must be >= 1")
    if run.seed < 0:
        raise ParameterError("seed must be >= 0")
    if not run.csnr_db_list:
        raise ParameterError("csnr_db_list must be nonempty")
    if any(math.isnan(c) for c in run.csnr_db_list):
        raise ParameterError("csnr_db_list entries must not be NaN")


def to_sweep_spec(run: RunConfig) -> SweepSpec:
    """Build the experiment spec for cmd_sweep; SweepSpec revalidates it all."""
    return SweepSpec(
        csnr_points=run.csnr_db_list,
        trials_per_point=run.trials,
        params=run.mapping,
        config=run.circuit,
        encoder=run.encoder,
        input_kind=run.input_distribution,
        fixed_v_t=run.fixed_v_t,
        fixed_v_h=run.fixed_v_h,
        seed=run.seed,
        num_sensors=run.num_sensors,
    )
