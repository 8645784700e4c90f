"""Behavioral model of the staged VCVS encoder circuit.

Each level owns one analog switch fed by a comparator pair: below its
activation window the switch passes ground, inside the window it passes the
level's VCVS output (Type 1 rising on odd levels, Type 2 falling on even
levels), above the window it passes a fixed saturation voltage. A summing
adder combines all level outputs into the encoded voltage.

Comparator thresholds are compared in units of delta_h (u = v_h0/delta_h
against the exactly representable half-integers n - 0.5) so the bank agrees
bit-for-bit with the ideal quantizer at region boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ParameterError
from .mapping import MappingParams, SensorReading, _check_range_array, remove_offset


class Region(Enum):
    OFF = "off"
    LINEAR = "linear"
    SATURATED = "saturated"


@dataclass(frozen=True)
class CircuitConfig:
    """Non-ideality knobs for the behavioral circuit.

    sat_margin / sat_margin_low   op-amp clipping margins from the high and
                                  low rails; the low margin defaults to 0 so
                                  the stock config reproduces ideal outputs,
                                  and setting it nonzero reproduces the
                                  "off level not exactly zero" leakage.
    saturation_voltage            mux "full" input per level; None resolves
                                  to v_r of the mapping in use.
    threshold_tolerance           multiplicative perturbation bound on the
                                  comparator references, seeded.
    """

    rail_low: float = 0.0
    rail_high: float = 5.0
    sat_margin: float = 0.05
    sat_margin_low: float = 0.0
    saturation_voltage: float | None = None
    threshold_tolerance: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not self.rail_low < self.rail_high:
            raise ParameterError("rail_low must be below rail_high")
        if self.sat_margin < 0 or self.sat_margin_low < 0:
            raise ParameterError("saturation margins must be >= 0")
        if not 0 <= self.threshold_tolerance < 1:
            raise ParameterError("threshold_tolerance must be in [0, 1)")

    @property
    def clip_lo(self) -> float:
        """Lower op-amp output bound; floored at 0 (single-supply ground)."""
        return max(self.rail_low + self.sat_margin_low, 0.0)

    @property
    def clip_hi(self) -> float:
        return self.rail_high - self.sat_margin

    def sat_voltage(self, params: MappingParams) -> float:
        return self.saturation_voltage if self.saturation_voltage is not None else params.v_r


@dataclass(frozen=True)
class LevelState:
    """One switch's operating region and the voltage it passes to the adder."""

    level: int
    region: Region
    output: float


def comparator_thresholds(params: MappingParams, config: CircuitConfig) -> np.ndarray:
    """Upper activation boundary of each level, in units of delta_h.

    Boundaries are shared between adjacent levels (one reference-divider tap
    each), so a perturbed bank still tiles the humidity axis without gaps.
    """
    base = np.arange(1, params.num_levels + 1) - 0.5
    if config.threshold_tolerance == 0:
        return base
    rng = np.random.default_rng(config.seed)
    wobble = rng.uniform(-config.threshold_tolerance, config.threshold_tolerance, base.size)
    return base * (1.0 + wobble)


def _region_masks(u: np.ndarray, thresholds: np.ndarray, level: int) -> tuple[np.ndarray, np.ndarray]:
    """(saturated, linear) masks for one level given u = v_h0/delta_h."""
    upper = thresholds[level - 1]
    saturated = u > upper
    if level == 1:
        linear = (u >= 0.0) & (u <= upper)
    else:
        linear = (u > thresholds[level - 2]) & (u <= upper)
    return saturated, linear


def comparator_bank(v_h0: float, params: MappingParams, config: CircuitConfig) -> list[Region]:
    """Operating region of every level for one humidity voltage.

    Accepts any finite v_h0: values above the top window saturate everything,
    values below ground switch everything off, as the hardware would.
    """
    u = np.asarray([v_h0 / params.delta_h])
    thresholds = comparator_thresholds(params, config)
    regions = []
    for level in range(1, params.num_levels + 1):
        saturated, linear = _region_masks(u, thresholds, level)
        if saturated[0]:
            regions.append(Region.SATURATED)
        elif linear[0]:
            regions.append(Region.LINEAR)
        else:
            regions.append(Region.OFF)
    return regions


def _clip(value, config: CircuitConfig):
    return np.clip(value, config.clip_lo, config.clip_hi)


def vcvs_type1(v_t0: float, params: MappingParams, config: CircuitConfig) -> float:
    """Rising VCVS: gain * v_t0, hard-clipped at the op-amp output bounds."""
    return float(_clip(params.gain * v_t0, config))


def vcvs_type2(v_t0: float, params: MappingParams, config: CircuitConfig) -> float:
    """Falling VCVS: the Type-1 output subtracted from v_r, then clipped."""
    return float(_clip(params.v_r - vcvs_type1(v_t0, params, config), config))


def level_output(
    region: Region,
    v_t0: float,
    level_parity: str,
    params: MappingParams,
    config: CircuitConfig,
) -> float:
    """Voltage one switch passes to the adder in the given region."""
    if region is Region.OFF:
        return float(_clip(0.0, config))
    if region is Region.SATURATED:
        return float(_clip(config.sat_voltage(params), config))
    if level_parity == "odd":
        return vcvs_type1(v_t0, params, config)
    return vcvs_type2(v_t0, params, config)


def level_states(reading: SensorReading, params: MappingParams, config: CircuitConfig) -> list[LevelState]:
    """Full per-level snapshot (region and output) for one raw reading."""
    norm = remove_offset(reading, params)
    regions = comparator_bank(norm.v_h0, params, config)
    return [
        LevelState(level, region, level_output(region, norm.v_t0, _parity(level), params, config))
        for level, region in enumerate(regions, start=1)
    ]


def _parity(level: int) -> str:
    return "odd" if level % 2 == 1 else "even"


def circuit_output_many(
    v_t0, v_h0, params: MappingParams, config: CircuitConfig, levels: tuple[int, ...] | None = None
) -> np.ndarray:
    """Summed switch outputs over normalized input arrays.

    ``levels`` restricts the sum to a subset of levels (used for per-stage
    surfaces); None sums the whole stack, i.e. the encoder output.
    """
    v_t0 = np.asarray(v_t0, dtype=float)
    v_h0 = np.asarray(v_h0, dtype=float)
    u = v_h0 / params.delta_h
    thresholds = comparator_thresholds(params, config)
    sat_v = float(_clip(config.sat_voltage(params), config))
    off_v = float(_clip(0.0, config))
    type1 = _clip(params.gain * v_t0, config)
    type2 = _clip(params.v_r - type1, config)

    total = np.zeros(np.broadcast(v_t0, v_h0).shape, dtype=float)
    for level in levels if levels is not None else range(1, params.num_levels + 1):
        saturated, linear = _region_masks(u, thresholds, level)
        lin_v = type1 if level % 2 == 1 else type2
        total += np.where(saturated, sat_v, np.where(linear, lin_v, off_v))
    return total


def circuit_encode(reading: SensorReading, params: MappingParams, config: CircuitConfig) -> float:
    """Encoder output of the full circuit for one raw reading."""
    norm = remove_offset(reading, params)
    out = circuit_output_many(np.asarray([norm.v_t0]), np.asarray([norm.v_h0]), params, config)
    return float(out[0])


def circuit_encode_many(v_t, v_h, params: MappingParams, config: CircuitConfig) -> np.ndarray:
    """Vectorized circuit encoder over raw sensor voltage arrays."""
    v_t = np.asarray(v_t, dtype=float)
    v_h = np.asarray(v_h, dtype=float)
    _check_range_array(v_t, params.t_offset, params.t_max_raw, "v_t")
    _check_range_array(v_h, params.h_offset, params.h_max_raw, "v_h")
    return circuit_output_many(v_t - params.t_offset, v_h - params.h_offset, params, config)


def num_stages(params: MappingParams) -> int:
    """Stage count: two levels per stage, plus a final half stage if L is odd."""
    return (params.num_levels + 1) // 2


@dataclass(frozen=True)
class SurfaceGrid:
    """Stage output sampled on a raw (v_t, v_h) grid; output[i, j] pairs v_t[i] with v_h[j]."""

    v_t: np.ndarray
    v_h: np.ndarray
    output: np.ndarray


def stage_surface(
    stage_index: int,
    t_grid: int,
    h_grid: int,
    params: MappingParams,
    config: CircuitConfig,
) -> SurfaceGrid:
    """Output of one stage (its one or two levels summed) over the raw input plane."""
    if not 1 <= stage_index <= num_stages(params):
        raise ParameterError(
            f"stage_index={stage_index} outside [1, {num_stages(params)}]"
        )
    if t_grid < 2 or h_grid < 2:
        raise ParameterError("t_grid and h_grid must be >= 2")
    stage_levels = tuple(
        lev for lev in (2 * stage_index - 1, 2 * stage_index) if lev <= params.num_levels
    )
    v_t = np.linspace(params.t_offset, params.t_max_raw, t_grid)
    v_h = np.linspace(params.h_offset, params.h_max_raw, h_grid)
    tt, hh = np.meshgrid(v_t - params.t_offset, v_h - params.h_offset, indexing="ij")
    out = circuit_output_many(tt.ravel(), hh.ravel(), params, config, levels=stage_levels)
    return SurfaceGrid(v_t, v_h, out.reshape(t_grid, h_grid))
