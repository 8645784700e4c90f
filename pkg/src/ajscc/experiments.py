"""Monte-Carlo and deterministic sweeps over the encode/channel/decode chain.

Every sweep point owns an independent generator seeded from
(seed, sensor_id, point_index), so points and sensors can run in any order
or in parallel and still reproduce bit-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import measure_signal_power, noise_sigma, transmit
from .circuit import CircuitConfig, circuit_output_many
from .errors import ParameterError, RangeError
from .mapping import MappingParams, decode_many, encode_many

ENCODERS = ("ideal", "circuit")
INPUT_KINDS = ("uniform", "fixed", "grid")


@dataclass(frozen=True)
class SweepSpec:
    """One SDR-vs-CSNR experiment definition.

    input_kind "uniform" draws both sources uniformly over their normalized
    spans; "fixed" repeats one raw operating point (fixed_v_t, fixed_v_h);
    "grid" uses an n-by-n lattice with n = ceil(sqrt(trials_per_point)), so
    the effective trial count is n*n.
    """

    csnr_points: tuple[float, ...]
    trials_per_point: int
    params: MappingParams
    config: CircuitConfig | None = None
    encoder: str = "ideal"
    input_kind: str = "uniform"
    fixed_v_t: float | None = None
    fixed_v_h: float | None = None
    seed: int = 0
    num_sensors: int = 1

    def __post_init__(self):
        if len(self.csnr_points) == 0:
            raise ParameterError("csnr_points must be nonempty")
        if any(b <= a for a, b in zip(self.csnr_points, self.csnr_points[1:])):
            raise ParameterError("csnr_points must be strictly increasing")
        if any(math.isnan(c) or c == -math.inf for c in self.csnr_points):
            raise ParameterError("csnr_points must be finite or +inf")
        if self.trials_per_point < 1:
            raise ParameterError("trials_per_point must be >= 1")
        if self.encoder not in ENCODERS:
            raise ParameterError(f"encoder must be one of {ENCODERS}, got {self.encoder!r}")
        if self.input_kind not in INPUT_KINDS:
            raise ParameterError(f"input_kind must be one of {INPUT_KINDS}, got {self.input_kind!r}")
        if self.input_kind == "fixed":
            if self.fixed_v_t is None or self.fixed_v_h is None:
                raise ParameterError("fixed input mode needs fixed_v_t and fixed_v_h")
            p = self.params
            if not p.t_offset <= self.fixed_v_t <= p.t_max_raw:
                raise RangeError("fixed_v_t", self.fixed_v_t, p.t_offset, p.t_max_raw)
            if not p.h_offset <= self.fixed_v_h <= p.h_max_raw:
                raise RangeError("fixed_v_h", self.fixed_v_h, p.h_offset, p.h_max_raw)
        if self.seed < 0:
            raise ParameterError("seed must be >= 0")
        if self.num_sensors < 1:
            raise ParameterError("num_sensors must be >= 1")


@dataclass(frozen=True)
class SweepRecord:
    """One experiment-curve point. MSEs are over sources normalized to [0, 1];
    crossing_rate is the fraction of trials whose humidity error exceeds one
    level spacing."""

    sensor_id: int
    csnr_db: float
    sdr_db: float
    mse_t_norm: float
    mse_h_norm: float
    trials: int
    crossing_rate: float


@dataclass(frozen=True)
class TransferPoint:
    """One transfer-curve sample: swept raw voltage, encoder output, decoded raws."""

    x: float
    s_volts: float
    v_t_hat: float
    v_h_hat: float


def compute_sdr(mse_t_norm: float, mse_h_norm: float) -> float:
    """Joint SDR in dB: -10*log10 of the equal-weight mean of the two MSEs."""
    if mse_t_norm < 0 or mse_h_norm < 0:
        raise ParameterError("MSEs must be >= 0")
    mean_mse = (mse_t_norm + mse_h_norm) / 2.0
    if mean_mse == 0:
        return math.inf
    return -10.0 * math.log10(mean_mse)


def _draw_inputs(spec: SweepSpec, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    p = spec.params
    n = spec.trials_per_point
    if spec.input_kind == "uniform":
        return rng.uniform(0.0, p.t_span, n), rng.uniform(0.0, p.h_span, n)
    if spec.input_kind == "fixed":
        return (
            np.full(n, spec.fixed_v_t - p.t_offset),
            np.full(n, spec.fixed_v_h - p.h_offset),
        )
    side = math.ceil(math.sqrt(n))
    tt, hh = np.meshgrid(
        np.linspace(0.0, p.t_span, side), np.linspace(0.0, p.h_span, side), indexing="ij"
    )
    return tt.ravel(), hh.ravel()


def _encode_normalized(vt0: np.ndarray, vh0: np.ndarray, spec: SweepSpec) -> np.ndarray:
    if spec.encoder == "ideal":
        s, _ = encode_many(vt0, vh0, spec.params)
        return s
    config = spec.config if spec.config is not None else CircuitConfig()
    return circuit_output_many(vt0, vh0, spec.params, config)


def run_sdr_vs_csnr(spec: SweepSpec) -> list[SweepRecord]:
    """Full Monte-Carlo sweep; records ordered by (sensor_id, csnr_db)."""
    p = spec.params
    records = []
    for sensor_id in range(spec.num_sensors):
        for point_idx, csnr_db in enumerate(spec.csnr_points):
            rng = np.random.default_rng([spec.seed, sensor_id, point_idx])
            vt0, vh0 = _draw_inputs(spec, rng)
            s = _encode_normalized(vt0, vh0, spec)
            sigma = 0.0 if csnr_db == math.inf else noise_sigma(csnr_db, measure_signal_power(s))
            received = transmit(s, sigma, rng)
            vt0_hat, vh0_hat, _, _ = decode_many(received, p)
            mse_t = float(np.mean(((vt0_hat - vt0) / p.t_span) ** 2))
            mse_h = float(np.mean(((vh0_hat - vh0) / p.h_span) ** 2))
            crossing = float(np.mean(np.abs(vh0_hat - vh0) > p.delta_h))
            records.append(
                SweepRecord(
                    sensor_id=sensor_id,
                    csnr_db=csnr_db,
                    sdr_db=compute_sdr(mse_t, mse_h),
                    mse_t_norm=mse_t,
                    mse_h_norm=mse_h,
                    trials=int(vt0.size),
                    crossing_rate=crossing,
                )
            )
    return records


def _transfer_curve(
    vt_raw: np.ndarray,
    vh_raw: np.ndarray,
    swept: np.ndarray,
    params: MappingParams,
    config: CircuitConfig | None,
    encoder: str,
) -> list[TransferPoint]:
    if encoder not in ENCODERS:
        raise ParameterError(f"encoder must be one of {ENCODERS}, got {encoder!r}")
    vt0 = vt_raw - params.t_offset
    vh0 = vh_raw - params.h_offset
    if encoder == "ideal":
        s, _ = encode_many(vt0, vh0, params)
    else:
        s = circuit_output_many(vt0, vh0, params, config if config is not None else CircuitConfig())
    vt0_hat, vh0_hat, _, _ = decode_many(s, params)
    return [
        TransferPoint(
            float(swept[i]),
            float(s[i]),
            float(vt0_hat[i] + params.t_offset),
            float(vh0_hat[i] + params.h_offset),
        )
        for i in range(swept.size)
    ]


def sweep_vt_fixed_vh(
    v_h: float,
    t_grid: int,
    params: MappingParams,
    config: CircuitConfig | None = None,
    encoder: str = "ideal",
) -> list[TransferPoint]:
    """Noiseless transfer curve versus temperature at one humidity voltage."""
    if not params.h_offset <= v_h <= params.h_max_raw:
        raise RangeError("v_h", v_h, params.h_offset, params.h_max_raw)
    if t_grid < 1:
        raise ParameterError("t_grid must be >= 1")
    vts = np.linspace(params.t_offset, params.t_max_raw, t_grid)
    return _transfer_curve(vts, np.full(t_grid, v_h), vts, params, config, encoder)


def sweep_vh_fixed_vt(
    v_t: float,
    h_grid: int,
    params: MappingParams,
    config: CircuitConfig | None = None,
    encoder: str = "ideal",
) -> list[TransferPoint]:
    """Noiseless transfer curve versus humidity at one temperature voltage."""
    if not params.t_offset <= v_t <= params.t_max_raw:
        raise RangeError("v_t", v_t, params.t_offset, params.t_max_raw)
    if h_grid < 1:
        raise ParameterError("h_grid must be >= 1")
    vhs = np.linspace(params.h_offset, params.h_max_raw, h_grid)
    return _transfer_curve(np.full(h_grid, v_t), vhs, vhs, params, config, encoder)
