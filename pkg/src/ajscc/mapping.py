"""Ideal rectangular space-filling-curve mapping for 2:1 analog compression.

The curve consists of ``num_levels`` horizontal lines at humidity heights
0, delta_h, 2*delta_h, ... joined by short vertical connectors. Odd lines
are traversed left to right, even lines right to left. A source point
(v_t0, v_h0) is projected onto the nearest line and represented by the
accumulated arc length from the origin, measured in output volts: each full
line contributes ``v_r`` and each connector ``connector_len``, so the
per-level pitch is ``v_r + connector_len``.

All functions are pure; batch variants operate on numpy arrays and the
scalar operations delegate to them so both paths share one implementation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, RangeError

# Relative slack for the gain * t_span == v_r consistency check only;
# all quantization comparisons are exact per the half-open convention.
_GAIN_REL_TOL = 1e-9


@dataclass(frozen=True)
class MappingParams:
    """Complete parameterization of the rectangular curve.

    delta_h        level spacing on the humidity axis [V]
    v_r            output length of one full horizontal line [V]
    num_levels     number of parallel lines
    gain           VCVS gain mapping v_t0 to output volts
    connector_len  arc-length contribution of one vertical connector [V]
    t_offset, t_max_raw  raw temperature-sensor range [V]
    h_offset, h_max_raw  raw humidity-sensor range [V]
    """

    delta_h: float
    v_r: float
    num_levels: int
    gain: float
    connector_len: float
    t_offset: float
    t_max_raw: float
    h_offset: float
    h_max_raw: float

    def __post_init__(self):
        if not self.delta_h > 0:
            raise ParameterError(f"delta_h must be > 0, got {self.delta_h!r}")
        if not self.v_r > 0:
            raise ParameterError(f"v_r must be > 0, got {self.v_r!r}")
        if int(self.num_levels) != self.num_levels or self.num_levels < 1:
            raise ParameterError(f"num_levels must be an integer >= 1, got {self.num_levels!r}")
        if not self.gain > 0:
            raise ParameterError(f"gain must be > 0, got {self.gain!r}")
        if self.connector_len < 0:
            raise ParameterError(f"connector_len must be >= 0, got {self.connector_len!r}")
        if not self.t_max_raw > self.t_offset:
            raise ParameterError("t_max_raw must exceed t_offset")
        if not self.h_max_raw > self.h_offset:
            raise ParameterError("h_max_raw must exceed h_offset")
        # The full temperature swing must span exactly one line.
        if abs(self.gain * self.t_span - self.v_r) > _GAIN_REL_TOL * self.v_r:
            raise ParameterError(
                f"gain*(t_max_raw-t_offset)={self.gain * self.t_span!r} "
                f"must equal v_r={self.v_r!r}"
            )
        # Every level center must lie inside the humidity span.
        if (self.num_levels - 1) * self.delta_h > self.h_span:
            raise ParameterError(
                f"(num_levels-1)*delta_h={(self.num_levels - 1) * self.delta_h!r} "
                f"exceeds humidity span {self.h_span!r}"
            )

    @property
    def t_span(self) -> float:
        return self.t_max_raw - self.t_offset

    @property
    def h_span(self) -> float:
        return self.h_max_raw - self.h_offset

    @property
    def pitch(self) -> float:
        """Arc length consumed per level: one line plus one connector."""
        return self.v_r + self.connector_len


@dataclass(frozen=True)
class SensorReading:
    """Raw sensor voltages, offsets included."""

    v_t: float
    v_h: float


@dataclass(frozen=True)
class NormalizedReading:
    """Offset-removed voltages, both starting at zero."""

    v_t0: float
    v_h0: float


@dataclass(frozen=True)
class EncodedValue:
    """Accumulated-length output plus the selected level and its parity."""

    s: float
    level: int
    parity: str

    def __post_init__(self):
        expected = "odd" if self.level % 2 == 1 else "even"
        if self.parity != expected:
            raise ParameterError(f"parity {self.parity!r} inconsistent with level {self.level}")


@dataclass(frozen=True)
class DecodedReading:
    """Receiver estimate in the offset-removed domain."""

    v_t0_hat: float
    v_h0_hat: float
    level_hat: int
    on_connector: bool


def _parity(level: int) -> str:
    return "odd" if level % 2 == 1 else "even"


def s_max(params: MappingParams) -> float:
    """Arc length at the far end of the top line."""
    return (params.num_levels - 1) * params.pitch + params.v_r


def remove_offset(reading: SensorReading, params: MappingParams) -> NormalizedReading:
    """Subtract the sensor offsets; out-of-range inputs raise, never clamp."""
    if not (params.t_offset <= reading.v_t <= params.t_max_raw):
        raise RangeError("v_t", reading.v_t, params.t_offset, params.t_max_raw)
    if not (params.h_offset <= reading.v_h <= params.h_max_raw):
        raise RangeError("v_h", reading.v_h, params.h_offset, params.h_max_raw)
    return NormalizedReading(reading.v_t - params.t_offset, reading.v_h - params.h_offset)


def _check_range_array(values: np.ndarray, lo: float, hi: float, field: str) -> None:
    bad = (values < lo) | (values > hi) | ~np.isfinite(values)
    if np.any(bad):
        raise RangeError(field, float(values[bad].flat[0]), lo, hi)


def _check_normalized(v_t0: np.ndarray, v_h0: np.ndarray, params: MappingParams) -> None:
    _check_range_array(v_t0, 0.0, params.t_span, "v_t0")
    _check_range_array(v_h0, 0.0, params.h_span, "v_h0")


def quantize_level_many(v_h0, params: MappingParams) -> np.ndarray:
    """Vectorized nearest-line quantizer; boundary midpoints go to the lower level.

    The comparison is done on u = v_h0/delta_h so that region boundaries sit
    at the exactly representable half-integers n - 0.5; level n covers
    (n - 1.5, n - 0.5] with level 1 owning [0, 0.5].
    """
    v_h0 = np.asarray(v_h0, dtype=float)
    _check_range_array(v_h0, 0.0, params.h_span, "v_h0")
    u = v_h0 / params.delta_h
    levels = np.ceil(u - 0.5).astype(int) + 1
    return np.clip(levels, 1, params.num_levels)


def quantize_level(v_h0: float, params: MappingParams) -> int:
    """Level index n minimizing |v_h0 - (n-1)*delta_h|, ties to the lower level."""
    return int(quantize_level_many(np.asarray([v_h0]), params)[0])


def encode_many(v_t0, v_h0, params: MappingParams) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form accumulated-length encoding of normalized input arrays.

    Returns (s, level). Odd levels add gain*v_t0 to the level base, even
    levels add v_r - gain*v_t0.
    """
    v_t0 = np.asarray(v_t0, dtype=float)
    v_h0 = np.asarray(v_h0, dtype=float)
    _check_normalized(v_t0, v_h0, params)
    levels = quantize_level_many(v_h0, params)
    x = params.gain * v_t0
    base = (levels - 1) * params.pitch
    odd = levels % 2 == 1
    s = np.where(odd, base + x, base + (params.v_r - x))
    return s, levels


def encode(norm: NormalizedReading, params: MappingParams) -> EncodedValue:
    """Encode one normalized reading into its accumulated-length value."""
    s, levels = encode_many(np.asarray([norm.v_t0]), np.asarray([norm.v_h0]), params)
    level = int(levels[0])
    return EncodedValue(float(s[0]), level, _parity(level))


def _line_samples(params: MappingParams, grid_step: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Sample positions xs on one line, per-line centers, and arc lengths (L, M)."""
    if not grid_step > 0:
        raise ParameterError(f"grid_step must be > 0, got {grid_step!r}")
    n = max(1, int(math.ceil(params.t_span / grid_step)))
    xs = np.linspace(0.0, params.t_span, n + 1)
    levels = np.arange(1, params.num_levels + 1)
    centers = (levels - 1) * params.delta_h
    base = (levels - 1) * params.pitch
    fwd = params.gain * xs
    arcs = np.where(
        (levels % 2 == 1)[:, None],
        base[:, None] + fwd[None, :],
        base[:, None] + (params.v_r - fwd)[None, :],
    )
    return xs, centers, arcs


def encode_bruteforce(
    norm: NormalizedReading,
    params: MappingParams,
    grid_step: float,
    include_connectors: bool = False,
) -> EncodedValue:
    """Projection oracle: exhaustive nearest-sample search over the discretized curve.

    Discretizes every horizontal line at grid_step resolution, picks the
    sample with minimum Euclidean distance to (v_t0, v_h0) and returns its
    accumulated arc length; distance ties resolve to the smaller arc length.
    With include_connectors=True the vertical connector segments are sampled
    too (a connector sample is attributed to the nearer of its two levels).
    Deliberately brute force: this is the independent check on encode().
    """
    _check_normalized(np.asarray([norm.v_t0]), np.asarray([norm.v_h0]), params)
    xs, centers, arcs = _line_samples(params, grid_step)
    d2 = (centers - norm.v_h0)[:, None] ** 2 + (xs - norm.v_t0)[None, :] ** 2
    cand_d2 = d2.ravel()
    cand_arc = arcs.ravel()
    cand_level = np.repeat(np.arange(1, params.num_levels + 1), xs.size)

    if include_connectors and params.num_levels > 1:
        n_c = max(1, int(math.ceil(params.delta_h / grid_step)))
        frac = np.linspace(0.0, 1.0, n_c + 1)
        extra_d2, extra_arc, extra_level = [], [], []
        for i in range(1, params.num_levels):
            x_pos = params.t_span if i % 2 == 1 else 0.0
            ys = (i - 1) * params.delta_h + frac * params.delta_h
            extra_d2.append((ys - norm.v_h0) ** 2 + (x_pos - norm.v_t0) ** 2)
            extra_arc.append((i - 1) * params.pitch + params.v_r + frac * params.connector_len)
            extra_level.append(np.where(frac <= 0.5, i, i + 1))
        cand_d2 = np.concatenate([cand_d2] + extra_d2)
        cand_arc = np.concatenate([cand_arc] + extra_arc)
        cand_level = np.concatenate([cand_level] + extra_level)

    at_min = cand_d2 == cand_d2.min()
    min_arcs = cand_arc[at_min]
    k = int(np.argmin(min_arcs))
    s = float(min_arcs[k])
    level = int(cand_level[at_min][k])
    return EncodedValue(s, level, _parity(level))


def project_bruteforce_many(
    v_t0, v_h0, params: MappingParams, grid_step: float
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized equivalent of encode_bruteforce (lines only).

    Exploits separability of the squared distance over the sample lattice:
    the minimizing sample always uses one of the two nearest grid columns
    and one of the two nearest lines, so only four candidates per query need
    comparing. Ties are resolved to the smaller arc length in the same flat
    (level-major) order as the exhaustive scan; the test suite asserts
    pointwise agreement with encode_bruteforce.
    """
    v_t0 = np.asarray(v_t0, dtype=float)
    v_h0 = np.asarray(v_h0, dtype=float)
    _check_normalized(v_t0, v_h0, params)
    xs, centers, _ = _line_samples(params, grid_step)
    n = xs.size - 1
    L = params.num_levels

    h = params.t_span / n
    j_lo = np.clip(np.floor(v_t0 / h).astype(int), 0, max(n - 1, 0))
    j_cands = np.stack([j_lo, np.minimum(j_lo + 1, n)])  # (2, N)

    c_lo = np.clip(np.floor(v_h0 / params.delta_h).astype(int), 0, L - 1)
    lev_cands = np.stack([c_lo + 1, np.minimum(c_lo + 2, L)])  # (2, N)

    # Candidate order replicates the exhaustive scan's level-major layout.
    lev = np.repeat(lev_cands, 2, axis=0)  # (4, N): lo,lo,hi,hi
    j = np.tile(j_cands, (2, 1))  # (4, N): lo,hi,lo,hi
    xv = xs[j]
    d2 = (centers[lev - 1] - v_h0[None, :]) ** 2 + (xv - v_t0[None, :]) ** 2
    base = (lev - 1) * params.pitch
    fwd = params.gain * xv
    arc = np.where(lev % 2 == 1, base + fwd, base + (params.v_r - fwd))

    at_min = d2 == d2.min(axis=0, keepdims=True)
    arc_masked = np.where(at_min, arc, np.inf)
    pick = np.argmin(arc_masked, axis=0)
    cols = np.arange(v_t0.size)
    return arc[pick, cols], lev[pick, cols]


def decode_many(s, params: MappingParams) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized nearest-point decoding on the arc-length axis.

    Returns (v_t0_hat, v_h0_hat, level_hat, on_connector). Inputs outside
    [0, s_max] are clamped first (channel noise legitimately produces them).
    Connector remainders split at the connector midpoint; a connector point
    inherits the shared v_t0 of its two endpoints, which is the temperature
    span maximum after an odd level and zero after an even one.
    """
    s = np.asarray(s, dtype=float)
    if not np.all(np.isfinite(s)):
        raise ParameterError("decode input s must be finite")
    gamma = params.pitch
    L = params.num_levels
    s_cl = np.clip(s, 0.0, s_max(params))
    m = np.minimum(np.floor(s_cl / gamma).astype(int), L - 1)
    r = np.maximum(s_cl - m * gamma, 0.0)

    on_line = r <= params.v_r
    past_mid = r > params.v_r + 0.5 * params.connector_len
    level = np.where(on_line, m + 1, np.where(past_mid, m + 2, m + 1))
    level = np.clip(level, 1, L)

    odd_level = level % 2 == 1
    vt0_line = np.where(odd_level, r / params.gain, (params.v_r - r) / params.gain)
    below_odd = (m + 1) % 2 == 1
    vt0_conn = np.where(below_odd, params.t_span, 0.0)
    v_t0_hat = np.clip(np.where(on_line, vt0_line, vt0_conn), 0.0, params.t_span)
    v_h0_hat = (level - 1) * params.delta_h
    return v_t0_hat, v_h0_hat, level, ~on_line


def decode(s: float, params: MappingParams) -> DecodedReading:
    """Decode one received accumulated-length voltage."""
    vt0, vh0, level, on_conn = decode_many(np.asarray([float(s)]), params)
    return DecodedReading(float(vt0[0]), float(vh0[0]), int(level[0]), bool(on_conn[0]))
