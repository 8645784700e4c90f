"""Baseband AWGN channel parameterized by CSNR.

Stands in for the FM/RF chain: the encoded voltage is transmitted as-is and
the receiver sees it plus white Gaussian noise whose variance is set by the
channel signal-to-noise ratio against the measured signal power.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError


@dataclass(frozen=True)
class ChannelParams:
    """CSNR-parameterized channel; +inf csnr_db means noiseless."""

    csnr_db: float
    signal_power: float
    seed: int

    def __post_init__(self):
        if not self.signal_power > 0:
            raise ParameterError(f"signal_power must be > 0, got {self.signal_power!r}")
        if math.isnan(self.csnr_db) or self.csnr_db == -math.inf:
            raise ParameterError("csnr_db must be finite or +inf")

    def sigma(self) -> float:
        return noise_sigma(self.csnr_db, self.signal_power)


def noise_sigma(csnr_db: float, signal_power: float) -> float:
    """Noise standard deviation for a given CSNR and mean-square signal power."""
    if not signal_power > 0:
        raise ParameterError(f"signal_power must be > 0, got {signal_power!r}")
    if csnr_db == math.inf:
        return 0.0
    return math.sqrt(signal_power * 10.0 ** (-csnr_db / 10.0))


def transmit(s, sigma: float, rng: np.random.Generator):
    """Add white Gaussian noise of the given sigma using the supplied generator.

    sigma=0 returns the input unchanged and consumes no draws, so a noiseless
    point never perturbs the generator state. Scalar in, scalar out.
    """
    if sigma < 0:
        raise ParameterError(f"sigma must be >= 0, got {sigma!r}")
    scalar = np.isscalar(s)
    out = np.asarray(s, dtype=float)
    if sigma > 0:
        out = out + rng.normal(0.0, sigma, size=out.shape)
    return float(out) if scalar else out


def measure_signal_power(values) -> float:
    """Arithmetic mean of the squared ensemble; the empirical signal power."""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise ParameterError("signal power of an empty ensemble is undefined")
    return float(np.mean(np.square(arr)))
