"""Pitch-adaptive spectral weighting and a self-contained F0 estimator.

Low-order harmonics of the voice pitch are resolved by narrow low-frequency
analysis channels and show up as spectral peaks unrelated to the vocal-tract
resonances, which corrupts cross-correlation alignment between speakers.  The
weight implemented here tapers a spectrum linearly below ``h_max * f0`` and
leaves it untouched above, suppressing exactly that harmonic-dominated region.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .axes import FrequencyAxis
from .errors import ConfigurationError, InputError
from .spectral import Spectrum

#: F0 value that encodes "unvoiced / unknown"; it yields an all-ones weight.
UNVOICED = 0.0

F0_SEARCH_LO_HZ = 60.0
F0_SEARCH_HI_HZ = 400.0
F0_WINDOW_S = 0.050
VOICING_THRESHOLD = 0.3


@dataclass(frozen=True)
class SsiParams:
    """Weighting parameters: taper knee at ``h_max`` harmonics of ``f0``."""

    h_max: float = 3.5
    f0: float = UNVOICED

    def __post_init__(self):
        if not self.h_max > 0:
            raise ConfigurationError(f"h_max must be positive, got {self.h_max}")
        if self.f0 < 0:
            raise ConfigurationError(f"f0 must be nonnegative, got {self.f0}")


def ssi_weight(axis: FrequencyAxis, params: SsiParams) -> np.ndarray:
    """Per-channel weight ``min(f_c / (h_max * f0), 1)``.

    For ``f0 == 0`` (unvoiced/unknown) every channel gets weight 1.  The
    result is nondecreasing along the axis and saturates at 1 for all
    channels at or above ``h_max * f0``.
    """
    knee = params.h_max * params.f0
    if knee <= 0.0:  # unvoiced, or f0 so small the knee underflows
        return np.ones(axis.channels)
    with np.errstate(over="ignore"):  # a denormal knee overflows to inf -> weight 1
        return np.minimum(axis.center_freqs / knee, 1.0)


def apply_weight(s: Spectrum, weights: np.ndarray) -> Spectrum:
    """Multiply a spectrum by per-channel weights after a baseline shift.

    The per-spectrum minimum is subtracted first so that the product always
    pulls values toward the spectrum floor.  Without the shift, weighting a
    dB-domain spectrum (negative values) would raise rather than suppress the
    low-frequency content.
    """
    weights = np.asarray(weights, dtype=float)
    if weights.shape != s.values.shape:
        raise InputError(
            f"weight length {weights.shape} does not match spectrum length {s.values.shape}"
        )
    shifted = s.values - s.values.min()
    return Spectrum(shifted * weights, s.axis, s.compression)


def estimate_f0(signal, fs: float, lo: float = F0_SEARCH_LO_HZ, hi: float = F0_SEARCH_HI_HZ) -> float:
    """Autocorrelation pitch estimate on the center 50 ms of a signal.

    Returns the fundamental frequency in Hz, or :data:`UNVOICED` (0.0) when
    the normalized autocorrelation peak in the search range falls below
    :data:`VOICING_THRESHOLD`.  The biased autocorrelation estimator is used,
    which favors the fundamental over its subharmonics.
    """
    x = np.asarray(signal, dtype=float)
    win = int(round(F0_WINDOW_S * fs))
    if x.ndim != 1 or x.size < win:
        raise InputError(f"need at least {F0_WINDOW_S*1e3:g} ms of signal ({win} samples)")
    start = (x.size - win) // 2
    frame = x[start : start + win]
    frame = frame - frame.mean()
    r0 = float(frame @ frame)
    if r0 <= 0.0:
        return UNVOICED
    lag_lo = max(1, int(np.ceil(fs / hi)))
    lag_hi = min(win - 1, int(np.floor(fs / lo)))
    if lag_lo > lag_hi:
        raise ConfigurationError(f"search range {lo}-{hi} Hz is empty at fs={fs}")
    acf = np.correlate(frame, frame, mode="full")[win - 1 + lag_lo : win + lag_hi]
    peak = int(np.argmax(acf))
    if acf[peak] / r0 < VOICING_THRESHOLD:
        return UNVOICED
    return fs / (lag_lo + peak)
