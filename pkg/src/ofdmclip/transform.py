"""Unitary OFDM synthesis/analysis transforms with center zero-padding.

Spectrum layout: a length-N symbol occupies the N "in-band" bins of the
length-N*L oversampled spectrum — bins 0 .. N/2-1 (non-negative
frequencies) stay at the bottom and bins N/2 .. N-1 (negative frequencies)
move to the top; the N*(L-1) middle bins are the out-of-band region.

Both directions use the unitary 1/sqrt(size) scaling, so energy is
preserved exactly (Parseval) and ``analyze`` inverts ``synthesize``.
All functions accept a single vector or a batch with symbols on the last
axis.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_OVERSAMPLE_CHOICES = (1, 2, 4, 8)


def _is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class OfdmConfig:
    """Static OFDM dimensions: subcarrier count, oversampling, modulation."""

    n_subcarriers: int = 64
    oversample: int = 4
    mod_order: int = 8

    def __post_init__(self):
        n = self.n_subcarriers
        if not (_is_pow2(n) and n >= 2):
            raise ValueError(f"n_subcarriers must be a power of two >= 2, got {n}")
        if self.oversample not in _OVERSAMPLE_CHOICES:
            raise ValueError(
                f"oversample must be one of {_OVERSAMPLE_CHOICES}, got {self.oversample}")

    @property
    def n_samples(self) -> int:
        return self.n_subcarriers * self.oversample


def embed_spectrum(bins: np.ndarray, oversample: int) -> np.ndarray:
    """Place N symbol bins into the in-band slots of an N*oversample spectrum."""
    bins = np.asarray(bins, dtype=np.complex128)
    n = bins.shape[-1]
    if not (_is_pow2(n) and n >= 2):
        raise ValueError(f"symbol length must be a power of two >= 2, got {n}")
    if oversample not in _OVERSAMPLE_CHOICES:
        raise ValueError(f"oversample must be one of {_OVERSAMPLE_CHOICES}, got {oversample}")
    total = n * oversample
    out = np.zeros(bins.shape[:-1] + (total,), dtype=np.complex128)
    out[..., :n // 2] = bins[..., :n // 2]
    out[..., total - n // 2:] = bins[..., n // 2:]
    return out


def extract_inband(spectrum: np.ndarray, n_subcarriers: int) -> np.ndarray:
    """Inverse of ``embed_spectrum``: pull the N in-band bins back out."""
    spectrum = np.asarray(spectrum)
    total = spectrum.shape[-1]
    n = n_subcarriers
    if total % n or not _is_pow2(total // n):
        raise ValueError(f"spectrum length {total} does not oversample {n} subcarriers")
    return np.concatenate(
        [spectrum[..., :n // 2], spectrum[..., total - n // 2:]], axis=-1)


def synthesize(symbol: np.ndarray, oversample: int = 1) -> np.ndarray:
    """Time-domain OFDM signal for one frequency-domain symbol.

    Returns N*oversample complex samples with the same total energy as the
    input bins.
    """
    return np.fft.ifft(embed_spectrum(symbol, oversample), norm="ortho", axis=-1)


def analyze(signal: np.ndarray) -> np.ndarray:
    """Forward transform back to the (oversampled) spectrum."""
    signal = np.asarray(signal, dtype=np.complex128)
    n = signal.shape[-1]
    if not (_is_pow2(n) and n >= 2):
        raise ValueError(f"signal length must be a power of two >= 2, got {n}")
    return np.fft.fft(signal, norm="ortho", axis=-1)
