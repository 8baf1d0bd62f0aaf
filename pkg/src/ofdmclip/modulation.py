"""Gray-coded constellation mapping for BPSK, QPSK, 8/16/64-QAM.

Bit convention: each constellation symbol carries log2(M) bits, most
significant bit first.  The integer formed by those bits is the point's
*label* and indexes ``Constellation.points`` directly.

Layouts (all scaled to unit average symbol energy):

====  =========================================================
M     layout
====  =========================================================
2     antipodal BPSK, label 0 -> +1, label 1 -> -1
4     square QPSK, one reflected-Gray bit per axis
8     rectangular 4x2 grid, real in {+-1, +-3}, imag in {+-1}
16    square, two reflected-Gray bits per axis
64    square, three reflected-Gray bits per axis
====  =========================================================

For the square sizes the first half of the bits selects the real (I) level
and the second half the imaginary (Q) level; per axis, Gray code ``g`` maps
to amplitude ``(2**m - 1) - 2 * inverse_gray(g)``, so the all-zeros label
sits in the upper-right corner.  The full tables are written out in
``docs/constellations.md``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels

SUPPORTED_ORDERS = (2, 4, 8, 16, 64)


@dataclass(frozen=True)
class Constellation:
    """A fixed constellation: ``points[label]`` is the complex symbol."""

    order: int
    points: np.ndarray
    bits_per_symbol: int


def _inverse_gray(g: int) -> int:
    b = 0
    while g:
        b ^= g
        g >>= 1
    return b


def _gray_axis_levels(n_bits: int) -> np.ndarray:
    """Amplitude per Gray label for a 2**n_bits-level PAM axis."""
    size = 1 << n_bits
    return np.array([(size - 1) - 2 * _inverse_gray(g) for g in range(size)], dtype=float)


def _build_points(m: int) -> np.ndarray:
    if m == 2:
        return np.array([1.0 + 0j, -1.0 + 0j])
    if m == 8:
        i_levels = _gray_axis_levels(2)
        q_levels = _gray_axis_levels(1)
    else:
        half = (m.bit_length() - 1) // 2
        i_levels = _gray_axis_levels(half)
        q_levels = i_levels
    pts = np.array([complex(i_levels[lab >> q_bits(m)], q_levels[lab & (len(q_levels) - 1)])
                    for lab in range(m)])
    return pts / np.sqrt(np.mean(np.abs(pts) ** 2))


def q_bits(m: int) -> int:
    """Number of bits assigned to the Q axis (the label's low bits)."""
    if m == 2:
        return 0
    if m == 8:
        return 1
    return (m.bit_length() - 1) // 2


@lru_cache(maxsize=None)
def constellation(m: int) -> Constellation:
    """Return the fixed unit-energy constellation for order ``m``.

    Raises ValueError for unsupported orders.
    """
    if m not in SUPPORTED_ORDERS:
        raise ValueError(f"unsupported modulation order {m}; choose one of {SUPPORTED_ORDERS}")
    pts = _build_points(m)
    pts.setflags(write=False)
    return Constellation(order=m, points=pts, bits_per_symbol=m.bit_length() - 1)


def bits_to_labels(bits: np.ndarray, bits_per_symbol: int) -> np.ndarray:
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.ndim != 1:
        raise ValueError("bits must be a flat sequence")
    if bits.size % bits_per_symbol:
        raise ValueError(
            f"bit count {bits.size} is not divisible by {bits_per_symbol}")
    weights = 1 << np.arange(bits_per_symbol - 1, -1, -1)
    return bits.reshape(-1, bits_per_symbol) @ weights


def labels_to_bits(labels: np.ndarray, bits_per_symbol: int) -> np.ndarray:
    labels = np.asarray(labels)
    shifts = np.arange(bits_per_symbol - 1, -1, -1)
    return ((labels[:, None] >> shifts) & 1).astype(np.uint8).ravel()


def map_bits(bits, m: int) -> np.ndarray:
    """Map a bit sequence (MSB first per group) to constellation points."""
    const = constellation(m)
    return const.points[bits_to_labels(bits, const.bits_per_symbol)]


def demap_points(received, m: int) -> np.ndarray:
    """Hard-decision demap: nearest constellation point, then its bit label.

    Equidistant ties resolve to the lowest constellation index.
    """
    const = constellation(m)
    pts = np.asarray(received, dtype=np.complex128)
    labels = _kernels.nearest_labels(pts, const.points)
    return labels_to_bits(labels, const.bits_per_symbol)
