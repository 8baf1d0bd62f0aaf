import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ofdmclip import SUPPORTED_ORDERS, constellation, demap_points, map_bits

ROOT2 = np.sqrt(2.0)


def test_bpsk_points():
    c = constellation(2)
    assert np.array_equal(c.points, [1.0 + 0j, -1.0 + 0j])
    assert c.bits_per_symbol == 1


def test_bpsk_bit_one_maps_to_minus_one():
    assert map_bits([1], 2)[0] == -1.0 + 0j


def test_qpsk_gray_table():
    # per-axis reflected Gray, MSB = I axis, bit 0 -> positive amplitude
    expected = {
        (0, 0): (1 + 1j) / ROOT2,
        (0, 1): (1 - 1j) / ROOT2,
        (1, 0): (-1 + 1j) / ROOT2,
        (1, 1): (-1 - 1j) / ROOT2,
    }
    for bits, point in expected.items():
        assert map_bits(list(bits), 4)[0] == pytest.approx(point, abs=1e-15)


def test_8qam_grid_and_scale():
    # 4x2 grid {+-1,+-3} x {+-1}; direct summation gives mean energy 6
    grid = [complex(re, im) for re in (-3, -1, 1, 3) for im in (-1, 1)]
    assert np.mean(np.abs(grid) ** 2) == pytest.approx(6.0)
    pts = constellation(8).points
    key = lambda p: (p.real, p.imag)
    got = sorted(map(complex, pts), key=key)
    expected = sorted((p / np.sqrt(6.0) for p in grid), key=key)
    assert np.allclose(got, expected, atol=1e-15)


@pytest.mark.parametrize("m", SUPPORTED_ORDERS)
def test_unit_average_energy(m):
    pts = constellation(m).points
    assert abs(np.mean(np.abs(pts) ** 2) - 1.0) < 1e-12


@pytest.mark.parametrize("m", SUPPORTED_ORDERS)
def test_points_distinct(m):
    pts = constellation(m).points
    assert len(set(map(complex, pts))) == m


@pytest.mark.parametrize("m", (4, 16, 64))
def test_square_qam_gray_adjacency(m):
    # exhaustive grid scan: neighbouring points differ in exactly one bit
    c = constellation(m)
    side = int(np.sqrt(m))
    levels = np.unique(np.round(c.points.real, 12))
    assert levels.size == side
    label_at = {}
    for lab, p in enumerate(c.points):
        i = int(np.argmin(np.abs(levels - p.real)))
        q = int(np.argmin(np.abs(levels - p.imag)))
        label_at[i, q] = lab
    for (i, q), lab in label_at.items():
        for di, dq in ((1, 0), (0, 1)):
            if (i + di, q + dq) in label_at:
                diff = lab ^ label_at[i + di, q + dq]
                assert bin(diff).count("1") == 1


@pytest.mark.parametrize("m", SUPPORTED_ORDERS)
def test_roundtrip_exact_points(m, rng):
    k = constellation(m).bits_per_symbol
    bits = rng.integers(0, 2, 1200 * k, dtype=np.uint8)
    assert np.array_equal(demap_points(map_bits(bits, m), m), bits)


@settings(max_examples=40, deadline=None)
@given(m=st.sampled_from(SUPPORTED_ORDERS), data=st.data())
def test_roundtrip_property(m, data):
    k = constellation(m).bits_per_symbol
    n_groups = data.draw(st.integers(min_value=1, max_value=40))
    bits = data.draw(st.lists(st.integers(0, 1), min_size=n_groups * k,
                              max_size=n_groups * k))
    assert np.array_equal(demap_points(map_bits(bits, m), m), np.asarray(bits, np.uint8))


def test_demap_nearest_neighbor():
    noisy = np.array([(0.9 + 0.9j) / ROOT2])
    assert np.array_equal(demap_points(noisy, 4), [0, 0])


def test_demap_tie_breaks_to_lowest_index():
    # midpoint between BPSK points is index 0 -> bit 0
    assert np.array_equal(demap_points(np.array([0.0 + 0j]), 2), [0])
    # midpoint between QPSK labels 00 and 01 (same real part, imag 0)
    mid = np.array([(1 + 0j) / ROOT2])
    assert np.array_equal(demap_points(mid, 4), [0, 0])


@pytest.mark.parametrize("m", SUPPORTED_ORDERS)
def test_empirical_symbol_energy(m, rng):
    k = constellation(m).bits_per_symbol
    bits = rng.integers(0, 2, 100_000 * k, dtype=np.uint8)
    energy = np.mean(np.abs(map_bits(bits, m)) ** 2)
    assert 0.99 <= energy <= 1.01


def test_unsupported_order_rejected():
    for bad in (3, 32, 128, 0, -4):
        with pytest.raises(ValueError):
            constellation(bad)
    with pytest.raises(ValueError):
        map_bits([0, 1], 32)


def test_bit_length_must_divide():
    with pytest.raises(ValueError):
        map_bits([0, 1, 0], 4)


def test_documented_tables_match_code():
    # docs/constellations.md is the interop contract; keep it in sync
    import pathlib
    import re

    doc = pathlib.Path(__file__).resolve().parents[1] / "docs" / "constellations.md"
    text = doc.read_text()
    for section in re.split(r"^## ", text, flags=re.M)[1:]:
        m = int(section.split("\n", 1)[0].split("=")[1])
        c = constellation(m)
        rows = re.findall(r"^\| ([01]+) \| ([+-][\d.]+) \| ([+-][\d.]+) \|",
                          section, flags=re.M)
        assert len(rows) == m
        for bits, re_s, im_s in rows:
            assert len(bits) == c.bits_per_symbol
            p = c.points[int(bits, 2)]
            assert p.real == pytest.approx(float(re_s), abs=1e-12)
            assert p.imag == pytest.approx(float(im_s), abs=1e-12)
