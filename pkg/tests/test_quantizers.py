import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from treeggm.errors import DataError, ParameterError
from treeggm.quantizers import (
    QuantizedShard,
    build_codebook,
    decode,
    persym_encode,
    reconstruction_distortion,
    sign_encode,
)

mpmath.mp.dps = 40
R8_DISTORTION = 0.0007432153805139174


def mp_phi(x):
    return mpmath.ncdf(mpmath.mpf(x))


def mp_centroid(a, b):
    """Conditional mean of a standard normal on [a, b), by direct quadrature."""
    a = -mpmath.inf if a == -math.inf else mpmath.mpf(a)
    b = mpmath.inf if b == math.inf else mpmath.mpf(b)
    mass = mpmath.ncdf(b) - mpmath.ncdf(a)
    first = mpmath.quad(lambda t: t * mpmath.npdf(t), [a, b])
    return first / mass


def test_sign_encode_examples():
    q = sign_encode([-1.3, 0.2, 0.0])
    assert list(q.signs) == [-1, 1, 1]


def test_sign_encode_balanced_and_theta():
    rng = np.random.default_rng(0)
    x = rng.standard_normal(100_000)
    assert abs(np.mean(sign_encode(x).signs == 1) - 0.5) < 0.01
    y = 0.5 * x + math.sqrt(0.75) * rng.standard_normal(len(x))
    agree = np.mean(sign_encode(x).signs == sign_encode(y).signs)
    assert abs(agree - 2 / 3) < 0.01


def test_codebook_r1():
    cb = build_codebook(1)
    assert list(cb.boundaries) == [-math.inf, 0.0, math.inf]
    np.testing.assert_allclose(cb.centroids, [-math.sqrt(2 / math.pi), math.sqrt(2 / math.pi)], rtol=1e-15)
    assert abs(cb.sigma_u_sq - 2 / math.pi) < 1e-15
    assert reconstruction_distortion(cb) == pytest.approx(0.36338, abs=1e-5)


def test_codebook_r2_boundaries():
    cb = build_codebook(2)
    np.testing.assert_allclose(cb.boundaries[1:-1], [-0.67449, 0.0, 0.67449], atol=1e-5)
    assert abs(float(mp_phi(cb.boundaries[1])) - 0.25) < 1e-12


@pytest.mark.parametrize("R", [1, 2, 3, 5, 8, 10, 12])
def test_boundaries_hit_equal_mass_against_mpmath(R):
    cb = build_codebook(R)
    for i in range(2, 2**R + 1):
        assert abs(float(mp_phi(cb.boundaries[i - 1])) - (i - 1) / 2**R) < 1e-12


@pytest.mark.parametrize("R", [1, 2, 3, 4, 6])
def test_centroids_are_conditional_means(R):
    cb = build_codebook(R)
    for i in range(cb.levels):
        ref = float(mp_centroid(cb.boundaries[i], cb.boundaries[i + 1]))
        assert cb.centroids[i] == pytest.approx(ref, rel=1e-10, abs=1e-12)


@pytest.mark.parametrize("R", range(1, 17))
def test_codebook_invariants(R):
    cb = build_codebook(R)
    a, c = cb.boundaries, cb.centroids
    assert len(a) == 2**R + 1 and len(c) == 2**R
    assert np.all(np.diff(a) > 0) and np.all(np.diff(c) > 0)
    np.testing.assert_array_equal(c, -c[::-1])
    assert np.all((a[:-1] < c) & (c < a[1:]))
    assert abs(np.sum(c) / 2**R) < 1e-12
    assert cb.sigma_u_sq == pytest.approx(np.sum(c**2) / 2**R, rel=1e-15)
    assert 0 < cb.sigma_u_sq < 1


def test_sigma_u_sq_increasing_and_limits():
    s = [build_codebook(R).sigma_u_sq for R in range(1, 17)]
    assert all(b > a for a, b in zip(s, s[1:]))
    d = [reconstruction_distortion(build_codebook(R)) for R in range(1, 11)]
    assert all(b < a for a, b in zip(d, d[1:]))
    assert build_codebook(12).sigma_u_sq > 0.999
    assert reconstruction_distortion(build_codebook(8)) < 0.01
    assert reconstruction_distortion(build_codebook(8)) == pytest.approx(R8_DISTORTION, rel=1e-9)


@pytest.mark.parametrize("R", [0, 17, 2.5, -1])
def test_codebook_rate_range(R):
    with pytest.raises(ParameterError):
        build_codebook(R)


def test_persym_examples():
    cb1, cb2 = build_codebook(1), build_codebook(2)
    q = persym_encode([-0.3], cb1)
    assert list(q.indices) == [1]
    assert decode(q, cb1)[0] == pytest.approx(-0.79788, abs=1e-5)
    assert list(persym_encode([0.7], cb2).indices) == [4]
    on_edges = persym_encode(cb2.boundaries[1:-1], cb2)
    assert list(on_edges.indices) == [2, 3, 4]


def test_decode_examples_and_errors():
    cb = build_codebook(1)
    np.testing.assert_allclose(decode(QuantizedShard(0, 1, [1, 2]), cb), [-0.7978845608, 0.7978845608])
    with pytest.raises(DataError):
        QuantizedShard(0, 1, [0, 3])
    with pytest.raises(DataError):
        decode(QuantizedShard(0, 2, [1, 4]), cb)


@given(st.integers(1, 16), arrays(np.float64, st.integers(1, 50),
                                   elements=st.floats(-8, 8, allow_nan=False)))
def test_encode_decode_idempotent(R, x):
    cb = build_codebook(R)
    q = persym_encode(x, cb)
    again = persym_encode(decode(q, cb), cb)
    np.testing.assert_array_equal(q.indices, again.indices)


@given(arrays(np.float64, st.integers(1, 50), elements=st.floats(-1e6, 1e6, allow_nan=False)))
def test_sign_and_one_bit_partition_agree(x):
    np.testing.assert_array_equal(sign_encode(x).indices, persym_encode(x, build_codebook(1)).indices)


@given(st.integers(1, 16), arrays(np.float64, st.integers(1, 50),
                                   elements=st.floats(-6, 6, allow_nan=False)))
def test_bin_contains_value(R, x):
    cb = build_codebook(R)
    i = persym_encode(x, cb).indices
    assert np.all(cb.boundaries[i - 1] <= x) and np.all(x < cb.boundaries[i])


@pytest.mark.parametrize("R", [1, 2, 3, 4])
def test_equiprobable_bins_and_distortion(R):
    x = np.random.default_rng(R).standard_normal(1_000_000)
    cb = build_codebook(R)
    idx = persym_encode(x, cb).indices
    p = 2.0**-R
    freq = np.bincount(idx, minlength=cb.levels + 1)[1:] / len(x)
    assert np.all(np.abs(freq - p) <= 4 * math.sqrt(p * (1 - p) / len(x)))
    mse = np.mean((x - decode(persym_encode(x, cb), cb)) ** 2)
    assert abs(mse - reconstruction_distortion(cb)) < 0.01 * reconstruction_distortion(cb)


@pytest.mark.parametrize("R", [1, 2])
def test_centroid_perturbation_increases_error(R):
    x = np.random.default_rng(7).standard_normal(1_000_000)
    cb = build_codebook(R)
    idx = persym_encode(x, cb).indices - 1
    base = np.mean((x - cb.centroids[idx]) ** 2)
    for i in range(cb.levels):
        for delta in (-0.01, 0.01):
            c = cb.centroids.copy()
            c[i] += delta
            assert np.mean((x - c[idx]) ** 2) > base


def test_codebook_dump_format():
    lines = build_codebook(2).dump().splitlines()
    assert len(lines) == 5
    i, a, c = lines[1].split()
    assert i == "2" and float(a) == pytest.approx(-0.674489750196082)
    assert float(c) == pytest.approx(build_codebook(2).centroids[1], rel=1e-14)
    assert lines[-1].startswith("sigma_u_sq=")
    assert lines[0].split()[1] == "-inf"


def test_shard_indices_are_read_only():
    q = sign_encode([1.0, -1.0])
    with pytest.raises(ValueError):
        q.indices[0] = 1
