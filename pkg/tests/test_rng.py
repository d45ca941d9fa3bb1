import zlib

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats

from rdmd import Stream
from rdmd.rng import stream_id


def test_matches_reference_philox():
    ref = np.random.Philox(key=np.array([42, zlib.crc32(b"noise")], dtype=np.uint64),
                           counter=np.zeros(4, dtype=np.uint64))
    np.testing.assert_array_equal(Stream(42, "noise").raw(16), ref.random_raw(16))


def test_stream_id_is_crc32():
    assert stream_id("spike-size") == zlib.crc32(b"spike-size")


def test_determinism_and_independence():
    a = Stream(7, "a").normal(100)
    np.testing.assert_array_equal(a, Stream(7, "a").normal(100))
    assert not np.array_equal(a, Stream(7, "b").normal(100))
    assert not np.array_equal(a, Stream(8, "a").normal(100))


def test_negative_seed():
    with pytest.raises(ValueError):
        Stream(-1)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 63), st.integers(1, 200))
def test_uniform_open_interval(seed, n):
    u = Stream(seed, "u").uniform(n)
    assert np.all((u > 0) & (u < 1))


def test_shapes():
    s = Stream(0)
    assert s.normal((3, 5)).shape == (3, 5)
    assert s.normal(7).shape == (7,)
    assert s.bernoulli((2, 2), 0.5).dtype == bool


@pytest.mark.parametrize("draw, dist", [
    (lambda s: s.normal(20000), stats.norm()),
    (lambda s: s.laplace(20000, scale=0.5), stats.laplace(scale=0.5)),
    (lambda s: s.cauchy(20000, gamma=2.0), stats.cauchy(scale=2.0)),
    (lambda s: s.student_t(20000, 2.0), stats.t(2.0)),
])
def test_distributions_ks(draw, dist):
    assert stats.kstest(draw(Stream(3, "ks")), dist.cdf).pvalue > 1e-3


def test_bernoulli_rate():
    assert Stream(4).bernoulli(100000, 0.05).mean() == pytest.approx(0.05, abs=0.003)
