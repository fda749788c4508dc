import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import oracles
from focusfuse.errors import ConfigError, DimensionMismatchError
from focusfuse.fusion import (average_gradient_region, fuse, region_average_gradients,
                              select_region_source)
from focusfuse.synthetic import make_sources


def test_two_by_two_single_term():
    g = average_gradient_region(np.array([[0.0, 1.0], [0.0, 1.0]]), np.ones((2, 2), int), 1)
    assert g == pytest.approx(math.sqrt(0.5), abs=1e-15)


def test_constant_region_scores_zero():
    assert average_gradient_region(np.full((5, 5), 40.0), np.ones((5, 5), int), 1) == 0.0


def test_whole_image_matches_oracle_on_ramp():
    ramp = np.add.outer(np.arange(6) * 3.0, np.arange(6) * 7.0)
    g = average_gradient_region(ramp, np.ones((6, 6), int), 1)
    assert g == pytest.approx(oracles.average_gradient(ramp.tolist()), abs=1e-12)


def test_region_gradients_skip_straddling_pairs():
    img = np.array([[0, 0, 9, 9], [0, 0, 9, 9], [0, 0, 9, 9]], dtype=float)
    labels = np.array([[1, 1, 2, 2]] * 3)
    # the jump from 0 to 9 lies exactly on the region border
    np.testing.assert_array_equal(region_average_gradients(img, labels), [0.0, 0.0])


def test_sliver_region_scores_zero():
    labels = np.ones((4, 4), int)
    labels[:, 3] = 2
    g = region_average_gradients(np.arange(16.0).reshape(4, 4), labels)
    assert g[1] == 0.0


@pytest.mark.parametrize("g, expected", [((3, 2, 1), 0), ((2, 2, 1), 0), ((1.0, 1.5), 1),
                                         ((1, 3, 3), 1), ((0, 0), 0)])
def test_select_region_source(g, expected):
    assert select_region_source(g) == expected


def test_select_rejects_bad_input():
    with pytest.raises(ConfigError):
        select_region_source([1.0])
    with pytest.raises(ConfigError):
        select_region_source([1.0, float("nan")])


def test_identical_sources(rng):
    x = rng.uniform(0, 255, (12, 12))
    labels = rng.integers(1, 5, (12, 12))
    fused, _ = fuse([x, x, x], labels)
    np.testing.assert_array_equal(fused, x)


def test_single_region_takes_sharpest(texture):
    base = texture[:64, :64]
    soft = np.round(base * 0.5 + 64)
    fused, dec = fuse([soft, base], np.ones((64, 64), int))
    np.testing.assert_array_equal(fused, base)
    assert [d.source for d in dec] == [1]


def test_half_split_with_true_partition(texture):
    srcs = make_sources(texture[:128, :128], "half", 3.0)
    labels = np.ones((128, 128), int)
    labels[:, 64:] = 2
    fused, dec = fuse(srcs, labels)
    assert [d.source for d in dec] == [1, 0]
    np.testing.assert_array_equal(fused, texture[:128, :128])


sizes = st.tuples(st.integers(3, 10), st.integers(3, 10))
cases = sizes.flatmap(lambda s: st.tuples(
    arrays(np.float64, s, elements=st.integers(0, 255).map(float)),
    arrays(np.float64, s, elements=st.integers(0, 255).map(float)),
    arrays(np.int64, s, elements=st.integers(1, 4))))


@settings(max_examples=60, deadline=None)
@given(cases)
def test_fusion_properties(case):
    x, y, labels = case
    fused, dec = fuse([x, y], labels)
    for d in dec:
        sel = labels == d.region
        np.testing.assert_array_equal(fused[sel], (x, y)[d.source][sel])
    np.testing.assert_array_equal(fuse([fused, fused], labels)[0], fused)
    # a common positive affine map scales gradients uniformly
    scaled, dec2 = fuse([0.5 * x + 10, 0.5 * y + 10], labels)
    np.testing.assert_allclose(scaled, 0.5 * fused + 10)
    assert [d.source for d in dec2] == [d.source for d in dec]


def test_decision_locality(rng):
    x = rng.uniform(0, 255, (10, 10))
    y = rng.uniform(0, 255, (10, 10))
    labels = np.ones((10, 10), int)
    labels[:, 5:] = 2
    before = fuse([x, y], labels)[1][0]
    x2 = x.copy()
    x2[:, 5:] = 0
    after = fuse([x2, y], labels)[1][0]
    assert before == after


def test_fuse_errors():
    a = np.zeros((4, 4))
    with pytest.raises(ConfigError):
        fuse([a], np.ones((4, 4), int))
    with pytest.raises(DimensionMismatchError):
        fuse([a, np.zeros((4, 5))], np.ones((4, 4), int))
    with pytest.raises(ConfigError):
        fuse([a, a], np.zeros((4, 4), int))
