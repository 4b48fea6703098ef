import numpy as np
import pytest

from hingen.features import FeatureSpec, nearest_centroid_accuracy, sample_centers, sample_features
from hingen.graph import TypedGraph
from hingen.schema import make_schema

SCHEMA = make_schema("movie", [("movie", "actor")], ["a", "b", "c"])


def _labelled(n_per, multi=0):
    g = TypedGraph(SCHEMA)
    for y in SCHEMA.labels:
        for _ in range(n_per):
            g.set_labels(g.add_node("movie"), [y])
    for _ in range(multi):
        g.set_labels(g.add_node("movie"), ["a", "b"])
    g.add_node("actor")
    return g


def test_centers_shrink_with_beta():
    c = sample_centers(SCHEMA.labels, 8, 1e-12, np.random.default_rng(0))
    assert set(c) == {"a", "b", "c"}
    assert max(np.abs(v).max() for v in c.values()) < 1e-4


def test_center_variance():
    c = sample_centers([str(i) for i in range(50)], 200, 4.0, np.random.default_rng(1))
    allv = np.concatenate(list(c.values()))
    assert abs(allv.var() / 4.0 - 1) < 0.05


def test_feature_variance_and_means():
    g = _labelled(4000)
    centers = sample_centers(SCHEMA.labels, 5, 9.0, np.random.default_rng(2))
    ids, x = sample_features(g, FeatureSpec(5, 2.0, 9.0, centers), np.random.default_rng(3))
    assert x.shape == (12000, 5) and np.isfinite(x).all()
    assert ids.tolist() == sorted(g.nodes("movie"))
    for y in SCHEMA.labels:
        rows = [i for i, v in enumerate(ids.tolist()) if g.labels[v] == {y}]
        xs = x[rows]
        assert np.abs(xs.mean(axis=0) - centers[y]).max() < 4 * np.sqrt(2.0 / len(rows))
        assert abs(xs.var(axis=0).mean() / 2.0 - 1) < 0.05


def test_tiny_alpha_puts_features_on_centers():
    g = _labelled(3)
    centers = sample_centers(SCHEMA.labels, 4, 1.0, np.random.default_rng(0))
    ids, x = sample_features(g, FeatureSpec(4, 1e-12, 1.0, centers), np.random.default_rng(0))
    for v, row in zip(ids.tolist(), x):
        (y,) = g.labels[v]
        np.testing.assert_allclose(row, centers[y], atol=1e-4)


def test_multi_label_product_rule():
    g = _labelled(0, multi=5000)
    centers = sample_centers(SCHEMA.labels, 3, 1.0, np.random.default_rng(4))
    _, x = sample_features(g, FeatureSpec(3, 1.0, 1.0, centers), np.random.default_rng(5))
    mid = (centers["a"] + centers["b"]) / 2
    assert np.abs(x.mean(axis=0) - mid).max() < 4 * np.sqrt(0.5 / 5000)
    assert abs(x.var(axis=0).mean() / 0.5 - 1) < 0.06
    _, xm = sample_features(g, FeatureSpec(3, 1.0, 1.0, centers), np.random.default_rng(5), mode="mixture")
    assert xm.var(axis=0).mean() > x.var(axis=0).mean()


def test_determinism_and_validation():
    g = _labelled(5)
    centers = sample_centers(SCHEMA.labels, 4, 1.0, np.random.default_rng(0))
    spec = FeatureSpec(4, 1.0, 1.0, centers)
    _, x1 = sample_features(g, spec, np.random.default_rng(9))
    _, x2 = sample_features(g, spec, np.random.default_rng(9))
    assert np.array_equal(x1, x2)
    g.add_node("movie")
    with pytest.raises(ValueError):
        sample_features(g, spec, np.random.default_rng(9))
    with pytest.raises(ValueError):
        FeatureSpec(4, 0.0, 1.0, centers)
    with pytest.raises(ValueError):
        FeatureSpec(3, 1.0, 1.0, centers)


def test_nearest_centroid_extremes():
    rng = np.random.default_rng(0)
    y = np.repeat([0, 1, 2], 200)
    far = np.eye(3)[y] * 100 + rng.normal(size=(600, 3))
    assert nearest_centroid_accuracy(far, y, rng) == 1.0
    noise = rng.normal(size=(600, 3))
    assert nearest_centroid_accuracy(noise, y, rng) < 0.5
