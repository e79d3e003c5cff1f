import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))  # makes _oracles importable


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_pointset(rng, n, d, scale=1.0):
    from propclust import PointSet

    return PointSet((rng.random((n, d)) * scale).astype(np.float32))


@pytest.fixture
def blobs():
    """Two well-separated 2-d blobs with true labels; deterministic."""
    from propclust import PointSet

    g = np.random.default_rng(99)
    a = g.normal(0.0, 1.0, size=(60, 2))
    b = g.normal(30.0, 1.0, size=(60, 2))
    pts = np.vstack([a, b]).astype(np.float32)
    labels = np.repeat([0, 1], 60)
    return PointSet(pts, name="blobs", true_labels=labels)
