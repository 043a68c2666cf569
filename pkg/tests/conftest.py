import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240915)


def random_tensor_corpus(count, dmax=8, seed=7):
    """Seeded list of random tensors with shapes up to dmax^3."""
    rng = np.random.default_rng(seed)
    corpus = []
    for _ in range(count):
        d1, d2, d3 = rng.integers(1, dmax + 1, size=3)
        corpus.append(rng.standard_normal((d1, d2, d3)))
    return corpus
