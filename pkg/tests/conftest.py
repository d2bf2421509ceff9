import numpy as np
import pytest

from lunmeb import make_schmidt_state


def random_full_rank_state(rng, d):
    """Generic full-rank Schmidt state; amplitudes bounded away from zero."""
    coeffs = rng.uniform(0.1, 1.0, size=d)
    return make_schmidt_state(d, coeffs / np.linalg.norm(coeffs))


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
