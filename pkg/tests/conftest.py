from pathlib import Path

import pytest

from ftsdist import model

DATA = Path(__file__).parent / "data"


@pytest.fixture
def sample_path():
    return DATA / "four_states.json"


@pytest.fixture
def sample():
    return model.load(DATA / "four_states.json")


@pytest.fixture
def sample_dists(sample):
    """(mu, eta, nu): the successors of s1, s2 and s3."""
    return tuple(sample.successors(s, 0)[0] for s in range(3))
