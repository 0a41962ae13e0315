from pathlib import Path

import numpy as np
import pytest

from orderk import verify
from orderk.geom_core import PointSet

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture(scope="session")
def random_sets():
    rng = np.random.default_rng(11)
    return [verify.random_point_set(10, rng) for _ in range(6)]


@pytest.fixture
def five():
    return PointSet.from_coords([(0.1, 0.2), (0.9, 0.15), (0.55, 0.85), (0.35, 0.5), (0.8, 0.6)])
