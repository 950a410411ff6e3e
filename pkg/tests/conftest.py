import numpy as np
import pytest

from latreg import Dataset, Direction, UNITY

X = Direction("x")
Y = Direction("y")
Z = Direction("z")


@pytest.fixture
def d1():
    """x=[1,2,3], y=[2,3,5]: the two-column desk fixture."""
    return Dataset({"x": [1.0, 2.0, 3.0], "y": [2.0, 3.0, 5.0]})


@pytest.fixture
def d2():
    """d1 plus z=[1,2,2]; satisfies 1 = -2x + y + z exactly."""
    return Dataset({"x": [1.0, 2.0, 3.0], "y": [2.0, 3.0, 5.0],
                    "z": [1.0, 2.0, 2.0]})


def random_dataset(rng, n_columns=2, n=None):
    """Well-scaled random dataset with columns named x, y[, z]."""
    if n is None:
        n = int(rng.integers(4, 51))
    names = ("x", "y", "z")[:n_columns]
    columns = {}
    for name in names:
        mu = rng.uniform(-5.0, 5.0)
        scale = rng.uniform(0.5, 3.0)
        columns[name] = rng.normal(mu, scale, n)
    return Dataset(columns)


def replicate(data, k):
    """Dataset with every row duplicated k times."""
    return Dataset({name: np.tile(data.column(name), k) for name in data.names})
