import math

import pytest

from tpsi.geometry import Trihedron, sample_tetrahedron


@pytest.fixture(scope="session")
def symmetric_trihedron():
    half = math.pi / 2
    return Trihedron.from_planar(half, half, half)


@pytest.fixture(scope="session")
def generic_trihedron():
    return Trihedron.from_planar(0.7, 1.1, 0.9)


@pytest.fixture(scope="session")
def flat_corner():
    return Trihedron.from_planar_pair(0.6, 0.8)


@pytest.fixture(scope="session")
def tetra():
    return sample_tetrahedron(seed=0)
