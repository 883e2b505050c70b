from fractions import Fraction

import pytest

from cutbound.graphs import build_k2n
from cutbound.metrics import FiniteMetric, shortest_path_metric
from cutbound.reduction import WeightedInstance


@pytest.fixture(scope="session")
def k2n_metric():
    cache = {}

    def make(n: int) -> FiniteMetric:
        if n not in cache:
            cache[n] = shortest_path_metric(build_k2n(n))
        return cache[n]

    return make


@pytest.fixture()
def unit_instance():
    def make(n: int) -> WeightedInstance:
        ones = (Fraction(1),) * n
        return WeightedInstance(ones, ones)

    return make
