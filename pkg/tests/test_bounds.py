import random
from fractions import Fraction
from itertools import product

import pytest

from cutbound.bounds import (
    distortion_lower_bound,
    hypermetric_value,
    k2n_certificate,
    search_b_vectors,
)
from cutbound.cuts import Cut, CutMeasure, cut_pseudometric
from cutbound.errors import GuardExceededError, InputError
from cutbound.graphs import build_k2n, build_theta
from cutbound.metrics import FiniteMetric, shortest_path_metric
from cutbound.embedding import combine_d1
from cutbound.oracle import exact_c1


def four_cycle_metric():
    return shortest_path_metric(build_theta(1, 1).underlying)


def test_hypermetric_single_support_is_zero(k2n_metric):
    m = k2n_metric(3)
    assert hypermetric_value(m, [1, 0, 0, 0, 0]) == 0


def test_hypermetric_k23_violation(k2n_metric):
    # the unit metric itself is not l1-embeddable: positive value
    m = k2n_metric(3)
    assert hypermetric_value(m, [-1, -1, 1, 1, 1]) == 4


def test_hypermetric_on_embeddable_four_cycle():
    assert hypermetric_value(four_cycle_metric(), [-1, 1, 1, 0]) <= 0


def test_hypermetric_rejects_bad_vectors(k2n_metric):
    m = k2n_metric(3)
    with pytest.raises(InputError):
        hypermetric_value(m, [1, 1, 0, 0, 0])
    with pytest.raises(InputError):
        hypermetric_value(m, [1, 0, 0])


def test_lower_bound_k23(k2n_metric):
    cert = distortion_lower_bound(k2n_metric(3), [-1, -1, 1, 1, 1])
    assert cert.positive_mass == 8
    assert cert.negative_mass == 6
    assert cert.bound == Fraction(4, 3)


def test_lower_bound_k25(k2n_metric):
    cert = distortion_lower_bound(k2n_metric(5), [-2, -2, 1, 1, 1, 1, 1])
    assert cert.positive_mass == 28
    assert cert.negative_mass == 20
    assert cert.bound == Fraction(7, 5)


def test_lower_bound_needs_leverage(k2n_metric):
    with pytest.raises(InputError):
        distortion_lower_bound(k2n_metric(3), [1, 0, 0, 0, 0])


@pytest.mark.parametrize(
    "k,expected",
    [(1, Fraction(4, 3)), (2, Fraction(7, 5)), (10, Fraction(31, 21))],
)
def test_k2n_certificate_values(k, expected):
    cert = k2n_certificate(k)
    assert cert.bound == expected
    assert cert.positive_mass == 6 * k * k + 2 * k
    assert cert.negative_mass == 2 * k * (2 * k + 1)


def test_k2n_certificate_bounds_increase_toward_three_halves():
    previous = Fraction(0)
    for k in range(1, 11):
        bound = k2n_certificate(k).bound
        assert bound > previous
        previous = bound
    assert k2n_certificate(50).bound > Fraction(3, 2) - Fraction(1, 100)


def test_lower_bound_scale_invariant(k2n_metric):
    m = k2n_metric(3)
    b = [-1, -1, 1, 1, 1]
    for factor in (Fraction(2), Fraction(1, 7), Fraction(13, 5)):
        assert (
            distortion_lower_bound(m.scaled(factor), b).bound
            == distortion_lower_bound(m, b).bound
        )


def test_search_k23_finds_tight_vector(k2n_metric):
    cert = search_b_vectors(k2n_metric(3), 1)
    assert cert.bound == Fraction(4, 3)


def test_search_k25_finds_tight_vector(k2n_metric):
    cert = search_b_vectors(k2n_metric(5), 2)
    assert cert.bound == Fraction(7, 5)


def test_search_on_embeddable_metric_gives_one():
    cert = search_b_vectors(four_cycle_metric(), 2)
    assert cert.bound == 1


def test_search_guard():
    m = shortest_path_metric(build_k2n(8))  # 10 points
    with pytest.raises(GuardExceededError):
        search_b_vectors(m, 3, guard=10**5)


def test_search_deterministic(k2n_metric):
    a = search_b_vectors(k2n_metric(3), 1)
    b = search_b_vectors(k2n_metric(3), 1)
    assert a.b == b.b


def test_certificates_never_beat_oracle(k2n_metric):
    # soundness on every <= 7 point unit instance: bound <= exact c1
    for n in range(1, 6):
        m = k2n_metric(n)
        c1 = exact_c1(m).optimum_D
        cert = search_b_vectors(m, 1)
        assert cert.bound <= c1
        if n in (3, 5):
            k = (n - 1) // 2
            assert k2n_certificate(k).bound <= c1


def _sum_one_vectors(points, max_abs=2):
    for b in product(range(-max_abs, max_abs + 1), repeat=points):
        if sum(b) == 1:
            yield b


def _measure_metric_matrix(measure):
    n = measure.universe_size
    return [
        [cut_pseudometric(measure, x, y) for y in range(n)] for x in range(n)
    ]


def test_hypermetric_nonpositive_on_realized_theta_metrics():
    # measures from the construction on <= 8 points, all small b-vectors
    for k, ell in ((1, 1), (1, 2), (2, 1), (3, 1)):
        measure = combine_d1(k, ell)
        n = measure.universe_size
        assert n <= 8
        dist = _measure_metric_matrix(measure)
        for b in _sum_one_vectors(n):
            total = Fraction(0)
            for x in range(n):
                for y in range(x + 1, n):
                    total += 2 * b[x] * b[y] * dist[x][y]
            assert total <= 0, f"violated at k={k} ell={ell} b={b}"


def test_hypermetric_nonpositive_on_random_measures():
    rng = random.Random(2024)
    for trial in range(5):
        n = rng.randint(4, 6)
        atoms = []
        for _ in range(rng.randint(2, 6)):
            members = frozenset(v for v in range(n) if rng.random() < 0.5)
            atoms.append((Cut(members, n), Fraction(rng.randint(0, 4), rng.randint(1, 4))))
        measure = CutMeasure(n, tuple(atoms))
        dist = _measure_metric_matrix(measure)
        for b in _sum_one_vectors(n):
            total = Fraction(0)
            for x in range(n):
                for y in range(x + 1, n):
                    total += 2 * b[x] * b[y] * dist[x][y]
            assert total <= 0


def test_certificate_json(k2n_metric):
    doc = k2n_certificate(2).to_json()
    assert doc["b"] == [-2, -2, 1, 1, 1, 1, 1]
    assert doc["bound"] == "7/5"
    assert doc["positive_mass"] == "28"
    assert doc["negative_mass"] == "20"
