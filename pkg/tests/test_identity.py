"""Randomized and certified identity testing."""

import random

import pytest

from gencluster import dag
from gencluster.identity import (
    DegeneratePointBudgetExceeded,
    functions_equal,
    sample_nondegenerate,
)


def test_binomial_square_certified():
    x = dag.entry_x(1, 1)
    y = dag.entry_y(1, 1)
    f = dag.rpow(x + y, 2)
    g = x * x + 2 * x * y + y * y
    verdict = functions_equal(f, g, seed=1)
    assert verdict.equal and verdict.certified


def test_distinct_variables_unequal_with_witness():
    verdict = functions_equal(dag.entry_x(1, 1), dag.entry_y(1, 1), seed=2, certify="never")
    assert not verdict.equal
    assert verdict.witness is not None
    assert "lhs" in verdict.witness


def test_probabilistic_equal_reports_bound():
    # force the sampling path by disabling certification
    x = dag.entry_x(1, 1)
    f = dag.rpow(x + 1, 3)
    g = x * x * x + 3 * x * x + 3 * x + 1
    verdict = functions_equal(f, g, seed=3, certify="never")
    assert verdict.equal and not verdict.certified
    assert verdict.failure_bound is not None
    assert verdict.failure_bound < 1 / 10**20


def test_symmetric_and_reflexive_on_random_dags():
    rng = random.Random(17)

    def random_dag(depth=3):
        if depth == 0 or rng.random() < 0.3:
            choice = rng.random()
            if choice < 0.4:
                return dag.entry_x(rng.randint(1, 2), rng.randint(1, 2))
            if choice < 0.8:
                return dag.entry_y(rng.randint(1, 2), rng.randint(1, 2))
            return dag.constant(rng.randint(-4, 4))
        op = rng.random()
        if op < 0.4:
            return random_dag(depth - 1) + random_dag(depth - 1)
        if op < 0.8:
            return random_dag(depth - 1) * random_dag(depth - 1)
        return dag.rpow(random_dag(depth - 1), rng.randint(1, 3))

    funcs = [random_dag() for _ in range(20)]
    for f in funcs:
        assert functions_equal(f, f, seed=5).equal
    for _ in range(20):
        f, g = rng.choice(funcs), rng.choice(funcs)
        assert functions_equal(f, g, seed=6).equal == functions_equal(g, f, seed=6).equal


def test_resample_cap_is_an_error():
    # denominator vanishes identically, so every sampled point is degenerate
    u = dag.Var(("u", "t"))
    f = dag.Quot(dag.constant(1), dag.Sum([u, dag.Prod([dag.constant(-1), u])]))
    with pytest.raises(DegeneratePointBudgetExceeded):
        functions_equal(f, f, seed=7, certify="never")


def test_sample_nondegenerate_counts_resamples():
    rng = random.Random(0)
    point, resamples = sample_nondegenerate(
        rng, [("u", "a")], lambda p: p[("u", "a")] % 2 == 0, lo=0, hi=9
    )
    assert point[("u", "a")] % 2 == 0
    assert resamples >= 0
