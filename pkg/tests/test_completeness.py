"""Elimination certificates, first-row system, explicit mutation fixtures."""

import random

import pytest

from gencluster import completeness as comp
from gencluster.rationals import Q, is_integer


def certificate_point(n, seed):
    rng = random.Random(seed)
    pivots = [k * n + 1 for k in range(1, n - 1)] + [j * (n - 1) + 1 for j in range(1, n)]
    pivots.append(1)
    return comp.sample_certificate_point(n, rng, pivots)


@pytest.mark.parametrize("n", [3, 4])
def test_tall_ledger_exact_at_five_points(n):
    rng = random.Random(10 + n)
    pivots = [k * n + 1 for k in range(1, n - 1)]
    for _ in range(5):
        x_rows, y_rows = comp.sample_certificate_point(n, rng, pivots)
        cert = comp.build_G(n, x_rows, y_rows)
        assert cert.ok, cert.failures()[:3]
        g = cert.matrix
        assert all(g[i][i] == 1 for i in range(n - 1))
        assert all(g[i][j] == 0 for i in range(n - 1) for j in range(i))


@pytest.mark.parametrize("n", [3, 4])
def test_long_ledger_exact_at_five_points(n):
    rng = random.Random(20 + n)
    pivots = [j * (n - 1) + 1 for j in range(1, n)]
    for _ in range(5):
        x_rows, y_rows = comp.sample_certificate_point(n, rng, pivots)
        cert = comp.build_H(n, x_rows, y_rows)
        assert cert.ok, cert.failures()[:3]
        h = cert.matrix
        assert all(h[i][i] == 1 for i in range(n))
        assert all(h[i][j] == 0 for i in range(n) for j in range(i + 1, n))


def test_ledger_covers_all_stated_rows():
    n = 4
    x_rows, y_rows = certificate_point(n, 3)
    assert len(comp.build_G(n, x_rows, y_rows).ledger) == (n - 2) * n
    assert len(comp.build_H(n, x_rows, y_rows).ledger) == (n - 1) * (n - 1)


def test_denominators_clear_against_pivot_minors():
    # at integer points the elimination divides only by the pivot minors,
    # so each G-row entry times its pivot is an integer (two points)
    n = 4
    for seed in (31, 32):
        x_rows, y_rows = certificate_point(n, seed)
        cert = comp.build_G(n, x_rows, y_rows)
        for _, _, cleared in cert.denominator_witness:
            assert is_integer(cleared)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_first_row_recovered_and_ratio_constant(n):
    rng = random.Random(40 + n)
    ratios = set()
    for _ in range(5):
        x_rows, y_rows = comp.sample_certificate_point(n, rng, [1])
        cert = comp.first_row_solve(n, x_rows, y_rows)
        assert cert.ok
        ratios.add(cert.ratio)
    assert len(ratios) == 1


def test_first_row_symbolic_certificate_n2():
    kappa, exact = comp.first_row_symbolic_n2()
    assert exact
    assert kappa == Q(1)


def test_notequiv_sequence_and_roundtrip():
    res = comp.notequiv_sequence_check(trials=5, seed=2, lo=-30, hi=30)
    assert res.guard_ok
    assert res.ok, res.mismatches
    assert res.roundtrip_ok
