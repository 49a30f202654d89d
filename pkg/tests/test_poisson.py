"""Bracket evaluation, log-canonicity, compatibility, toric weights."""

import random

import pytest

from gencluster import dag, double_seed as ds, poisson as po
from gencluster.identity import random_point
from gencluster.rationals import Q


def entry_keys(n):
    keys = set()
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            keys.add(("x", i, j))
            keys.add(("y", i, j))
    return keys


def rand_pt(n, seed, lo=-20, hi=20):
    return random_point(random.Random(seed), entry_keys(n), lo, hi)


def test_bracket_x11_x22_is_x12_x21():
    n = 3
    pt = rand_pt(n, 1)
    val = po.bracket(dag.entry_x(1, 1), dag.entry_x(2, 2), pt, n)
    assert val == pt[("x", 1, 2)] * pt[("x", 2, 1)]


def test_bracket_x11_y11_zero_and_self_bracket_zero():
    n = 2
    pt = rand_pt(n, 2)
    assert po.bracket(dag.entry_x(1, 1), dag.entry_y(1, 1), pt, n) == 0
    f = dag.entry_x(1, 2) * dag.entry_y(2, 1) + dag.entry_x(1, 1)
    assert po.bracket(f, f, pt, n) == 0


def test_entry_bracket_third_line():
    n = 2
    pt = rand_pt(n, 3)
    x, y = po.point_matrices(pt, n)
    # {y_12, x_21}: q=1 < j=2 and i=1 < p=2 give (1+sign(q-j)) = 0, (1+sign(i-p)) = 0
    assert po.entry_bracket(("y", 1, 2), ("x", 2, 1), x, y) == 0
    # {y_11, x_12}: (1+1) y_12 x_11 - (1+0) x_12 y_11, halved
    expected = Q(1, 2) * (2 * y[0][1] * x[0][0] - x[0][1] * y[0][0])
    assert po.entry_bracket(("y", 1, 1), ("x", 1, 2), x, y) == expected


def test_antisymmetry_and_leibniz_randomized():
    n = 3
    rng = random.Random(7)
    for trial in range(50):
        pt = rand_pt(n, 100 + trial)

        def rand_fn():
            parts = []
            for _ in range(rng.randint(1, 3)):
                tag = rng.choice(("x", "y"))
                parts.append(dag.Var((tag, rng.randint(1, n), rng.randint(1, n))))
            f = parts[0]
            for p in parts[1:]:
                f = f * p if rng.random() < 0.7 else f + p
            return f

        f, g, h = rand_fn(), rand_fn(), rand_fn()
        assert po.bracket(f, g, pt, n) == -po.bracket(g, f, pt, n)
        lhs = po.bracket(f * g, h, pt, n)
        rhs = dag.evaluate(f, pt) * po.bracket(g, h, pt, n) + dag.evaluate(g, pt) * po.bracket(f, h, pt, n)
        assert lhs == rhs


def test_matrix_form_equals_pair_sum():
    n = 3
    rng = random.Random(11)
    phis = ds.phi_functions(n)
    for trial in range(5):
        pt = rand_pt(n, 200 + trial)
        f = phis[rng.randint(0, len(phis) - 1)]
        g = ds.g_function(n, 2, 1)
        assert po.bracket(f, g, pt, n) == po.bracket_pairsum(f, g, pt, n)


def test_determinants_are_casimirs():
    # both det X and det Y bracket to zero with arbitrary entry functions
    n = 3
    pt = rand_pt(n, 5)
    det_x = ds.g_function(n, 1, 1)
    det_y = ds.h_function(n, 1, 1)
    probes = [dag.entry_x(1, 2), dag.entry_y(3, 1), ds.phi_functions(n)[0]]
    for f in probes:
        assert po.bracket(det_x, f, pt, n) == 0
        assert po.bracket(det_y, f, pt, n) == 0


def test_log_canonicity_two_entry_family():
    n = 2
    rng = random.Random(13)
    fam = [("x11", dag.entry_x(1, 1)), ("x12", dag.entry_x(1, 2))]
    points = po.sample_family_points(fam, 3, rng)
    res = po.log_canonicity_matrix(fam, points, n)
    assert res.constant
    # {x_11, x_12} = 1/2 x_12 x_11, so the log ratio is the constant 1/2
    assert res.omega_value("x11", "x12") == Q(1, 2)


def test_log_canonicity_negative_control():
    # the pair (x_11 + x_22, x_12) has a genuinely point-dependent ratio
    n = 2
    rng = random.Random(17)
    fam = [("s", dag.entry_x(1, 1) + dag.entry_x(2, 2)), ("x12", dag.entry_x(1, 2))]
    points = po.sample_family_points(fam, 4, rng)
    res = po.log_canonicity_matrix(fam, points, n)
    assert not res.constant
    assert res.failures


def test_constant_shift_pair_is_log_canonical_with_zero_ratio():
    # (x_11, x_11 + 1) brackets to zero identically, hence is log-canonical
    # with ratio 0; it does not work as a negative control
    n = 2
    rng = random.Random(19)
    fam = [("x11", dag.entry_x(1, 1)), ("shift", dag.entry_x(1, 1) + 1)]
    points = po.sample_family_points(fam, 3, rng, n=n)
    res = po.log_canonicity_matrix(fam, points, n)
    assert res.constant
    assert res.omega_value("x11", "shift") == 0


def test_family_log_canonical_n3():
    n = 3
    fam = ds.family_bar(n)
    points = po.sample_family_points(fam, 3, random.Random(23))
    res = po.log_canonicity_matrix(fam, points, n)
    assert res.constant
    assert not res.nonhalf_integer_pairs


def test_compatibility_sigma3():
    n = 3
    seed = ds.build_seed_bar(n)
    fam = ds.family_bar(n)
    points = po.sample_family_points(fam, 3, random.Random(29))
    res = po.compatibility_check(seed, points, n)
    assert res.ok, res.violations[:5]
    assert res.lam is not None and res.lam != 0


def test_compatibility_negative_control_corrupted_quiver():
    n = 3
    seed = ds.build_seed_bar(n)
    fam = ds.family_bar(n)
    points = po.sample_family_points(fam, 2, random.Random(31))
    broken = ds.build_seed_bar(n)
    # removing one grid edge shifts a y-variable off its diagonal bracket
    victim = (ds.grid_id(3, 2), ds.grid_id(2, 2))
    assert victim in broken.quiver.edges
    del broken.quiver.edges[victim]
    res = po.compatibility_check(broken, points, n)
    assert not res.ok
    assert res.violations


@pytest.mark.parametrize("n", [3, 4])
def test_weight_table_reproduced(n):
    fam = dict(ds.family_bar(n))
    expected = po.expected_weights(n)
    rng = random.Random(37)
    for label, f in fam.items():
        assert po.extract_weights(f, n, rng) == expected[label], label


def test_weights_det_x_all_ones():
    n = 3
    w = po.extract_weights(ds.g_function(n, 1, 1), n, random.Random(41))
    assert w.left == (1, 1, 1) and w.right == (1, 1, 1)


def test_weight_probe_rejects_non_homogeneous():
    n = 2
    f = dag.entry_x(1, 1) + dag.entry_x(1, 1) * dag.entry_x(2, 2)
    with pytest.raises(po.NonHomogeneousError):
        po.extract_weights(f, n, random.Random(43))


def test_y_weights_zero_and_negative_control():
    n = 3
    seed = ds.build_seed_bar(n)
    assert po.y_weight_zero_check(seed, n, random.Random(47)) == []
    broken = ds.build_seed_bar(n)
    victim = (ds.grid_id(3, 1), ds.grid_id(2, 1))
    assert victim in broken.quiver.edges
    del broken.quiver.edges[victim]
    offenders = po.y_weight_zero_check(broken, n, random.Random(53))
    assert offenders


@pytest.mark.parametrize("n", range(2, 9))
def test_lambda_mu_kappa_dichotomy(n):
    assert po.lambdamukappa_check(n) == []


@pytest.mark.parametrize("n", range(3, 9))
def test_kappa_periodicity_domain(n):
    # the difference periodicity holds away from multiples of n-1; those
    # indices are excluded, and the four-term interior combination vanishes
    big_n = n * (n - 1)
    bad = po.kappa_periodicity_check(n)
    assert bad == [k for k in range(1, big_n - n + 1) if k % (n - 1) == 0]
    assert po.kappa_four_term_check(n) == []
