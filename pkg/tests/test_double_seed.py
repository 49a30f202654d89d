"""Staircase matrix, function families, and the grid quiver."""

import random

import pytest

from gencluster import dag, double_seed as ds
from gencluster.identity import functions_equal, random_matrix, random_point
from gencluster.linalg import mat_mul
from gencluster.rationals import Q
from gencluster.seeds import exchange_polynomial, y_exponents


def all_entry_keys(n):
    keys = set()
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            keys.add(("x", i, j))
            keys.add(("y", i, j))
    return keys


def test_phi_matrix_n2_layout():
    rows = ds.phi_matrix(2)
    assert len(rows) == 2
    assert rows[0][0].key == ("y", 2, 1) and rows[0][1].key == ("y", 2, 2)
    assert rows[1][0].key == ("x", 2, 1) and rows[1][1].key == ("x", 2, 2)


def test_phi_matrix_block_pattern_n3():
    rows = ds.phi_matrix(3)
    assert len(rows) == 6
    # Y block at block positions (1,1) and (2,2); X at (2,1) and (3,2)
    assert rows[0][0].key == ("y", 2, 1)
    assert rows[2][0].key == ("x", 2, 1)
    assert rows[2][3].key == ("y", 2, 1)
    assert rows[4][3].key == ("x", 2, 1)
    # exactly 2(n-1) = 4 nonzero blocks worth of entries
    nonzero = sum(1 for row in rows for e in row if not isinstance(e, dag.Const))
    assert nonzero == 4 * 2 * 3


def test_phi_hand_expansion_n2():
    phi1, phi2 = ds.phi_functions(2)
    point = {("y", 2, 1): Q(1), ("y", 2, 2): Q(0), ("x", 2, 1): Q(0), ("x", 2, 2): Q(1)}
    assert dag.evaluate(phi1, point) == 1
    expected = dag.entry_y(2, 1) * dag.entry_x(2, 2) - dag.entry_y(2, 2) * dag.entry_x(2, 1)
    assert functions_equal(phi1, expected, seed=0).equal
    assert functions_equal(phi2, dag.entry_x(2, 2), seed=0).equal


def test_phi_last_is_corner_entry():
    for n in (2, 3, 4):
        phis = ds.phi_functions(n)
        assert functions_equal(phis[-1], dag.entry_x(n, n), seed=0).equal


def test_kappa_table_values():
    assert [ds.kappa_exponent(3, l) for l in range(1, 7)] == [3, 2, 1, 1, 0, 0]
    assert ds.kappa_exponent(3, 7) == 0  # empty-minor convention
    with pytest.raises(ValueError):
        ds.kappa_exponent(3, 8)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_kappa_homogeneity(n):
    rng = random.Random(100 + n)
    phis = ds.phi_functions(n)
    for _ in range(2):
        point = random_point(rng, all_entry_keys(n), -99, 99)
        s = Q(rng.randint(2, 7))
        scaled = ds.scale_y_point(point, s)
        for l, f in enumerate(phis, start=1):
            v = dag.evaluate(f, point)
            if v == 0:
                continue
            assert dag.evaluate(f, scaled) == s ** ds.kappa_exponent(n, l) * v


def test_gh_small_minors():
    n = 4
    assert functions_equal(ds.g_function(n, 1, 1), dag.rdet(
        [[dag.entry_x(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]
    ), seed=0).equal
    assert functions_equal(ds.g_function(n, n, n), dag.entry_x(n, n), seed=0).equal
    assert functions_equal(ds.h_function(n, n, n), dag.entry_y(n, n), seed=0).equal
    assert functions_equal(ds.h_function(n, 1, n), dag.entry_y(1, n), seed=0).equal
    with pytest.raises(ValueError):
        ds.g_function(n, 1, 2)


def test_c_functions_endpoints_and_zero_x():
    n = 3
    cs = ds.c_functions(n)
    det_y = dag.rdet([[dag.entry_y(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)])
    det_x = dag.rdet([[dag.entry_x(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)])
    assert functions_equal(cs[0], det_y, seed=0).equal
    assert functions_equal(cs[n], det_x, seed=0).equal
    rng = random.Random(9)
    point = random_point(rng, all_entry_keys(n), -30, 30)
    for key in list(point):
        if key[0] == "x":
            point[key] = Q(0)
    for i in range(1, n + 1):
        assert dag.evaluate(cs[i], point) == 0


def test_c1_n2_hand_identity():
    cs = ds.c_functions(2)
    det = lambda tag: dag.rdet([[dag.Var((tag, i, j)) for j in (1, 2)] for i in (1, 2)])
    det_sum = dag.rdet([
        [dag.entry_x(i, j) + dag.entry_y(i, j) for j in (1, 2)] for i in (1, 2)
    ])
    expected = det_sum - det("x") - det("y")
    assert functions_equal(cs[1], expected, seed=0).equal


def test_pencil_identity_random_lambda_mu():
    n = 3
    cs = ds.c_functions(n)
    rng = random.Random(4)
    point = random_point(rng, all_entry_keys(n), -20, 20)
    lam, mu = Q(5), Q(-7)
    rows = [[lam * point[("y", i, j)] + mu * point[("x", i, j)] for j in range(1, n + 1)]
            for i in range(1, n + 1)]
    from gencluster.linalg import det_rational
    lhs = det_rational(rows)
    rhs = sum((dag.evaluate(cs[i], point) * mu**i * lam ** (n - i) for i in range(n + 1)), Q(0))
    assert lhs == rhs


def test_unipotent_invariance():
    n = 3
    rng = random.Random(12)

    def unipotent(upper):
        m = [[Q(1 if i == j else 0) for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                if (j > i) if upper else (j < i):
                    m[i][j] = Q(rng.randint(-5, 5))
        return m

    x = random_matrix(rng, n, n, -20, 20)
    y = random_matrix(rng, n, n, -20, 20)
    n_plus, n_minus = unipotent(True), unipotent(False)
    base = dag.assignment_from_matrices(x, y)
    left = dag.assignment_from_matrices(mat_mul(n_plus, x), y)
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            g = ds.g_function(n, i, j)
            assert dag.evaluate(g, base) == dag.evaluate(g, left)
    right = dag.assignment_from_matrices(x, mat_mul(y, n_minus))
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            h = ds.h_function(n, i, j)
            assert dag.evaluate(h, base) == dag.evaluate(h, right)
    both = dag.assignment_from_matrices(
        mat_mul(n_plus, mat_mul(x, n_minus)), mat_mul(n_plus, mat_mul(y, n_minus))
    )
    for f in ds.phi_functions(n):
        assert dag.evaluate(f, base) == dag.evaluate(f, both)


def test_trailing_phis_match_diagonal_g_minors():
    # determined numerically: the trailing minor phi_{N-s+1} agrees with
    # g_{n-s+1,n-s+1}, not with any other diagonal g
    rng = random.Random(77)
    for n in (2, 3, 4):
        big_n = n * (n - 1)
        phis = ds.phi_functions(n)
        points = [random_point(rng, all_entry_keys(n), -40, 40) for _ in range(3)]
        for s in range(1, n):
            matches = []
            for i in range(1, n + 1):
                g = ds.g_function(n, i, i)
                if all(dag.evaluate(phis[big_n - s], p) == dag.evaluate(g, p) for p in points):
                    matches.append(i)
            assert matches == [n - s + 1]


def test_family_count_and_frozen_sets():
    for n in (3, 4):
        fam = ds.family_bar(n)
        assert len(fam) == 2 * n * n
        quiver = ds.build_quiver_bar(n)
        assert len(quiver.vertices) == 2 * n * n
        assert len(quiver.frozen_ids()) == 2 * n
        assert len(quiver.isolated_ids()) == n - 1
        mutable_phis = [v for v in quiver.vertices.values()
                        if v.is_mutable and v.label.startswith("phi_")]
        assert len(mutable_phis) == (n - 1) ** 2
        frozen_labels = {quiver.vertex(v).label for v in quiver.frozen_ids()}
        assert frozen_labels == (
            {f"g_{i}1" for i in range(1, n + 1)} | {f"h_1{j}" for j in range(1, n + 1)}
        )


def test_quiver_requires_n_at_least_3():
    with pytest.raises(ValueError):
        ds.build_quiver_bar(2)


def test_special_vertex_and_string():
    for n in (3, 4):
        seed = ds.build_seed_bar(n)
        special = ds.special_vertex(n)
        v = seed.quiver.vertex(special)
        assert v.multiplicity == n
        s = seed.strings[special]
        assert s.degree == n
        assert s.coefficients[0] == {} and s.coefficients[-1] == {}
        for r in range(1, n):
            assert s.coefficients[r] == {ds.iso_id(r): 1}
        for vid, string in seed.strings.items():
            if vid != special:
                assert string.is_trivial()


def test_special_vertex_neighborhood():
    n = 4
    seed = ds.build_seed_bar(n)
    exps = y_exponents(seed, ds.special_vertex(n))
    labels = {ds.label_of_vertex(n, vid): e for vid, e in exps.items()}
    assert labels == {
        "phi_2": n, "h_11": 1,
        "h_22": -n, f"phi_{n + 1}": -n, "g_11": -1,
    }


@pytest.mark.parametrize("n", [3, 4])
def test_special_exchange_matches_displayed_identity(n):
    seed = ds.build_seed_bar(n)
    exch = exchange_polynomial(seed, ds.special_vertex(n))
    rhs = ds.special_exchange_rhs(n)
    verdict = functions_equal(exch, rhs, trials=5, seed=21, lo=-60, hi=60, certify="never")
    assert verdict.equal, verdict.witness


def test_edge_override_hook():
    n = 3
    default = ds.build_quiver_bar(n)
    removed = ds.build_quiver_bar(n, edge_overrides={(ds.G11_ID, ds.special_vertex(n)): 0})
    assert default.edge_mult(ds.G11_ID, ds.special_vertex(n)) == 1
    assert removed.edge_mult(ds.G11_ID, ds.special_vertex(n)) == 0
