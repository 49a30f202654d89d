"""Band matrix space, band seed, restriction and completeness identities."""

import random

import pytest

from gencluster import band
from gencluster.completeness import one_step_regularity
from gencluster.poisson import compatibility_check
from gencluster.rationals import Q


def test_band_point_patterns_k2_n3():
    bp = band.band_point(2, 3, [[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    assert bp.x_rows == [[0, 1, 4], [0, 0, 2], [0, 0, 0]]
    assert bp.y_rows == [[7, 0, 0], [5, 8, 0], [3, 6, 9]]


def test_band_point_widest_case_is_triangular():
    n = 3
    bp = band.band_point(n, n, [[1, 2, 3], [4, 5, 6], [7, 8, 9], [10, 11, 12]])
    # X upper triangular with the lowest diagonal on its main diagonal
    assert all(bp.x_rows[i][j] == 0 for i in range(n) for j in range(i))
    assert [bp.x_rows[i][i] for i in range(n)] == [1, 2, 3]
    # Y fully lower triangular with the highest diagonal on its main diagonal
    assert all(bp.y_rows[i][j] == 0 for i in range(n) for j in range(i + 1, n))
    assert [bp.y_rows[i][i] for i in range(n)] == [10, 11, 12]


def test_periodic_band_profile():
    # as a block row [X Y] of the periodic matrix, the nonzero offsets are
    # exactly n-k..n and the extreme ones are fully populated
    k, n = 3, 5
    rng = random.Random(1)
    bp = band.random_band_point(k, n, rng)
    offsets = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if bp.x_rows[i - 1][j - 1] != 0:
                offsets.setdefault(j - i, 0)
                offsets[j - i] += 1
            if bp.y_rows[i - 1][j - 1] != 0:
                offsets.setdefault(n + j - i, 0)
                offsets[n + j - i] += 1
    assert set(offsets) <= set(range(n - k, n + 1))
    assert offsets[n - k] == n and offsets[n] == n


def test_lower_width_embeds_into_closure():
    k, n = 4, 5
    rng = random.Random(2)
    lower = band.random_band_point(k - 1, n, rng)
    emb = band.embed_lower(lower, k)
    assert emb.k == k
    assert all(emb.a_value(1, i) == 0 for i in range(1, n + 1))
    assert emb.x_rows == lower.x_rows and emb.y_rows == lower.y_rows


@pytest.mark.parametrize("k,n", [(2, 3), (3, 4), (3, 5), (4, 5), (4, 7)])
def test_family_and_quiver_counts(k, n):
    fam = band.band_family(k, n)
    assert len(fam) == (k + 1) * n
    q = band.build_band_quiver(k, n)
    q.validate()
    assert len(q.vertices) == (k + 1) * n
    assert len(q.isolated_ids()) == k - 1
    assert len(q.frozen_ids()) == 2 * n
    special = q.vertex(band.band_special_vertex(k, n))
    assert special.multiplicity == k and special.label == "tphi_1"


def test_band_seed_string():
    seed = band.build_band_seed(3, 5)
    s = seed.strings[band.band_special_vertex(3, 5)]
    assert s.degree == 3
    assert s.coefficients[1] == {band.band_iso_id(1): 1}
    assert s.coefficients[2] == {band.band_iso_id(2): 1}


def test_parameter_range_errors():
    with pytest.raises(ValueError):
        band.build_band_quiver(6, 5)
    with pytest.raises(ValueError):
        band.band_point(3, 4, [[1, 2, 3]])


@pytest.mark.parametrize("n", [3, 4, 5])
def test_factorization_on_widest_space(n):
    rng = random.Random(30 + n)
    pts = [band.random_band_point(n, n, rng) for _ in range(5)]
    assert band.factorization_check(n, pts).ok
    assert band.boundary_products_check(n, pts).ok


@pytest.mark.parametrize("k,n", [(3, 3), (3, 4), (4, 4), (4, 5), (5, 5)])
def test_induction_factorization(k, n):
    rng = random.Random(40 + 10 * k + n)
    pts = [band.embed_lower(band.random_band_point(k - 1, n, rng), k) for _ in range(5)]
    assert band.induction_factorization_check(k, n, pts).ok


@pytest.mark.parametrize("n", [3, 4])
def test_y_coincidence_on_widest_space(n):
    rng = random.Random(50 + n)
    fam = band.band_family(n, n)
    pts = band.sample_band_points(n, n, fam, 3, rng)
    rep = band.band_y_coincidence_check(n, pts)
    assert rep.ok, rep.failures[:3]
    if n == 4:
        assert not rep.excluded


def test_y_coincidence_negative_control_off_band():
    n = 3
    rng = random.Random(55)
    fam = band.band_family(n, n)
    bp = band.sample_band_points(n, n, fam, 1, rng)[0]
    # perturb one structurally-zero entry: the point leaves the band locus
    perturbed = dict(bp.point)
    perturbed[("x", n, 1)] = Q(7)
    bp.point = perturbed
    bp.x_rows = [row[:] for row in bp.x_rows]
    bp.x_rows[n - 1][0] = Q(7)
    rep = band.band_y_coincidence_check(n, [bp])
    assert not rep.ok


@pytest.mark.parametrize("k,n", [(2, 3), (3, 4), (3, 5), (4, 5)])
def test_band_log_canonicity_and_compat(k, n):
    om, pts = band.band_log_canonicity(k, n, 3, random.Random(60 + 10 * k + n))
    assert om.constant
    assert not om.nonhalf_integer_pairs
    comp, _ = band.band_compatibility(k, n, 3, random.Random(61), points=pts)
    assert comp.ok, comp.violations[:3]
    assert comp.lam is not None


def test_band_corner_edge_direction_is_forced():
    # flipping the corner edge back to the uniform direction breaks the
    # diagonal bracket condition, so the builder's default is the only one
    # consistent with compatibility
    k, n = 3, 4
    special = band.band_special_vertex(k, n)
    corner = band.bgrid(0, k + 1)
    alt = band.build_band_seed(k, n, edge_overrides={(special, corner): 0, (corner, special): 1})
    fam = band.band_family(k, n)
    pts = band.sample_band_points(k, n, fam, 2, random.Random(62))
    res = compatibility_check(alt, [p.point for p in pts], n)
    assert not res.ok


@pytest.mark.parametrize("k,n", [(3, 3), (3, 4), (4, 4), (4, 5)])
def test_omega_recursion_between_levels(k, n):
    rep = band.omega_recursion_check(k, n, 3, random.Random(70 + 10 * k + n))
    assert rep.ok, rep.failures[:3]


@pytest.mark.parametrize("k,n", [(3, 3), (3, 4), (4, 5)])
def test_inclusions_are_poisson(k, n):
    rep = band.poisson_submanifold_check(k, n, 2, random.Random(80 + 10 * k + n))
    assert rep.ok, rep.failures[:3]


@pytest.mark.parametrize("k,n", [(3, 5), (4, 5), (3, 4)])
def test_band_tall_and_long_certificates(k, n):
    rng = random.Random(90 + 10 * k + n)
    fam = band.band_family(k, n)
    for bp in band.sample_band_points(k, n, fam, 2, rng):
        tall = band.band_tall_certificate(k, n, bp)
        assert tall.ok and not tall.excluded
        g = tall.matrix
        assert all(g[i][i] == 1 for i in range(k - 1))
        assert all(g[i][j] == 0 for i in range(k - 1) for j in range(i))
        long_cert = band.band_long_certificate(k, n, bp)
        assert long_cert.ok and not long_cert.excluded
        assert long_cert.convention == "resolved"
        h = long_cert.matrix
        assert all(h[i][i] == 1 for i in range(k - 1))
        assert all(h[i][j] == 0 for i in range(k - 1) for j in range(i + 1, k - 1))
        psi = band.psi_minor_check(k, n, bp, h)
        assert psi.ok, psi.failures[:3]


def test_band_regular_exchange_symbolic():
    for (k, n) in [(2, 3), (3, 3)]:
        seed = band.build_band_seed(k, n)
        res = one_step_regularity(seed, subst=band.band_substitution(k, n))
        assert len(res) == len(seed.quiver.mutable_ids())
