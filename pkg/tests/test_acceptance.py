"""Acceptance gate: one test per criterion, each printing a verdict line.

All equalities are exact rational identities (zero tolerance); randomized
identity checks sample at least five independent points and carry their
declared failure bounds.  Run with ``pytest tests/test_acceptance.py -v -s``
to see the per-criterion lines.
"""

import random

import pytest

from gencluster import band, charge, completeness as comp, dag, double_seed as ds, poisson as po
from gencluster.identity import functions_equal, random_point
from gencluster.rationals import Q
from gencluster.seeds import (
    ExchangeString,
    abstract_seed,
    exchange_polynomial,
    mutate_seed,
    trivial_strings,
)
from gencluster.quiver import FROZEN, ISOLATED, MUTABLE, MultiplicityQuiver, Vertex

POINTS = 5
COORD = (-(10**6), 10**6)


def verdict(criterion: str, ok: bool, detail: str = ""):
    status = "PASS" if ok else "FAIL"
    line = f"ACCEPTANCE {criterion}: {status}" + (f" ({detail})" if detail else "")
    print(line)
    assert ok, line


def entry_keys(n):
    keys = set()
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            keys.add(("x", i, j))
            keys.add(("y", i, j))
    return keys


def test_criterion_01_kappa_table():
    ok = True
    for n in (2, 3, 4, 5):
        rng = random.Random(100 + n)
        phis = ds.phi_functions(n)
        for _ in range(POINTS):
            point = random_point(rng, entry_keys(n), *COORD)
            s = Q(rng.randint(2, 9))
            scaled = ds.scale_y_point(point, s)
            for l, f in enumerate(phis, start=1):
                v = dag.evaluate(f, point)
                if v == 0:
                    continue
                ok &= dag.evaluate(f, scaled) == s ** ds.kappa_exponent(n, l) * v
    verdict("01 scaling-exponent table, n in 2..5", ok)


def test_criterion_02_log_canonicity():
    ok = True
    detail = []
    for n in (3, 4):
        rng = random.Random(200 + n)
        fam = ds.family_bar(n)
        points = po.sample_family_points(fam, POINTS, rng, n=n)
        res = po.log_canonicity_matrix(fam, points, n)
        ok &= res.constant and not res.nonhalf_integer_pairs
        detail.append(f"n={n}: {len(res.omega)} pairs over {POINTS} points")
    verdict("02 log-canonicity of the full family, n=3,4", ok, "; ".join(detail))


def test_criterion_03_compatibility():
    ok = True
    lams = []
    for n in (3, 4):
        rng = random.Random(300 + n)
        seed = ds.build_seed_bar(n)
        fam = ds.family_bar(n)
        points = po.sample_family_points(fam, POINTS, rng, n=n)
        res = po.compatibility_check(seed, points, n)
        ok &= res.ok and res.lam is not None
        lams.append(f"n={n}: lambda={res.lam}")
    verdict("03 compatibility with Casimir checks, n=3,4", ok, "; ".join(lams))


def test_criterion_04_special_exchange():
    ok = True
    bounds = []
    for n in (3, 4, 5):
        seed = ds.build_seed_bar(n)
        exch = exchange_polynomial(seed, ds.special_vertex(n))
        rhs = ds.special_exchange_rhs(n)
        v = functions_equal(exch, rhs, trials=POINTS, seed=400 + n,
                            lo=COORD[0], hi=COORD[1], certify="never")
        ok &= v.equal
        bounds.append(f"n={n}: bound {float(v.failure_bound):.1e}")
    verdict("04 special-vertex exchange identity, n=3,4,5", ok, "; ".join(bounds))


def test_criterion_05_toric_weights():
    ok = True
    for n in (3, 4):
        rng = random.Random(500 + n)
        expected = po.expected_weights(n)
        for label, f in ds.family_bar(n):
            ok &= po.extract_weights(f, n, rng) == expected[label]
        seed = ds.build_seed_bar(n)
        ok &= po.y_weight_zero_check(seed, n, rng) == []
    verdict("05 toric weight table and zero-weight exchange ratios, n=3,4", ok)


def test_criterion_06_eight_step_minors():
    res = comp.notequiv_sequence_check(trials=POINTS, seed=600, lo=-50, hi=50)
    verdict("06 eight-step mutation fixtures at n=4", res.ok and not res.mismatches,
            f"roundtrip={res.roundtrip_ok}, guard={res.guard_ok}")


def test_criterion_07_completeness_toolkit():
    ok = True
    for n in (3, 4):
        rng = random.Random(700 + n)
        for _ in range(POINTS):
            x_rows, y_rows = comp.sample_certificate_point(
                n, rng, [k * n + 1 for k in range(1, n - 1)])
            ok &= comp.build_G(n, x_rows, y_rows).ok
            x_rows, y_rows = comp.sample_certificate_point(
                n, rng, [j * (n - 1) + 1 for j in range(1, n)])
            ok &= comp.build_H(n, x_rows, y_rows).ok
    ratios_ok = True
    for n in (2, 3, 4):
        rng = random.Random(750 + n)
        ratios = set()
        for _ in range(POINTS):
            x_rows, y_rows = comp.sample_certificate_point(n, rng, [1])
            cert = comp.first_row_solve(n, x_rows, y_rows)
            ratios_ok &= cert.ok
            ratios.add(cert.ratio)
        ratios_ok &= len(ratios) == 1
    kappa, symbolic = comp.first_row_symbolic_n2()
    verdict("07 elimination ledgers and first-row system", ok and ratios_ok and symbolic,
            f"n=2 symbolic constant {kappa}")


def test_criterion_08_regularity_small_scale():
    res_double = comp.one_step_regularity(ds.build_seed_bar(3))
    ok = len(res_double) == 10
    for (k, n) in ((2, 3), (3, 3)):
        seed = band.build_band_seed(k, n)
        res = comp.one_step_regularity(seed, subst=band.band_substitution(k, n))
        ok &= len(res) == len(seed.quiver.mutable_ids())
    verdict("08 one-step regularity by exact division", ok)


def test_criterion_09_band_structure():
    ok_counts = all(
        len(band.band_family(k, n)) == (k + 1) * n
        for (k, n) in ((2, 3), (3, 4), (3, 5), (4, 5), (4, 7))
    )
    ok_factor = True
    for n in (3, 4, 5):
        rng = random.Random(900 + n)
        pts = [band.random_band_point(n, n, rng) for _ in range(POINTS)]
        ok_factor &= band.factorization_check(n, pts).ok
        ok_factor &= band.boundary_products_check(n, pts).ok
    for (k, n) in ((3, 3), (3, 4), (4, 4), (3, 5), (4, 5), (5, 5)):
        rng = random.Random(910 + 10 * k + n)
        pts = [band.embed_lower(band.random_band_point(k - 1, n, rng), k)
               for _ in range(POINTS)]
        ok_factor &= band.induction_factorization_check(k, n, pts).ok
    ok_compat = True
    lams = set()
    for (k, n) in ((2, 3), (3, 4), (3, 5), (4, 5)):
        rng = random.Random(920 + 10 * k + n)
        om, pts = band.band_log_canonicity(k, n, POINTS, rng)
        compat, _ = band.band_compatibility(k, n, POINTS, rng, points=pts)
        ok_compat &= om.constant and compat.ok
        lams.add(str(compat.lam))
    ok_recursion = all(
        band.omega_recursion_check(k, n, 3, random.Random(930 + 10 * k + n)).ok
        for (k, n) in ((3, 3), (3, 4), (4, 4), (4, 5))
    )
    ok_y = True
    for n in (3, 4):
        rng = random.Random(940 + n)
        fam = band.band_family(n, n)
        pts = band.sample_band_points(n, n, fam, 3, rng)
        ok_y &= band.band_y_coincidence_check(n, pts).ok
    verdict("09 band structure: counts, factorizations, bracket checks",
            ok_counts and ok_factor and ok_compat and ok_recursion and ok_y,
            f"lambdas {sorted(lams)}")


def test_criterion_10_charge_dynamics():
    ok_boundary = charge.boundary_consistency_check(50) == []
    ok_symmetry = charge.move_symmetry_check(50) == []
    census = charge.type_census(30)
    ok_census = (charge.census_violations(census) == []
                 and charge.negative_octant_types(15) == [])
    listed_ok = all(
        charge.listed_111_conditions(s)
        for s in charge.states_in_box(20)
        if charge.classify(s).as_triple() == (1, 1, 1)
    )
    r_const = charge.bounded_reachability((0, 1, 0), (1, 0, 0), 1)
    r_b1 = charge.bounded_reachability((0, 1, 0), (0, -1, 0), 1)
    r_b8 = charge.bounded_reachability((0, 1, 0), (0, -1, 0), 8)
    ok_reach = r_const.reachable and not r_b1.reachable and not r_b8.reachable
    peak = charge.peak_argument_check(30)
    verdict("10 charge dynamics: census, reachability, peak argument",
            ok_boundary and ok_symmetry and ok_census and listed_ok
            and ok_reach and peak.ok,
            f"census {len(census)} types, {r_b8.explored} states at bound 8")


def test_criterion_11_engine_soundness():
    rng = random.Random(1100)
    names = list(range(5))
    cases = 0
    ok = True
    while cases < 50:
        kinds = {}
        for idx, name in enumerate(names):
            kinds[name] = MUTABLE if idx < 3 else rng.choice((FROZEN, ISOLATED))
        mults = {name: (rng.choice((1, 2, 3)) if kinds[name] == MUTABLE else 1)
                 for name in names}
        edges = {}
        for a in names:
            for b in names:
                if a >= b or ISOLATED in (kinds[a], kinds[b]):
                    continue
                if rng.random() < 0.45:
                    pair = (a, b) if rng.random() < 0.5 else (b, a)
                    edges[pair] = rng.randint(1, 2)
        vertices = [Vertex(("v", name), str(name), kinds[name], mults[name])
                    for name in names]
        quiver = MultiplicityQuiver(
            vertices, {(("v", a), ("v", b)): m for (a, b), m in edges.items()})
        strings = trivial_strings(quiver)
        frozen = [("v", name) for name in names if kinds[name] != MUTABLE]
        for vid in quiver.mutable_ids():
            d = quiver.vertex(vid).multiplicity
            if d > 1 and frozen and rng.random() < 0.7:
                coeffs = [{}]
                coeffs.extend({rng.choice(frozen): rng.randint(1, 2)}
                              for _ in range(d - 1))
                coeffs.append({})
                strings[vid] = ExchangeString(vid, tuple(coeffs))
        seed = abstract_seed(quiver, strings)
        cases += 1

        k = rng.choice(quiver.mutable_ids())
        once = mutate_seed(seed, k)
        once.quiver.validate()  # no 2-cycles, isolated untouched
        twice = mutate_seed(once, k)
        ok &= twice.quiver == seed.quiver
        ok &= twice.strings == seed.strings
        ok &= functions_equal(twice.cluster[k], seed.cluster[k], trials=3,
                              seed=cases, certify="never").equal
        for s in once.strings.values():
            ok &= not s.coefficients[0] and not s.coefficients[-1]
        if all(quiver.vertex(v).multiplicity == 1 for v in quiver.mutable_ids()):
            poly = exchange_polynomial(seed, k)
            ins = quiver.in_edges(k)
            outs = quiver.out_edges(k)
            expected = (
                dag.monomial((dag.free_var(i), b) for i, b in sorted(ins.items()))
                + dag.monomial((dag.free_var(i), b) for i, b in sorted(outs.items()))
            )
            ok &= functions_equal(poly, expected, trials=3, seed=cases,
                                  certify="never").equal
    verdict("11 engine soundness over 50 randomized seeds", ok)
