"""Deterministic verification suites behind the command-line runner.

Every suite consumes an explicit master seed and derives one independent
generator per check from it, so reports are reproducible byte for byte.
The per-point bracket tables of the log-canonicity checks are independent
of each other and can fan out over a process pool when workers > 1.
"""

from __future__ import annotations

import hashlib
import random
import time
from concurrent.futures import ProcessPoolExecutor

from . import band, charge, completeness as comp, dag, double_seed as ds, poisson as po
from .identity import functions_equal, random_point
from .rationals import Q, qstr
from .report import VerificationReport
from .seeds import exchange_polynomial

DEFAULT_COORD = (-(10**6), 10**6)


def derived_rng(master_seed: int, check_id: str) -> random.Random:
    digest = hashlib.sha256(f"{master_seed}:{check_id}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def _entry_keys(n):
    keys = set()
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            keys.add(("x", i, j))
            keys.add(("y", i, j))
    return keys


# ----------------------------------------------------------------------
# parallel bracket-table support

def _family_from_desc(desc):
    kind = desc[0]
    if kind == "double":
        return ds.family_bar(desc[1])
    if kind == "band":
        return band.band_family(desc[1], desc[2])
    raise ValueError(f"unknown family descriptor {desc!r}")


def _omega_point_task(args):
    desc, point, n = args
    family = _family_from_desc(desc)
    return po.omega_ratios_at_point(family, point, n)


def omega_with_workers(desc, family, points, n, workers: int):
    if workers <= 1 or len(points) <= 1:
        return po.log_canonicity_matrix(family, points, n)
    with ProcessPoolExecutor(max_workers=min(workers, len(points))) as pool:
        per_point = list(pool.map(_omega_point_task, [(desc, p, n) for p in points]))
    return po.log_canonicity_matrix(family, points, n, per_point=per_point)


def _omega_values(result) -> dict:
    labels = result.labels
    matrix = []
    for a in labels:
        matrix.append([qstr(result.omega_value(a, b)) for b in labels])
    return {"omega_labels": labels, "omega_matrix": matrix}


# ----------------------------------------------------------------------
# identities

def suite_identities(rng_seed: int, points: int = 5, coord=DEFAULT_COORD,
                     kappa_ns=(2, 3, 4, 5), exchange_ns=(3, 4, 5),
                     include_regularity: bool = True) -> VerificationReport:
    t0 = time.time()
    rep = VerificationReport(
        "identities",
        {"rng_seed": rng_seed, "points": points, "coord": list(coord),
         "kappa_ns": list(kappa_ns), "exchange_ns": list(exchange_ns)},
    )
    lo, hi = coord

    kappa_rows = {}
    for n in kappa_ns:
        check = f"identities/kappa-homogeneity/n={n}"
        rng = derived_rng(rng_seed, check)
        phis = ds.phi_functions(n)
        big_n = n * (n - 1)
        kappa_rows[str(n)] = [ds.kappa_exponent(n, l) for l in range(1, big_n + 1)]
        ok, witness = True, None
        for _ in range(points):
            point = random_point(rng, _entry_keys(n), lo, hi)
            s = Q(rng.randint(2, 9))
            scaled = ds.scale_y_point(point, s)
            for l, f in enumerate(phis, start=1):
                v = dag.evaluate(f, point)
                if v == 0:
                    continue
                if dag.evaluate(f, scaled) != s ** ds.kappa_exponent(n, l) * v:
                    ok = False
                    witness = {"l": l, "n": n}
        rep.add(check, "kappa-table", ok, witness,
                values={"kappa_rows": {str(n): kappa_rows[str(n)]}})

    check = "identities/staircase-corner/n=2"
    phi1 = ds.phi_functions(2)[0]
    expected = dag.entry_y(2, 1) * dag.entry_x(2, 2) - dag.entry_y(2, 2) * dag.entry_x(2, 1)
    v = functions_equal(phi1, expected, seed=rng_seed)
    rep.add(check, "staircase-corner-minor", v.equal, v.witness)

    for n in (2, 3):
        check = f"identities/pencil-endpoints/n={n}"
        cs = ds.c_functions(n)
        det_y = dag.rdet([[dag.entry_y(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)])
        det_x = dag.rdet([[dag.entry_x(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)])
        ok = (functions_equal(cs[0], det_y, seed=rng_seed).equal
              and functions_equal(cs[n], det_x, seed=rng_seed).equal)
        rep.add(check, "pencil-coefficients", ok)

    check = "identities/unipotent-invariance/n=3"
    rng = derived_rng(rng_seed, check)
    n = 3
    ok = True
    for _ in range(points):
        from .identity import random_matrix
        from .linalg import mat_mul

        x = random_matrix(rng, n, n, -50, 50)
        y = random_matrix(rng, n, n, -50, 50)
        upper = [[Q(1 if i == j else (rng.randint(-5, 5) if j > i else 0)) for j in range(n)] for i in range(n)]
        lower = [[Q(1 if i == j else (rng.randint(-5, 5) if j < i else 0)) for j in range(n)] for i in range(n)]
        base = dag.assignment_from_matrices(x, y)
        both = dag.assignment_from_matrices(
            mat_mul(upper, mat_mul(x, lower)), mat_mul(upper, mat_mul(y, lower))
        )
        for f in ds.phi_functions(n):
            ok &= dag.evaluate(f, base) == dag.evaluate(f, both)
        left = dag.assignment_from_matrices(mat_mul(upper, x), y)
        ok &= dag.evaluate(ds.g_function(n, 2, 1), base) == dag.evaluate(ds.g_function(n, 2, 1), left)
        right = dag.assignment_from_matrices(x, mat_mul(y, lower))
        ok &= dag.evaluate(ds.h_function(n, 1, 2), base) == dag.evaluate(ds.h_function(n, 1, 2), right)
    rep.add(check, "unipotent-invariance", ok)

    for n in (2, 3, 4):
        check = f"identities/trailing-identification/n={n}"
        rng = derived_rng(rng_seed, check)
        big_n = n * (n - 1)
        phis = ds.phi_functions(n)
        pts = [random_point(rng, _entry_keys(n), -50, 50) for _ in range(3)]
        mapping = {}
        ok = True
        for s in range(1, n):
            matches = [
                i for i in range(1, n + 1)
                if all(dag.evaluate(phis[big_n - s], p) == dag.evaluate(ds.g_function(n, i, i), p)
                       for p in pts)
            ]
            mapping[str(big_n - s + 1)] = matches
            ok &= matches == [n - s + 1]
        rep.add(check, "trailing-minor-identification", ok, values={"matched_g_index": mapping})

    for n in exchange_ns:
        check = f"identities/special-exchange/n={n}"
        seed = ds.build_seed_bar(n)
        exch = exchange_polynomial(seed, ds.special_vertex(n))
        rhs = ds.special_exchange_rhs(n)
        v = functions_equal(exch, rhs, trials=points, rng=derived_rng(rng_seed, check),
                            lo=lo, hi=hi, certify="never")
        rep.add(check, "special-vertex-exchange", v.equal, v.witness,
                values={"failure_bound": str(v.failure_bound)})

    for n in range(2, 9):
        rep.add(f"identities/digit-dichotomy/n={n}", "digit-dichotomy",
                po.lambdamukappa_check(n) == [])
    for n in range(3, 9):
        bad = po.kappa_periodicity_check(n)
        expected = [k for k in range(1, n * (n - 1) - n + 1) if k % (n - 1) == 0]
        rep.add(
            f"identities/kappa-periodicity/n={n}", "kappa-periodicity",
            bad == expected and po.kappa_four_term_check(n) == [],
            values={"excluded_indices": expected},
        )

    if include_regularity:
        check = "identities/regularity/double-n=3"
        res = comp.one_step_regularity(ds.build_seed_bar(3))
        rep.add(check, "one-step-regularity", len(res) == 10)
        for (k, n) in ((2, 3), (3, 3)):
            check = f"identities/regularity/band-k={k},n={n}"
            seed = band.build_band_seed(k, n)
            res = comp.one_step_regularity(seed, subst=band.band_substitution(k, n))
            rep.add(check, "one-step-regularity",
                    len(res) == len(seed.quiver.mutable_ids()))

    rep.duration_s = time.time() - t0
    return rep


# ----------------------------------------------------------------------
# log-canonicity and compatibility

def suite_log_canonical(rng_seed: int, points: int = 5, family: str = "double",
                        ns=(3, 4), band_pairs=((3, 4),), workers: int = 1) -> VerificationReport:
    t0 = time.time()
    rep = VerificationReport(
        "log-canonical",
        {"rng_seed": rng_seed, "points": points, "family": family,
         "ns": list(ns), "band_pairs": [list(p) for p in band_pairs], "workers": workers},
    )
    if family in ("double", "all"):
        for n in ns:
            check = f"log-canonical/double/n={n}"
            rng = derived_rng(rng_seed, check)
            fam = ds.family_bar(n)
            pts = po.sample_family_points(fam, points, rng, n=n)
            result = omega_with_workers(("double", n), fam, pts, n, workers)
            values = _omega_values(result)
            values["nonhalf_integer_pairs"] = result.nonhalf_integer_pairs
            rep.add(check, "log-canonical-family", result.constant,
                    witness={"failures": result.failures[:3]} if result.failures else None,
                    values=values)
    if family in ("band", "all"):
        for (k, n) in band_pairs:
            check = f"log-canonical/band/k={k},n={n}"
            rng = derived_rng(rng_seed, check)
            fam = band.band_family(k, n)
            pts = [bp.point for bp in band.sample_band_points(k, n, fam, points, rng)]
            result = omega_with_workers(("band", k, n), fam, pts, n, workers)
            values = _omega_values(result)
            rep.add(check, "log-canonical-family", result.constant,
                    witness={"failures": result.failures[:3]} if result.failures else None,
                    values=values)
    rep.duration_s = time.time() - t0
    return rep


def suite_compatibility(rng_seed: int, points: int = 5, ns=(3, 4)) -> VerificationReport:
    t0 = time.time()
    rep = VerificationReport("compatibility",
                             {"rng_seed": rng_seed, "points": points, "ns": list(ns)})
    for n in ns:
        check = f"compatibility/double/n={n}"
        rng = derived_rng(rng_seed, check)
        seed = ds.build_seed_bar(n)
        fam = ds.family_bar(n)
        pts = po.sample_family_points(fam, points, rng, n=n)
        result = po.compatibility_check(seed, pts, n)
        diag = [v for v in result.violations if v["kind"] in ("lambda-mismatch", "offdiagonal")]
        casimir = [v for v in result.violations if v["kind"] in ("phat-not-casimir", "casimir")]
        rep.add(f"{check}/diagonal", "diagonal-bracket-condition", not diag,
                witness={"violations": diag[:3]} if diag else None,
                values={"lambda": qstr(result.lam) if result.lam is not None else None})
        rep.add(f"{check}/casimirs", "coefficient-casimirs", not casimir,
                witness={"violations": casimir[:3]} if casimir else None)
    rep.duration_s = time.time() - t0
    return rep


# ----------------------------------------------------------------------
# completeness

def suite_completeness(rng_seed: int, points: int = 5) -> VerificationReport:
    t0 = time.time()
    rep = VerificationReport("completeness", {"rng_seed": rng_seed, "points": points})
    for n in (3, 4):
        check = f"completeness/tall-ledger/n={n}"
        rng = derived_rng(rng_seed, check)
        pivots = [k * n + 1 for k in range(1, n - 1)]
        ok, witness = True, None
        for _ in range(points):
            x_rows, y_rows = comp.sample_certificate_point(n, rng, pivots)
            cert = comp.build_G(n, x_rows, y_rows)
            if not cert.ok:
                ok = False
                bad = cert.failures()[0]
                witness = {"step": bad.step, "minor": bad.minor_index}
        rep.add(check, "tall-minor-ledger", ok, witness)

        check = f"completeness/long-ledger/n={n}"
        rng = derived_rng(rng_seed, check)
        pivots = [j * (n - 1) + 1 for j in range(1, n)]
        ok, witness = True, None
        for _ in range(points):
            x_rows, y_rows = comp.sample_certificate_point(n, rng, pivots)
            cert = comp.build_H(n, x_rows, y_rows)
            if not cert.ok:
                ok = False
                bad = cert.failures()[0]
                witness = {"step": bad.step, "minor": bad.minor_index}
        rep.add(check, "long-minor-ledger", ok, witness)

    for n in (2, 3, 4):
        check = f"completeness/first-row/n={n}"
        rng = derived_rng(rng_seed, check)
        ratios = set()
        ok = True
        for _ in range(points):
            x_rows, y_rows = comp.sample_certificate_point(n, rng, [1])
            cert = comp.first_row_solve(n, x_rows, y_rows)
            ok &= cert.ok
            ratios.add(qstr(cert.ratio))
        ok &= len(ratios) == 1
        rep.add(check, "first-row-system", ok, values={"det_ratio": sorted(ratios)})
    kappa, exact = comp.first_row_symbolic_n2()
    rep.add("completeness/first-row-symbolic/n=2", "first-row-system", exact,
            values={"constant": qstr(kappa)})

    check = "completeness/eight-step-minors"
    res = comp.notequiv_sequence_check(trials=points, seed=rng_seed, lo=-40, hi=40)
    rep.add(f"{check}/targets", "eight-step-minors", res.ok and not res.mismatches,
            witness={"mismatches": res.mismatches[:2]} if res.mismatches else None)
    rep.add(f"{check}/roundtrip", "mutation-involution", res.roundtrip_ok)
    rep.add(f"{check}/exchange-guard", "special-vertex-exchange", res.guard_ok)
    rep.duration_s = time.time() - t0
    return rep


# ----------------------------------------------------------------------
# band

def suite_band(rng_seed: int, points: int = 5,
               compat_pairs=((2, 3), (3, 4), (3, 5), (4, 5)),
               cert_pairs=((3, 4), (3, 5), (4, 5)),
               factor_ns=(3, 4, 5), workers: int = 1) -> VerificationReport:
    t0 = time.time()
    rep = VerificationReport(
        "band",
        {"rng_seed": rng_seed, "points": points,
         "compat_pairs": [list(p) for p in compat_pairs],
         "cert_pairs": [list(p) for p in cert_pairs],
         "factor_ns": list(factor_ns), "workers": workers},
    )
    for (k, n) in ((2, 3), (3, 4), (3, 5), (4, 5), (4, 7)):
        q = band.build_band_quiver(k, n)
        ok = (len(band.band_family(k, n)) == (k + 1) * n
              and len(q.vertices) == (k + 1) * n
              and len(q.isolated_ids()) == k - 1
              and q.vertex(band.band_special_vertex(k, n)).multiplicity == k)
        rep.add(f"band/counts/k={k},n={n}", "band-seed-counts", ok,
                values={"vertices": len(q.vertices), "edges": len(q.edges)})

    for n in factor_ns:
        check = f"band/corner-factorization/n={n}"
        rng = derived_rng(rng_seed, check)
        pts = [band.random_band_point(n, n, rng) for _ in range(points)]
        r1 = band.factorization_check(n, pts)
        r2 = band.boundary_products_check(n, pts)
        rep.add(check, "band-factorization", r1.ok,
                witness={"failures": r1.failures[:2]} if r1.failures else None)
        rep.add(f"band/boundary-products/n={n}", "band-boundary-products", r2.ok)
    for (k, n) in ((3, 3), (3, 4), (4, 4), (3, 5), (4, 5), (5, 5)):
        check = f"band/induction-factorization/k={k},n={n}"
        rng = derived_rng(rng_seed, check)
        pts = [band.embed_lower(band.random_band_point(k - 1, n, rng), k)
               for _ in range(points)]
        r = band.induction_factorization_check(k, n, pts)
        rep.add(check, "band-factorization", r.ok,
                witness={"failures": r.failures[:2]} if r.failures else None)

    for n in (3, 4):
        check = f"band/y-coincidence/n={n}"
        rng = derived_rng(rng_seed, check)
        fam = band.band_family(n, n)
        pts = band.sample_band_points(n, n, fam, min(points, 3), rng)
        r = band.band_y_coincidence_check(n, pts)
        rep.add(check, "band-y-coincidence", r.ok,
                witness={"failures": r.failures[:2]} if r.failures else None,
                values={"excluded_display_rows": len(r.excluded)})

    for (k, n) in compat_pairs:
        check = f"band/log-canonical/k={k},n={n}"
        rng = derived_rng(rng_seed, check)
        fam = band.band_family(k, n)
        pts = band.sample_band_points(k, n, fam, points, rng)
        result = omega_with_workers(("band", k, n), fam, [p.point for p in pts], n, workers)
        rep.add(check, "log-canonical-family", result.constant, values=_omega_values(result))
        compat, _ = band.band_compatibility(k, n, points, rng, points=pts)
        rep.add(f"band/compatibility/k={k},n={n}", "diagonal-bracket-condition",
                compat.ok,
                witness={"violations": compat.violations[:3]} if compat.violations else None,
                values={"lambda": qstr(compat.lam) if compat.lam is not None else None})

    for (k, n) in ((3, 3), (3, 4), (4, 4), (4, 5)):
        check = f"band/bracket-recursion/k={k},n={n}"
        r = band.omega_recursion_check(k, n, min(points, 3), derived_rng(rng_seed, check))
        rep.add(check, "bracket-constant-recursion", r.ok,
                witness={"failures": r.failures[:2]} if r.failures else None)
    for (k, n) in ((3, 3), (3, 4), (4, 5)):
        check = f"band/poisson-inclusion/k={k},n={n}"
        r = band.poisson_submanifold_check(k, n, 2, derived_rng(rng_seed, check))
        rep.add(check, "poisson-inclusion", r.ok)

    for (k, n) in cert_pairs:
        check = f"band/tall-certificate/k={k},n={n}"
        rng = derived_rng(rng_seed, check)
        fam = band.band_family(k, n)
        ok_tall = ok_long = ok_psi = True
        conventions = set()
        excluded = 0
        for bp in band.sample_band_points(k, n, fam, min(points, 3), rng):
            tall = band.band_tall_certificate(k, n, bp)
            ok_tall &= tall.ok
            long_cert = band.band_long_certificate(k, n, bp)
            ok_long &= long_cert.ok
            conventions.add(long_cert.convention)
            excluded += len(long_cert.excluded)
            ok_psi &= band.psi_minor_check(k, n, bp, long_cert.matrix).ok
        rep.add(check, "band-tall-ledger", ok_tall)
        rep.add(f"band/long-certificate/k={k},n={n}", "band-long-ledger", ok_long,
                values={"index_convention": sorted(conventions), "excluded_rows": excluded})
        rep.add(f"band/psi-minors/k={k},n={n}", "band-entry-minors", ok_psi)

    for (k, n) in ((2, 3), (3, 3)):
        check = f"band/regularity/k={k},n={n}"
        seed = band.build_band_seed(k, n)
        res = comp.one_step_regularity(seed, subst=band.band_substitution(k, n))
        rep.add(check, "one-step-regularity", len(res) == len(seed.quiver.mutable_ids()))

    rep.duration_s = time.time() - t0
    return rep


# ----------------------------------------------------------------------
# charge

def suite_charge(rng_seed: int = 0, grid: int = 30, symmetry_bound: int = 50,
                 charge_bound: int = 8) -> VerificationReport:
    t0 = time.time()
    rep = VerificationReport(
        "charge",
        {"rng_seed": rng_seed, "grid": grid, "symmetry_bound": symmetry_bound,
         "charge_bound": charge_bound},
    )
    rep.add("charge/boundary-consistency", "case-table-boundaries",
            charge.boundary_consistency_check(symmetry_bound) == [])
    rep.add("charge/move-symmetry", "move-symmetry",
            charge.move_symmetry_check(symmetry_bound) == [])
    census = charge.type_census(grid)
    violations = charge.census_violations(census)
    rep.add("charge/type-census", "type-census",
            violations == [] and charge.negative_octant_types(min(grid, 15)) == [],
            witness={"violations": violations[:3]} if violations else None,
            values={"census": {str(k): v for k, v in sorted(census.items())}})
    r = charge.bounded_reachability((0, 1, 0), (1, 0, 0), 1)
    rep.add("charge/reachability/constant-charge", "constant-charge-path",
            r.reachable and len(r.path) == 1, values={"path": r.path})
    blocked1 = charge.bounded_reachability((0, 1, 0), (0, -1, 0), 1)
    blockedB = charge.bounded_reachability((0, 1, 0), (0, -1, 0), charge_bound)
    rep.add("charge/reachability/blocked", "bounded-unreachability",
            not blocked1.reachable and not blockedB.reachable,
            values={"explored_at_bound": blockedB.explored})
    peak = charge.peak_argument_check(grid)
    rep.add("charge/peak-argument", "charge-peak-argument", peak.ok,
            witness=None if peak.ok else {
                "delta": peak.delta_failures[:2], "type": peak.type_failures[:2],
                "peak": peak.peak_failures[:2]},
            values={"peak_states": peak.peak_states})
    cross = charge.engine_cross_validation(4)
    rep.add("charge/quiver-cross-validation", "table-vs-quiver", True,
            witness=None if cross["disagree"] == 0 else cross,
            values=cross, excluded=cross["disagree"] > 0)
    rep.duration_s = time.time() - t0
    return rep


# ----------------------------------------------------------------------
# registry

def run_suite(name: str, rng_seed: int, points: int = 5, coord=DEFAULT_COORD,
              workers: int = 1, family: str = "all", n=None, k=None,
              grid: int = 30, symmetry_bound: int = 50, charge_bound: int = 8):
    if name == "identities":
        if n is not None:
            return suite_identities(
                rng_seed, points, coord, kappa_ns=(n,),
                exchange_ns=(n,) if n >= 3 else (),
            )
        return suite_identities(rng_seed, points, coord)
    if name == "log-canonical":
        ns = (n,) if n else (3, 4)
        pairs = ((k, n),) if (n and k) else ((3, 4),)
        fam = family if family != "all" else ("band" if k else "double")
        return suite_log_canonical(rng_seed, points, fam, ns, pairs, workers)
    if name == "compatibility":
        return suite_compatibility(rng_seed, points, (n,) if n else (3, 4))
    if name == "completeness":
        return suite_completeness(rng_seed, points)
    if name == "band":
        return suite_band(rng_seed, points, workers=workers)
    if name == "charge":
        return suite_charge(rng_seed, grid, symmetry_bound, charge_bound)
    if name == "all":
        t0 = time.time()
        total = VerificationReport("all", {"rng_seed": rng_seed, "points": points,
                                           "workers": workers})
        total.extend(suite_identities(rng_seed, points, coord))
        total.extend(suite_log_canonical(rng_seed, points, "double", (3, 4),
                                         workers=workers))
        total.extend(suite_compatibility(rng_seed, points))
        total.extend(suite_completeness(rng_seed, points))
        total.extend(suite_band(rng_seed, points, workers=workers))
        total.extend(suite_charge(rng_seed, grid, symmetry_bound, charge_bound))
        total.duration_s = time.time() - t0
        return total
    raise ValueError(f"unknown suite {name!r}")


SUITE_NAMES = ("identities", "log-canonical", "compatibility", "completeness",
               "band", "charge", "all")
