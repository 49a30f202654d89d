"""Verification suite runner and report plumbing."""

import pytest

from gencluster import suites
from gencluster.report import VerificationReport, render_figures


def test_derived_rng_is_stable_and_independent():
    a1 = suites.derived_rng(7, "x").random()
    a2 = suites.derived_rng(7, "x").random()
    b = suites.derived_rng(7, "y").random()
    c = suites.derived_rng(8, "x").random()
    assert a1 == a2
    assert a1 != b and a1 != c


def test_identities_suite_passes():
    rep = suites.suite_identities(3, points=2, kappa_ns=(2, 3), exchange_ns=(3,),
                                  include_regularity=False)
    assert rep.passed
    ids = {r.check_id for r in rep.records}
    assert "identities/special-exchange/n=3" in ids
    assert any(r.check_id.startswith("identities/kappa-periodicity") for r in rep.records)


def test_band_suite_smoke():
    rep = suites.suite_band(3, points=2, compat_pairs=((2, 3),), cert_pairs=((3, 4),),
                            factor_ns=(3,))
    assert rep.passed
    conventions = [r.values for r in rep.records
                   if r.check_id.startswith("band/long-certificate")]
    assert conventions and conventions[0]["index_convention"] == ["resolved"]


def test_run_suite_dispatch_and_unknown():
    rep = suites.run_suite("charge", rng_seed=1, grid=6, symmetry_bound=8,
                           charge_bound=4)
    assert rep.suite == "charge" and rep.passed
    with pytest.raises(ValueError):
        suites.run_suite("nonsense", rng_seed=1)


def test_render_figures_for_all_value_kinds(tmp_path):
    rep = VerificationReport("demo", {})
    rep.add("demo/omega", "log-canonical-family", True, values={
        "omega_labels": ["a", "b"],
        "omega_matrix": [["0", "1/2"], ["-1/2", "0"]],
    })
    rep.add("demo/census", "type-census", True, values={"census": {"(1, 2, 0)": 5}})
    rep.add("demo/kappa", "kappa-table", True, values={"kappa_rows": {"3": [3, 2, 1, 1, 0, 0]}})
    paths = render_figures(rep, str(tmp_path))
    assert len(paths) == 3
    for p in paths:
        assert p.endswith(".png")
