"""Seed files, reports, and the command-line surface."""

import json
import random

from gencluster import band, dag, double_seed as ds, seedio
from gencluster.cli import main
from gencluster.identity import functions_equal, random_point
from gencluster.report import VerificationReport
from gencluster.seeds import mutate_seed


def entry_keys(n):
    keys = set()
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            keys.add(("x", i, j))
            keys.add(("y", i, j))
    return keys


def test_seed_roundtrip_double(tmp_path):
    seed = ds.build_seed_bar(3)
    path = tmp_path / "seed.json"
    seedio.save_seed(path, seed, {"family": "double", "n": 3})
    loaded, meta = seedio.load_seed(path)
    assert meta["n"] == 3
    assert loaded.quiver == seed.quiver
    assert loaded.strings == seed.strings
    rng = random.Random(4)
    point = random_point(rng, entry_keys(3), -30, 30)
    for vid in seed.quiver.vertices:
        assert dag.evaluate(loaded.cluster[vid], point) == dag.evaluate(seed.cluster[vid], point)


def test_seed_roundtrip_after_mutation(tmp_path):
    seed = ds.build_seed_bar(3)
    mutated = mutate_seed(seed, ds.grid_id(3, 2))
    path = tmp_path / "mut.json"
    seedio.save_seed(path, mutated, {})
    loaded, _ = seedio.load_seed(path)
    v = functions_equal(loaded.cluster[ds.grid_id(3, 2)],
                        mutated.cluster[ds.grid_id(3, 2)], seed=3, certify="never")
    assert v.equal


def test_seed_roundtrip_band(tmp_path):
    seed = band.build_band_seed(3, 4)
    path = tmp_path / "band.json"
    seedio.save_seed(path, seed, {"family": "band", "k": 3, "n": 4})
    loaded, _ = seedio.load_seed(path)
    assert loaded.quiver == seed.quiver
    assert loaded.strings == seed.strings


def test_report_json_is_canonical_and_duration_free(tmp_path):
    rep = VerificationReport("demo", {"x": 1})
    rep.add("b/check", "anchor-b", True)
    rep.add("a/check", "anchor-a", False, witness={"w": 1})
    rep.duration_s = 1.5
    doc = rep.to_json_dict()
    assert "duration" not in json.dumps(doc)
    assert [r["check_id"] for r in doc["records"]] == ["a/check", "b/check"]
    assert not rep.passed
    path = tmp_path / "r.json"
    rep.write_json(path)
    rep.duration_s = 99.0
    assert path.read_text() == rep.to_json()


def test_cli_seed_build_and_mutate(tmp_path):
    seed_path = tmp_path / "s.json"
    assert main(["seed", "build", "--family", "double", "--n", "3",
                 "--out", str(seed_path)]) == 0
    out_path = tmp_path / "m.json"
    assert main(["mutate", str(seed_path), "--at", "phi_2", "--at", "3,2",
                 "--out", str(out_path), "--check-regular"]) == 0
    loaded, meta = seedio.load_seed(out_path)
    assert meta["mutations"] == ["phi_2", "phi_2"]
    base = ds.build_seed_bar(3)
    v = functions_equal(loaded.cluster[ds.grid_id(3, 2)], base.cluster[ds.grid_id(3, 2)],
                        seed=5, certify="never")
    assert v.equal  # mutated twice at the same vertex


def test_cli_rejects_bad_parameters(tmp_path):
    assert main(["seed", "build", "--family", "double", "--n", "2",
                 "--out", str(tmp_path / "x.json")]) == 2
    assert main(["seed", "build", "--family", "band", "--n", "4",
                 "--out", str(tmp_path / "x.json")]) == 2
    seed_path = tmp_path / "s.json"
    main(["seed", "build", "--family", "double", "--n", "3", "--out", str(seed_path)])
    assert main(["mutate", str(seed_path), "--at", "h_11",
                 "--out", str(tmp_path / "y.json")]) == 2
    assert main(["mutate", str(seed_path), "--at", "nonsense",
                 "--out", str(tmp_path / "y.json")]) == 2


def test_cli_refuses_symbolic_check_on_large_seed(tmp_path):
    seed_path = tmp_path / "s4.json"
    main(["seed", "build", "--family", "double", "--n", "4", "--out", str(seed_path)])
    assert main(["mutate", str(seed_path), "--at", "phi_2",
                 "--out", str(tmp_path / "m.json"), "--check-regular"]) == 2


def test_cli_verify_deterministic_and_exit_codes(tmp_path):
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    args = ["verify", "compatibility", "--rng-seed", "11", "--points", "2",
            "--n", "3"]
    assert main(args + ["--json", str(out1)]) == 0
    assert main(args + ["--json", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_cli_verify_csv_and_figures(tmp_path):
    outdir = tmp_path / "out"
    code = main(["verify", "charge", "--rng-seed", "3", "--grid", "8",
                 "--symmetry-bound", "10", "--out-dir", str(outdir), "--figures"])
    assert code == 0
    assert (outdir / "report.json").exists()
    assert (outdir / "checks.csv").exists()
    figures = list((outdir / "figures").iterdir())
    assert figures and all(p.suffix == ".png" for p in figures)
    header = (outdir / "checks.csv").read_text().splitlines()[0]
    assert header == "check_id,anchor,status,witness"
