"""Verification reports: records, canonical JSON, CSV, and figures.

A report is a list of per-check records under a suite name and a parameter
set.  The canonical JSON rendering is byte-stable for fixed parameters and
seed: records are sorted by id, keys are sorted, and wall-clock duration is
deliberately kept out of the serialized form (it is printed alongside).
Figures are rendered from the values certain records carry (bracket
constant matrices, charge censuses, scaling-exponent tables).
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass, field
from typing import Optional

PASS = "pass"
FAIL = "fail"
EXCLUDED = "excluded"


@dataclass
class CheckRecord:
    check_id: str
    anchor: str
    status: str
    witness: Optional[dict] = None
    values: Optional[dict] = None

    def to_dict(self) -> dict:
        doc = {"check_id": self.check_id, "anchor": self.anchor, "status": self.status}
        if self.witness is not None:
            doc["witness"] = self.witness
        if self.values is not None:
            doc["values"] = self.values
        return doc


@dataclass
class VerificationReport:
    suite: str
    params: dict
    records: list = field(default_factory=list)
    duration_s: float = 0.0

    def add(self, check_id: str, anchor: str, ok: bool,
            witness=None, values=None, excluded: bool = False):
        status = EXCLUDED if excluded else (PASS if ok else FAIL)
        self.records.append(CheckRecord(check_id, anchor, status, witness, values))

    def extend(self, other: "VerificationReport"):
        self.records.extend(other.records)

    @property
    def passed(self) -> bool:
        return all(r.status != FAIL for r in self.records)

    def counts(self) -> dict:
        out = {PASS: 0, FAIL: 0, EXCLUDED: 0}
        for r in self.records:
            out[r.status] += 1
        return out

    def to_json_dict(self) -> dict:
        return {
            "format": 1,
            "suite": self.suite,
            "params": self.params,
            "counts": self.counts(),
            "passed": self.passed,
            "records": [r.to_dict() for r in sorted(self.records, key=lambda r: r.check_id)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=1, sort_keys=True) + "\n"

    def write_json(self, path: str):
        with open(path, "w") as fh:
            fh.write(self.to_json())

    def write_csv(self, path: str):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["check_id", "anchor", "status", "witness"])
            for r in sorted(self.records, key=lambda r: r.check_id):
                writer.writerow([
                    r.check_id, r.anchor, r.status,
                    json.dumps(r.witness, sort_keys=True) if r.witness else "",
                ])

    def summary_lines(self):
        counts = self.counts()
        yield (f"suite {self.suite}: "
               f"{counts[PASS]} pass, {counts[FAIL]} fail, {counts[EXCLUDED]} excluded "
               f"({self.duration_s:.1f}s)")
        for r in sorted(self.records, key=lambda r: r.check_id):
            if r.status == FAIL:
                yield f"  FAIL {r.check_id} [{r.anchor}] witness={r.witness}"


def render_figures(report: VerificationReport, outdir: str):
    """Render the figure-worthy record values to PNG files; returns paths."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    os.makedirs(outdir, exist_ok=True)
    paths = []
    for record in sorted(report.records, key=lambda r: r.check_id):
        values = record.values or {}
        stem = record.check_id.replace("/", "_").replace("=", "").replace(",", "_")
        if "omega_matrix" in values:
            labels = values["omega_labels"]
            matrix = [[_fraction_to_float(x) for x in row]
                      for row in values["omega_matrix"]]
            fig, ax = plt.subplots(figsize=(7, 6))
            im = ax.imshow(matrix, cmap="RdBu", vmin=-2, vmax=2)
            ax.set_xticks(range(len(labels)))
            ax.set_yticks(range(len(labels)))
            ax.set_xticklabels(labels, rotation=90, fontsize=5)
            ax.set_yticklabels(labels, fontsize=5)
            ax.set_title(f"bracket constants: {record.check_id}", fontsize=9)
            fig.colorbar(im, ax=ax, shrink=0.8)
            path = os.path.join(outdir, f"{stem}_omega.png")
            fig.tight_layout()
            fig.savefig(path, dpi=150)
            plt.close(fig)
            paths.append(path)
        if "census" in values:
            census = values["census"]
            keys = sorted(census)
            fig, ax = plt.subplots(figsize=(6, 4))
            ax.bar(range(len(keys)), [census[k] for k in keys], color="steelblue")
            ax.set_xticks(range(len(keys)))
            ax.set_xticklabels([str(k) for k in keys], rotation=30, fontsize=8)
            ax.set_ylabel("states")
            ax.set_title("node types by charge behavior", fontsize=10)
            path = os.path.join(outdir, f"{stem}_census.png")
            fig.tight_layout()
            fig.savefig(path, dpi=150)
            plt.close(fig)
            paths.append(path)
        if "kappa_rows" in values:
            rows = values["kappa_rows"]
            fig, ax = plt.subplots(figsize=(6, 4))
            for n_str, vals in sorted(rows.items()):
                ax.plot(range(1, len(vals) + 1), vals, marker="o", label=f"n={n_str}")
            ax.set_xlabel("minor index")
            ax.set_ylabel("scaling exponent")
            ax.legend(fontsize=8)
            ax.set_title("trailing-minor scaling exponents", fontsize=10)
            path = os.path.join(outdir, f"{stem}_kappa.png")
            fig.tight_layout()
            fig.savefig(path, dpi=150)
            plt.close(fig)
            paths.append(path)
    return paths


def _fraction_to_float(text: str) -> float:
    if "/" in text:
        num, den = text.split("/")
        return float(num) / float(den)
    return float(text)
