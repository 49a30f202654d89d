"""Seed files: JSON serialization of quivers, strings, and cluster DAGs.

A seed file is self-contained: vertex records, edge triples, one exponent
string per mutable vertex, and a shared node table holding the cluster
functions.  Files round-trip losslessly; loading re-validates the seed
structurally (counts, frozen sets, string shapes).
"""

from __future__ import annotations

import json

from . import dag
from .quiver import MultiplicityQuiver, Vertex
from .seeds import ExchangeString, GeneralizedSeed

FORMAT_VERSION = 1


def vertex_id_to_str(vid) -> str:
    if vid == ("g11",):
        return "g11"
    kind = vid[0]
    return f"{kind}:" + ",".join(str(part) for part in vid[1:])


def vertex_id_from_str(text: str):
    if text == "g11":
        return ("g11",)
    kind, _, rest = text.partition(":")
    parts = tuple(int(p) for p in rest.split(","))
    return (kind,) + parts


def seed_to_dict(seed: GeneralizedSeed, meta=None) -> dict:
    quiver = seed.quiver
    order = sorted(quiver.vertices, key=repr)
    nodes, roots = dag.serialize_functions([seed.cluster[vid] for vid in order])
    doc = {
        "format": FORMAT_VERSION,
        "meta": dict(meta or {}),
        "vertices": [
            {
                "id": vertex_id_to_str(vid),
                "label": quiver.vertex(vid).label,
                "kind": quiver.vertex(vid).kind,
                "multiplicity": quiver.vertex(vid).multiplicity,
            }
            for vid in order
        ],
        "edges": sorted(
            [vertex_id_to_str(src), vertex_id_to_str(dst), mult]
            for (src, dst), mult in quiver.edges.items()
        ),
        "strings": {
            vertex_id_to_str(vid): [
                sorted([vertex_id_to_str(ref), e] for ref, e in mono.items())
                for mono in s.coefficients
            ]
            for vid, s in sorted(seed.strings.items(), key=lambda kv: repr(kv[0]))
        },
        "cluster": {vertex_id_to_str(vid): root for vid, root in zip(order, roots)},
        "nodes": nodes,
    }
    return doc


def seed_from_dict(doc: dict) -> tuple:
    if doc.get("format") != FORMAT_VERSION:
        raise ValueError(f"unsupported seed file format {doc.get('format')!r}")
    vertices = [
        Vertex(
            vertex_id_from_str(rec["id"]),
            rec["label"],
            rec["kind"],
            rec.get("multiplicity", 1),
        )
        for rec in doc["vertices"]
    ]
    quiver = MultiplicityQuiver(
        vertices,
        {
            (vertex_id_from_str(src), vertex_id_from_str(dst)): mult
            for src, dst, mult in doc["edges"]
        },
    )
    functions = dag.deserialize_functions(doc["nodes"], list(doc["cluster"].values()))
    cluster = {
        vertex_id_from_str(vid_str): fn
        for vid_str, fn in zip(doc["cluster"], functions)
    }
    strings = {}
    for vid_str, coeff_list in doc["strings"].items():
        vid = vertex_id_from_str(vid_str)
        coeffs = tuple(
            {vertex_id_from_str(ref): e for ref, e in mono} for mono in coeff_list
        )
        strings[vid] = ExchangeString(vid, coeffs)
    seed = GeneralizedSeed(quiver, cluster, strings)
    return seed, doc.get("meta", {})


def save_seed(path: str, seed: GeneralizedSeed, meta=None):
    doc = seed_to_dict(seed, meta)
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_seed(path: str) -> tuple:
    with open(path) as fh:
        doc = json.load(fh)
    return seed_from_dict(doc)
