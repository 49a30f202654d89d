"""Quivers with per-vertex multiplicities and their mutation.

Vertices are ``mutable``, ``frozen``, or ``isolated`` (a frozen vertex with
no incident edges, which stays edge-free under mutation).  Parallel edges
are stored as integer multiplicities on ordered pairs; the no-2-cycle
normal form (at most one direction per pair, positive multiplicity) is
restored after every mutation.

Mutation at a mutable vertex k:

* every path i -> k -> j contributes ``b_ik * b_kj * d`` edges i -> j,
  where d is the multiplicity of k when both endpoints are mutable and the
  multiplicity of the mutable endpoint when the other one is frozen;
* paths whose endpoints are both frozen contribute nothing (edges between
  frozen vertices are stored if present but ignored by every operation);
* all edges incident to k are reversed;
* opposite pairs cancel maximally.

Vertex multiplicities never change under mutation.
"""

from __future__ import annotations

from dataclasses import dataclass

MUTABLE = "mutable"
FROZEN = "frozen"
ISOLATED = "isolated"


@dataclass(frozen=True)
class Vertex:
    id: tuple
    label: str
    kind: str = MUTABLE
    multiplicity: int = 1

    def __post_init__(self):
        if self.kind not in (MUTABLE, FROZEN, ISOLATED):
            raise ValueError(f"bad vertex kind {self.kind!r}")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be a positive integer")

    @property
    def is_mutable(self) -> bool:
        return self.kind == MUTABLE

    @property
    def is_frozen(self) -> bool:
        return self.kind in (FROZEN, ISOLATED)


class MultiplicityQuiver:
    def __init__(self, vertices, edges=None):
        self.vertices: dict[tuple, Vertex] = {}
        for v in vertices:
            if v.id in self.vertices:
                raise ValueError(f"duplicate vertex id {v.id}")
            self.vertices[v.id] = v
        self.edges: dict[tuple, int] = {}
        for (src, dst), mult in (edges or {}).items():
            self.add_edge(src, dst, mult)

    # ------------------------------------------------------------------
    def add_edge(self, src, dst, mult: int = 1):
        if mult == 0:
            return
        if mult < 0:
            src, dst, mult = dst, src, -mult
        if src == dst:
            raise ValueError("loops are not allowed")
        for v in (src, dst):
            if v not in self.vertices:
                raise ValueError(f"edge endpoint {v} is not a vertex")
            if self.vertices[v].kind == ISOLATED:
                raise ValueError(f"isolated vertex {v} cannot carry edges")
        reverse = self.edges.get((dst, src), 0)
        if reverse:
            if reverse > mult:
                self.edges[(dst, src)] = reverse - mult
                return
            del self.edges[(dst, src)]
            mult -= reverse
            if mult == 0:
                return
        self.edges[(src, dst)] = self.edges.get((src, dst), 0) + mult

    def copy(self) -> "MultiplicityQuiver":
        q = MultiplicityQuiver(self.vertices.values())
        q.edges = dict(self.edges)
        return q

    # ------------------------------------------------------------------
    def vertex(self, vid) -> Vertex:
        return self.vertices[vid]

    def mutable_ids(self):
        return [v.id for v in self.vertices.values() if v.is_mutable]

    def frozen_ids(self):
        return [v.id for v in self.vertices.values() if v.kind == FROZEN]

    def isolated_ids(self):
        return [v.id for v in self.vertices.values() if v.kind == ISOLATED]

    def out_edges(self, vid):
        return {dst: m for (src, dst), m in self.edges.items() if src == vid}

    def in_edges(self, vid):
        return {src: m for (src, dst), m in self.edges.items() if dst == vid}

    def edge_mult(self, src, dst) -> int:
        return self.edges.get((src, dst), 0)

    # ------------------------------------------------------------------
    def validate(self):
        for (src, dst), mult in self.edges.items():
            if mult <= 0:
                raise AssertionError(f"nonpositive multiplicity on {src}->{dst}")
            if (dst, src) in self.edges:
                raise AssertionError(f"2-cycle between {src} and {dst}")
            for v in (src, dst):
                if self.vertices[v].kind == ISOLATED:
                    raise AssertionError(f"edge at isolated vertex {v}")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiplicityQuiver)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    # ------------------------------------------------------------------
    def mutate(self, k) -> "MultiplicityQuiver":
        vk = self.vertices.get(k)
        if vk is None:
            raise ValueError(f"unknown vertex {k}")
        if not vk.is_mutable:
            raise ValueError(f"cannot mutate at non-mutable vertex {k}")
        incoming = self.in_edges(k)
        outgoing = self.out_edges(k)

        new = MultiplicityQuiver(self.vertices.values())
        # start from all edges not incident to k
        for (src, dst), mult in self.edges.items():
            if k in (src, dst):
                continue
            new.edges[(src, dst)] = mult

        d_k = vk.multiplicity
        for i, b_ik in incoming.items():
            vi = self.vertices[i]
            for j, b_kj in outgoing.items():
                vj = self.vertices[j]
                if vi.is_frozen and vj.is_frozen:
                    continue
                if vi.is_mutable and vj.is_mutable:
                    d = d_k
                elif vi.is_frozen:
                    d = vj.multiplicity
                else:
                    d = vi.multiplicity
                new.add_edge(i, j, b_ik * b_kj * d)

        for i, b_ik in incoming.items():
            new.add_edge(k, i, b_ik)
        for j, b_kj in outgoing.items():
            new.add_edge(j, k, b_kj)
        new.validate()
        return new
