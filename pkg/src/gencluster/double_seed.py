"""Initial seed on pairs of n x n matrices: staircase minors and quiver.

The construction lives on a pair (X, Y).  An N x N staircase matrix with
N = (n-1)n is assembled from the blocks ``Y_[2,n]`` (rows 2..n of Y) on the
block diagonal and ``X_[2,n]`` directly below it; its trailing principal
minors are the phi-family.  Column-truncated minors of X and row-truncated
minors of Y give the g- and h-families, and the coefficients of the matrix
pencil det(lambda*Y + mu*X) give the Casimir functions attached to isolated
vertices.

The quiver is a (2n-1) x n grid plus one extra vertex: diagonal edges go
down-right, horizontal edges left, vertical edges up, with an oriented
zig-zag path between the last column and the first and a single special
vertex of multiplicity n at position (2, 1).  The builder accepts explicit
edge overrides so any adjustment stays visible configuration rather than
hidden code.
"""

from __future__ import annotations

from math import comb

from . import dag
from .linalg import inverse
from .quiver import FROZEN, ISOLATED, MUTABLE, MultiplicityQuiver, Vertex
from .rationals import Q
from .seeds import ExchangeString, GeneralizedSeed, trivial_strings


def double_dimensions(n: int):
    """(n, N) with N = (n-1)n, the staircase size."""
    if n < 2:
        raise ValueError("need n >= 2")
    return n, (n - 1) * n


# ----------------------------------------------------------------------
# function families

def phi_matrix(n: int):
    """The N x N staircase of entry variables, as a node matrix.

    Block rows have height n-1 and block columns width n; rows 2..n of Y
    sit at block (i, i) and rows 2..n of X at block (i+1, i).
    """
    _, big_n = double_dimensions(n)
    zero = dag.constant(0)
    rows = [[zero] * big_n for _ in range(big_n)]
    for block in range(1, n):
        for a in range(1, n):
            for b in range(1, n + 1):
                r = (block - 1) * (n - 1) + a
                c = (block - 1) * n + b
                rows[r - 1][c - 1] = dag.entry_y(a + 1, b)
                rows[r - 1 + (n - 1)][c - 1] = dag.entry_x(a + 1, b)
    return rows


def phi_functions(n: int):
    """Trailing principal minors phi_1..phi_N of the staircase."""
    _, big_n = double_dimensions(n)
    matrix = phi_matrix(n)
    return [
        dag.rdet([row[i:] for row in matrix[i:]])
        for i in range(big_n)
    ]


def kappa_exponent(n: int, l: int) -> int:
    """Scaling exponent of phi_l under Y -> sY.

    Row mu = (l-1)//(n-1) of the table starts with mu+1 copies of
    C(n-mu, 2) and then decreases by one per column.  The convention
    kappa_{N+1} = 0 covers the empty trailing minor.
    """
    _, big_n = double_dimensions(n)
    if l == big_n + 1:
        return 0
    if not 1 <= l <= big_n:
        raise ValueError(f"kappa index {l} out of range")
    mu = (l - 1) // (n - 1)
    sigma = l - mu * (n - 1)
    return comb(n - mu, 2) - max(0, sigma - mu - 1)


def g_function(n: int, i: int, j: int):
    """det X over rows i..n and columns j..j+n-i."""
    if not 1 <= j <= i <= n:
        raise ValueError(f"g index ({i},{j}) out of range")
    return dag.rdet(
        [[dag.entry_x(r, c) for c in range(j, j + n - i + 1)] for r in range(i, n + 1)]
    )


def h_function(n: int, i: int, j: int):
    """det Y over rows i..i+n-j and columns j..n."""
    if not 1 <= i <= j <= n:
        raise ValueError(f"h index ({i},{j}) out of range")
    return dag.rdet(
        [[dag.entry_y(r, c) for c in range(j, n + 1)] for r in range(i, i + n - j + 1)]
    )


def c_functions(n: int):
    """Pencil coefficients c_0..c_n of det(lambda*Y + mu*X).

    Extracted by exact interpolation of mu -> det(Y + mu X) at the nodes
    mu = 0..n (smallest exact nodes, Vandermonde solve).
    """
    dets = []
    for t in range(n + 1):
        rows = []
        for a in range(1, n + 1):
            row = []
            for b in range(1, n + 1):
                y = dag.entry_y(a, b)
                row.append(y if t == 0 else y + dag.constant(t) * dag.entry_x(a, b))
            rows.append(row)
        dets.append(dag.rdet(rows))
    vand = [[Q(t) ** i for i in range(n + 1)] for t in range(n + 1)]
    inv = inverse(vand)
    cs = []
    for i in range(n + 1):
        cs.append(dag.rsum(
            dag.rprod([dag.constant(inv[i][t]), dets[t]])
            for t in range(n + 1) if inv[i][t] != 0
        ))
    return cs


def ctilde_functions(n: int):
    """Sign-adjusted pencil coefficients, one per isolated vertex."""
    cs = c_functions(n)
    out = []
    for i in range(1, n):
        sign = -1 if (i * (n - 1)) % 2 else 1
        out.append(cs[i] if sign == 1 else dag.rprod([dag.constant(-1), cs[i]]))
    return out


def family_bar(n: int):
    """The 2n^2 seed functions in canonical order as (label, node) pairs."""
    _, big_n = double_dimensions(n)
    mutable_phi_count = (n - 1) ** 2
    phis = phi_functions(n)
    out = [(f"phi_{i}", phis[i - 1]) for i in range(1, mutable_phi_count + 1)]
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            out.append((f"g_{i}{j}" if n < 10 else f"g_{i},{j}", g_function(n, i, j)))
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            out.append((f"h_{i}{j}" if n < 10 else f"h_{i},{j}", h_function(n, i, j)))
    for i, c in enumerate(ctilde_functions(n), start=1):
        out.append((f"ctilde_{i}", c))
    return out


# ----------------------------------------------------------------------
# quiver

def grid_id(i: int, j: int):
    return ("grid", i, j)


G11_ID = ("g11",)


def iso_id(i: int):
    return ("iso", i)


def special_vertex(n: int):
    return grid_id(2, 1)


def _attachments(n: int):
    """vertex id -> function label for the grid layout."""
    att = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            att[grid_id(i, j)] = f"h_{i}{j}"
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            if (i, j) == (1, 1):
                continue
            att[grid_id(n + i - 1, j)] = f"g_{i}{j}"
    att[G11_ID] = "g_11"
    for k in range(0, n - 2):
        for i in range(1, n + 1):
            att[grid_id(i + k + 1, i)] = f"phi_{k * n + i}"
    att[grid_id(n, 1)] = f"phi_{(n - 1) ** 2}"
    for i in range(1, n):
        att[iso_id(i)] = f"ctilde_{i}"
    return att


def quiver_edges_bar(n: int):
    """Default edge multiset of the grid quiver, as a dict (src, dst) -> 1."""
    edges = {}
    for i in range(1, 2 * n - 1):
        for j in range(1, n):
            edges[(grid_id(i, j), grid_id(i + 1, j + 1))] = 1
    for i in range(2, 2 * n):
        for j in range(2, n + 1):
            edges[(grid_id(i, j), grid_id(i, j - 1))] = 1
            edges[(grid_id(i, j), grid_id(i - 1, j))] = 1
    for i in range(2, n + 1):
        edges[(grid_id(i, 1), grid_id(i - 1, 1))] = 1
    for k in range(1, n - 1):
        edges[(grid_id(n + k, n), grid_id(k + 2, 1))] = 1
        edges[(grid_id(k + 2, 1), grid_id(n + k + 1, n))] = 1
    edges[(G11_ID, special_vertex(n))] = 1
    return edges


def build_quiver_bar(n: int, edge_overrides=None) -> MultiplicityQuiver:
    """Grid quiver on 2n^2 vertices with one special vertex of multiplicity n.

    ``edge_overrides`` maps ordered vertex pairs to multiplicities (0 removes
    an edge); it exists so that any resolution of underdetermined edge data
    is explicit caller configuration.
    """
    if n < 3:
        raise ValueError("the grid quiver needs n >= 3")
    att = _attachments(n)
    frozen_grid = {grid_id(1, j) for j in range(1, n + 1)}
    frozen_grid |= {grid_id(n + i - 1, 1) for i in range(2, n + 1)}
    vertices = []
    for vid, label in att.items():
        if vid == G11_ID:
            vertices.append(Vertex(vid, label, FROZEN))
        elif vid[0] == "iso":
            vertices.append(Vertex(vid, label, ISOLATED))
        elif vid in frozen_grid:
            vertices.append(Vertex(vid, label, FROZEN))
        elif vid == special_vertex(n):
            vertices.append(Vertex(vid, label, MUTABLE, multiplicity=n))
        else:
            vertices.append(Vertex(vid, label, MUTABLE))
    edges = quiver_edges_bar(n)
    for pair, mult in (edge_overrides or {}).items():
        if mult == 0:
            edges.pop(pair, None)
        else:
            edges[pair] = mult
    return MultiplicityQuiver(vertices, edges)


def build_seed_bar(n: int, edge_overrides=None) -> GeneralizedSeed:
    """Assembled initial seed: grid quiver, minor functions, one nontrivial
    string (1, ctilde_1, ..., ctilde_{n-1}, 1) at the special vertex."""
    quiver = build_quiver_bar(n, edge_overrides)
    functions = dict(family_bar(n))
    att = _attachments(n)
    cluster = {vid: functions[label] for vid, label in att.items()}
    strings = trivial_strings(quiver)
    special = special_vertex(n)
    coeffs = [{}]
    coeffs.extend({iso_id(i): 1} for i in range(1, n))
    coeffs.append({})
    strings[special] = ExchangeString(special, tuple(coeffs))
    return GeneralizedSeed(quiver, cluster, strings)


def vertex_of_label(n: int, label: str):
    for vid, lab in _attachments(n).items():
        if lab == label:
            return vid
    raise KeyError(label)


def label_of_vertex(n: int, vid) -> str:
    return _attachments(n)[vid]


# ----------------------------------------------------------------------
# reference identities

def special_exchange_rhs(n: int):
    """Expected exchange value at the special vertex:
    sum over i of c_i * ((-1)^(n-1) h_22 phi_{n+1})^i * phi_2^(n-i)."""
    cs = c_functions(n)
    phis = phi_functions(n)
    h22 = h_function(n, 2, 2)
    base = dag.rprod([dag.constant((-1) ** (n - 1)), h22, phis[n]])
    terms = []
    for i in range(n + 1):
        terms.append(dag.rprod([cs[i], dag.rpow(base, i), dag.rpow(phis[1], n - i)]))
    return dag.rsum(terms)


def scale_y_point(point: dict, s) -> dict:
    """The point with every y-entry multiplied by s (X untouched)."""
    out = dict(point)
    for key, value in point.items():
        if key[0] == "y":
            out[key] = Q(s) * value
    return out
