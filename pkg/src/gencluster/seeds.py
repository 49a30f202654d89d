"""Generalized seeds: clusters, exchange-coefficient strings, mutation.

A seed couples a :class:`~gencluster.quiver.MultiplicityQuiver` with one
cluster function per vertex (isolated vertices carry Casimir functions) and
one exchange-coefficient string per mutable vertex.  A string at a vertex of
multiplicity d is a tuple of d+1 monomials in frozen/isolated variables with
trivial ends; mutation at the owner reverses it and leaves the others alone.

The generalized exchange at a mutable vertex k of multiplicity d builds,
for r = 0..d, the product of the r-th coefficient with the in-neighbor
cluster monomial to the r-th power and the out-neighbor monomial to the
(d-r)-th power, frozen neighbors entering through floor-exponent
tau-monomials.  The coefficient index runs along the in-neighbor side; the
seed builders attach their strings in this orientation, and the
special-vertex identity checks pin the convention down empirically.
For d = 1 and trivial strings this reduces to the classical binomial
exchange relation.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import dag
from .quiver import MultiplicityQuiver


@dataclass(frozen=True)
class ExchangeString:
    """Coefficients p_0..p_d as exponent maps over frozen/isolated vertices."""

    owner: tuple
    coefficients: tuple

    def __post_init__(self):
        if len(self.coefficients) < 2:
            raise ValueError("a string has at least the two trivial ends")
        if self.coefficients[0] or self.coefficients[-1]:
            raise ValueError("string ends must be trivial monomials")

    @classmethod
    def trivial(cls, owner, multiplicity: int = 1) -> "ExchangeString":
        return cls(owner, tuple({} for _ in range(multiplicity + 1)))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def reversed(self) -> "ExchangeString":
        return ExchangeString(self.owner, tuple(reversed(self.coefficients)))

    def is_trivial(self) -> bool:
        return all(not c for c in self.coefficients)


class GeneralizedSeed:
    def __init__(self, quiver: MultiplicityQuiver, cluster: dict, strings: dict):
        self.quiver = quiver
        self.cluster = dict(cluster)
        self.strings = dict(strings)
        self.validate()

    def validate(self):
        self.quiver.validate()
        for vid in self.quiver.vertices:
            if vid not in self.cluster:
                raise ValueError(f"vertex {vid} has no cluster function")
        coefficient_ids = {
            v.id for v in self.quiver.vertices.values() if v.is_frozen
        }
        for vid, v in self.quiver.vertices.items():
            if v.is_mutable:
                s = self.strings.get(vid)
                if s is None:
                    raise ValueError(f"mutable vertex {vid} has no string")
                if s.degree != v.multiplicity:
                    raise ValueError(
                        f"string at {vid} has degree {s.degree}, expected {v.multiplicity}"
                    )
                for mono in s.coefficients:
                    for ref in mono:
                        if ref not in coefficient_ids:
                            raise ValueError(
                                f"string at {vid} references non-frozen vertex {ref}"
                            )

    def copy(self) -> "GeneralizedSeed":
        return GeneralizedSeed(self.quiver.copy(), self.cluster, self.strings)

    def function(self, vid):
        return self.cluster[vid]

    def labels(self) -> dict:
        return {vid: v.label for vid, v in self.quiver.vertices.items()}


# ----------------------------------------------------------------------
# neighbor monomials

def _neighbor_split(seed: GeneralizedSeed, k):
    """(mutable out, frozen out, mutable in, frozen in) as id->mult dicts."""
    q = seed.quiver
    out_m, out_f, in_m, in_f = {}, {}, {}, {}
    for i, b in q.out_edges(k).items():
        (out_m if q.vertex(i).is_mutable else out_f)[i] = b
    for i, b in q.in_edges(k).items():
        (in_m if q.vertex(i).is_mutable else in_f)[i] = b
    return out_m, out_f, in_m, in_f


def _monomial(seed: GeneralizedSeed, exps: dict):
    ordered = sorted(exps.items(), key=lambda kv: repr(kv[0]))
    return dag.monomial((seed.cluster[v], e) for v, e in ordered)


def _tau_exponents(frozen: dict, r: int, d: int) -> dict:
    """Floor-exponent tau-monomial exponents for step r of d."""
    return {i: (r * b) // d for i, b in frozen.items() if (r * b) // d}


def string_mutate(strings: dict, k) -> dict:
    """Reverse the owner-k string; all others unchanged."""
    out = dict(strings)
    out[k] = out[k].reversed()
    return out


def exchange_polynomial(seed: GeneralizedSeed, k) -> dag.RegularFunction:
    """Right-hand side of the generalized exchange relation at k."""
    v = seed.quiver.vertex(k)
    if not v.is_mutable:
        raise ValueError(f"vertex {k} is not mutable")
    d = v.multiplicity
    out_m, out_f, in_m, in_f = _neighbor_split(seed, k)
    coeffs = seed.strings[k].coefficients
    terms = []
    for r in range(d + 1):
        exps: dict = {}
        for i, b in in_m.items():
            exps[i] = exps.get(i, 0) + r * b
        for i, b in out_m.items():
            exps[i] = exps.get(i, 0) + (d - r) * b
        for i, e in _tau_exponents(in_f, r, d).items():
            exps[i] = exps.get(i, 0) + e
        for i, e in _tau_exponents(out_f, d - r, d).items():
            exps[i] = exps.get(i, 0) + e
        for i, e in coeffs[r].items():
            exps[i] = exps.get(i, 0) + e
        terms.append(_monomial(seed, exps))
    return dag.rsum(terms)


def mutate_seed(seed: GeneralizedSeed, k) -> GeneralizedSeed:
    """The adjacent seed in direction k; shares unchanged DAG nodes."""
    exchange = exchange_polynomial(seed, k)
    new_cluster = dict(seed.cluster)
    new_cluster[k] = dag.rquot(exchange, seed.cluster[k])
    return GeneralizedSeed(
        seed.quiver.mutate(k),
        new_cluster,
        string_mutate(seed.strings, k),
    )


def mutate_sequence(seed: GeneralizedSeed, ks) -> GeneralizedSeed:
    for k in ks:
        seed = mutate_seed(seed, k)
    return seed


def y_exponents(seed: GeneralizedSeed, k) -> dict:
    """Exponent vector of the y-variable over cluster vertex ids."""
    v = seed.quiver.vertex(k)
    if not v.is_mutable:
        raise ValueError(f"vertex {k} is not mutable")
    d = v.multiplicity
    out_m, out_f, in_m, in_f = _neighbor_split(seed, k)
    exps: dict = {}
    for i, b in out_m.items():
        exps[i] = exps.get(i, 0) + d * b
    for i, b in out_f.items():
        exps[i] = exps.get(i, 0) + b
    for i, b in in_m.items():
        exps[i] = exps.get(i, 0) - d * b
    for i, b in in_f.items():
        exps[i] = exps.get(i, 0) - b
    return {i: e for i, e in exps.items() if e}


def y_variable(seed: GeneralizedSeed, k) -> dag.RegularFunction:
    """Laurent monomial whose brackets with the cluster diagnose
    compatibility; empty neighbor products contribute 1."""
    exps = y_exponents(seed, k)
    num = _monomial(seed, {i: e for i, e in exps.items() if e > 0})
    den = _monomial(seed, {i: -e for i, e in exps.items() if e < 0})
    return dag.rquot(num, den)


def casimir_exponents(seed: GeneralizedSeed, k) -> list:
    """Exponent vectors of the monomials p-hat_{k,0..d}."""
    v = seed.quiver.vertex(k)
    d = v.multiplicity
    _, out_f, _, in_f = _neighbor_split(seed, k)
    coeffs = seed.strings[k].coefficients
    result = []
    for r in range(d + 1):
        exps: dict = {}
        for i, e in coeffs[r].items():
            exps[i] = exps.get(i, 0) + d * e
        for i, e in _tau_exponents(out_f, r, d).items():
            exps[i] = exps.get(i, 0) + d * e
        for i, e in _tau_exponents(in_f, d - r, d).items():
            exps[i] = exps.get(i, 0) + d * e
        for i, b in out_f.items():
            exps[i] = exps.get(i, 0) - r * b
        for i, b in in_f.items():
            exps[i] = exps.get(i, 0) - (d - r) * b
        result.append({i: e for i, e in exps.items() if e})
    return result


def casimir_monomials(seed: GeneralizedSeed, k) -> list:
    """The Laurent monomials p-hat_{k,r} for r = 0..d as functions."""
    out = []
    for exps in casimir_exponents(seed, k):
        num = _monomial(seed, {i: e for i, e in exps.items() if e > 0})
        den = _monomial(seed, {i: -e for i, e in exps.items() if e < 0})
        out.append(dag.rquot(num, den))
    return out


def abstract_seed(quiver: MultiplicityQuiver, strings: dict) -> GeneralizedSeed:
    """Seed whose cluster variables are free symbols, one per vertex.

    Used for structural properties of the exchange dynamics (Laurentness,
    involutivity) independent of any geometric realization.
    """
    cluster = {vid: dag.free_var(vid) for vid in quiver.vertices}
    return GeneralizedSeed(quiver, cluster, strings)


def trivial_strings(quiver: MultiplicityQuiver) -> dict:
    return {
        vid: ExchangeString.trivial(vid, quiver.vertex(vid).multiplicity)
        for vid in quiver.mutable_ids()
    }


def evaluate_laurent(fn: dag.RegularFunction, assignment: dict):
    """Evaluate a quotient DAG in Laurent-fraction arithmetic.

    ``assignment`` maps variable keys to :class:`~gencluster.polys.LaurentFrac`
    values.  Quotient nodes divide exactly; a non-exact division means the
    function is not Laurent in the assigned variables and raises ValueError.
    Determinant nodes are not supported here (expand them first).
    """
    from .polys import LaurentFrac, SparsePolynomial

    values: dict[int, LaurentFrac] = {}
    for node in dag.postorder(fn):
        key = id(node)
        if key in values:
            continue
        if isinstance(node, dag.Var):
            values[key] = assignment[node.key]
        elif isinstance(node, dag.Const):
            values[key] = LaurentFrac(SparsePolynomial.constant(node.value))
        elif isinstance(node, dag.Sum):
            acc = values[id(node.terms[0])]
            for t in node.terms[1:]:
                acc = acc + values[id(t)]
            values[key] = acc
        elif isinstance(node, dag.Prod):
            acc = values[id(node.factors[0])]
            for f in node.factors[1:]:
                acc = acc * values[id(f)]
            values[key] = acc
        elif isinstance(node, dag.Pow):
            values[key] = values[id(node.base)] ** node.exponent
        elif isinstance(node, dag.Quot):
            q = values[id(node.num)].divide_by(values[id(node.den)])
            if q is None:
                raise ValueError("quotient is not Laurent in the assigned variables")
            values[key] = q
        else:
            raise TypeError(f"evaluate_laurent cannot handle node kind {node.kind}")
    return values[id(fn)]
