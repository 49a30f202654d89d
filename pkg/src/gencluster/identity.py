"""Randomized and certified function-identity testing.

Exact arithmetic turns identity testing on its head: any disagreement at a
single rational point is a true counterexample, while agreement at a few
independent random points bounds the failure probability through the
Schwartz-Zippel lemma using declared degree bounds.  When both sides expand
to sparse polynomials within a size budget, the verdict is upgraded to a
certified one by exact expansion and cross-multiplication.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import dag
from .dag import EvaluationError, RegularFunction
from .rationals import Q

DEFAULT_TRIALS = 5
DEFAULT_RANGE = (-(10**6), 10**6)
RESAMPLE_CAP = 1000


class DegeneratePointBudgetExceeded(RuntimeError):
    """Too many sample points hit a vanishing denominator; not a pass."""


@dataclass
class EqualityVerdict:
    equal: bool
    certified: bool
    trials: int
    resamples: int
    witness: Optional[dict] = None
    failure_bound: Optional[Fraction] = None

    def describe(self) -> str:
        if not self.equal:
            return "unequal (witness found)"
        if self.certified:
            return "equal (certified)"
        return f"equal (probabilistic, failure bound {self.failure_bound})"


def random_point(rng: random.Random, keys, lo: int = DEFAULT_RANGE[0], hi: int = DEFAULT_RANGE[1]):
    """Uniform integer assignment for the given variable keys.

    Keys are sorted by repr so heterogeneous key tuples draw in a stable
    order, which keeps seeded runs reproducible.
    """
    return {k: Q(rng.randint(lo, hi)) for k in sorted(keys, key=repr)}


def random_matrix(rng: random.Random, rows: int, cols: int, lo: int = -50, hi: int = 50, nonzero: bool = False):
    out = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            v = rng.randint(lo, hi)
            while nonzero and v == 0:
                v = rng.randint(lo, hi)
            row.append(Q(v))
        out.append(row)
    return out


def sample_nondegenerate(rng, keys, predicate, lo=DEFAULT_RANGE[0], hi=DEFAULT_RANGE[1], cap=RESAMPLE_CAP):
    """Sample points until ``predicate(point)`` holds; count resamples.

    Returns (point, resamples).  Exceeding the cap is an error, not a pass.
    """
    resamples = 0
    while True:
        point = random_point(rng, keys, lo, hi)
        try:
            if predicate(point):
                return point, resamples
        except EvaluationError:
            pass
        resamples += 1
        if resamples > cap:
            raise DegeneratePointBudgetExceeded(
                f"exceeded {cap} resamples while searching for a nondegenerate point"
            )


def _try_certify(f: RegularFunction, g: RegularFunction, max_det: int, max_nodes: int):
    for fn in (f, g):
        if dag.dag_size(fn) > max_nodes:
            return None
        for node in dag.postorder(fn):
            if isinstance(node, dag.Det) and node.size > max_det:
                return None
    try:
        fn, fd = dag.expand_fraction(f)
        gn, gd = dag.expand_fraction(g)
    except (ValueError, ZeroDivisionError):
        return None
    lhs = fn * gd
    rhs = gn * fd
    return (lhs - rhs).is_zero()


def functions_equal(
    f: RegularFunction,
    g: RegularFunction,
    trials: int = DEFAULT_TRIALS,
    rng: Optional[random.Random] = None,
    seed: Optional[int] = None,
    lo: int = DEFAULT_RANGE[0],
    hi: int = DEFAULT_RANGE[1],
    certify: str = "auto",
    max_certify_det: int = 6,
    max_certify_nodes: int = 4000,
) -> EqualityVerdict:
    """Decide whether two functions agree identically.

    ``certify`` is one of ``"auto"`` (attempt symbolic expansion within the
    size budget, fall back to sampling), ``"never"``, or ``"always"``
    (raise if expansion is infeasible).  Sampling draws coordinates
    uniformly from ``[lo, hi]``; degenerate points (any denominator
    vanishing) are resampled with a hard cap.
    """
    if rng is None:
        rng = random.Random(seed if seed is not None else 0)

    if certify in ("auto", "always"):
        budget_det = 10**9 if certify == "always" else max_certify_det
        budget_nodes = 10**9 if certify == "always" else max_certify_nodes
        result = _try_certify(f, g, budget_det, budget_nodes)
        if result is not None:
            return EqualityVerdict(equal=result, certified=True, trials=0, resamples=0,
                                   witness=None if result else {"symbolic": "expansion differs"})
        if certify == "always":
            raise ValueError("symbolic certification requested but expansion failed")

    keys = dag.collect_vars(f) | dag.collect_vars(g)
    nf, df = dag.degree_bounds(f)
    ng, dg = dag.degree_bounds(g)
    degree_bound = max(nf + dg, ng + df, 1)
    domain = hi - lo + 1
    per_trial = Fraction(min(degree_bound, domain), domain)

    resamples = 0
    done = 0
    while done < trials:
        point = random_point(rng, keys, lo, hi)
        try:
            vf = dag.evaluate(f, point)
            vg = dag.evaluate(g, point)
        except EvaluationError:
            resamples += 1
            if resamples > RESAMPLE_CAP:
                raise DegeneratePointBudgetExceeded(
                    f"exceeded {RESAMPLE_CAP} resamples during identity test"
                )
            continue
        if vf != vg:
            witness = {dag._key_to_str(k): str(v)
                       for k, v in sorted(point.items(), key=lambda kv: repr(kv[0]))}
            witness["lhs"] = str(vf)
            witness["rhs"] = str(vg)
            return EqualityVerdict(equal=False, certified=True, trials=done + 1,
                                   resamples=resamples, witness=witness)
        done += 1
    return EqualityVerdict(
        equal=True,
        certified=False,
        trials=trials,
        resamples=resamples,
        failure_bound=per_trial**trials,
    )
