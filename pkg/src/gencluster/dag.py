"""Expression DAGs for regular functions of matrix entries.

A :class:`RegularFunction` is a node in a shared directed acyclic graph
whose leaves are entry variables ``x_ij`` / ``y_ij`` (or free abstract
variables) and rational constants, and whose interior nodes are sums,
products, nonnegative integer powers, determinants of node matrices, and
quotients.  Evaluation at a rational point is exact; quotient nodes whose
denominator vanishes at the point raise :class:`EvaluationError` carrying
the offending node id, never a silent result.

Gradients are exact as well.  Two routes are provided and must agree:

* ``mode="adjugate"`` (default): determinant nodes are differentiated by the
  cofactor rule, with the adjugate computed over plain rationals;
* ``mode="forward"``: determinant nodes are eliminated directly in
  GradScalar arithmetic (unit pivots, value-nonzero pivoting).
"""

from __future__ import annotations

import itertools

from . import linalg
from .dual import GradScalar
from .polys import SparsePolynomial, exact_divide, det_poly
from .rationals import Q, ZERO, ONE, qstr, parse_q

_node_counter = itertools.count(1)


class EvaluationError(ArithmeticError):
    def __init__(self, message: str, node_id: int):
        super().__init__(f"{message} (node {node_id})")
        self.node_id = node_id


class RegularFunction:
    """Base node type; concrete kinds subclass it."""

    __slots__ = ("node_id",)
    kind = "abstract"

    def __init__(self):
        self.node_id = next(_node_counter)

    def children(self):
        return ()

    # -- operator sugar -------------------------------------------------
    def __add__(self, other):
        return rsum([self, _coerce(other)])

    def __radd__(self, other):
        return rsum([_coerce(other), self])

    def __sub__(self, other):
        return rsum([self, rprod([constant(-1), _coerce(other)])])

    def __rsub__(self, other):
        return rsum([_coerce(other), rprod([constant(-1), self])])

    def __mul__(self, other):
        return rprod([self, _coerce(other)])

    def __rmul__(self, other):
        return rprod([_coerce(other), self])

    def __truediv__(self, other):
        return rquot(self, _coerce(other))

    def __rtruediv__(self, other):
        return rquot(_coerce(other), self)

    def __pow__(self, exponent: int):
        return rpow(self, exponent)

    def __neg__(self):
        return rprod([constant(-1), self])


class Var(RegularFunction):
    __slots__ = ("key",)
    kind = "var"

    def __init__(self, key):
        super().__init__()
        self.key = key


class Const(RegularFunction):
    __slots__ = ("value",)
    kind = "const"

    def __init__(self, value):
        super().__init__()
        self.value = Q(value)


class Sum(RegularFunction):
    __slots__ = ("terms",)
    kind = "sum"

    def __init__(self, terms):
        super().__init__()
        self.terms = tuple(terms)

    def children(self):
        return self.terms


class Prod(RegularFunction):
    __slots__ = ("factors",)
    kind = "prod"

    def __init__(self, factors):
        super().__init__()
        self.factors = tuple(factors)

    def children(self):
        return self.factors


class Pow(RegularFunction):
    __slots__ = ("base", "exponent")
    kind = "pow"

    def __init__(self, base, exponent: int):
        super().__init__()
        if exponent < 0:
            raise ValueError("Pow exponent must be nonnegative")
        self.base = base
        self.exponent = int(exponent)

    def children(self):
        return (self.base,)


class Det(RegularFunction):
    __slots__ = ("matrix",)
    kind = "det"

    def __init__(self, matrix):
        super().__init__()
        rows = tuple(tuple(row) for row in matrix)
        m = len(rows)
        if any(len(r) != m for r in rows):
            raise ValueError("Det node requires a square matrix of nodes")
        self.matrix = rows

    def children(self):
        return tuple(e for row in self.matrix for e in row)

    @property
    def size(self) -> int:
        return len(self.matrix)


class Quot(RegularFunction):
    __slots__ = ("num", "den")
    kind = "quot"

    def __init__(self, num, den):
        super().__init__()
        self.num = num
        self.den = den

    def children(self):
        return (self.num, self.den)


# ----------------------------------------------------------------------
# smart constructors

def _coerce(value) -> RegularFunction:
    if isinstance(value, RegularFunction):
        return value
    return Const(value)


def constant(value) -> Const:
    return Const(value)


def entry_x(i: int, j: int) -> Var:
    return Var(("x", i, j))


def entry_y(i: int, j: int) -> Var:
    return Var(("y", i, j))


def free_var(name) -> Var:
    return Var(("u", name))


def rsum(terms) -> RegularFunction:
    flat = []
    const_acc = ZERO
    for t in terms:
        t = _coerce(t)
        if isinstance(t, Sum):
            flat.extend(t.terms)
        elif isinstance(t, Const):
            const_acc += t.value
        else:
            flat.append(t)
    if const_acc:
        flat.append(Const(const_acc))
    if not flat:
        return Const(0)
    if len(flat) == 1:
        return flat[0]
    return Sum(flat)


def rprod(factors) -> RegularFunction:
    flat = []
    const_acc = ONE
    for f in factors:
        f = _coerce(f)
        if isinstance(f, Prod):
            flat.extend(f.factors)
        elif isinstance(f, Const):
            const_acc *= f.value
        else:
            flat.append(f)
    if const_acc == 0:
        return Const(0)
    if const_acc != 1:
        flat.insert(0, Const(const_acc))
    if not flat:
        return Const(1)
    if len(flat) == 1:
        return flat[0]
    return Prod(flat)


def rpow(base, exponent: int) -> RegularFunction:
    base = _coerce(base)
    if exponent == 0:
        return Const(1)
    if exponent == 1:
        return base
    if isinstance(base, Const):
        return Const(base.value**exponent)
    return Pow(base, exponent)


def rquot(num, den) -> RegularFunction:
    num = _coerce(num)
    den = _coerce(den)
    if isinstance(den, Const):
        if den.value == 0:
            raise ZeroDivisionError("quotient by the constant zero")
        if den.value == 1:
            return num
        return rprod([Const(1 / den.value), num])
    if isinstance(num, Const) and num.value == 0:
        return num
    return Quot(num, den)


def rdet(matrix) -> RegularFunction:
    rows = [[_coerce(e) for e in row] for row in matrix]
    if not rows:
        return Const(1)
    return Det(rows)


def monomial(assignments) -> RegularFunction:
    """Product of node**exponent over an iterable of (node, exponent)."""
    factors = []
    for node, e in assignments:
        if e:
            factors.append(rpow(node, e))
    return rprod(factors) if factors else Const(1)


# ----------------------------------------------------------------------
# traversal, evaluation, differentiation

def postorder(root: RegularFunction):
    seen = set()
    stack = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            yield node
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        for child in node.children():
            if id(child) not in seen:
                stack.append((child, False))


def collect_vars(root: RegularFunction):
    """Set of variable keys appearing in the DAG."""
    return {node.key for node in postorder(root) if isinstance(node, Var)}


def assignment_from_matrices(x_rows, y_rows):
    """Point dict for n x n matrices X, Y given as row lists (1-indexed keys)."""
    point = {}
    for i, row in enumerate(x_rows, start=1):
        for j, v in enumerate(row, start=1):
            point[("x", i, j)] = Q(v)
    for i, row in enumerate(y_rows, start=1):
        for j, v in enumerate(row, start=1):
            point[("y", i, j)] = Q(v)
    return point


def evaluate(root: RegularFunction, point, memo=None):
    """Exact value of the function at a rational point."""
    values = memo if memo is not None else {}
    for node in postorder(root):
        key = id(node)
        if key in values:
            continue
        if isinstance(node, Var):
            values[key] = Q(point[node.key])
        elif isinstance(node, Const):
            values[key] = node.value
        elif isinstance(node, Sum):
            acc = ZERO
            for t in node.terms:
                acc += values[id(t)]
            values[key] = acc
        elif isinstance(node, Prod):
            acc = ONE
            for f in node.factors:
                acc *= values[id(f)]
            values[key] = acc
        elif isinstance(node, Pow):
            values[key] = values[id(node.base)] ** node.exponent
        elif isinstance(node, Det):
            rows = [[values[id(e)] for e in row] for row in node.matrix]
            values[key] = linalg.det_rational(rows)
        elif isinstance(node, Quot):
            den = values[id(node.den)]
            if den == 0:
                raise EvaluationError("quotient denominator vanishes at point", node.node_id)
            values[key] = values[id(node.num)] / den
        else:  # pragma: no cover
            raise TypeError(f"unknown node kind {node.kind}")
    return values[id(root)]


def _det_grad_adjugate(entries: list[list[GradScalar]]) -> GradScalar:
    m = len(entries)
    values = [[e.value for e in row] for row in entries]
    d = linalg.det_rational(values)
    adj = linalg.adjugate(values)
    total = GradScalar.constant(d)
    grad = {}
    for a in range(m):
        for b in range(m):
            cof = adj[b][a]
            if not cof:
                continue
            for k, v in entries[a][b].grad.items():
                s = grad.get(k, ZERO) + cof * v
                if s:
                    grad[k] = s
                elif k in grad:
                    del grad[k]
    total.grad = grad
    return total


def gradient(root: RegularFunction, point, mode: str = "adjugate") -> GradScalar:
    """Exact value and all partial derivatives at a rational point.

    ``mode`` selects the determinant treatment; both modes agree wherever
    the forward mode is defined (its elimination may request a fresh point
    via :class:`~gencluster.linalg.NeedsRerandomization`).
    """
    if mode not in ("adjugate", "forward"):
        raise ValueError("mode must be 'adjugate' or 'forward'")
    values: dict[int, GradScalar] = {}
    for node in postorder(root):
        key = id(node)
        if key in values:
            continue
        if isinstance(node, Var):
            values[key] = GradScalar.variable(node.key, point[node.key])
        elif isinstance(node, Const):
            values[key] = GradScalar.constant(node.value)
        elif isinstance(node, Sum):
            acc = GradScalar.constant(0)
            for t in node.terms:
                acc = acc + values[id(t)]
            values[key] = acc
        elif isinstance(node, Prod):
            acc = GradScalar.constant(1)
            for f in node.factors:
                acc = acc * values[id(f)]
            values[key] = acc
        elif isinstance(node, Pow):
            values[key] = values[id(node.base)] ** node.exponent
        elif isinstance(node, Det):
            entries = [[values[id(e)] for e in row] for row in node.matrix]
            if mode == "adjugate":
                values[key] = _det_grad_adjugate(entries)
            else:
                values[key] = linalg.det_gradscalar(entries)
        elif isinstance(node, Quot):
            den = values[id(node.den)]
            if den.value == 0:
                raise EvaluationError("quotient denominator vanishes at point", node.node_id)
            values[key] = values[id(node.num)] / den
        else:  # pragma: no cover
            raise TypeError(f"unknown node kind {node.kind}")
    return values[id(root)]


def degree_bounds(root: RegularFunction):
    """(numerator, denominator) total-degree bounds, safe but not tight."""
    bounds = {}
    for node in postorder(root):
        key = id(node)
        if isinstance(node, Var):
            bounds[key] = (1, 0)
        elif isinstance(node, Const):
            bounds[key] = (0, 0)
        elif isinstance(node, Sum):
            ds = sum(bounds[id(t)][1] for t in node.terms)
            ns = max((bounds[id(t)][0] + ds - bounds[id(t)][1] for t in node.terms), default=0)
            bounds[key] = (ns, ds)
        elif isinstance(node, Prod):
            bounds[key] = (
                sum(bounds[id(f)][0] for f in node.factors),
                sum(bounds[id(f)][1] for f in node.factors),
            )
        elif isinstance(node, Pow):
            n, d = bounds[id(node.base)]
            bounds[key] = (n * node.exponent, d * node.exponent)
        elif isinstance(node, Det):
            dall = sum(bounds[id(e)][1] for row in node.matrix for e in row)
            nrow = sum(max((bounds[id(e)][0] for e in row), default=0) for row in node.matrix)
            bounds[key] = (nrow + dall, dall)
        elif isinstance(node, Quot):
            n1, d1 = bounds[id(node.num)]
            n2, d2 = bounds[id(node.den)]
            bounds[key] = (n1 + d2, d1 + n2)
    return bounds[id(root)]


def dag_size(root: RegularFunction) -> int:
    return sum(1 for _ in postorder(root))


# ----------------------------------------------------------------------
# symbolic expansion

def expand_fraction(root: RegularFunction, subst=None):
    """Expand to a (numerator, denominator) pair of SparsePolynomials.

    ``subst`` optionally maps variable keys to SparsePolynomials (or
    rationals); unmapped keys become polynomial variables.  Intended for
    the small sizes where full expansion is feasible.
    """
    subst = subst or {}
    cache: dict[int, tuple[SparsePolynomial, SparsePolynomial]] = {}
    one = SparsePolynomial.constant(1)

    def as_frac(node):
        return cache[id(node)]

    for node in postorder(root):
        key = id(node)
        if key in cache:
            continue
        if isinstance(node, Var):
            if node.key in subst:
                repl = subst[node.key]
                if not isinstance(repl, SparsePolynomial):
                    repl = SparsePolynomial.constant(repl)
                cache[key] = (repl, one)
            else:
                cache[key] = (SparsePolynomial.variable(node.key), one)
        elif isinstance(node, Const):
            cache[key] = (SparsePolynomial.constant(node.value), one)
        elif isinstance(node, Sum):
            num = SparsePolynomial.constant(0)
            den = one
            for t in node.terms:
                tn, td = as_frac(t)
                num = num * td + tn * den
                den = den * td
            cache[key] = (num, den)
        elif isinstance(node, Prod):
            num, den = one, one
            for f in node.factors:
                fn, fd = as_frac(f)
                num = num * fn
                den = den * fd
            cache[key] = (num, den)
        elif isinstance(node, Pow):
            bn, bd = as_frac(node.base)
            cache[key] = (bn**node.exponent, bd**node.exponent)
        elif isinstance(node, Det):
            rows = []
            for row in node.matrix:
                prow = []
                for e in row:
                    en, ed = as_frac(e)
                    if not ed.is_constant():
                        raise ValueError("symbolic determinant over fractional entries")
                    c = ed.constant_value()
                    prow.append(en.scale(1 / c) if c != 1 else en)
                rows.append(prow)
            cache[key] = (det_poly(rows), one)
        elif isinstance(node, Quot):
            nn, nd = as_frac(node.num)
            dn, dd = as_frac(node.den)
            if dn.is_zero():
                raise ZeroDivisionError("symbolic quotient by zero")
            cache[key] = (nn * dd, nd * dn)
    return cache[id(root)]


def expand_polynomial(root: RegularFunction, subst=None) -> SparsePolynomial:
    """Expand a function that is actually polynomial; exact-divide the
    denominator away and raise if that fails."""
    num, den = expand_fraction(root, subst)
    if den.is_constant():
        c = den.constant_value()
        return num.scale(1 / c)
    q = exact_divide(num, den)
    if q is None:
        raise ValueError("function does not expand to a polynomial")
    return q


# ----------------------------------------------------------------------
# serialization

def _key_to_str(key) -> str:
    tag = key[0]
    if tag in ("x", "y"):
        return f"{tag}:{key[1]},{key[2]}"
    return f"u:{key[1]}"


def _key_from_str(text: str):
    tag, _, rest = text.partition(":")
    if tag in ("x", "y"):
        i, j = rest.split(",")
        return (tag, int(i), int(j))
    if tag == "u":
        return ("u", rest)
    raise ValueError(f"bad variable key {text!r}")


def serialize_functions(roots):
    """Encode shared DAGs into a node table; returns (nodes, root_ids).

    Node ids are table indexes, children always precede parents.
    """
    nodes = []
    index: dict[int, int] = {}

    def visit(root):
        for node in postorder(root):
            key = id(node)
            if key in index:
                continue
            if isinstance(node, Var):
                rec = {"op": "var", "key": _key_to_str(node.key)}
            elif isinstance(node, Const):
                rec = {"op": "const", "value": qstr(node.value)}
            elif isinstance(node, Sum):
                rec = {"op": "sum", "args": [index[id(t)] for t in node.terms]}
            elif isinstance(node, Prod):
                rec = {"op": "prod", "args": [index[id(f)] for f in node.factors]}
            elif isinstance(node, Pow):
                rec = {"op": "pow", "base": index[id(node.base)], "exp": node.exponent}
            elif isinstance(node, Det):
                rec = {"op": "det", "rows": [[index[id(e)] for e in row] for row in node.matrix]}
            elif isinstance(node, Quot):
                rec = {"op": "quot", "num": index[id(node.num)], "den": index[id(node.den)]}
            else:  # pragma: no cover
                raise TypeError(node.kind)
            index[key] = len(nodes)
            nodes.append(rec)

    root_ids = []
    for r in roots:
        visit(r)
        root_ids.append(index[id(r)])
    return nodes, root_ids


def deserialize_functions(nodes, root_ids):
    built: list[RegularFunction] = []
    for rec in nodes:
        op = rec["op"]
        if op == "var":
            built.append(Var(_key_from_str(rec["key"])))
        elif op == "const":
            built.append(Const(parse_q(rec["value"])))
        elif op == "sum":
            built.append(Sum([built[i] for i in rec["args"]]))
        elif op == "prod":
            built.append(Prod([built[i] for i in rec["args"]]))
        elif op == "pow":
            built.append(Pow(built[rec["base"]], rec["exp"]))
        elif op == "det":
            built.append(Det([[built[i] for i in row] for row in rec["rows"]]))
        elif op == "quot":
            built.append(Quot(built[rec["num"]], built[rec["den"]]))
        else:
            raise ValueError(f"unknown node op {op!r}")
    return [built[i] for i in root_ids]
