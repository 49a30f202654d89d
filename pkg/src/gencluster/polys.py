"""Sparse multivariate polynomials over the rationals.

A :class:`SparsePolynomial` stores an ordered tuple of variable keys and a
dict from exponent tuples to nonzero rational coefficients.  Canonical term
order is graded lexicographic over the variable tuple; it is used for
leading terms in exact division.  These polynomials are the symbolic backend
for small-size certifications (regularity of mutated variables, certified
identity checks); evaluation remains the workhorse at larger sizes.
"""

from __future__ import annotations

from .rationals import Q, ZERO, ONE


class SparsePolynomial:
    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        self.terms = {}
        if terms:
            for exps, coeff in terms.items():
                c = Q(coeff)
                if c:
                    self.terms[tuple(exps)] = c

    # ------------------------------------------------------------------
    # constructors
    @classmethod
    def zero(cls, variables=()) -> "SparsePolynomial":
        return cls(variables)

    @classmethod
    def constant(cls, value, variables=()) -> "SparsePolynomial":
        variables = tuple(variables)
        c = Q(value)
        if not c:
            return cls(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def variable(cls, key, variables=None) -> "SparsePolynomial":
        if variables is None:
            variables = (key,)
        variables = tuple(variables)
        exps = [0] * len(variables)
        exps[variables.index(key)] = 1
        return cls(variables, {tuple(exps): ONE})

    # ------------------------------------------------------------------
    # bookkeeping
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if self.is_zero():
            return ZERO
        [(exps, c)] = list(self.terms.items())
        if any(exps):
            raise ValueError("polynomial is not constant")
        return c

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def num_terms(self) -> int:
        return len(self.terms)

    def align(self, other: "SparsePolynomial"):
        """Rewrite both polynomials over the union of their variables."""
        if self.variables == other.variables:
            return self, other
        merged = list(self.variables)
        seen = set(merged)
        for v in other.variables:
            if v not in seen:
                merged.append(v)
                seen.add(v)
        merged = tuple(merged)
        return self._embed(merged), other._embed(merged)

    def _embed(self, variables) -> "SparsePolynomial":
        if variables == self.variables:
            return self
        pos = [variables.index(v) for v in self.variables]
        n = len(variables)
        terms = {}
        for exps, c in self.terms.items():
            out = [0] * n
            for p, e in zip(pos, exps):
                out[p] = e
            terms[tuple(out)] = c
        return SparsePolynomial(variables, terms)

    # ------------------------------------------------------------------
    # arithmetic
    def __add__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        a, b = self.align(other)
        terms = dict(a.terms)
        for exps, c in b.terms.items():
            s = terms.get(exps, ZERO) + c
            if s:
                terms[exps] = s
            elif exps in terms:
                del terms[exps]
        out = SparsePolynomial(a.variables)
        out.terms = terms
        return out

    def __sub__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        return self + (-other)

    def __neg__(self) -> "SparsePolynomial":
        out = SparsePolynomial(self.variables)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __mul__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        a, b = self.align(other)
        terms = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = terms.get(e, ZERO) + ca * cb
                if s:
                    terms[e] = s
                elif e in terms:
                    del terms[e]
        out = SparsePolynomial(a.variables)
        out.terms = terms
        return out

    def scale(self, c) -> "SparsePolynomial":
        c = Q(c)
        out = SparsePolynomial(self.variables)
        if c:
            out.terms = {e: v * c for e, v in self.terms.items()}
        return out

    def __pow__(self, exponent: int) -> "SparsePolynomial":
        if exponent < 0:
            raise ValueError("negative power of a polynomial")
        result = SparsePolynomial.constant(1, self.variables)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        a, b = self.align(other)
        return a.terms == b.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # ------------------------------------------------------------------
    # calculus and evaluation
    def derivative(self, key) -> "SparsePolynomial":
        idx = self.variables.index(key)
        terms = {}
        for exps, c in self.terms.items():
            e = exps[idx]
            if e:
                new = list(exps)
                new[idx] = e - 1
                new = tuple(new)
                s = terms.get(new, ZERO) + c * e
                if s:
                    terms[new] = s
                elif new in terms:
                    del terms[new]
        out = SparsePolynomial(self.variables)
        out.terms = terms
        return out

    def evaluate(self, assignment):
        """Evaluate at a dict mapping variable keys to rationals."""
        total = ZERO
        vals = [Q(assignment[v]) for v in self.variables]
        for exps, c in self.terms.items():
            term = c
            for v, e in zip(vals, exps):
                if e:
                    term *= v**e
            total += term
        return total

    # ------------------------------------------------------------------
    # term order and division
    def leading_term(self):
        """(exponent tuple, coefficient) maximal in graded lex order."""
        if self.is_zero():
            raise ValueError("zero polynomial has no leading term")
        lead = max(self.terms, key=lambda e: (sum(e), e))
        return lead, self.terms[lead]

    def monomial_content(self):
        """Componentwise-min exponent vector over all terms."""
        if self.is_zero():
            return (0,) * len(self.variables)
        mins = None
        for exps in self.terms:
            if mins is None:
                mins = list(exps)
            else:
                mins = [min(a, b) for a, b in zip(mins, exps)]
        return tuple(mins)

    def divide_monomial(self, exps) -> "SparsePolynomial":
        out = SparsePolynomial(self.variables)
        terms = {}
        for e, c in self.terms.items():
            new = tuple(a - b for a, b in zip(e, exps))
            if any(x < 0 for x in new):
                raise ValueError("monomial does not divide every term")
            terms[new] = c
        out.terms = terms
        return out


def exact_divide(f: SparsePolynomial, g: SparsePolynomial):
    """Return q with ``f == g * q`` or None when the division is not exact.

    Single-divisor multivariate division: repeatedly cancel the graded-lex
    leading term.  For an exact multiple this terminates with remainder zero;
    the first leading term not divisible by ``lt(g)`` certifies failure.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    f, g = f.align(g)
    if f.is_zero():
        return SparsePolynomial.zero(f.variables)
    ge, gc = g.leading_term()
    quotient = SparsePolynomial.zero(f.variables)
    rem = f
    while not rem.is_zero():
        re, rc = rem.leading_term()
        qe = tuple(a - b for a, b in zip(re, ge))
        if any(x < 0 for x in qe):
            return None
        t = SparsePolynomial(f.variables, {qe: rc / gc})
        quotient = quotient + t
        rem = rem - t * g
    return quotient


def det_poly(rows) -> SparsePolynomial:
    """Determinant of a square SparsePolynomial matrix.

    Division-free expansion by dynamic programming over column subsets,
    which beats cofactor recursion on the sparse staircase matrices this
    package produces.  Intended for small sizes (the symbolic backend).
    """
    m = len(rows)
    if m == 0:
        return SparsePolynomial.constant(1)
    if any(len(r) != m for r in rows):
        raise ValueError("matrix is not square")
    variables = ()
    aligned = []
    base = SparsePolynomial.constant(1)
    for row in rows:
        arow = []
        for p in row:
            base, p = base.align(p)
            arow.append(p)
        aligned.append(arow)
    aligned = [[p._embed(base.variables) for p in row] for row in aligned]
    variables = base.variables
    # state: dict frozenset(used columns) -> signed minor of the first |S| rows
    states = {frozenset(): SparsePolynomial.constant(1, variables)}
    for r in range(m):
        new_states = {}
        row = aligned[r]
        for used, minor in states.items():
            if minor.is_zero():
                continue
            for c in range(m):
                if c in used:
                    continue
                p = row[c]
                if p.is_zero():
                    continue
                sign = -1 if sum(1 for u in used if u > c) % 2 else 1
                contrib = minor * p if sign > 0 else -(minor * p)
                key = used | {c}
                if key in new_states:
                    new_states[key] = new_states[key] + contrib
                else:
                    new_states[key] = contrib
        states = new_states
        if not states:
            return SparsePolynomial.zero(variables)
    return states.get(frozenset(range(m)), SparsePolynomial.zero(variables))


class LaurentFrac:
    """Polynomial numerator over a monomial denominator.

    The shape that cluster dynamics preserves: dividing by a Laurent value
    whose numerator divides exactly keeps the denominator a monomial, which
    is precisely the Laurent-phenomenon bookkeeping the engine tests use.
    """

    __slots__ = ("num", "den_exps")

    def __init__(self, num: SparsePolynomial, den_exps=None):
        self.num = num
        self.den_exps = tuple(den_exps) if den_exps is not None else (0,) * len(num.variables)

    @classmethod
    def from_poly(cls, p: SparsePolynomial) -> "LaurentFrac":
        return cls(p)

    def _common(self, other: "LaurentFrac"):
        a, b = self.num.align(other.num)
        da = dict(zip(self.num.variables, self.den_exps))
        db = dict(zip(other.num.variables, other.den_exps))
        variables = a.variables
        ea = tuple(da.get(v, 0) for v in variables)
        eb = tuple(db.get(v, 0) for v in variables)
        return a, b, ea, eb, variables

    def __add__(self, other: "LaurentFrac") -> "LaurentFrac":
        a, b, ea, eb, variables = self._common(other)
        lcm = tuple(max(x, y) for x, y in zip(ea, eb))
        ma = SparsePolynomial(variables, {tuple(l - x for l, x in zip(lcm, ea)): ONE})
        mb = SparsePolynomial(variables, {tuple(l - x for l, x in zip(lcm, eb)): ONE})
        return LaurentFrac(a * ma + b * mb, lcm).normalized()

    def __mul__(self, other: "LaurentFrac") -> "LaurentFrac":
        a, b, ea, eb, _ = self._common(other)
        return LaurentFrac(a * b, tuple(x + y for x, y in zip(ea, eb))).normalized()

    def __pow__(self, e: int) -> "LaurentFrac":
        result = LaurentFrac(SparsePolynomial.constant(1, self.num.variables))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def normalized(self) -> "LaurentFrac":
        """Cancel the common monomial between numerator and denominator."""
        if self.num.is_zero():
            return LaurentFrac(self.num)
        content = self.num.monomial_content()
        cancel = tuple(min(c, d) for c, d in zip(content, self.den_exps))
        if not any(cancel):
            return self
        return LaurentFrac(
            self.num.divide_monomial(cancel),
            tuple(d - c for d, c in zip(self.den_exps, cancel)),
        )

    def divide_by(self, other: "LaurentFrac"):
        """Exact division by a Laurent value; None if the result is not Laurent."""
        a, b, ea, eb, variables = self._common(other)
        if b.is_zero():
            raise ZeroDivisionError("division by zero Laurent value")
        # self/other = a * x^eb / (x^ea * b); strip b's monomial content first
        content = b.monomial_content()
        b_red = b.divide_monomial(content)
        q = exact_divide(a, b_red)
        if q is None:
            return None
        num = q * SparsePolynomial(variables, {eb: ONE})
        den = tuple(x + y for x, y in zip(ea, content))
        return LaurentFrac(num, den).normalized()

    def is_laurent_in(self, keys) -> bool:
        """True when the denominator involves only the given variables."""
        allowed = set(keys)
        for v, e in zip(self.num.variables, self.den_exps):
            if e and v not in allowed:
                return False
        return True
