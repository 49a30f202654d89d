"""Forward-mode exact differentiation scalars.

A :class:`GradScalar` carries an exact rational value together with a sparse
gradient: a dict from coordinate keys (``("x", i, j)``, ``("y", i, j)``, or
free-variable keys) to rationals.  Keys absent from the dict have derivative
exactly zero.  Sum and product rules are applied exactly, so a GradScalar
computation is simultaneously an evaluation and a differentiation.
"""

from __future__ import annotations

from .rationals import Q, ZERO


class GradScalar:
    """Exact value plus exact sparse gradient."""

    __slots__ = ("value", "grad")

    def __init__(self, value, grad=None):
        self.value = Q(value)
        self.grad = grad if grad is not None else {}

    @classmethod
    def constant(cls, value) -> "GradScalar":
        return cls(value, {})

    @classmethod
    def variable(cls, key, value) -> "GradScalar":
        return cls(value, {key: Q(1)})

    def is_zero(self) -> bool:
        return self.value == 0 and not self.grad

    def __add__(self, other: "GradScalar") -> "GradScalar":
        g = dict(self.grad)
        for k, v in other.grad.items():
            s = g.get(k, ZERO) + v
            if s:
                g[k] = s
            elif k in g:
                del g[k]
        return GradScalar(self.value + other.value, g)

    def __sub__(self, other: "GradScalar") -> "GradScalar":
        g = dict(self.grad)
        for k, v in other.grad.items():
            s = g.get(k, ZERO) - v
            if s:
                g[k] = s
            elif k in g:
                del g[k]
        return GradScalar(self.value - other.value, g)

    def __neg__(self) -> "GradScalar":
        return GradScalar(-self.value, {k: -v for k, v in self.grad.items()})

    def __mul__(self, other: "GradScalar") -> "GradScalar":
        # grad(fg) = f grad(g) + g grad(f), applied sparsely
        a, b = self.value, other.value
        g = {}
        if a:
            for k, v in other.grad.items():
                g[k] = a * v
        if b:
            for k, v in self.grad.items():
                s = g.get(k, ZERO) + b * v
                if s:
                    g[k] = s
                elif k in g:
                    del g[k]
        return GradScalar(a * b, g)

    def scale(self, c) -> "GradScalar":
        c = Q(c)
        if not c:
            return GradScalar(0, {})
        return GradScalar(self.value * c, {k: v * c for k, v in self.grad.items()})

    def __truediv__(self, other: "GradScalar") -> "GradScalar":
        if other.value == 0:
            raise ZeroDivisionError("GradScalar division by zero-valued scalar")
        w = other.value
        val = self.value / w
        # d(f/g) = (g df - f dg) / g^2
        g = {}
        for k, v in self.grad.items():
            g[k] = v / w
        coeff = val / w
        if coeff:
            for k, v in other.grad.items():
                s = g.get(k, ZERO) - coeff * v
                if s:
                    g[k] = s
                elif k in g:
                    del g[k]
        return GradScalar(val, g)

    def __pow__(self, exponent: int) -> "GradScalar":
        if exponent < 0:
            raise ValueError("negative powers not supported on GradScalar")
        result = GradScalar.constant(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"GradScalar({self.value}, {self.grad})"
