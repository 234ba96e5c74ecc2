"""Polynomials in x_1..x_N with Grassmann partners theta_1..theta_N.

A term is keyed by ``(exponents, thetas)`` where ``thetas`` is an increasing
tuple of 0-based variable indices, standing for theta_i1 theta_i2 ... in that
order.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Mapping

from .scalars import ONE, ZERO, Scalar

__all__ = ["NVarSuperPoly", "merge_thetas"]

Mono = tuple[tuple[int, ...], tuple[int, ...]]


def merge_thetas(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Sign and sorted support of theta_a * theta_b; sign 0 when they overlap."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    sa = set(a)
    if sa.intersection(b):
        return 0, ()
    inversions = 0
    for x in a:
        for y in b:
            if x > y:
                inversions += 1
    return (-1 if inversions % 2 else 1), tuple(sorted(a + b))


class NVarSuperPoly:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Mono, Scalar] | None = None):
        self.n = n
        self.terms: dict[Mono, Scalar] = {}
        if terms:
            for key, val in terms.items():
                val = Scalar.of(val)
                if val:
                    self.terms[key] = val

    @staticmethod
    def _raw(n: int, terms: dict[Mono, Scalar]) -> "NVarSuperPoly":
        obj = NVarSuperPoly(n)
        obj.terms = terms
        return obj

    # constructors -----------------------------------------------------
    @staticmethod
    def constant(n: int, value=1) -> "NVarSuperPoly":
        return NVarSuperPoly(n, {((0,) * n, ()): Scalar.of(value)})

    @staticmethod
    def x(n: int, i: int, power: int = 1) -> "NVarSuperPoly":
        exps = [0] * n
        exps[i] = power
        return NVarSuperPoly(n, {(tuple(exps), ()): ONE})

    @staticmethod
    def theta(n: int, i: int) -> "NVarSuperPoly":
        return NVarSuperPoly(n, {((0,) * n, (i,)): ONE})

    # linear structure -------------------------------------------------
    def __iter__(self) -> Iterator[tuple[Mono, Scalar]]:
        return iter(self.terms.items())

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "NVarSuperPoly") -> "NVarSuperPoly":
        out = dict(self.terms)
        for key, val in other.terms.items():
            new = out.get(key, ZERO) + val
            if new:
                out[key] = new
            else:
                out.pop(key, None)
        return NVarSuperPoly._raw(self.n, out)

    def __neg__(self) -> "NVarSuperPoly":
        return NVarSuperPoly._raw(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "NVarSuperPoly") -> "NVarSuperPoly":
        return self + (-other)

    def scale(self, s) -> "NVarSuperPoly":
        s = Scalar.of(s)
        if not s:
            return NVarSuperPoly(self.n)
        return NVarSuperPoly._raw(self.n, {k: v * s for k, v in self.terms.items()})

    def __mul__(self, other) -> "NVarSuperPoly":
        if not isinstance(other, NVarSuperPoly):
            return self.scale(other)
        out: dict[Mono, Scalar] = {}
        for (ea, ta), va in self.terms.items():
            for (eb, tb), vb in other.terms.items():
                sign, th = merge_thetas(ta, tb)
                if not sign:
                    continue
                key = (tuple(x + y for x, y in zip(ea, eb)), th)
                val = va * vb
                if sign < 0:
                    val = -val
                new = out.get(key, ZERO) + val
                if new:
                    out[key] = new
                else:
                    out.pop(key, None)
        return NVarSuperPoly._raw(self.n, out)

    def __rmul__(self, other) -> "NVarSuperPoly":
        return self.scale(other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NVarSuperPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def coefficient(self, exps: Iterable[int], thetas: Iterable[int] = ()) -> Scalar:
        return self.terms.get((tuple(exps), tuple(thetas)), ZERO)

    def map_terms(self, fn: Callable[[Mono, Scalar], Iterable[tuple[Mono, Scalar]]]) -> "NVarSuperPoly":
        out: dict[Mono, Scalar] = {}
        for key, val in self.terms.items():
            for nkey, nval in fn(key, val):
                new = out.get(nkey, ZERO) + nval
                if new:
                    out[nkey] = new
                else:
                    out.pop(nkey, None)
        return NVarSuperPoly._raw(self.n, out)

    def map_coefficients(self, fn: Callable[[Scalar], Scalar]) -> "NVarSuperPoly":
        return NVarSuperPoly(self.n, {k: fn(v) for k, v in self.terms.items()})

    # structure --------------------------------------------------------
    def sector(self, thetas: tuple[int, ...]) -> "NVarSuperPoly":
        """The theta_I component (projector theta_I rho_I)."""
        return NVarSuperPoly._raw(self.n, {k: v for k, v in self.terms.items() if k[1] == thetas})

    def sectors(self) -> set[tuple[int, ...]]:
        return {k[1] for k in self.terms}

    def permute(self, perm: tuple[int, ...]) -> "NVarSuperPoly":
        """Simultaneous substitution x_i -> x_perm[i], theta_i -> theta_perm[i]."""
        out: dict[Mono, Scalar] = {}
        for (exps, ths), val in self.terms.items():
            new_exps = [0] * self.n
            for i, e in enumerate(exps):
                new_exps[perm[i]] = e
            image = [perm[i] for i in ths]
            sign = 1
            for a in range(len(image)):
                for b in range(a + 1, len(image)):
                    if image[a] > image[b]:
                        sign = -sign
            key = (tuple(new_exps), tuple(sorted(image)))
            out[key] = out.get(key, ZERO) + (val if sign > 0 else -val)
        return NVarSuperPoly(self.n, out)

    def is_symmetric(self) -> bool:
        n = self.n
        for i in range(n - 1):
            perm = list(range(n))
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
            if self.permute(tuple(perm)) != self:
                return False
        return True

    def __repr__(self) -> str:
        return f"NVarSuperPoly(n={self.n}, terms={len(self.terms)})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (exps, ths), val in sorted(self.terms.items()):
            mono = [f"theta_{i + 1}" for i in ths]
            mono += [f"x_{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e]
            parts.append(f"({val})*" + "*".join(mono) if mono else f"({val})")
        return " + ".join(parts)
