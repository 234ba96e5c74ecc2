"""The graded space spanned by p_Lambda and operators acting on it.

The basis element attached to a super partition is

    p_Lambda = pi_{a_1} pi_{a_2} ... pi_{a_m} p_{b_1} p_{b_2} ...

with ``a_1 > a_2 > ...`` the fermionic indices (``a = Lambda_i + 1/2`` for
the odd rows) and ``b`` the integer rows.  Operators are stored lazily as a
rule on basis elements plus a per-operator cache of images.
"""

from __future__ import annotations

import threading
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, Optional

from .nvar import NVarSuperPoly, merge_thetas
from .scalars import ONE, ZERO, Scalar, invert_qt
from .superpartitions import SuperPartition, enumerate_level, enumerate_up_to, validate

__all__ = [
    "SuperPolynomial",
    "GradedOperator",
    "WindowError",
    "basis_product",
    "identity",
    "zero_operator",
    "mul_p",
    "mul_pi",
    "d_p",
    "d_pi",
    "mul_poly",
    "fermion_word",
    "commutator",
    "anticommutator",
    "expand_in_variables",
    "dominant_coefficient",
    "operator_difference",
]

EMPTY = SuperPartition(())


def basis_key(fermions: Iterable[int], bosons: Iterable[int]) -> SuperPartition:
    doubled = [2 * a - 1 for a in fermions] + [2 * b for b in bosons]
    doubled.sort(reverse=True)
    return SuperPartition(tuple(doubled))


def _insert_fermion(ferm: tuple[int, ...], k: int) -> tuple[int, tuple[int, ...]]:
    """Left-multiply the word ``ferm`` by pi_k; returns (sign, word) or (0, ())."""
    pos = 0
    for a in ferm:
        if a == k:
            return 0, ()
        if a > k:
            pos += 1
    return (-1 if pos % 2 else 1), ferm[:pos] + (k,) + ferm[pos:]


def basis_product(a: SuperPartition, b: SuperPartition) -> tuple[int, SuperPartition]:
    """p_a * p_b = sign * p_c; sign 0 when a fermion repeats."""
    fa, fb = a.fermions, b.fermions
    # pi-words are decreasing; negate to reuse the increasing merge
    sign, merged = merge_thetas(tuple(-x for x in fa), tuple(-x for x in fb))
    if not sign:
        return 0, EMPTY
    # p's of a sit to the right of fb; they commute with everything
    ferm = tuple(-x for x in merged)
    return sign, basis_key(ferm, a.bosons + b.bosons)


class SuperPolynomial:
    """Sparse combination of basis elements with Scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[SuperPartition, object]] = None):
        self.terms: dict[SuperPartition, Scalar] = {}
        if terms:
            for key, val in terms.items():
                val = Scalar.of(val)
                if val:
                    self.terms[key] = val

    @staticmethod
    def _raw(terms: dict[SuperPartition, Scalar]) -> "SuperPolynomial":
        obj = SuperPolynomial.__new__(SuperPolynomial)
        obj.terms = terms
        return obj

    # constructors -----------------------------------------------------
    @staticmethod
    def basis(key: SuperPartition, coeff=1) -> "SuperPolynomial":
        return SuperPolynomial({key: coeff})

    @staticmethod
    def one() -> "SuperPolynomial":
        return SuperPolynomial({EMPTY: ONE})

    @staticmethod
    def p(k: int) -> "SuperPolynomial":
        return SuperPolynomial({SuperPartition((2 * k,)): ONE})

    @staticmethod
    def pi(k: int) -> "SuperPolynomial":
        return SuperPolynomial({SuperPartition((2 * k - 1,)): ONE})

    # linear structure -------------------------------------------------
    def __iter__(self) -> Iterator[tuple[SuperPartition, Scalar]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, key: SuperPartition) -> Scalar:
        return self.terms.get(key, ZERO)

    def add_scaled(self, other: "SuperPolynomial", s: Scalar) -> "SuperPolynomial":
        out = dict(self.terms)
        for key, val in other.terms.items():
            new = out.get(key, ZERO) + val * s
            if new:
                out[key] = new
            else:
                out.pop(key, None)
        return SuperPolynomial._raw(out)

    def __add__(self, other: "SuperPolynomial") -> "SuperPolynomial":
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        out = dict(self.terms)
        for key, val in other.terms.items():
            new = out.get(key, ZERO) + val
            if new:
                out[key] = new
            else:
                out.pop(key, None)
        return SuperPolynomial._raw(out)

    def __neg__(self) -> "SuperPolynomial":
        return SuperPolynomial._raw({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "SuperPolynomial") -> "SuperPolynomial":
        return self + (-other)

    def scale(self, s) -> "SuperPolynomial":
        s = Scalar.of(s)
        if not s:
            return SuperPolynomial()
        if s.is_one():
            return self
        return SuperPolynomial._raw({k: v * s for k, v in self.terms.items()})

    def __mul__(self, other) -> "SuperPolynomial":
        if isinstance(other, SuperPolynomial):
            out: dict[SuperPartition, Scalar] = {}
            for ka, va in self.terms.items():
                for kb, vb in other.terms.items():
                    sign, key = basis_product(ka, kb)
                    if not sign:
                        continue
                    val = va * vb
                    new = out.get(key, ZERO) + (val if sign > 0 else -val)
                    if new:
                        out[key] = new
                    else:
                        out.pop(key, None)
            return SuperPolynomial._raw(out)
        return self.scale(other)

    def __rmul__(self, other) -> "SuperPolynomial":
        return self.scale(other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):  # mutable-looking but treated as a value
        return hash(frozenset(self.terms.items()))

    def map_coefficients(self, fn: Callable[[Scalar], Scalar]) -> "SuperPolynomial":
        return SuperPolynomial({k: fn(v) for k, v in self.terms.items()})

    def invert_qt(self) -> "SuperPolynomial":
        return self.map_coefficients(invert_qt)

    # grading ----------------------------------------------------------
    def levels(self) -> set[Fraction]:
        return {k.level for k in self.terms}

    def component(self, level) -> "SuperPolynomial":
        level = Fraction(level)
        return SuperPolynomial._raw({k: v for k, v in self.terms.items() if k.level == level})

    def is_homogeneous(self) -> bool:
        return len(self.levels()) <= 1

    # serialization ----------------------------------------------------
    def to_json(self) -> list:
        return [
            {"partition": list(k.doubled), "coeff": v.to_json()}
            for k, v in sorted(self.terms.items(), key=lambda kv: kv[0].doubled)
        ]

    @staticmethod
    def from_json(items: list) -> "SuperPolynomial":
        out: dict[SuperPartition, Scalar] = {}
        for item in items:
            key = validate(item["partition"])
            out[key] = out.get(key, ZERO) + Scalar.from_json(item["coeff"])
        return SuperPolynomial(out)

    def __repr__(self) -> str:
        return f"SuperPolynomial({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for key, val in sorted(self.terms.items(), key=lambda kv: kv[0].doubled):
            mono = _monomial_text(key)
            sval = str(val)
            negative = sval.startswith("-") and val.den.is_one() and len(val.num) == 1
            if negative:
                sval = sval[1:]
            if mono == "1":
                body = sval
            elif sval == "1":
                body = mono
            else:
                if len(val.num) > 1 or not val.den.is_one():
                    sval = f"({sval})"
                body = f"{sval}*{mono}"
            if not out:
                out = ("-" if negative else "") + body
            else:
                out += (" - " if negative else " + ") + body
        return out


def _monomial_text(key: SuperPartition) -> str:
    bos = Counter(key.bosons)
    parts = []
    for b in sorted(bos):
        m = bos[b]
        parts.append(f"p_{b}" + (f"^{m}" if m > 1 else ""))
    parts += [f"pi_{a}" for a in key.fermions]
    return "*".join(parts) if parts else "1"


# operators ---------------------------------------------------------------

class WindowError(ValueError):
    """An operator was applied outside the level window it was built for."""


Rule = Callable[[SuperPartition], SuperPolynomial]


class GradedOperator:
    """A level-homogeneous linear map given by its action on basis elements.

    ``max_level`` bounds the inputs the operator accepts; ``None`` means every
    rule in this package is exact on any input (infinite sums are cut by the
    level of the input they act on, never by a global truncation).
    """

    def __init__(self, degree, rule: Rule, *, max_level=None, label: str = "op"):
        self.degree = Fraction(degree)
        self._rule = rule
        self.max_level = None if max_level is None else Fraction(max_level)
        self.label = label
        self._cache: dict[SuperPartition, SuperPolynomial] = {}
        self._lock = threading.Lock()

    def apply_basis(self, key: SuperPartition) -> SuperPolynomial:
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if self.max_level is not None and key.level > self.max_level:
            raise WindowError(f"{self.label} built for level <= {self.max_level}, got input {key}")
        image = self._rule(key)
        with self._lock:
            self._cache[key] = image
        return image

    def __call__(self, f: SuperPolynomial) -> SuperPolynomial:
        out: dict[SuperPartition, Scalar] = {}
        for key, val in f.terms.items():
            for k2, v2 in self.apply_basis(key).terms.items():
                new = out.get(k2, ZERO) + v2 * val
                if new:
                    out[k2] = new
                else:
                    out.pop(k2, None)
        return SuperPolynomial._raw(out)

    # algebra ----------------------------------------------------------
    def __matmul__(self, other: "GradedOperator") -> "GradedOperator":
        return GradedOperator(
            self.degree + other.degree,
            lambda key: self(other.apply_basis(key)),
            max_level=other.max_level,
            label=f"({self.label})({other.label})",
        )

    def _check_degree(self, other: "GradedOperator") -> None:
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.label} {self.degree} vs {other.label} {other.degree}")

    def __add__(self, other: "GradedOperator") -> "GradedOperator":
        self._check_degree(other)
        return GradedOperator(
            self.degree,
            lambda key: self.apply_basis(key) + other.apply_basis(key),
            max_level=_min_level(self.max_level, other.max_level),
            label=f"{self.label} + {other.label}",
        )

    def __sub__(self, other: "GradedOperator") -> "GradedOperator":
        self._check_degree(other)
        return GradedOperator(
            self.degree,
            lambda key: self.apply_basis(key) - other.apply_basis(key),
            max_level=_min_level(self.max_level, other.max_level),
            label=f"{self.label} - {other.label}",
        )

    def __neg__(self) -> "GradedOperator":
        return self.scaled(-ONE)

    def scaled(self, s) -> "GradedOperator":
        s = Scalar.of(s)
        return GradedOperator(
            self.degree,
            lambda key: self.apply_basis(key).scale(s),
            max_level=self.max_level,
            label=f"[{s}]{self.label}",
        )

    def __mul__(self, s) -> "GradedOperator":
        return self.scaled(s)

    __rmul__ = __mul__

    def restricted(self, max_level) -> "GradedOperator":
        return GradedOperator(self.degree, self.apply_basis, max_level=max_level, label=self.label)

    def map_coefficients(self, fn: Callable[[Scalar], Scalar]) -> "GradedOperator":
        """Apply ``fn`` (for example invert_qt) to every matrix entry."""
        return GradedOperator(
            self.degree,
            lambda key: self.apply_basis(key).map_coefficients(fn),
            max_level=self.max_level,
            label=f"{self.label}'",
        )

    # matrices ---------------------------------------------------------
    def matrix(self, level) -> tuple[list[SuperPartition], list[SuperPartition], list[list[Scalar]]]:
        """Dense block from level ``level`` to level ``level + degree``."""
        level = Fraction(level)
        cols = enumerate_level(level)
        target = level + self.degree
        rows = enumerate_level(target) if target >= 0 else []
        index = {k: i for i, k in enumerate(rows)}
        mat = [[ZERO] * len(cols) for _ in rows]
        for j, key in enumerate(cols):
            for k2, v in self.apply_basis(key).terms.items():
                if k2 not in index:
                    raise ValueError(f"{self.label} is not homogeneous: {key} -> {k2}")
                mat[index[k2]][j] = v
        return rows, cols, mat

    def __repr__(self) -> str:
        return f"GradedOperator({self.label}, degree={self.degree})"


def _min_level(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def operator_difference(a: GradedOperator, b: GradedOperator, max_level) -> list[tuple[SuperPartition, SuperPolynomial]]:
    """Basis inputs of level <= max_level on which a and b differ, with a - b."""
    bad = []
    for key in enumerate_up_to(max_level):
        diff = a.apply_basis(key) - b.apply_basis(key)
        if not diff.is_zero():
            bad.append((key, diff))
    return bad


def commutator(a: GradedOperator, b: GradedOperator) -> GradedOperator:
    return GradedOperator(
        a.degree + b.degree,
        lambda key: a(b.apply_basis(key)) - b(a.apply_basis(key)),
        max_level=_min_level(a.max_level, b.max_level),
        label=f"[{a.label}, {b.label}]",
    )


def anticommutator(a: GradedOperator, b: GradedOperator) -> GradedOperator:
    return GradedOperator(
        a.degree + b.degree,
        lambda key: a(b.apply_basis(key)) + b(a.apply_basis(key)),
        max_level=_min_level(a.max_level, b.max_level),
        label=f"[{a.label}, {b.label}]+",
    )


def identity() -> GradedOperator:
    return GradedOperator(0, lambda key: SuperPolynomial._raw({key: ONE}), label="1")


def zero_operator(degree=0) -> GradedOperator:
    return GradedOperator(degree, lambda key: SuperPolynomial(), label="0")


# primitives ----------------------------------------------------------------

def _mul_pi_rule(k: int) -> Rule:
    def rule(key: SuperPartition) -> SuperPolynomial:
        sign, ferm = _insert_fermion(key.fermions, k)
        if not sign:
            return SuperPolynomial()
        return SuperPolynomial._raw({basis_key(ferm, key.bosons): ONE if sign > 0 else -ONE})

    return rule


def _d_pi_rule(k: int) -> Rule:
    def rule(key: SuperPartition) -> SuperPolynomial:
        ferm = key.fermions
        if k not in ferm:
            return SuperPolynomial()
        i = ferm.index(k)
        rest = ferm[:i] + ferm[i + 1 :]
        return SuperPolynomial._raw({basis_key(rest, key.bosons): -ONE if i % 2 else ONE})

    return rule


def _mul_p_rule(k: int) -> Rule:
    def rule(key: SuperPartition) -> SuperPolynomial:
        return SuperPolynomial._raw({basis_key(key.fermions, key.bosons + (k,)): ONE})

    return rule


def _d_p_rule(k: int) -> Rule:
    def rule(key: SuperPartition) -> SuperPolynomial:
        bos = list(key.bosons)
        m = bos.count(k)
        if not m:
            return SuperPolynomial()
        bos.remove(k)
        return SuperPolynomial._raw({basis_key(key.fermions, bos): Scalar.of(m)})

    return rule


@lru_cache(maxsize=None)
def mul_pi(k: int) -> GradedOperator:
    """Left multiplication by pi_k."""
    if k < 1:
        raise ValueError("pi index must be >= 1")
    return GradedOperator(Fraction(2 * k - 1, 2), _mul_pi_rule(k), label=f"pi_{k}")


@lru_cache(maxsize=None)
def d_pi(k: int) -> GradedOperator:
    """Left Grassmann derivative d/d pi_k."""
    if k < 1:
        raise ValueError("pi index must be >= 1")
    return GradedOperator(-Fraction(2 * k - 1, 2), _d_pi_rule(k), label=f"d/dpi_{k}")


@lru_cache(maxsize=None)
def mul_p(k: int) -> GradedOperator:
    if k < 1:
        raise ValueError("p index must be >= 1")
    return GradedOperator(k, _mul_p_rule(k), label=f"p_{k}")


@lru_cache(maxsize=None)
def d_p(k: int) -> GradedOperator:
    if k < 1:
        raise ValueError("p index must be >= 1")
    return GradedOperator(-k, _d_p_rule(k), label=f"d/dp_{k}")


def mul_poly(f: SuperPolynomial, label: str = "mult") -> GradedOperator:
    """Left multiplication by a homogeneous super polynomial."""
    levels = f.levels() or {Fraction(0)}
    if len(levels) != 1:
        raise ValueError("mul_poly needs a homogeneous polynomial")
    (deg,) = levels
    return GradedOperator(deg, lambda key: f * SuperPolynomial._raw({key: ONE}), label=label)


def fermion_word(creators: tuple[int, ...], annihilators: tuple[int, ...]) -> GradedOperator:
    """pi_{c1} ... pi_{cr} d/dpi_{a1} ... d/dpi_{as} (derivatives act first)."""
    deg = sum(Fraction(2 * c - 1, 2) for c in creators) - sum(Fraction(2 * a - 1, 2) for a in annihilators)

    def rule(key: SuperPartition) -> SuperPolynomial:
        sign, ferm = apply_fermion_word(creators, annihilators, key.fermions)
        if not sign:
            return SuperPolynomial()
        return SuperPolynomial._raw({basis_key(ferm, key.bosons): ONE if sign > 0 else -ONE})

    return GradedOperator(deg, rule, label=f"pi{list(creators)}d{list(annihilators)}")


def apply_fermion_word(creators, annihilators, ferm: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Act with a normal-ordered fermion word on a decreasing pi-word."""
    sign = 1
    for a in reversed(annihilators):
        if a not in ferm:
            return 0, ()
        i = ferm.index(a)
        if i % 2:
            sign = -sign
        ferm = ferm[:i] + ferm[i + 1 :]
    for c in reversed(creators):
        s, ferm = _insert_fermion(ferm, c)
        if not s:
            return 0, ()
        sign *= s
    return sign, ferm


# finite-variable expansion ----------------------------------------------------

@lru_cache(maxsize=None)
def _basis_expansion(key: SuperPartition, n: int) -> dict:
    """Integer expansion of p_key in n variables: {(exps, thetas): int}."""
    terms: dict = {((0,) * n, ()): 1}
    for a in key.fermions:  # left to right: pi_{a1} pi_{a2} ...
        new: dict = {}
        for (exps, ths), c in terms.items():
            for i in range(n):
                # (theta_i x_i^(a-1)) placed to the right of the existing word
                sign, th = merge_thetas(ths, (i,))
                if not sign:
                    continue
                e = list(exps)
                e[i] += a - 1
                k = (tuple(e), th)
                new[k] = new.get(k, 0) + sign * c
        terms = {k: v for k, v in new.items() if v}
    for b in key.bosons:
        new = {}
        for (exps, ths), c in terms.items():
            for i in range(n):
                e = list(exps)
                e[i] += b
                k = (tuple(e), ths)
                new[k] = new.get(k, 0) + c
        terms = {k: v for k, v in new.items() if v}
    return terms


def expand_in_variables(f: SuperPolynomial, n: int) -> NVarSuperPoly:
    """Substitute p_k = sum x_i^k and pi_k = sum theta_i x_i^(k-1)."""
    if n < 1:
        raise ValueError("need at least one variable")
    out: dict = {}
    for key, val in f.terms.items():
        for mono, c in _basis_expansion(key, n).items():
            new = out.get(mono, ZERO) + val * c
            if new:
                out[mono] = new
            else:
                out.pop(mono, None)
    return NVarSuperPoly(n, out)


def _dominant_monomial(lam: SuperPartition, n: int):
    exps = [0] * n
    ths = []
    for i, d in enumerate(lam.doubled):
        exps[i] = d // 2
        if d % 2:
            ths.append(i)
    return tuple(exps), tuple(ths)


def dominant_coefficient(f: SuperPolynomial, lam: SuperPartition, n: int) -> Scalar:
    """Coefficient of prod x_i^floor(Lambda_i) prod_{odd i} theta_i in f."""
    if n < lam.length:
        raise ValueError(f"need N >= {lam.length} variables for {lam}, got {n}")
    # the target monomial only involves the first len(lam) variables, and
    # setting the others to zero does not change its coefficient
    m = max(lam.length, 1)
    target = _dominant_monomial(lam, m)
    total = ZERO
    for key, val in f.terms.items():
        c = _basis_expansion(key, m).get(target, 0)
        if c:
            total = total + val * c
    return total
