"""Finitely many variables: q-shifts, the four super charges and T_q.

Functions of x_1..x_N and theta_1..theta_N are kept as fractions whose
denominator is a product of linear forms x_i - c x_j.  Operators act on the
numerator, transform the denominator, and :meth:`NVarFraction.reduce`
cancels every linear factor that divides the numerator (exact synthetic
division).  On symmetric inputs the super charges give polynomials again.

Variable indices are 0-based internally; ``tau(i)`` etc. take 1-based i.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations
from math import ceil
from typing import Callable, Iterable

from .genfun import c_check, ctilde_check
from .linalg import solve
from .nvar import Mono, NVarSuperPoly
from .scalars import ONE, ZERO, Scalar, q, t
from .superpartitions import SuperPartition, enumerate_level
from .superpoly import GradedOperator, SuperPolynomial, _basis_expansion, d_pi, expand_in_variables, mul_pi

__all__ = [
    "NVarFraction",
    "NVarOperator",
    "NonPolynomialError",
    "tau",
    "theta_mul",
    "d_theta",
    "A",
    "xi",
    "Q",
    "Tq",
    "D1",
    "tq_one_fermion",
    "q3_one_fermion",
    "rm_hamiltonian",
    "rm_generating",
    "powersum_map",
    "level_of",
]

# x_i - c x_j with i < j
Form = tuple[int, int, Scalar]


class NonPolynomialError(ArithmeticError):
    """A result that should be polynomial kept a denominator."""


def _canonical(a: Scalar, i: int, b: Scalar, j: int) -> tuple[Scalar, Form]:
    """a x_i - b x_j = scalar * (x_lo - c x_hi)."""
    if i == j:
        raise ValueError("linear form needs two different variables")
    if i < j:
        return a, (i, j, b / a)
    return -b, (j, i, a / b)


def _form_poly(n: int, form: Form) -> NVarSuperPoly:
    i, j, c = form
    return NVarSuperPoly.x(n, i) - NVarSuperPoly.x(n, j).scale(c)


def _times_x(terms: dict, j: int, s: Scalar) -> dict:
    out = {}
    for (exps, ths), v in terms.items():
        e = list(exps)
        e[j] += 1
        out[(tuple(e), ths)] = v * s
    return out


def _add_into(acc: dict, other: dict) -> None:
    for k, v in other.items():
        new = acc.get(k, ZERO) + v
        if new:
            acc[k] = new
        else:
            acc.pop(k, None)


def _divide(p: NVarSuperPoly, form: Form) -> NVarSuperPoly | None:
    """p / (x_i - c x_j) when exact, else None (synthetic division in x_i)."""
    i, j, c = form
    if p.is_zero():
        return p
    by_deg: dict[int, dict] = {}
    for (exps, ths), v in p.terms.items():
        e = list(exps)
        k = e[i]
        e[i] = 0
        by_deg.setdefault(k, {})[(tuple(e), ths)] = v
    top = max(by_deg)
    quot: dict[int, dict] = {}
    carry: dict = {}
    # q_{k-1} = p_k + c x_j q_k, from the top down; remainder p_0 + c x_j q_0
    for k in range(top, 0, -1):
        cur = dict(by_deg.get(k, {}))
        _add_into(cur, _times_x(carry, j, c))
        quot[k - 1] = cur
        carry = cur
    rem = dict(by_deg.get(0, {}))
    _add_into(rem, _times_x(carry, j, c))
    if rem:
        return None
    out = {}
    for k, terms in quot.items():
        for (exps, ths), v in terms.items():
            e = list(exps)
            e[i] = k
            out[(tuple(e), ths)] = v
    return NVarSuperPoly(p.n, out)


class NVarFraction:
    """numerator / prod of linear forms (the denominator carries no thetas)."""

    __slots__ = ("n", "num", "den")

    def __init__(self, num: NVarSuperPoly, den: Counter | None = None):
        self.n = num.n
        self.num = num
        self.den: Counter = Counter({k: v for k, v in (den or {}).items() if v > 0})

    @staticmethod
    def of(value) -> "NVarFraction":
        if isinstance(value, NVarFraction):
            return value
        if isinstance(value, NVarSuperPoly):
            return NVarFraction(value)
        raise TypeError(f"cannot make a fraction from {type(value).__name__}")

    def _over(self, den: Counter) -> NVarSuperPoly:
        """Numerator rewritten over the larger denominator ``den``."""
        num = self.num
        for form, k in den.items():
            for _ in range(k - self.den.get(form, 0)):
                num = num * _form_poly(self.n, form)
        return num

    def __add__(self, other: "NVarFraction") -> "NVarFraction":
        other = NVarFraction.of(other)
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        den = self.den | other.den
        return NVarFraction(self._over(den) + other._over(den), den)

    def __neg__(self) -> "NVarFraction":
        return NVarFraction(-self.num, self.den)

    def __sub__(self, other: "NVarFraction") -> "NVarFraction":
        return self + (-NVarFraction.of(other))

    def scale(self, s) -> "NVarFraction":
        return NVarFraction(self.num.scale(s), self.den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def reduce(self) -> "NVarFraction":
        num = self.num
        den = Counter(self.den)
        if num.is_zero():
            return NVarFraction(num)
        for form in list(den):
            while den[form]:
                quo = _divide(num, form)
                if quo is None:
                    break
                num = quo
                den[form] -= 1
        return NVarFraction(num, den)

    def to_polynomial(self) -> NVarSuperPoly:
        red = self.reduce()
        if +red.den:
            raise NonPolynomialError(f"denominator {dict(+red.den)} does not cancel")
        return red.num

    def sector(self, thetas: tuple[int, ...]) -> "NVarFraction":
        return NVarFraction(self.num.sector(thetas), self.den)

    def sectors(self) -> set[tuple[int, ...]]:
        return self.num.sectors()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, NVarSuperPoly):
            other = NVarFraction(other)
        if not isinstance(other, NVarFraction):
            return NotImplemented
        return (self - other).reduce().is_zero()

    def __repr__(self) -> str:
        return f"NVarFraction(n={self.n}, terms={len(self.num.terms)}, den={sum(self.den.values())})"


class NVarOperator:
    """A linear map on NVarFraction values."""

    def __init__(self, fn: Callable[[NVarFraction], NVarFraction], label: str = "op"):
        self._fn = fn
        self.label = label

    def __call__(self, f) -> NVarFraction:
        return self._fn(NVarFraction.of(f))

    def __matmul__(self, other: "NVarOperator") -> "NVarOperator":
        return NVarOperator(lambda f: self._fn(other._fn(f)), f"{self.label}*{other.label}")

    def __add__(self, other: "NVarOperator") -> "NVarOperator":
        return NVarOperator(lambda f: self._fn(f) + other._fn(f), f"{self.label}+{other.label}")

    def __sub__(self, other: "NVarOperator") -> "NVarOperator":
        return NVarOperator(lambda f: self._fn(f) - other._fn(f), f"{self.label}-{other.label}")

    def scaled(self, s) -> "NVarOperator":
        s = Scalar.of(s)
        return NVarOperator(lambda f: self._fn(f).scale(s), f"{s}*{self.label}")


def _sum(ops: Iterable[NVarOperator], label: str) -> NVarOperator:
    ops = list(ops)

    def fn(f: NVarFraction) -> NVarFraction:
        total = NVarFraction(NVarSuperPoly(f.n))
        for op in ops:
            total = total + op._fn(f).reduce()
        return total.reduce()

    return NVarOperator(fn, label)


def anticommutator(a: NVarOperator, b: NVarOperator) -> NVarOperator:
    return a @ b + b @ a


# elementary operators -------------------------------------------------------

def _shift_fraction(f: NVarFraction, factors: dict[int, Scalar]) -> NVarFraction:
    """x_i -> factors[i] * x_i."""
    num = f.num.map_terms(
        lambda key, v: [(key, v * _monomial_factor(key[0], factors))]
    )
    den: Counter = Counter()
    for (i, j, c), k in f.den.items():
        s, form = _canonical(factors.get(i, ONE), i, c * factors.get(j, ONE), j)
        num = num.scale(s ** (-k))
        den[form] += k
    return NVarFraction(num, den)


def _monomial_factor(exps: tuple[int, ...], factors: dict[int, Scalar]) -> Scalar:
    val = ONE
    for i, s in factors.items():
        if exps[i]:
            val = val * s ** exps[i]
    return val


def tau(i: int, direction: int = 1, qval: Scalar = q) -> NVarOperator:
    """x_i -> q^{+-1} x_i."""
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    factor = Scalar.of(qval) ** direction
    return NVarOperator(lambda f: _shift_fraction(f, {i - 1: factor}), f"tau_{i}^{direction}")


def theta_mul(i: int) -> NVarOperator:
    def fn(f: NVarFraction) -> NVarFraction:
        return NVarFraction(NVarSuperPoly.theta(f.n, i - 1) * f.num, f.den)

    return NVarOperator(fn, f"theta_{i}")


def d_theta(i: int) -> NVarOperator:
    """Left derivative d/dtheta_i."""
    idx = i - 1

    def move(key: Mono, v: Scalar):
        exps, ths = key
        if idx not in ths:
            return []
        pos = ths.index(idx)
        rest = ths[:pos] + ths[pos + 1 :]
        return [((exps, rest), -v if pos % 2 else v)]

    return NVarOperator(lambda f: NVarFraction(f.num.map_terms(move), f.den), f"d/dtheta_{i}")


def _multiply(f: NVarFraction, scalar: Scalar, num_forms: list[Form], den_forms: list[Form]) -> NVarFraction:
    num = f.num.scale(scalar)
    for form in num_forms:
        num = num * _form_poly(f.n, form)
    den = Counter(f.den)
    den.update(den_forms)
    return NVarFraction(num, den)


def _A_factors(n: int, i: int, tval: Scalar) -> tuple[Scalar, list[Form], list[Form]]:
    """prod_{j != i} (tval x_i - x_j) / (x_i - x_j) as scalar and forms."""
    scalar = ONE
    nums, dens = [], []
    for j in range(n):
        if j == i:
            continue
        s, form = _canonical(tval, i, ONE, j)
        scalar = scalar * s
        nums.append(form)
        s, form = _canonical(ONE, i, ONE, j)
        scalar = scalar / s
        dens.append(form)
    return scalar, nums, dens


def A(i: int, tval: Scalar = t) -> NVarOperator:
    """Multiplication by A_i(tval) = prod_{j != i} (tval x_i - x_j) / (x_i - x_j)."""
    tval = Scalar.of(tval)

    def fn(f: NVarFraction) -> NVarFraction:
        return _multiply(f, *_A_factors(f.n, i - 1, tval))

    return NVarOperator(fn, f"A_{i}")


def xi(i: int, qval: Scalar = q, tval: Scalar = t) -> NVarOperator:
    """On the theta_I sector multiply by prod_{j in I, j != i}
    (q t x_i - x_j)(x_i - x_j) / ((q x_i - x_j)(t x_i - x_j))."""
    qval, tval = Scalar.of(qval), Scalar.of(tval)
    idx = i - 1

    def fn(f: NVarFraction) -> NVarFraction:
        total = NVarFraction(NVarSuperPoly(f.n))
        for sector in f.sectors():
            scalar = ONE
            nums, dens = [], []
            for j in sector:
                if j == idx:
                    continue
                for a, target in ((qval * tval, nums), (ONE, nums), (qval, dens), (tval, dens)):
                    s, form = _canonical(a, idx, ONE, j)
                    scalar = scalar * s if target is nums else scalar / s
                    target.append(form)
            total = total + _multiply(f.sector(sector), scalar, nums, dens)
        return total

    return NVarOperator(fn, f"xi_{i}")


def Q(j: int, n: int, qval: Scalar = q, tval: Scalar = t) -> NVarOperator:
    """The super charges Q_1..Q_4 in n variables (qval, tval allow the inverted forms)."""
    qval, tval = Scalar.of(qval), Scalar.of(tval)
    idx = range(1, n + 1)
    if j == 1:
        return _sum((theta_mul(i) @ tau(i, -1, qval) for i in idx), "Q1")
    if j == 2:
        return _sum((A(i, 1 / tval) @ d_theta(i) for i in idx), "Q2")
    if j == 3:
        return _sum((A(i, tval) @ xi(i, qval, tval) @ tau(i, 1, qval) @ d_theta(i) for i in idx), "Q3")
    if j == 4:
        return _sum((theta_mul(i) for i in idx), "Q4")
    raise ValueError("j must be 1, 2, 3 or 4")


def Tq(direction: int = 1, qval: Scalar = q) -> NVarOperator:
    """T_q = sum_I tau_I theta_I rho_I: on the theta_I sector shift every x_i, i in I."""
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    factor = Scalar.of(qval) ** direction

    def fn(f: NVarFraction) -> NVarFraction:
        total = NVarFraction(NVarSuperPoly(f.n))
        for sector in f.sectors():
            total = total + _shift_fraction(f.sector(sector), {i: factor for i in sector})
        return total

    return NVarOperator(fn, f"T_q^{direction}")


def D1(n: int) -> NVarOperator:
    """D_{1,N} = t^{N-1} [Q_1, Q_2]_+."""
    return anticommutator(Q(1, n), Q(2, n)).scaled(t ** (n - 1))


# Ruijsenaars-Macdonald operators -------------------------------------------

def rm_hamiltonian(r: int, n: int) -> NVarOperator:
    """t^{r(r-1)/2} sum_{|I|=r} prod_{i in I, j not in I} (t x_i - x_j)/(x_i - x_j) prod_{i in I} tau_i."""
    if not 1 <= r <= n:
        raise ValueError("need 1 <= r <= N")
    pref = t ** (r * (r - 1) // 2)

    def fn(f: NVarFraction) -> NVarFraction:
        total = NVarFraction(NVarSuperPoly(f.n))
        for subset in combinations(range(n), r):
            shifted = _shift_fraction(f, {i: q for i in subset})
            scalar = pref
            nums, dens = [], []
            for i in subset:
                for j in range(n):
                    if j in subset:
                        continue
                    s, form = _canonical(t, i, ONE, j)
                    scalar = scalar * s
                    nums.append(form)
                    s, form = _canonical(ONE, i, ONE, j)
                    scalar = scalar / s
                    dens.append(form)
            total = total + _multiply(shifted, scalar, nums, dens)
        return total

    return NVarOperator(fn, f"H_{r}")


def rm_generating(n: int, z: Scalar) -> NVarOperator:
    """D^x(z) = sum_r (-z)^r H_r with H_0 = 1."""
    z = Scalar.of(z)
    ops = [NVarOperator(lambda f: f, "1")]
    ops += [rm_hamiltonian(r, n).scaled((-z) ** r) for r in range(1, n + 1)]
    return _sum(ops, "D^x")


# the p / pi side ------------------------------------------------------------

def tq_one_fermion() -> GradedOperator:
    """sum_{n, k} ctilde_check_k pi_{n+k} q^{n-1} d/dpi_n on one-fermion inputs."""

    def rule(key: SuperPartition) -> SuperPolynomial:
        if key.fermion_number != 1:
            raise ValueError("the one-fermion form of T_q only acts on one-fermion inputs")
        base = SuperPolynomial._raw({key: ONE})
        (n,) = key.fermions
        stripped = d_pi(n)(base)
        total = SuperPolynomial()
        for k in range(0, sum(key.bosons) + 1):
            total = total.add_scaled(mul_pi(n + k)(ctilde_check(k)(stripped)), q ** (n - 1))
        return total

    return GradedOperator(0, rule, label="T_q one-fermion")


def q3_one_fermion(n_vars: int) -> GradedOperator:
    """Q_3 on one-fermion inputs via the t-identity:

    Q_3 pi_n = q^{n-1} ( t^N/(t-1) sum_{m>=0} c_check_{n+m-1} ctilde_check_m  -  delta_{n,1}/(t-1) ).
    """
    pref = t**n_vars / (t - 1)

    def rule(key: SuperPartition) -> SuperPolynomial:
        if key.fermion_number != 1:
            raise ValueError("this form of Q_3 only acts on one-fermion inputs")
        base = SuperPolynomial._raw({key: ONE})
        (n,) = key.fermions
        stripped = d_pi(n)(base)
        total = SuperPolynomial()
        for m in range(0, sum(key.bosons) + 1):
            total = total.add_scaled(c_check(n + m - 1)(ctilde_check(m)(stripped)), pref)
        if n == 1:
            total = total.add_scaled(stripped, -1 / (t - 1))
        return total.scale(q ** (n - 1))

    return GradedOperator(Fraction(-1, 2), rule, label="Q_3 one-fermion")


def level_of(mono: Mono) -> Fraction:
    exps, ths = mono
    return sum(exps) + Fraction(len(ths), 2)


def _representative(lam: SuperPartition, n: int) -> Mono:
    exps = [0] * n
    ths = []
    for i, d in enumerate(lam.doubled):
        exps[i] = d // 2
        if d % 2:
            ths.append(i)
    return tuple(exps), tuple(ths)


def powersum_map(f, max_level=None) -> SuperPolynomial:
    """The p / pi preimage of a symmetric function of n variables.

    Each level is solved on one representative monomial per super partition;
    the answer is then expanded back and compared with the input, so a
    non-symmetric input raises ValueError.  Needs n >= ceil(level).
    """
    poly = NVarFraction.of(f).to_polynomial() if not isinstance(f, NVarSuperPoly) else f
    n = poly.n
    by_level: dict[Fraction, dict] = {}
    for mono, v in poly.terms.items():
        by_level.setdefault(level_of(mono), {})[mono] = v
    out = SuperPolynomial()
    for level, terms in sorted(by_level.items()):
        if max_level is not None and level > Fraction(max_level):
            raise ValueError(f"input has a level {level} component above {max_level}")
        if n < ceil(level):
            raise ValueError(f"N = {n} is too small to resolve level {level}; need N >= {ceil(level)}")
        labels = enumerate_level(level)
        rows = [_representative(lam, n) for lam in labels]
        cols = [[Scalar.of(_basis_expansion(key, n).get(row, 0)) for row in rows] for key in labels]
        rhs = [terms.get(row, ZERO) for row in rows]
        coeffs = solve(cols, rhs)
        part = SuperPolynomial({key: x for key, x in zip(labels, coeffs) if x})
        if expand_in_variables(part, n) != NVarSuperPoly(n, terms):
            raise ValueError(f"input is not symmetric at level {level}")
        out = out + part
    return out
