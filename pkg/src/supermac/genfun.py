"""Operators read off from exponential generating functions.

    sum_k c_k z^k        = exp( sum_r (1 - t^r)/r p_r z^r )
    sum_k ctilde_k z^-k  = exp( sum_n (q^-n - 1) d/dp_n z^-n )

``c_check`` and ``ctilde_check`` use (q, t) -> (1/q, 1/t) inside the
exponents.  The coefficients are produced by the recursion
k c_k = sum_r r a_r x_r c_{k-r} for exp(sum a_r x_r z^r).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable

from .scalars import ONE, ZERO, Scalar, q, qt_integer, t
from .superpartitions import SuperPartition
from .superpoly import GradedOperator, SuperPolynomial, basis_key

__all__ = [
    "BosonicPoly",
    "exp_coefficients",
    "c_poly",
    "ctilde_poly",
    "c",
    "ctilde",
    "c_check",
    "ctilde_check",
    "C",
    "Ctilde",
    "b",
    "multiplication_operator",
    "differential_operator",
]

# partition (weakly decreasing tuple) -> coefficient
BosonicPoly = dict[tuple[int, ...], Scalar]


def exp_coefficients(weight: Callable[[int], Scalar], kmax: int) -> list[BosonicPoly]:
    """Coefficients of exp(sum_r weight(r) x_r z^r) up to z^kmax."""
    coeffs: list[BosonicPoly] = [{(): ONE}]
    for k in range(1, kmax + 1):
        acc: BosonicPoly = {}
        for r in range(1, k + 1):
            w = weight(r) * r
            for mu, val in coeffs[k - r].items():
                nu = tuple(sorted(mu + (r,), reverse=True))
                new = acc.get(nu, ZERO) + w * val
                if new:
                    acc[nu] = new
                else:
                    acc.pop(nu, None)
        inv_k = Scalar.of(Fraction(1, k))
        coeffs.append({mu: val * inv_k for mu, val in acc.items()})
    return coeffs


class _Series:
    """Lazily extended list of generating-function coefficients."""

    def __init__(self, weight: Callable[[int], Scalar]):
        self.weight = weight
        self.coeffs: list[BosonicPoly] = [{(): ONE}]

    def __getitem__(self, k: int) -> BosonicPoly:
        if k >= len(self.coeffs):
            self.coeffs = exp_coefficients(self.weight, max(k, 2 * len(self.coeffs)))
        return self.coeffs[k]


_C = _Series(lambda r: (1 - t**r) / r)
_CT = _Series(lambda r: q ** (-r) - 1)
_C_CHECK = _Series(lambda r: (1 - t ** (-r)) / r)
_CT_CHECK = _Series(lambda r: q**r - 1)


def c_poly(k: int) -> SuperPolynomial:
    """c_k[p] as an element of the bosonic subspace."""
    return SuperPolynomial({basis_key((), mu): v for mu, v in _C[k].items()})


def ctilde_poly(k: int) -> BosonicPoly:
    """ctilde_k as a polynomial in the commuting symbols d/dp_r."""
    return dict(_CT[k])


def multiplication_operator(poly: BosonicPoly, degree: int, label: str) -> GradedOperator:
    def rule(key: SuperPartition) -> SuperPolynomial:
        ferm, bos = key.fermions, key.bosons
        return SuperPolynomial._raw({basis_key(ferm, bos + mu): v for mu, v in poly.items()})

    return GradedOperator(degree, rule, label=label)


def _apply_derivatives(mu: tuple[int, ...], bos: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """prod_r d/dp_r^{m_r(mu)} p_bos = factor * p_rest."""
    rest = list(bos)
    factor = 1
    for r in set(mu):
        need = mu.count(r)
        have = rest.count(r)
        if need > have:
            return 0, ()
        factor *= factorial(have) // factorial(have - need)
        for _ in range(need):
            rest.remove(r)
    return factor, tuple(rest)


def differential_operator(poly: BosonicPoly, degree: int, label: str) -> GradedOperator:
    def rule(key: SuperPartition) -> SuperPolynomial:
        ferm, bos = key.fermions, key.bosons
        out: dict[SuperPartition, Scalar] = {}
        for mu, v in poly.items():
            factor, rest = _apply_derivatives(mu, bos)
            if factor:
                k2 = basis_key(ferm, rest)
                out[k2] = out.get(k2, ZERO) + v * factor
        return SuperPolynomial({k: v for k, v in out.items()})

    return GradedOperator(degree, rule, label=label)


@lru_cache(maxsize=None)
def c(k: int) -> GradedOperator:
    if k < 0:
        raise ValueError("c(k) needs k >= 0")
    return multiplication_operator(_C[k], k, f"c_{k}")


@lru_cache(maxsize=None)
def ctilde(k: int) -> GradedOperator:
    if k < 0:
        raise ValueError("ctilde(k) needs k >= 0")
    return differential_operator(_CT[k], -k, f"ct_{k}")


@lru_cache(maxsize=None)
def c_check(k: int) -> GradedOperator:
    if k < 0:
        raise ValueError("c_check(k) needs k >= 0")
    return multiplication_operator(_C_CHECK[k], k, f"cv_{k}")


@lru_cache(maxsize=None)
def ctilde_check(k: int) -> GradedOperator:
    if k < 0:
        raise ValueError("ctilde_check(k) needs k >= 0")
    return differential_operator(_CT_CHECK[k], -k, f"ctv_{k}")


@lru_cache(maxsize=None)
def C(ell: int) -> GradedOperator:
    """sum_{n >= 0} c_check(n + ell) ctilde_check(n); terms with n + ell < 0 vanish."""

    def rule(key: SuperPartition) -> SuperPolynomial:
        base = SuperPolynomial._raw({key: ONE})
        total = SuperPolynomial()
        # ctilde_check(n) kills the input once n exceeds its bosonic level
        for n in range(max(0, -ell), sum(key.bosons) + 1):
            total = total + c_check(n + ell)(ctilde_check(n)(base))
        return total

    return GradedOperator(ell, rule, label=f"C_{ell}")


@lru_cache(maxsize=None)
def Ctilde(k: int, ell: int) -> GradedOperator:
    """The commutator [ctilde_k, c_ell] in normal-ordered form."""
    if k < 1 or ell < 1:
        raise ValueError("Ctilde(k, l) needs k, l >= 1")
    pref = (1 - t) * (1 / q - 1)
    terms = []
    for n in range(max(0, ell - k), ell):
        coef = pref * qt_integer(ell - n, 1 / q, t)
        terms.append((coef, c(n), ctilde(k - ell + n)))

    def rule(key: SuperPartition) -> SuperPolynomial:
        base = SuperPolynomial._raw({key: ONE})
        total = SuperPolynomial()
        for coef, cn, ctm in terms:
            total = total.add_scaled(cn(ctm(base)), coef)
        return total

    return GradedOperator(ell - k, rule, label=f"Ct_{k},{ell}")


def b(k: int) -> Scalar:
    """t^(1-k) [[k]]_(q,t) = 1 + q/t + ... + (q/t)^(k-1)."""
    if k < 1:
        raise ValueError("b(k) needs k >= 1")
    return t ** (1 - k) * qt_integer(k, q, t)
