"""Super charges E_{i,n}, F_{i,n} acting on the p / pi space.

The closed forms are differential operators built from the generating
functions of :mod:`supermac.genfun`:

    E_{1,0}  = pi_1                      F_{1,1}  = d/dpi_1
    E_{2,0}  = sum_k c_k d/dpi_k         F_{2,-1} = -sum_k pi_k ctilde_k
    E_{1,-1} = u^-1 sum_k pi_k ctilde_{k-1}
    F_{1,0}  = u^-1 sum_k c_{k-1} d/dpi_k

E_{2,1}, F_{1,2} and F_{2,0} are w^0 residues of products of the bosonic
vertex operators V_B^-(w) V_B^+(w) with the auxiliary-fermion vacuum value of
the tilde fermionic vertex operators.  E_{2,1} and F_{1,2} are conjectural
and carry that flag in their labels.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import floor
from typing import Mapping, Sequence

from .clifford import CliffordWord, FermionOp, clifford_vev, exp_free
from .genfun import C, c, c_check, ctilde, ctilde_check
from .scalars import ONE, Scalar, q, sqrt_q, sqrt_t, t, u
from .superpartitions import SuperPartition
from .superpoly import (
    GradedOperator,
    SuperPolynomial,
    apply_fermion_word,
    basis_key,
    d_p,
    d_pi,
    mul_p,
    mul_pi,
)

__all__ = [
    "SUPPORTED",
    "CONJECTURAL",
    "UnsupportedChargeError",
    "ConjectureCheckError",
    "OperatorLaurent",
    "charge",
    "vertex_VB",
    "vertex_VF",
    "fermion_vev",
    "vertex_residue",
    "ansatz_charge",
    "ANSATZ_VALIDITY",
]

SUPPORTED = {
    ("E", 1, 0),
    ("E", 2, 0),
    ("F", 1, 1),
    ("F", 2, -1),
    ("E", 1, -1),
    ("F", 1, 0),
    ("E", 2, 1),
    ("F", 1, 2),
    ("F", 2, 0),
}
CONJECTURAL = {("E", 2, 1), ("F", 1, 2), ("F", 2, 0)}

# highest input level at which the low-order Pieri ansatz of each family holds
ANSATZ_VALIDITY = {
    ("E", 1): Fraction(1),
    ("F", 1): Fraction(2),
    ("E", 2): Fraction(3, 2),
    ("F", 2): Fraction(2),
}


class UnsupportedChargeError(NotImplementedError):
    pass


class ConjectureCheckError(AssertionError):
    """A conjectural charge failed one of its consistency identities."""

    def __init__(self, label: str, key: SuperPartition, difference: SuperPolynomial):
        self.label = label
        self.key = key
        self.difference = difference
        super().__init__(f"conjectural identity {label} fails on p_{key}: difference {difference}")


# closed forms ----------------------------------------------------------------

def _base(key: SuperPartition) -> SuperPolynomial:
    return SuperPolynomial._raw({key: ONE})


def _e20() -> GradedOperator:
    def rule(key: SuperPartition) -> SuperPolynomial:
        total = SuperPolynomial()
        for k in key.fermions:
            total = total + c(k)(d_pi(k).apply_basis(key))
        return total

    return GradedOperator(Fraction(1, 2), rule, label="E2,0")


def _f2m1() -> GradedOperator:
    def rule(key: SuperPartition) -> SuperPolynomial:
        total = SuperPolynomial()
        for k in range(1, sum(key.bosons) + 1):
            total = total - mul_pi(k)(ctilde(k).apply_basis(key))
        return total

    return GradedOperator(Fraction(-1, 2), rule, label="F2,-1")


def _e1m1() -> GradedOperator:
    inv_u = 1 / u

    def rule(key: SuperPartition) -> SuperPolynomial:
        total = SuperPolynomial()
        for k in range(1, sum(key.bosons) + 2):
            total = total + mul_pi(k)(ctilde(k - 1).apply_basis(key))
        return total.scale(inv_u)

    return GradedOperator(Fraction(1, 2), rule, label="E1,-1")


def _f10() -> GradedOperator:
    inv_u = 1 / u

    def rule(key: SuperPartition) -> SuperPolynomial:
        total = SuperPolynomial()
        for k in key.fermions:
            total = total + c(k - 1)(d_pi(k).apply_basis(key))
        return total.scale(inv_u)

    return GradedOperator(Fraction(-1, 2), rule, label="F1,0")


@lru_cache(maxsize=None)
def charge(i: int, side: str, mode: int) -> GradedOperator:
    """The charge E_{i,mode} or F_{i,mode} for the supported modes."""
    key = (side.upper(), int(i), int(mode))
    if key not in SUPPORTED:
        raise UnsupportedChargeError(
            f"{side}{i},{mode} has no closed or vertex form here; "
            "use ansatz_charge for the low-level Pieri ansatz"
        )
    side, i, mode = key
    if key == ("E", 1, 0):
        return mul_pi(1)
    if key == ("F", 1, 1):
        return d_pi(1)
    if key == ("E", 2, 0):
        return _e20()
    if key == ("F", 2, -1):
        return _f2m1()
    if key == ("E", 1, -1):
        return _e1m1()
    if key == ("F", 1, 0):
        return _f10()
    if key == ("E", 2, 1):
        return _e21()
    if key == ("F", 1, 2):
        return _f12()
    return _f20()


# Laurent series in w with operator coefficients --------------------------------

class OperatorLaurent:
    """Finite Laurent polynomial in w with GradedOperator coefficients.

    Exponents are stored as integers; the bosonic vertex operators only
    produce even powers.  An operator multiplying w^e shifts the level by e/2.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, GradedOperator] | None = None):
        self.coeffs: dict[int, GradedOperator] = dict(coeffs or {})

    def __add__(self, other: "OperatorLaurent") -> "OperatorLaurent":
        out = dict(self.coeffs)
        for e, op in other.coeffs.items():
            out[e] = out[e] + op if e in out else op
        return OperatorLaurent(out)

    def __mul__(self, other: "OperatorLaurent") -> "OperatorLaurent":
        out: dict[int, GradedOperator] = {}
        for ea, a in self.coeffs.items():
            for eb, b in other.coeffs.items():
                prod = a @ b
                e = ea + eb
                out[e] = out[e] + prod if e in out else prod
        return OperatorLaurent(out)

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def residue(self) -> GradedOperator:
        """Coefficient of w^0 (dw/w contour)."""
        return self.coeffs.get(0, _ZERO0)


_ZERO0 = GradedOperator(0, lambda key: SuperPolynomial(), label="0")


def vertex_VB(level) -> tuple[OperatorLaurent, OperatorLaurent]:
    """(V_B^-, V_B^+) truncated to the powers that act on a level window.

    V_B^- = sum_n c_check(n) w^{2n} and V_B^+ = sum_n ctilde_check(n) w^{-2n}.
    """
    nmax = int(floor(Fraction(level)))
    minus = OperatorLaurent({2 * n: c_check(n) for n in range(nmax + 1)})
    plus = OperatorLaurent({-2 * n: ctilde_check(n) for n in range(nmax + 1)})
    return minus, plus


def _kmin(variant: str) -> int:
    if variant == "plain":
        return 1
    if variant == "tilde":
        return 2
    raise ValueError(f"variant must be 'plain' or 'tilde', got {variant!r}")


def _vf_exponents(variant: str, kmax_minus: int, kmax_plus: int) -> tuple[CliffordWord, CliffordWord]:
    k0 = _kmin(variant)
    x = CliffordWord()
    for k in range(k0, kmax_minus + 1):
        for m in range(k - k0 + 1):
            coef = (1 - 1 / t) * t ** (k0 - k + m)
            x = x + CliffordWord({((("pi", k), ("psi", m)), 2 * k - 1): coef})
    y = CliffordWord()
    for k in range(k0, kmax_plus + 1):
        for m in range(k - k0 + 1):
            coef = (q - 1) * q ** (k - k0 - m)
            y = y + CliffordWord({((("psid", m), ("dpi", k)), 1 - 2 * k): coef})
    return x, y


def vertex_VF(variant: str, kmax_minus: int, kmax_plus: int, order: int) -> tuple[CliffordWord, CliffordWord]:
    """(V_F^-, V_F^+) or the tilde pair, with pi_k for k <= kmax and exp order <= order."""
    x, y = _vf_exponents(variant, kmax_minus, kmax_plus)
    return exp_free(x, order), exp_free(y, order)


@lru_cache(maxsize=None)
def fermion_vev(variant: str, kmax_minus: int, kmax_plus: int, pairs: int) -> FermionOp:
    """<0| V_F^-(w) V_F^+(w) |0> as normal-ordered pi / d-pi words with w-powers."""
    if pairs <= 0 or kmax_minus < _kmin(variant) or kmax_plus < _kmin(variant):
        return {((), (), 0): ONE}
    minus, plus = vertex_VF(variant, kmax_minus, kmax_plus, pairs)
    return clifford_vev(minus * plus)


# residues -------------------------------------------------------------------

# one summand of an integrand: coefficient, extra w-power, pi letters placed to
# the left of the vacuum value and d/dpi letters placed to its right
Insertion = tuple[Scalar, int, tuple[int, ...], tuple[int, ...]]


def vertex_residue(variant: str, degree, insertions: Sequence[Insertion] | None = None, *, label: str) -> GradedOperator:
    """sum over insertions of  coef * Res_w [ w^a V_B^- V_B^+ pi_left <V_F^- V_F^+> d/dpi_right ].

    Without insertions this is the bare residue of V_B^- V_B^+ <V_F^- V_F^+>.
    The coefficient of w^{2d} in V_B^- V_B^+ is C(d).
    """
    degree = Fraction(degree)
    if insertions is None:
        insertions = [(ONE, 0, (), ())]

    def rule(key: SuperPartition) -> SuperPolynomial:
        ferm, bos = key.fermions, key.bosons
        out_level = key.level + degree
        if out_level < 0:
            return SuperPolynomial()
        # a surviving creator pi_c needs (2c - 1)/2 <= output level
        cap_c = int(floor(out_level + Fraction(1, 2)))
        cap_a = max(ferm) if ferm else 0
        total = SuperPolynomial()
        for coef, wshift, left, right in insertions:
            if any(a not in ferm for a in right):
                continue
            avail = len(ferm) - len(right)
            table = fermion_vev(variant, cap_c, cap_a, avail)
            for (cre, ann, e), val in table.items():
                if len(ann) > avail:
                    continue
                sign, new_ferm = apply_fermion_word(left + cre, ann + right, ferm)
                if not sign:
                    continue
                d2 = -(e + wshift)
                if d2 % 2:
                    raise ArithmeticError("odd w-power in a bosonic residue")
                img = C(d2 // 2).apply_basis(basis_key(new_ferm, bos))
                s = coef * val
                total = total.add_scaled(img, s if sign > 0 else -s)
        return total

    return GradedOperator(degree, rule, label=label)


def _e21() -> GradedOperator:
    # -u^-1 (q/t)^1/2 ... => E21 = -u (t/q)^1/2 sum_k q^k Res[w^-2k ... d/dpi_k]
    def insertions_for(kmax: int) -> list[Insertion]:
        return [(q**k, -2 * k, (), (k,)) for k in range(1, kmax + 1)]

    return _summed_residue(Fraction(1, 2), insertions_for, -u * sqrt_t / sqrt_q, "E2,1 (conjectural)")


def _f12() -> GradedOperator:
    def insertions_for(kmax: int) -> list[Insertion]:
        return [(q ** (k - 1), 2 - 2 * k, (), (k,)) for k in range(1, kmax + 1)]

    return _summed_residue(Fraction(-1, 2), insertions_for, u, "F1,2 (conjectural)")


def _f20() -> GradedOperator:
    def insertions_for(kmax: int) -> list[Insertion]:
        return [(t ** (-k), 2 * k, (k,), ()) for k in range(1, kmax + 1)]

    return _summed_residue(Fraction(-1, 2), insertions_for, u * sqrt_t / sqrt_q, "F2,0 (conjectural)", creators=True)


def _summed_residue(degree, insertions_for, prefactor: Scalar, label: str, creators: bool = False) -> GradedOperator:
    """Residue operator whose k-sum is cut per input (d/dpi_k needs k in the input,
    pi_k needs (2k-1)/2 <= output level)."""
    degree = Fraction(degree)
    cache: dict[int, GradedOperator] = {}

    def op_for(kmax: int) -> GradedOperator:
        if kmax not in cache:
            cache[kmax] = vertex_residue("tilde", degree, insertions_for(kmax), label=label)
        return cache[kmax]

    def rule(key: SuperPartition) -> SuperPolynomial:
        if creators:
            out_level = key.level + degree
            kmax = int(floor(out_level + Fraction(1, 2))) if out_level >= 0 else 0
        else:
            kmax = max(key.fermions) if key.fermions else 0
        if kmax == 0:
            return SuperPolynomial()
        return op_for(kmax).apply_basis(key).scale(prefactor)

    return GradedOperator(degree, rule, label=label)


# low-order ansatz forms -------------------------------------------------------

def _ratio(n: int) -> Scalar:
    """(q^n - t^-n) / (q^-1 - t)."""
    return (q**n - t ** (-n)) / (1 / q - t)


def _ratio_dual(n: int) -> Scalar:
    """(q^n - t^-n) / (q - t^-1)."""
    return (q**n - t ** (-n)) / (q - 1 / t)


def _e1_ansatz(n: int) -> GradedOperator:
    # (1 + alpha p1 d/dp1) pi_1 + beta pi_2 d/dp1
    alpha = _ratio(n) + _ratio_dual(n + 1) - 1
    beta = (1 / q - 1) * _ratio(n)
    op = mul_pi(1) + (mul_p(1) @ d_p(1) @ mul_pi(1)).scaled(alpha) + (mul_pi(2) @ d_p(1)).scaled(beta)
    return op.scaled(u**n)


def _f1_ansatz(n: int) -> GradedOperator:
    # d/dpi1 + alpha p1 d/dpi2 + beta p1 d/dp1 d/dpi1 - beta pi2 d/dpi1 d/dpi2
    alpha = (1 - t) * (q ** (n - 1) - t ** (1 - n)) / (1 / q - t)
    # the finite sum sum_{k=0}^{n-2} q^k t^{k-n+1}, continued to every n
    geometric = t ** (1 - n) * (1 - (q * t) ** (n - 1)) / (1 - q * t)
    beta = q ** (n - 1) - 1 + (1 - q) * geometric
    op = (
        d_pi(1)
        + (mul_p(1) @ d_pi(2)).scaled(alpha)
        + (mul_p(1) @ d_p(1) @ d_pi(1)).scaled(beta)
        - (mul_pi(2) @ d_pi(1) @ d_pi(2)).scaled(beta)
    )
    return op.scaled(u ** (n - 1))


def _e2_ansatz(n: int) -> GradedOperator:
    half = (_ratio(n) + _ratio_dual(n)) / 2
    gamma = (q**n + t ** (-n)) / 2 + half - 1
    delta = (q**n - t ** (-n)) / 2 - half
    beta = (q**n + t ** (1 - n)) / 2 - half
    alpha = (q**n - t ** (1 - n)) / 2 + half
    p11 = mul_p(1) @ mul_p(1)
    op = (
        mul_p(1) @ d_pi(1)
        + (p11.scaled(alpha) + mul_p(2).scaled(beta)) @ d_pi(2)
        + (p11.scaled(gamma) + mul_p(2).scaled(delta)) @ d_p(1) @ d_pi(1)
    )
    return op.scaled((1 - t) * (q / t) ** n * (u * sqrt_t / sqrt_q) ** n)


def _f2_ansatz(n: int) -> GradedOperator:
    a = (q**n - t ** (-n)) / (1 / q - t)
    b = (q ** (n + 1) - t ** (-n - 1)) / (1 / q - t)
    alpha = t ** (-n - 1) / 2 + (a / q - b) / 2
    beta = (1 / q - 1) * (a + b) / 2
    # gamma_printed and delta_printed fail on p_2 and p_1^2 for n != -1; the Pieri
    # data fix gamma = (1 - t) gamma_printed and delta = delta_printed - t gamma_printed
    gamma_printed = (1 + 1 / q) * b / 2
    gamma = (1 - t) * gamma_printed
    delta = t ** (-n - 1) / 2 + (a + b) / 2 - 1 - t * gamma_printed
    d11 = d_p(1) @ d_p(1)
    op = (
        mul_pi(1) @ d_p(1)
        + mul_pi(2) @ (d_p(2).scaled(2 * alpha) + d11.scaled(beta))
        + mul_pi(1) @ mul_p(1) @ (d_p(2).scaled(2 * gamma) + d11.scaled(delta))
    )
    pref = u ** (n + 1) * sqrt_t ** (-(n + 1)) * sqrt_q ** (n - 1) * (q - 1)
    return op.scaled(pref)


_ANSATZ = {("E", 1): _e1_ansatz, ("F", 1): _f1_ansatz, ("E", 2): _e2_ansatz, ("F", 2): _f2_ansatz}


def ansatz_charge(side: str, i: int, mode: int, level_cap) -> GradedOperator:
    """The leading terms of E_{i,n} / F_{i,n} fixed by the low-level Pieri rules.

    Only inputs of level <= level_cap are accepted, and level_cap may not
    exceed the level up to which the truncated form is exact
    (``ANSATZ_VALIDITY``).
    """
    side = side.upper()
    level_cap = Fraction(level_cap)
    limit = ANSATZ_VALIDITY.get((side, int(i)))
    if limit is None:
        raise ValueError(f"no ansatz family {side}{i}")
    if level_cap > limit:
        raise ValueError(f"{side}{i},n ansatz holds for inputs up to level {limit}, asked for {level_cap}")
    op = _ANSATZ[(side, int(i))](int(mode))
    return op.restricted(level_cap)
