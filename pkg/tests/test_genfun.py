import pytest
import sympy
from conftest import SQ, ST, sympy_equal, to_sympy

from supermac.genfun import C, Ctilde, b, c, c_check, c_poly, ctilde, ctilde_check, ctilde_poly
from supermac.scalars import q, t
from supermac.superpartitions import enumerate_up_to
from supermac.superpoly import (
    SuperPolynomial,
    commutator,
    d_p,
    identity,
    mul_p,
    operator_difference,
    zero_operator,
)
from supermac.verify import bilinear_relations, c_sums

P = SuperPolynomial.p
X = sympy.symbols("x1:8")
Z = sympy.Symbol("z")


def _multinomial_oracle(weight, k):
    """z^k coefficient of prod_r exp(weight(r) x_r z^r), expanded term by term."""
    total = sympy.Integer(1)
    for r in range(1, k + 1):
        total *= sum((weight(r) * X[r - 1] * Z**r) ** j / sympy.factorial(j) for j in range(k // r + 1))
    return sympy.expand(total).coeff(Z, k)


def _bosonic_to_sympy(terms):
    out = sympy.Integer(0)
    for mu, v in terms:
        mono = sympy.Integer(1)
        for r in mu:
            mono *= X[r - 1]
        out += to_sympy(v) * mono
    return out


@pytest.mark.parametrize("k", range(0, 6))
def test_c_coefficients_against_multinomial(k):
    got = _bosonic_to_sympy((key.bosons, v) for key, v in c_poly(k))
    want = _multinomial_oracle(lambda r: (1 - ST ** (2 * r)) / r, k)
    assert sympy_equal(got, want)


@pytest.mark.parametrize("k", range(0, 6))
def test_ctilde_coefficients_against_multinomial(k):
    got = _bosonic_to_sympy(ctilde_poly(k).items())
    want = _multinomial_oracle(lambda r: SQ ** (-2 * r) - 1, k)
    assert sympy_equal(got, want)


def test_low_order_examples():
    assert operator_difference(c(0), identity(), 3) == []
    assert operator_difference(ctilde(0), identity(), 3) == []
    assert operator_difference(c(1), mul_p(1).scaled(1 - t), 3) == []
    two = mul_p(2).scaled((1 - t**2) / 2) + (mul_p(1) @ mul_p(1)).scaled((1 - t) ** 2 / 2)
    assert operator_difference(c(2), two, 3) == []
    assert operator_difference(c_check(1), mul_p(1).scaled(1 - 1 / t), 3) == []
    assert operator_difference(ctilde_check(1), d_p(1).scaled(q - 1), 3) == []
    assert operator_difference(c_check(0), identity(), 3) == []


def test_C_on_vacuum():
    one = SuperPolynomial.one()
    assert C(0)(one) == one
    assert C(1)(one) == P(1).scale(1 - 1 / t)
    assert C(-1)(one).is_zero()


def test_Ctilde_examples():
    pref = (1 - t) * (1 / q - 1)
    assert operator_difference(Ctilde(1, 1), identity().scaled(pref), 3) == []
    assert Ctilde(1, 2)(SuperPolynomial.one()) == P(1).scale((1 - t) ** 2 * (1 / q - 1))
    with pytest.raises(ValueError):
        Ctilde(0, 1)


@pytest.mark.parametrize("k", range(1, 4))
@pytest.mark.parametrize("ell", range(1, 4))
def test_Ctilde_is_the_commutator(k, ell):
    assert operator_difference(commutator(ctilde(k), c(ell)), Ctilde(k, ell), 3) == []


def test_b_values():
    assert b(1) == 1
    assert b(2) == 1 + q / t
    assert b(3) == 1 + q / t + (q / t) ** 2
    with pytest.raises(ValueError):
        b(0)


@pytest.mark.parametrize("name,op", bilinear_relations(5), ids=lambda x: x if isinstance(x, str) else "")
def test_bilinear_relations_vanish(name, op):
    assert all(op.apply_basis(key).is_zero() for key in enumerate_up_to(4)), name


@pytest.mark.parametrize("k", range(1, 5))
def test_C_sums_vanish_for_positive_k(k):
    first, second = c_sums(k, 4)
    for key in enumerate_up_to(4):
        assert first.apply_basis(key).is_zero()
        assert second.apply_basis(key).is_zero()


def test_C_sums_at_k0_equal_identity():
    # at k = 0 both sums reduce to the identity rather than 0
    first, second = c_sums(0, 4)
    assert operator_difference(first, identity(), 4) == []
    assert operator_difference(second, identity(), 4) == []


@pytest.mark.parametrize("k,ell", [(1, 2), (2, 3), (1, 3)])
def test_family_commutes(k, ell):
    assert operator_difference(commutator(c(k), c(ell)), zero_operator(k + ell), 3) == []
    assert operator_difference(commutator(ctilde(k), ctilde(ell)), zero_operator(-k - ell), 3) == []
