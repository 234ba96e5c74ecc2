from fractions import Fraction

import pytest
import sympy
from conftest import to_sympy

from supermac.fockrep import (
    SHIFTS,
    VECTOR_NORMALIZATION,
    FockState,
    VectorState,
    cartan_function,
    cartan_series,
    check_shifted_EF,
    check_vector_relation,
    hamiltonian_from_cartan,
    pieri_E,
    pieri_F,
    pieri_on_macdonald,
    vector_action,
)
from supermac.hamiltonians import eigenvalue
from supermac.scalars import ONE, Scalar, q, sqrt_q, sqrt_t, t, u
from supermac.superpartitions import enumerate_up_to, parse

VAC = FockState.vacuum()


def st(text):
    return FockState.from_superpartition(parse(text))


def test_state_dictionary():
    s = st("3/2,1")
    assert s.lam == (2, 1) and s.sigma == (1, 0)
    assert s.to_superpartition() == parse("3/2,1")
    assert FockState((1, 0), (1, 0)).canonical() == FockState((1,), (1,))
    assert not FockState((0, 1), (0, 0)).is_valid()
    with pytest.raises(ValueError):
        FockState((1,), ())


def test_pieri_E_examples():
    assert pieri_E(1, 0, VAC) == {st("1/2"): ONE}
    assert pieri_on_macdonald("E", 1, 0, parse("1")) == {parse("3/2"): ONE, parse("1,1/2"): (1 - q) / (1 - q * t)}
    assert pieri_on_macdonald("E", 2, 0, parse("1/2")) == {parse("1"): 1 - t}


def test_pieri_F_examples():
    assert pieri_F(1, 1, st("1/2")) == {VAC: ONE}
    assert pieri_on_macdonald("F", 2, -1, parse("1")) == {parse("1/2"): (q - 1) / q}
    for n in (-1, 0, 3):
        assert pieri_F(1, n, VAC) == {} and pieri_F(2, n, VAC) == {}


@pytest.mark.parametrize("lam", enumerate_up_to(3), ids=lambda l: l.text() or "0")
def test_pieri_changes_level_by_half(lam):
    for side, sign in (("E", 1), ("F", -1)):
        for s in (1, 2):
            for target in pieri_on_macdonald(side, s, 1, lam):
                assert target.level == lam.level + Fraction(sign, 2)


def test_vacuum_cartan():
    k1 = cartan_function(1, VAC)
    assert k1.zeros == () and k1.poles == (u,)
    # K_1(z) = 1/(z - u)
    assert k1.evaluate(Scalar.of(3)) == 1 / (3 - u)
    assert k1.degree == SHIFTS[1] and cartan_function(2, VAC).degree == SHIFTS[2]


@pytest.mark.parametrize("lam", [parse("1"), parse("3/2,1/2"), parse("2,1/2")], ids=lambda l: l.text())
@pytest.mark.parametrize("i", [1, 2])
def test_cartan_expansions_against_sympy(lam, i):
    z, w = sympy.symbols("z w")
    f = cartan_function(i, FockState.from_superpartition(lam))
    expr = to_sympy(f.prefactor)
    for a in f.zeros:
        expr *= z - to_sympy(a)
    for b in f.poles:
        expr /= z - to_sympy(b)
    order = 2
    small = sympy.series(expr, z, 0, order + 1).removeO()
    for j, c in enumerate(f.at_zero(order)):
        assert sympy.simplify(small.coeff(z, j) - to_sympy(c)) == 0
    # at infinity: substitute z = 1/w and expand w^degree * f
    large = sympy.series(sympy.simplify(expr.subs(z, 1 / w) * w**f.degree), w, 0, order + 1).removeO()
    for j, c in enumerate(f.at_infinity(order)):
        assert sympy.simplify(large.coeff(w, j) - to_sympy(c)) == 0


def test_cartan_series_errors():
    with pytest.raises(ValueError):
        cartan_series(1, VAC, -1)
    with pytest.raises(ValueError):
        cartan_series(1, VAC, 1, "sideways")


@pytest.mark.parametrize("lam", enumerate_up_to(3), ids=lambda l: l.text() or "0")
def test_hamiltonians_from_cartan_match_eigenvalues(lam):
    s = FockState.from_superpartition(lam)
    for i in (1, 2):
        for sign in (-1, 1):
            assert hamiltonian_from_cartan(i, sign, s) == eigenvalue(i, sign, lam)


def test_shifted_relation_examples():
    for rec in check_shifted_EF(1, 0, 1, 3):
        assert rec["ok"] and rec["rhs"] == 1
    for rec in check_shifted_EF(2, 0, -1, 3):
        assert rec["ok"]
        assert rec["rhs"] == 1 - sqrt_t / sqrt_q * u * eigenvalue(2, -1, rec["state"])
    for rec in check_shifted_EF(1, -1, 0, 3):
        assert rec["ok"]
        assert rec["rhs"] == -eigenvalue(1, -1, rec["state"]) / u


@pytest.mark.parametrize("i,m,n", [(1, 1, 1), (2, 1, -1), (1, 2, -2), (2, 2, 0), (1, 0, 0), (2, -1, 1)])
def test_shifted_relation_more_modes(i, m, n):
    assert all(rec["ok"] for rec in check_shifted_EF(i, m, n, Fraction(5, 2)))


def test_vector_representation():
    assert VECTOR_NORMALIZATION[("E", 1)] * VECTOR_NORMALIZATION[("F", 1)] == 1 - 1 / t
    assert VECTOR_NORMALIZATION[("E", 2)] * VECTOR_NORMALIZATION[("F", 2)] == 1 - t
    assert vector_action("E", 1, VectorState(0, 1)) == []
    for k in range(-2, 3):
        for sig in (0, 1):
            for s in (1, 2):
                assert check_vector_relation(s, VectorState(k, sig))["ok"]
    with pytest.raises(ValueError):
        VectorState(0, 2)
