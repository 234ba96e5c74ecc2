from fractions import Fraction
from functools import reduce

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from supermac.fixtures import reference_polynomials
from supermac.scalars import Scalar
from supermac.superpartitions import SuperPartition, enumerate_level, enumerate_up_to, parse
from supermac.superpoly import (
    SuperPolynomial,
    WindowError,
    anticommutator,
    basis_product,
    commutator,
    d_p,
    d_pi,
    dominant_coefficient,
    expand_in_variables,
    fermion_word,
    identity,
    mul_p,
    mul_pi,
    operator_difference,
)

from conftest import scalars

P, PI = SuperPolynomial.p, SuperPolynomial.pi
REF = dict(reference_polynomials())

basis_up_to_3 = st.sampled_from(enumerate_up_to(3))


def test_anticommutator_normalization():
    for k in (1, 2, 3):
        for l in (1, 2, 3):
            lhs = anticommutator(d_pi(k), mul_pi(l))
            rhs = identity() if k == l else lhs.__class__(lhs.degree, lambda key: SuperPolynomial())
            assert operator_difference(lhs, rhs, 3) == []


def test_primitive_examples():
    assert mul_pi(2)(PI(1)) == SuperPolynomial.basis(parse("3/2,1/2"))
    assert mul_pi(1)(PI(2)) == -SuperPolynomial.basis(parse("3/2,1/2"))
    assert d_p(1)(P(1) * P(1)) == P(1).scale(2)
    assert mul_pi(1)(PI(1)).is_zero()
    # left derivative: pi_1 sits in the second slot of pi_2 pi_1
    assert d_pi(1)(PI(2) * PI(1)) == -PI(2)
    assert d_pi(2)(PI(2) * PI(1)) == PI(1)
    with pytest.raises(ValueError):
        mul_p(0)


def test_ccr_and_car():
    for k in (1, 2):
        for l in (1, 2):
            expected = identity() if k == l else None
            c = commutator(d_p(k), mul_p(l))
            if expected is None:
                assert all(c.apply_basis(key).is_zero() for key in enumerate_up_to(3))
            else:
                assert operator_difference(c, expected, 3) == []
            a = anticommutator(mul_pi(k), mul_pi(l))
            assert all(a.apply_basis(key).is_zero() for key in enumerate_up_to(3))


def _sorted_word_sign(word):
    """Oracle sign: count transpositions in a plain bubble sort to decreasing order."""
    word = list(word)
    sign = 1
    changed = True
    while changed:
        changed = False
        for i in range(len(word) - 1):
            if word[i] < word[i + 1]:
                word[i], word[i + 1] = word[i + 1], word[i]
                sign = -sign
                changed = True
    return sign, tuple(word)


@given(st.lists(st.integers(1, 5), min_size=0, max_size=4))
def test_reordering_sign_matches_transpositions(word):
    f = SuperPolynomial.one()
    for k in reversed(word):
        f = mul_pi(k)(f)
    if len(set(word)) < len(word):
        assert f.is_zero()
        return
    sign, ordered = _sorted_word_sign(word)
    key = SuperPartition(tuple(sorted((2 * a - 1 for a in ordered), reverse=True)))
    assert f == SuperPolynomial.basis(key, sign)


@given(basis_up_to_3, basis_up_to_3)
def test_product_graded_commutativity(a, b):
    sab, kab = basis_product(a, b)
    sba, kba = basis_product(b, a)
    assert kab == kba
    parity = (len(a.fermions) * len(b.fermions)) % 2
    assert sab == (-sba if parity else sba)


@given(basis_up_to_3, st.sampled_from([("p", 1), ("p", 2), ("pi", 1), ("pi", 2), ("dp", 1), ("dpi", 1), ("dpi", 2)]))
def test_primitives_shift_level_exactly(key, op):
    kind, k = op
    operator = {"p": mul_p, "pi": mul_pi, "dp": d_p, "dpi": d_pi}[kind](k)
    image = operator.apply_basis(key)
    assert image.levels() <= {key.level + operator.degree}


def test_fermion_word_matches_composition():
    word = fermion_word((3, 1), (2,))
    composed = mul_pi(3) @ mul_pi(1) @ d_pi(2)
    assert operator_difference(word, composed, 4) == []


def test_window_is_enforced():
    op = mul_p(1).restricted(1)
    op.apply_basis(parse("1"))
    with pytest.raises(WindowError):
        op.apply_basis(parse("3/2"))


# finite-variable expansion -----------------------------------------------

def _theta_matrices(n):
    """Faithful Jordan-Wigner matrices for theta_1..theta_n on the 2^n exterior algebra."""
    sp = sympy.Matrix([[0, 0], [1, 0]])
    z = sympy.diag(1, -1)
    eye = sympy.eye(2)
    mats = []
    for i in range(n):
        factors = [z] * i + [sp] + [eye] * (n - i - 1)
        mats.append(reduce(sympy.kronecker_product, factors))
    return mats


def _evaluate_nvar(poly, xs, thetas):
    dim = thetas[0].shape[0]
    out = sympy.zeros(dim, dim)
    for (exps, ths), coeff in poly:
        assert coeff.den.is_one()
        val = sympy.Integer(int(coeff.num.coeffs()[0])) if len(coeff.num) == 1 else None
        assert val is not None
        mono = sympy.Integer(1)
        for x, e in zip(xs, exps):
            mono *= x**e
        mat = sympy.eye(dim)
        for i in ths:
            mat = mat * thetas[i]
        out += val * mono * mat
    return out


def _evaluate_basis(key, xs, thetas):
    dim = thetas[0].shape[0]
    mat = sympy.eye(dim)
    for a in key.fermions:
        mat = mat * sum((thetas[i] * xs[i] ** (a - 1) for i in range(len(xs))), sympy.zeros(dim, dim))
    for b in key.bosons:
        mat = mat * sum(x**b for x in xs)
    return mat


@pytest.mark.parametrize("key", enumerate_up_to(Fraction(5, 2)))
def test_expand_in_variables_against_matrix_oracle(key):
    n = 3
    xs = sympy.symbols(f"x1:{n + 1}")
    thetas = _theta_matrices(n)
    got = _evaluate_nvar(expand_in_variables(SuperPolynomial.basis(key), n), xs, thetas)
    want = _evaluate_basis(key, xs, thetas)
    assert (got - want).expand() == sympy.zeros(*got.shape)


def test_expand_examples():
    e = expand_in_variables(P(1) * PI(1), 2)
    assert e.coefficient((1, 0), (0,)) == 1 and e.coefficient((0, 1), (0,)) == 1
    assert e.coefficient((1, 0), (1,)) == 1 and e.coefficient((0, 1), (1,)) == 1
    # pi_2 pi_1 = (theta_1 x_1 + theta_2 x_2)(theta_1 + theta_2) = theta_1 theta_2 (x_1 - x_2)
    e = expand_in_variables(PI(2) * PI(1), 2)
    assert e.coefficient((1, 0), (0, 1)) == 1
    assert e.coefficient((0, 1), (0, 1)) == -1
    assert len(e.terms) == 2
    m = expand_in_variables(REF[parse("1,1/2")], 2)
    assert m.coefficient((1, 0), (1,)) == 1
    with pytest.raises(ValueError):
        expand_in_variables(P(1), 0)


@given(basis_up_to_3, basis_up_to_3)
def test_expand_is_ring_homomorphism(a, b):
    n = 4
    fa, fb = SuperPolynomial.basis(a), SuperPolynomial.basis(b)
    assert expand_in_variables(fa * fb, n) == expand_in_variables(fa, n) * expand_in_variables(fb, n)


def test_dominant_coefficient_examples():
    assert dominant_coefficient(REF[parse("3/2")], parse("3/2"), 2) == 1
    assert dominant_coefficient(REF[parse("2,1/2")], parse("2,1/2"), 3) == 1
    assert dominant_coefficient(P(1), parse("1"), 1) == 1
    with pytest.raises(ValueError):
        dominant_coefficient(REF[parse("2,1/2")], parse("2,1/2"), 1)


@pytest.mark.parametrize("lam", enumerate_up_to(3)[1:], ids=lambda l: l.text())
def test_dominant_coefficient_independent_of_extra_variables(lam):
    f = REF[lam]
    n = max(lam.length, 1)
    full = expand_in_variables(f, n + 1)
    exps = [0] * (n + 1)
    ths = []
    for i, d in enumerate(lam.doubled):
        exps[i] = d // 2
        if d % 2:
            ths.append(i)
    assert full.coefficient(exps, ths) == dominant_coefficient(f, lam, n + 1) == 1


@given(st.dictionaries(basis_up_to_3, scalars(), max_size=4))
def test_json_round_trip(terms):
    f = SuperPolynomial(terms)
    assert SuperPolynomial.from_json(f.to_json()) == f


def test_matrix_block_shapes():
    rows, cols, mat = mul_p(1).matrix(2)
    assert len(cols) == len(enumerate_level(2)) and len(rows) == len(enumerate_level(3))
    assert all(len(r) == len(cols) for r in mat)
    assert isinstance(mat[0][0], Scalar)
