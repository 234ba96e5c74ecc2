from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from supermac.charges import charge
from supermac.finiteN import (
    A,
    D1,
    NonPolynomialError,
    NVarFraction,
    Q,
    Tq,
    powersum_map,
    q3_one_fermion,
    rm_generating,
    rm_hamiltonian,
    tau,
    tq_one_fermion,
)
from supermac.genfun import c_check, ctilde_check
from supermac.hamiltonians import h_negative, macdonald
from supermac.nvar import NVarSuperPoly
from supermac.scalars import ONE, Scalar, q, t, u
from supermac.superpartitions import enumerate_up_to, parse
from supermac.superpoly import SuperPolynomial, d_pi, expand_in_variables

P, PI = SuperPolynomial.p, SuperPolynomial.pi


def X(n, i, power=1):
    return NVarSuperPoly.x(n, i - 1, power)


def ev(f, n):
    return NVarFraction(expand_in_variables(f, n))


def test_tau_examples():
    x1x2 = X(2, 1) * X(2, 2)
    assert tau(1)(x1x2) == x1x2.scale(q)
    assert tau(1, -1)(tau(1)(x1x2)) == x1x2
    f = X(3, 1, 2) * X(3, 2) + X(3, 3)
    assert (tau(1) @ tau(2))(f) == (tau(2) @ tau(1))(f)
    with pytest.raises(ValueError):
        tau(1, 2)


def test_powersum_map_examples():
    n = 3
    assert powersum_map(X(n, 1) + X(n, 2) + X(n, 3)) == P(1)
    theta_x = sum((NVarSuperPoly.theta(n, i) * NVarSuperPoly.x(n, i) for i in range(1, n)), NVarSuperPoly.theta(n, 0) * NVarSuperPoly.x(n, 0))
    assert powersum_map(theta_x) == PI(2)
    with pytest.raises(ValueError, match="not symmetric"):
        powersum_map(X(n, 1))
    with pytest.raises(ValueError, match="too small"):
        powersum_map(expand_in_variables(P(1) * P(1) * P(1), 2))


@given(st.dictionaries(st.sampled_from(enumerate_up_to(Fraction(5, 2))[1:]), st.integers(-3, 3), max_size=4))
def test_powersum_map_inverts_expansion(terms):
    f = SuperPolynomial(terms)
    assert powersum_map(expand_in_variables(f, 3)) == f


def test_q4_on_one_is_pi1():
    assert powersum_map(Q(4, 3)(NVarSuperPoly.constant(3)).to_polynomial()) == PI(1)


@pytest.mark.parametrize("n", range(0, 4))
def test_t_identity(n):
    # sum_i A_i(t) x_i^n = t^N/(t-1) c_check_n - delta_{n,0}/(t-1)
    N = 3
    total = NVarFraction(NVarSuperPoly(N))
    for i in range(1, N + 1):
        total = total + A(i)(NVarFraction(X(N, i, n) if n else NVarSuperPoly.constant(N)))
    lhs = powersum_map(total.to_polynomial())
    rhs = c_check(n)(SuperPolynomial.one()).scale(t**N / (t - 1))
    if n == 0:
        rhs = rhs - SuperPolynomial.one().scale(1 / (t - 1))
    assert lhs == rhs


def test_a_multiplier_on_nonsymmetric_input_is_not_polynomial():
    with pytest.raises(NonPolynomialError):
        A(1)(NVarFraction(X(2, 1))).to_polynomial()


def test_tq_examples():
    n = 3
    T = Tq()
    assert powersum_map(T(ev(PI(1) * P(1), n)).to_polynomial()) == PI(1) * P(1) + PI(2).scale(q - 1)
    m = macdonald(parse("3/2"))
    assert T(ev(m, n)) == expand_in_variables(m.invert_qt().scale(q), n)
    bos = P(2) + P(1) * P(1)
    assert T(ev(bos, n)) == expand_in_variables(bos, n)
    f = ev(PI(2) * PI(1) * P(1), n)
    assert Tq(-1)(T(f)) == f


@pytest.mark.parametrize("k,l", [(1, 1), (2, 1), (1, 2), (3, 1)])
def test_tq_action_one(k, l):
    got = powersum_map(Tq()(ev(PI(k) * P(l), 4)).to_polynomial())
    assert got == (PI(k) * P(l) + PI(k + l).scale(q**l - 1)).scale(q ** (k - 1))
    assert tq_one_fermion()(PI(k) * P(l)) == got


@pytest.mark.parametrize("m,k,l", [(2, 1, 1), (1, 2, 1)])
def test_tq_action_two(m, k, l):
    f = PI(m) * P(k) * P(l)
    expected = (
        f
        + (PI(k + m) * P(l)).scale(q**k - 1)
        + (PI(l + m) * P(k)).scale(q**l - 1)
        + PI(k + l + m).scale((q**k - 1) * (q**l - 1))
    ).scale(q ** (m - 1))
    assert powersum_map(Tq()(ev(f, 5)).to_polynomial()) == expected
    assert tq_one_fermion()(f) == expected


def test_tq_one_fermion_on_pi1():
    assert tq_one_fermion()(PI(1)) == PI(1)
    with pytest.raises(ValueError):
        tq_one_fermion()(PI(2) * PI(1))


def _q3_printed(n_vars):
    """t^N/(t-1) sum_{n,m} c_check_{n+m-1} ctilde_check_m d/dpi_n, read literally."""
    pref = t**n_vars / (t - 1)

    def apply(f):
        total = SuperPolynomial()
        for key, v in f:
            (n,) = key.fermions
            stripped = d_pi(n)(SuperPolynomial.basis(key, v))
            for m in range(0, sum(key.bosons) + 1):
                total = total + c_check(n + m - 1)(ctilde_check(m)(stripped)).scale(pref)
        return total

    return apply


@pytest.mark.parametrize("text", ["1/2", "3/2", "5/2", "1,1/2", "3/2,1", "2,1/2"])
def test_q3_one_fermion(text):
    n = 3
    f = SuperPolynomial.basis(parse(text))
    exact = powersum_map(Q(3, n)(expand_in_variables(f, n)).to_polynomial())
    assert q3_one_fermion(n)(f) == exact
    # the literal form misses the q^(n-1) weight and the n = 1 constant
    assert _q3_printed(n)(f) != exact


def test_q3_literal_form_agrees_after_corrections():
    n = 3
    f = PI(2) * P(1)
    exact = powersum_map(Q(3, n)(expand_in_variables(f, n)).to_polynomial())
    assert _q3_printed(n)(f).scale(q) == exact


@pytest.mark.parametrize("key", enumerate_up_to(2), ids=lambda k: k.text() or "0")
def test_e1m1_and_f10_in_three_variables(key):
    n = 3
    f = SuperPolynomial.basis(key)
    assert Q(1, n)(expand_in_variables(f, n)) == expand_in_variables(charge(1, "E", -1)(f).scale(u), n)
    if key.fermion_number:
        rhs = powersum_map(Q(2, n)(expand_in_variables(f, n)).to_polynomial()).scale(t ** (n - 1) * (1 - t))
        assert charge(1, "F", 0)(f).scale(u) == rhs + d_pi(1)(f).scale(t**n)


@pytest.mark.parametrize("key", enumerate_up_to(2), ids=lambda k: k.text() or "0")
def test_h1m1_is_finite_d1(key):
    n = 3
    f = SuperPolynomial.basis(key)
    fn = ev(f, n)
    assert D1(n)(fn).scale(t - 1) - fn.scale(t**n) == expand_in_variables(h_negative(1)(f).scale(u), n)


def test_rm_examples():
    n = 2
    one = NVarSuperPoly.constant(n)
    z = Scalar.of(u)
    assert rm_generating(n, z)(one) == one.scale((1 - z * t) * (1 - z))
    p1 = X(n, 1) + X(n, 2)
    assert rm_hamiltonian(1, n)(p1) == p1.scale(t * q + 1)
    x1x2 = X(n, 1) * X(n, 2)
    assert rm_hamiltonian(2, n)(x1x2) == x1x2.scale(t * q**2)
    with pytest.raises(ValueError):
        rm_hamiltonian(3, n)


@pytest.mark.parametrize("lam", [l for l in enumerate_up_to(3) if not l.fermions and l.length <= 3], ids=lambda l: l.text() or "0")
def test_rm_generating_eigenvalues(lam):
    n = 3
    f = expand_in_variables(macdonald(lam), n)
    parts = list(lam.bosons) + [0] * (n - lam.length)
    expected = ONE
    for i, lam_i in enumerate(parts, start=1):
        expected = expected * (1 - u * t ** (n - i) * q**lam_i)
    assert rm_generating(n, u)(f) == f.scale(expected)


def test_lemma_d_small():
    n = 2
    T = Tq()
    inv = (1 / q, 1 / t)
    for deg in range(3):
        for a in range(deg + 1):
            for ths in [(), (0,), (1,), (0, 1)]:
                f = NVarSuperPoly(n, {((a, deg - a), ths): ONE})
                assert T(Q(4, n)(f)) == Q(1, n, *inv)(T(f))
                assert T(Q(3, n)(f)) == Q(2, n, *inv)(T(f))

