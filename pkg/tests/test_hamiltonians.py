import itertools
from fractions import Fraction

import pytest
import sympy
from conftest import SQ, ST, to_sympy

from supermac.fixtures import reference_polynomials
from supermac.genfun import Ctilde
from supermac.hamiltonians import (
    PRESENTATIONS,
    d_eigenvalue,
    d_negative,
    eigenvalue,
    galakhov_bilinear,
    h_negative,
    h_positive,
    macdonald,
    rm_bosonic,
)
from supermac.scalars import invert_qt, q, sqrt_q, sqrt_t, t, u
from supermac.superpartitions import SuperPartition, enumerate_level, enumerate_up_to, parse
from supermac.superpoly import SuperPolynomial, commutator, operator_difference

REF = dict(reference_polynomials())
TYPOS = {parse("4"), parse("2,2")}
P = SuperPolynomial.p


def test_macdonald_examples():
    assert macdonald(parse("3/2")) == P(1) * SuperPolynomial.pi(1) * (q * (1 - t) / (1 - q * t)) + SuperPolynomial.pi(2) * ((1 - q) / (1 - q * t))
    assert macdonald(parse("1,1")) == (P(1) * P(1) - P(2)).scale(Fraction(1, 2))
    assert macdonald(SuperPartition(())) == SuperPolynomial.one()


@pytest.mark.parametrize("lam", [l for l in enumerate_up_to(4)[1:] if l not in TYPOS], ids=lambda l: l.text())
def test_macdonald_matches_reference_table(lam):
    assert macdonald(lam) == REF[lam]


@pytest.mark.parametrize("lam", sorted(TYPOS, key=lambda l: l.doubled), ids=lambda l: l.text())
def test_tabulated_entries_with_typos_are_not_eigenvectors(lam):
    f = REF[lam]
    assert d_negative(2)(f) != f.scale(d_eigenvalue(2, -1, lam))
    # the computed polynomial differs from the table in exactly one coefficient
    diff = f - macdonald(lam)
    assert len(diff) == 1
    (key,) = [k for k, _ in diff]
    # p_2^2 in M(4), p_4 in M(2,2)
    assert key.doubled == {"4": (4, 4), "2,2": (8,)}[lam.text()]


def _schur_in_powersums(shape, n):
    """Jacobi-Trudi with h_k read off exp(sum p_r z^r / r)."""
    z = sympy.Symbol("z")
    ps = sympy.symbols(f"p1:{n + 1}")
    gen = sympy.exp(sum(ps[r - 1] * z**r / r for r in range(1, n + 1)))
    series = sympy.series(gen, z, 0, n + 1).removeO()
    h = [sympy.expand(series.coeff(z, k)) for k in range(n + 1)]

    def hk(k):
        return h[k] if 0 <= k <= n else sympy.Integer(0)

    m = len(shape)
    mat = sympy.Matrix(m, m, lambda i, j: hk(shape[i] - i + j))
    return sympy.expand(mat.det()), ps


def _at_q_equals_t(f, ps):
    out = sympy.Integer(0)
    for key, v in f:
        mono = sympy.Integer(1)
        for b in key.bosons:
            mono *= ps[b - 1]
        out += sympy.cancel(to_sympy(v).subs(ST, SQ)) * mono
    return sympy.expand(out)


SHAPES = [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


@pytest.mark.parametrize("shape", SHAPES)
def test_bosonic_level4_reduces_to_schur_at_q_equals_t(shape):
    lam = parse(",".join(map(str, shape)))
    schur, ps = _schur_in_powersums(shape, 4)
    assert sympy.expand(_at_q_equals_t(macdonald(lam), ps) - schur) == 0
    table_ok = sympy.expand(_at_q_equals_t(REF[lam], ps) - schur) == 0
    # the M(2,2) typo cancels at q = t; the t = 1 limit below catches it
    assert table_ok == (lam != parse("4"))


def _at_t_equals_one(f, xs):
    out = sympy.Integer(0)
    for key, v in f:
        mono = sympy.Integer(1)
        for b in key.bosons:
            mono *= sum(x**b for x in xs)
        out += sympy.cancel(to_sympy(v).subs(ST, 1)) * mono
    return sympy.expand(out)


def _monomial_symmetric(shape, xs):
    exps = list(shape) + [0] * (len(xs) - len(shape))
    return sum(
        (sympy.prod([x**e for x, e in zip(xs, perm)]) for perm in set(itertools.permutations(exps))),
        sympy.Integer(0),
    )


@pytest.mark.parametrize("shape", SHAPES)
def test_bosonic_level4_reduces_to_monomial_at_t_equals_one(shape):
    lam = parse(",".join(map(str, shape)))
    xs = sympy.symbols("x1:5")
    m = _monomial_symmetric(shape, xs)
    assert sympy.expand(_at_t_equals_one(macdonald(lam), xs) - m) == 0
    table_ok = sympy.expand(_at_t_equals_one(REF[lam], xs) - m) == 0
    # here the M(4) typo cancels; with the q = t limit both typos are caught
    assert table_ok == (lam != parse("2,2"))


@pytest.mark.parametrize("lam", enumerate_up_to(3), ids=lambda l: l.text() or "0")
def test_quartet_eigenvalues(lam):
    m = macdonald(lam)
    for i in (1, 2):
        for sign, op in ((-1, h_negative(i)), (1, h_positive(i))):
            assert op(m) == m.scale(eigenvalue(i, sign, lam)), (i, sign)


def test_eigenvalue_examples():
    empty = enumerate_level(0)[0]
    assert eigenvalue(1, -1, empty) == -1 / u
    assert d_eigenvalue(2, -1, parse("1")) == (t - 1) * (1 / q - 1)
    assert d_eigenvalue(1, -1, parse("1/2")) == 0
    # 1 + u^-1 (q/t)^1/2 H2,+1 on M(3/2)
    lam = parse("3/2")
    assert 1 + eigenvalue(2, 1, lam) * sqrt_q / (sqrt_t * u) == (1 / t - 1) * (q - 1) * (1 + q)
    with pytest.raises(ValueError):
        eigenvalue(3, 1, empty)


@pytest.mark.parametrize("lam", enumerate_up_to(3), ids=lambda l: l.text() or "0")
def test_positive_eigenvalues_are_inverted_negative_ones(lam):
    for i in (1, 2):
        assert d_eigenvalue(i, 1, lam) == invert_qt(d_eigenvalue(i, -1, lam))


def test_presentations_agree():
    assert PRESENTATIONS == ("closed_bilinear", "anticommutator", "vertex_integral")
    for i in (1, 2):
        assert operator_difference(h_positive(i, "vertex_integral"), h_positive(i, "anticommutator"), 2) == []
    with pytest.raises(ValueError):
        h_positive(1, "matrix")


def test_quartet_commutes_on_level_two():
    ops = [h_negative(1), h_negative(2), h_positive(1), h_positive(2)]
    for a in range(4):
        for b in range(a + 1, 4):
            c = commutator(ops[a], ops[b])
            assert all(c.apply_basis(k).is_zero() for k in enumerate_up_to(2))


def test_rm_bosonic():
    assert rm_bosonic()(P(1)) == P(1).scale(1 / q - 1)
    assert rm_bosonic()(SuperPolynomial.one()).is_zero()
    bosonic = [k for k in enumerate_up_to(4) if not k.fermions]
    for key in bosonic:
        assert d_negative(1).apply_basis(key) == d_negative(2).apply_basis(key)
        assert d_negative(2).apply_basis(key) == -rm_bosonic().apply_basis(key).scale(1 - t)


def test_bosonic_part_through_level_two():
    # (q^-1 - 1) p1 d/dp1 + (1/2)(q^-2 - 1)(1 + t) p2 d/dp2 + ... on p_2 and p_1^2
    d = rm_bosonic()
    assert d(P(2)) == P(2).scale((1 / q**2 - 1) * (1 + t) / 2) + (P(1) * P(1)).scale((1 / q**2 - 1) * (1 - t) / 2)


@pytest.mark.parametrize("k", range(1, 4))
@pytest.mark.parametrize("ell", range(1, 4))
def test_galakhov_reconstruction(k, ell):
    assert operator_difference(galakhov_bilinear(2, k, ell), Ctilde(k, ell), 3) == []
    assert operator_difference(galakhov_bilinear(1, k + 1, ell + 1), Ctilde(k, ell), 3) == []
