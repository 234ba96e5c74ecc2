from fractions import Fraction

import pytest
import sympy
from sympy.utilities.iterables import partitions
from hypothesis import given
from hypothesis import strategies as st

from supermac.superpartitions import (
    SuperPartition,
    SuperPartitionError,
    character_counts,
    enumerate_level,
    enumerate_up_to,
    fermion_sign_prefix,
    parse,
    validate,
)


def test_validate_examples():
    lam = validate([3, 1])
    assert lam.parts == (Fraction(3, 2), Fraction(1, 2))
    assert lam.sigma == (1, 1)
    assert validate([]) == SuperPartition(())
    with pytest.raises(SuperPartitionError, match="index 2"):
        validate([1, 1])
    with pytest.raises(SuperPartitionError):
        validate([2, 3])


def test_parse_forms_agree():
    assert parse("3/2,1/2") == parse("3,1", doubled=True) == validate([3, 1])
    assert parse("0") == parse("") == SuperPartition(())
    assert parse("2,1/2").text() == "2,1/2"
    with pytest.raises(SuperPartitionError):
        parse("1/3")


def test_star_circledstar_examples():
    assert parse("3/2").star() == (1,) and parse("3/2").circledstar() == (2,)
    assert parse("1,1/2").star() == (1,) and parse("1,1/2").circledstar() == (1, 1)
    assert SuperPartition(()).star() == () and SuperPartition(()).circledstar() == ()


def test_enumeration_examples():
    assert enumerate_level(2) == [parse("2"), parse("3/2,1/2"), parse("1,1")]
    assert len(enumerate_level(Fraction(7, 2))) == 7
    assert enumerate_level(0) == [SuperPartition(())]
    assert len(enumerate_up_to(3)) == 17


def test_fermion_sign_prefix():
    assert fermion_sign_prefix(parse("3/2,1/2"), 2) == -1
    assert fermion_sign_prefix(parse("3/2,1/2"), 1) == 1
    assert fermion_sign_prefix(parse("2,1"), 3) == 1
    with pytest.raises(IndexError):
        fermion_sign_prefix(parse("1"), 3)


def _brute_force(n):
    """Integer partitions of the doubled level (sympy), filtered by the odd-part rule."""
    found = set()
    for p in partitions(n):
        if any(m > 1 for d, m in p.items() if d % 2):
            continue
        found.add(tuple(sorted((d for d, m in p.items() for _ in range(m)), reverse=True)))
    return found


@pytest.mark.parametrize("n", range(0, 13))
def test_enumeration_matches_brute_force(n):
    got = [lam.doubled for lam in enumerate_level(Fraction(n, 2))]
    assert len(got) == len(set(got))
    assert set(got) == _brute_force(n)
    assert got == sorted(got, reverse=True)


def test_character_series_against_sympy():
    x = sympy.Symbol("x")
    prod = sympy.Poly(1, x)
    for k in range(1, 11):
        geometric = sympy.Poly(sum(x ** (2 * k * j) for j in range(0, 20 // (2 * k) + 1)), x)
        prod = prod * sympy.Poly(1 + x ** (2 * k - 1), x) * geometric
    coeffs = [int(prod.coeff_monomial(x**n)) for n in range(21)]
    assert character_counts(20) == coeffs
    assert [len(enumerate_level(Fraction(n, 2))) for n in range(21)] == coeffs


@given(st.integers(0, 14).flatmap(lambda n: st.sampled_from(enumerate_level(Fraction(n, 2)))))
def test_star_circledstar_encode_lambda(lam):
    k = lam.length
    cs = list(lam.circledstar())
    s = list(lam.star()) + [0] * (k - len(lam.star()))
    assert [Fraction(a + b, 2) for a, b in zip(cs, s)] == list(lam.parts)
    assert tuple(a - b for a, b in zip(cs, s)) == lam.sigma
    assert sum(lam.parts) == lam.level
    # p_Lambda bookkeeping: pi indices strictly decreasing, p indices weakly decreasing
    assert list(lam.fermions) == sorted(set(lam.fermions), reverse=True)
    assert list(lam.bosons) == sorted(lam.bosons, reverse=True)
    assert SuperPartition.from_parts(lam.fermions, lam.bosons) == lam
