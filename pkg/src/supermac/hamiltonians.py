"""The Hamiltonians H_{1,+-1}, H_{2,+-1} and super Macdonald polynomials.

Each Hamiltonian enters through a u-free combination whose eigenvalues are
box sums over Lambda^circledstar (Lambda + sigma/2) or Lambda^* (Lambda - sigma/2):

    D_{2,-} = 1 - u (t/q)^1/2 H_{2,-1}   = (t-1)(1/q-1) sum_{box in L^o} q^(1-j) t^(i-1)
    D_{1,-} = 1 + u H_{1,-1}             = (t-1)(1/q-1) sum_{box in L^*} q^(1-j) t^(i-1)
    D_{2,+} = 1 + (q/t)^1/2 H_{2,+1} / u = (1/t-1)(q-1) sum_{box in L^o} q^(j-1) t^(1-i)
    D_{1,+} = 1 - H_{1,+1} / u           = (1/t-1)(q-1) sum_{box in L^*} q^(j-1) t^(1-i)

M_Lambda is the common kernel vector of D_{i,-} minus its predicted eigenvalue,
normalized by its dominant coefficient.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import floor

from .charges import charge, vertex_residue
from .clifford import galakhov_vev
from .genfun import Ctilde, c, ctilde
from .linalg import nullspace
from .scalars import ONE, ZERO, Scalar, q, sqrt_q, sqrt_t, t, u
from .superpartitions import SuperPartition, enumerate_level
from .superpoly import (
    GradedOperator,
    SuperPolynomial,
    anticommutator,
    d_pi,
    dominant_coefficient,
    identity,
    mul_pi,
)

__all__ = [
    "PRESENTATIONS",
    "DegeneracyError",
    "bosonic_part",
    "bilinear_part",
    "d_negative",
    "d_positive",
    "h_negative",
    "h_positive",
    "box_sum",
    "d_eigenvalue",
    "eigenvalue",
    "macdonald",
    "macdonald_basis",
    "expand_in_macdonald",
    "rm_bosonic",
    "galakhov_bilinear",
    "K_MINUS_ZERO",
]

PRESENTATIONS = ("closed_bilinear", "anticommutator", "vertex_integral")

# K^-_{i,0}; the K^+_{i,0} are 1
K_MINUS_ZERO = {1: -1 / u, 2: -(sqrt_t / sqrt_q) * u}


class DegeneracyError(ArithmeticError):
    pass


# building blocks ------------------------------------------------------------

@lru_cache(maxsize=None)
def bosonic_part() -> GradedOperator:
    """sum_{k>=1} c_k ctilde_k."""

    def rule(key: SuperPartition) -> SuperPolynomial:
        total = SuperPolynomial()
        for k in range(1, sum(key.bosons) + 1):
            total = total + c(k)(ctilde(k).apply_basis(key))
        return total

    return GradedOperator(0, rule, label="sum c_k ct_k")


@lru_cache(maxsize=None)
def bilinear_part(shift: int) -> GradedOperator:
    """sum_{k,l>=1} Ctilde(k, l) pi_{k+shift} d/dpi_{l+shift}."""

    def rule(key: SuperPartition) -> SuperPolynomial:
        total = SuperPolynomial()
        # pi_{k+shift} must fit in the output, which has the input's level
        kmax = int(floor(key.level + Fraction(1, 2))) - shift
        for a in key.fermions:
            ell = a - shift
            if ell < 1:
                continue
            step = d_pi(a).apply_basis(key)
            for k in range(1, kmax + 1):
                total = total + Ctilde(k, ell)(mul_pi(k + shift)(step))
        return total

    return GradedOperator(0, rule, label=f"sum Ct pi d/dpi (shift {shift})")


@lru_cache(maxsize=None)
def d_negative(i: int) -> GradedOperator:
    """The u-free operators D_{2,-} and D_{1,-} from the closed bilinear forms."""
    if i == 2:
        return -(bosonic_part() + bilinear_part(0))
    if i == 1:
        return -(bosonic_part() + bilinear_part(1))
    raise ValueError("i must be 1 or 2")


@lru_cache(maxsize=None)
def _residue(variant: str) -> GradedOperator:
    return vertex_residue(variant, 0, label=f"Res VB VB <VF VF> ({variant})")


@lru_cache(maxsize=None)
def d_positive(i: int) -> GradedOperator:
    """D_{2,+} = 1 - Res(plain) and D_{1,+} = 1 - Res(tilde)."""
    if i == 2:
        return identity() - _residue("plain")
    if i == 1:
        return identity() - _residue("tilde")
    raise ValueError("i must be 1 or 2")


@lru_cache(maxsize=None)
def h_negative(i: int) -> GradedOperator:
    """H_{2,-1} and H_{1,-1} from their closed fermion-bilinear forms."""
    if i == 2:
        # 1 - u (t/q)^1/2 H = D
        return (identity() - d_negative(2)).scaled(sqrt_q / (sqrt_t * u))
    if i == 1:
        # 1 + u H = D
        return (d_negative(1) - identity()).scaled(1 / u)
    raise ValueError("i must be 1 or 2")


@lru_cache(maxsize=None)
def h_positive(i: int, presentation: str = "vertex_integral") -> GradedOperator:
    """H_{2,+1} and H_{1,+1} as vertex residues or as anticommutators of charges."""
    if presentation == "vertex_integral":
        if i == 2:
            # -u^-1 (q/t)^1/2 H = Res
            return _residue("plain").scaled(-u * sqrt_t / sqrt_q)
        if i == 1:
            # u^-1 H = Res
            return _residue("tilde").scaled(u)
    elif presentation == "anticommutator":
        if i == 2:
            # [E21, F2-1]+ = (t/q)^1/2 u (1 + u^-1 (q/t)^1/2 H)
            ac = anticommutator(charge(2, "E", 1), charge(2, "F", -1))
            return (ac.scaled(sqrt_q / (sqrt_t * u)) - identity()).scaled(u * sqrt_t / sqrt_q)
        if i == 1:
            return anticommutator(charge(1, "E", 0), charge(1, "F", 2))
    else:
        raise ValueError(f"unknown presentation {presentation!r}")
    raise ValueError("i must be 1 or 2")


# eigenvalues ---------------------------------------------------------------

def box_sum(partition, a: Scalar, b: Scalar) -> Scalar:
    """sum over boxes (i, j) of a^(j-1) b^(i-1)."""
    total = ZERO
    for i, row in enumerate(partition):
        for j in range(row):
            total = total + a**j * b**i
    return total


def d_eigenvalue(i: int, sign: int, lam: SuperPartition) -> Scalar:
    """Eigenvalue of the u-free D_{i,sign} on M_lam."""
    shape = lam.circledstar() if i == 2 else lam.star()
    if sign < 0:
        return (t - 1) * (1 / q - 1) * box_sum(shape, 1 / q, t)
    return (1 / t - 1) * (q - 1) * box_sum(shape, q, 1 / t)


def eigenvalue(i: int, sign: int, lam: SuperPartition) -> Scalar:
    """Eigenvalue of H_{i,sign} on M_lam, including the u-prefactors."""
    d = d_eigenvalue(i, sign, lam)
    if (i, sign) == (2, -1):
        return (1 - d) * sqrt_q / (sqrt_t * u)
    if (i, sign) == (1, -1):
        return (d - 1) / u
    if (i, sign) == (2, 1):
        return (d - 1) * u * sqrt_t / sqrt_q
    if (i, sign) == (1, 1):
        return (1 - d) * u
    raise ValueError("need i in {1, 2} and sign in {-1, +1}")


# super Macdonald polynomials ------------------------------------------------

def _sector_block(op: GradedOperator, basis: list[SuperPartition]) -> list[list[Scalar]]:
    index = {k: j for j, k in enumerate(basis)}
    mat = [[ZERO] * len(basis) for _ in basis]
    for j, key in enumerate(basis):
        for k2, v in op.apply_basis(key).terms.items():
            mat[index[k2]][j] = v
    return mat


@lru_cache(maxsize=None)
def macdonald(lam: SuperPartition) -> SuperPolynomial:
    """M_lam as the joint eigenvector of the negative Hamiltonians (positive ones on degeneracy)."""
    basis = [k for k in enumerate_level(lam.level) if k.fermion_number == lam.fermion_number]
    rows: list[list[Scalar]] = []
    ops = [(d_negative(2), d_eigenvalue(2, -1, lam)), (d_negative(1), d_eigenvalue(1, -1, lam))]
    extra = [(d_positive(2), d_eigenvalue(2, 1, lam)), (d_positive(1), d_eigenvalue(1, 1, lam))]
    kernel = None
    for batch in (ops, extra):
        for op, ev in batch:
            block = _sector_block(op, basis)
            for r in range(len(basis)):
                block[r][r] = block[r][r] - ev
            rows.extend(block)
        kernel = nullspace(rows, len(basis))
        if len(kernel) <= 1:
            break
    if len(kernel) != 1:
        raise DegeneracyError(f"joint eigenspace for {lam} has dimension {len(kernel)}")
    vec = SuperPolynomial({k: v for k, v in zip(basis, kernel[0]) if v})
    norm = dominant_coefficient(vec, lam, max(lam.length, 1))
    if not norm:
        raise ArithmeticError(f"dominant coefficient of the {lam} eigenvector vanishes")
    return vec.scale(1 / norm)


def macdonald_basis(level) -> list[tuple[SuperPartition, SuperPolynomial]]:
    return [(lam, macdonald(lam)) for lam in enumerate_level(level)]


def expand_in_macdonald(f: SuperPolynomial) -> dict[SuperPartition, Scalar]:
    """Coefficients a_lam with f = sum a_lam M_lam (f may mix levels)."""
    from .linalg import solve

    out: dict[SuperPartition, Scalar] = {}
    for level in sorted(f.levels()):
        comp = f.component(level)
        for m in sorted({k.fermion_number for k, _ in comp}):
            part = SuperPolynomial({k: v for k, v in comp if k.fermion_number == m})
            labels = [k for k in enumerate_level(level) if k.fermion_number == m]
            cols = [[macdonald(lam).coefficient(k) for k in labels] for lam in labels]
            rhs = [part.coefficient(k) for k in labels]
            for lam, x in zip(labels, solve(cols, rhs)):
                if x:
                    out[lam] = x
    return out


# other presentations -------------------------------------------------------

@lru_cache(maxsize=None)
def rm_bosonic() -> GradedOperator:
    """sum_k c_k ctilde_k / (1 - t): the (q,t)-inverted bosonic Ruijsenaars-Macdonald operator."""
    return bosonic_part().scaled(1 / (1 - t))


@lru_cache(maxsize=None)
def galakhov_bilinear(i: int, k: int, ell: int) -> GradedOperator:
    """(1-t)(1/q-1) times the pi_k d/dpi_l coefficient rebuilt from the s / nu rule.

    C_{k,l} = sum_{n,m} Res w^{2(k-l+n-m)} <s^{-n} nu nu+ s^{l-1}> c_n ctilde_m,
    with s^{l-2} in place of s^{l-1} for i = 1.
    """
    if i not in (1, 2):
        raise ValueError("i must be 1 or 2")
    offset = 1 if i == 2 else 2
    terms = []
    for n in range(0, ell + 1):
        m = k - ell + n
        if m < 0:
            continue
        val = galakhov_vev([-n, "nu", "nu+", ell - offset])
        if val:
            terms.append((val, c(n), ctilde(m)))
    pref = (1 - t) * (1 / q - 1)

    def rule(key: SuperPartition) -> SuperPolynomial:
        base = SuperPolynomial._raw({key: ONE})
        total = SuperPolynomial()
        for val, cn, ctm in terms:
            total = total.add_scaled(cn(ctm(base)), val * pref)
        return total

    return GradedOperator(ell - k, rule, label=f"galakhov C_{k},{ell} (H{i})")
