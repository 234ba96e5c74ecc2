"""Exact linear algebra over Q(q^1/2, t^1/2, u).

Rows are cleared of denominators and reduced by fraction-free (Bareiss)
elimination over the integer polynomial ring, so intermediate entries stay
polynomial and every division is exact.
"""

from __future__ import annotations

from typing import Sequence

from .scalars import ONE, ZERO, IntPoly, POLY_CTX, Scalar

__all__ = ["nullspace", "solve", "rank", "SingularSystemError"]


class SingularSystemError(ArithmeticError):
    pass


def _lcm(a: IntPoly, b: IntPoly) -> IntPoly:
    return (a * b) / a.gcd(b)


def _clear_row(row: Sequence[Scalar]) -> list[IntPoly]:
    den = POLY_CTX.from_dict({(0, 0, 0): 1})
    for s in row:
        if s:
            den = _lcm(den, s.den)
    return [s.num * (den / s.den) if s else POLY_CTX.from_dict({}) for s in row]


def _echelon(rows: Sequence[Sequence[Scalar]]) -> tuple[list[list[IntPoly]], list[int]]:
    """Fraction-free row echelon form and the pivot columns."""
    mat = [_clear_row([Scalar.of(x) for x in row]) for row in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    prev = POLY_CTX.from_dict({(0, 0, 0): 1})
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == len(mat):
            break
        # pick the pivot with the fewest terms to limit growth
        best = None
        for i in range(r, len(mat)):
            if mat[i][col] != 0 and (best is None or len(mat[i][col]) < len(mat[best][col])):
                best = i
        if best is None:
            continue
        mat[r], mat[best] = mat[best], mat[r]
        piv = mat[r][col]
        for i in range(r + 1, len(mat)):
            lead = mat[i][col]
            row_i = mat[i]
            if lead == 0:
                # Bareiss still rescales the row to keep the determinant invariant
                for j in range(col + 1, ncols):
                    if row_i[j] != 0:
                        row_i[j] = (piv * row_i[j]) / prev
                continue
            row_r = mat[r]
            for j in range(col + 1, ncols):
                row_i[j] = (piv * row_i[j] - lead * row_r[j]) / prev
            row_i[col] = POLY_CTX.from_dict({})
        prev = piv
        pivots.append(col)
        r += 1
    return mat[:r], pivots


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    return len(_echelon(rows)[1])


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int | None = None) -> list[list[Scalar]]:
    """A basis of {x : rows . x = 0}, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[ONE if j == f else ZERO for j in range(ncols)] for f in range(ncols)]
    ech, pivots = _echelon(rows)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for r in range(len(pivots) - 1, -1, -1):
            p = pivots[r]
            acc = ZERO
            for j in range(p + 1, ncols):
                if x[j] and ech[r][j] != 0:
                    acc = acc + Scalar(ech[r][j], ONE.den) * x[j]
            x[p] = -acc / Scalar(ech[r][p], ONE.den)
        basis.append(x)
    return basis


def solve(columns: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]) -> list[Scalar]:
    """The unique x with sum_j x_j columns[j] = rhs."""
    n = len(columns)
    m = len(rhs)
    rows = [[columns[j][i] for j in range(n)] + [-Scalar.of(rhs[i])] for i in range(m)]
    kernel = nullspace(rows, n + 1)
    candidates = [v for v in kernel if v[n]]
    if len(kernel) != 1 or not candidates:
        raise SingularSystemError(f"system has no unique solution (kernel dimension {len(kernel)})")
    v = candidates[0]
    return [x / v[n] for x in v[:n]]
