"""Exact scalars in Q(q^(1/2), t^(1/2), u).

Polynomials are ``flint.fmpz_mpoly`` objects in the generators
``Q = q^(1/2)``, ``T = t^(1/2)`` and ``u`` under graded lexicographic order.
A :class:`Scalar` is a reduced fraction of two such polynomials whose
denominator has a positive leading coefficient, so two equal scalars always
have identical numerators and denominators.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

import flint

__all__ = [
    "IntPoly",
    "POLY_CTX",
    "Scalar",
    "normalize",
    "invert_qt",
    "qt_integer",
    "q",
    "t",
    "u",
    "sqrt_q",
    "sqrt_t",
    "ONE",
    "ZERO",
    "qpow",
    "tpow",
    "upow",
    "monomial",
]

POLY_CTX = flint.fmpz_mpoly_ctx.get(("Q", "T", "u"), "deglex")
IntPoly = flint.fmpz_mpoly

_Q, _T, _U = POLY_CTX.gens()
_P_ONE = POLY_CTX.from_dict({(0, 0, 0): 1})
_P_ZERO = POLY_CTX.from_dict({})

ScalarLike = Union["Scalar", int, Fraction]


def _as_poly(value) -> IntPoly:
    if isinstance(value, flint.fmpz_mpoly):
        return value
    if isinstance(value, int):
        return POLY_CTX.from_dict({(0, 0, 0): value}) if value else _P_ZERO
    raise TypeError(f"cannot interpret {type(value).__name__} as a polynomial")


class Scalar:
    """An immutable reduced fraction ``num/den``.

    Use :func:`normalize` or the arithmetic operators to build values; the
    raw constructor trusts its arguments to be already reduced.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: IntPoly, den: IntPoly):
        self.num = num
        self.den = den
        self._hash = None

    # construction -----------------------------------------------------
    @staticmethod
    def of(value: ScalarLike) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return Scalar(_as_poly(value), _P_ONE)
        if isinstance(value, Fraction):
            return normalize(_as_poly(value.numerator), _as_poly(value.denominator))
        if isinstance(value, flint.fmpz_mpoly):
            return Scalar(value, _P_ONE)
        raise TypeError(f"cannot convert {type(value).__name__} to Scalar")

    # predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    # arithmetic -------------------------------------------------------
    def __add__(self, other: ScalarLike) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            return normalize(self.num + other.num, self.den)
        return normalize(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(-self.num, self.den)

    def __sub__(self, other: ScalarLike) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: ScalarLike) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return Scalar(self.num * other.num, _P_ONE)
        # cross-cancel before multiplying to keep the gcds small
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        num = (self.num // g1) * (other.num // g2)
        den = (self.den // g2) * (other.den // g1)
        return _fix_sign(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero Scalar")
        return _fix_sign(self.den, self.num)

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: ScalarLike) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> "Scalar":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return Scalar(self.num**n, self.den**n)

    # comparison -------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Scalar):
            try:
                other = Scalar.of(other)  # type: ignore[arg-type]
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __ne__(self, other: object) -> bool:
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((tuple(self.num.terms()), tuple(self.den.terms())))
        return self._hash

    # conversions ------------------------------------------------------
    def evaluate(self, Q: Fraction, T: Fraction, U: Fraction) -> Fraction:
        """Evaluate at ``q^(1/2)=Q, t^(1/2)=T, u=U`` as an exact rational."""
        return _eval_poly(self.num, Q, T, U) / _eval_poly(self.den, Q, T, U)

    def to_json(self) -> dict:
        return {"num": _poly_to_json(self.num), "den": _poly_to_json(self.den)}

    @staticmethod
    def from_json(data: dict) -> "Scalar":
        return normalize(_poly_from_json(data["num"]), _poly_from_json(data["den"]))

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def __str__(self) -> str:
        num = format_poly(self.num)
        if self.den.is_one():
            return num
        den = format_poly(self.den)
        if len(self.num) > 1:
            num = f"({num})"
        if len(self.den) > 1 or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"


def _coerce(value) -> Scalar:
    if isinstance(value, Scalar):
        return value
    try:
        return Scalar.of(value)
    except TypeError:
        return NotImplemented  # type: ignore[return-value]


def _leading_sign(poly: IntPoly) -> int:
    return 1 if poly.leading_coefficient() > 0 else -1


def _fix_sign(num: IntPoly, den: IntPoly) -> Scalar:
    if _leading_sign(den) < 0:
        num, den = -num, -den
    return Scalar(num, den)


def normalize(num, den) -> Scalar:
    """Reduce ``num/den`` to canonical form."""
    num, den = _as_poly(num), _as_poly(den)
    if den.is_zero():
        raise ZeroDivisionError("Scalar with zero denominator")
    if num.is_zero():
        return Scalar(_P_ZERO, _P_ONE)
    if den.is_one():
        return Scalar(num, den)
    g = num.gcd(den)
    if not g.is_one():
        num, den = num // g, den // g
    return _fix_sign(num, den)


def _reverse_qt(poly: IntPoly) -> tuple[IntPoly, int, int]:
    """Return (P~, dQ, dT) with P(1/Q, 1/T, u) = P~ / (Q^dQ T^dT)."""
    degs = poly.degrees()
    dq, dt = degs[0], degs[1]
    data = {(dq - a, dt - b, c): int(coef) for (a, b, c), coef in poly.terms()}
    return POLY_CTX.from_dict(data), dq, dt


def invert_qt(s: ScalarLike) -> Scalar:
    """Apply the involution (q, t) -> (1/q, 1/t), leaving u fixed."""
    s = Scalar.of(s)
    if s.num.is_zero():
        return s
    n, nq, nt = _reverse_qt(s.num)
    d, dq, dt = _reverse_qt(s.den)
    # n/(Q^nq T^nt) divided by d/(Q^dq T^dt)
    eq, et = dq - nq, dt - nt
    num = n * _Q ** max(eq, 0) * _T ** max(et, 0)
    den = d * _Q ** max(-eq, 0) * _T ** max(-et, 0)
    return normalize(num, den)


def qt_integer(n: int, t1: ScalarLike, t2: ScalarLike) -> Scalar:
    """The symmetric quantum integer sum_{k<n} t1^k t2^(n-1-k)."""
    if n <= 0:
        raise ValueError(f"qt_integer needs n >= 1, got {n}")
    t1, t2 = Scalar.of(t1), Scalar.of(t2)
    total = ZERO
    for k in range(n):
        total = total + t1**k * t2 ** (n - 1 - k)
    return total


def monomial(a: int, b: int, c: int, coeff: int = 1) -> Scalar:
    """``coeff * Q^a T^b u^c`` with possibly negative exponents."""
    num = POLY_CTX.from_dict({(max(a, 0), max(b, 0), max(c, 0)): coeff})
    den = POLY_CTX.from_dict({(max(-a, 0), max(-b, 0), max(-c, 0)): 1})
    return normalize(num, den)


def qpow(e: Union[int, Fraction]) -> Scalar:
    """q**e for integer or half-integer e."""
    return monomial(_doubled(e), 0, 0)


def tpow(e: Union[int, Fraction]) -> Scalar:
    """t**e for integer or half-integer e."""
    return monomial(0, _doubled(e), 0)


def upow(e: int) -> Scalar:
    return monomial(0, 0, e)


def _doubled(e: Union[int, Fraction]) -> int:
    two_e = Fraction(e) * 2
    if two_e.denominator != 1:
        raise ValueError(f"exponent {e} is not a half-integer")
    return int(two_e)


# formatting / serialization ------------------------------------------------

def _eval_poly(poly: IntPoly, Q: Fraction, T: Fraction, U: Fraction) -> Fraction:
    total = Fraction(0)
    for (a, b, c), coef in poly.terms():
        total += int(coef) * Fraction(Q) ** a * Fraction(T) ** b * Fraction(U) ** c
    return total


def _poly_to_json(poly: IntPoly) -> list:
    return [{"coeff": str(int(coef)), "exp": [int(e) for e in exp]} for exp, coef in poly.terms()]


def _poly_from_json(items: Iterable[dict]) -> IntPoly:
    data: dict = {}
    for item in items:
        exp = tuple(int(e) for e in item["exp"])
        data[exp] = data.get(exp, 0) + int(item["coeff"])
    return POLY_CTX.from_dict({k: v for k, v in data.items() if v})


def _half_power(name: str, e: int) -> str:
    if e == 2:
        return name
    if e % 2 == 0:
        return f"{name}^{e // 2}"
    return f"{name}^({e}/2)"


def format_poly(poly: IntPoly) -> str:
    """Human readable form using q, t, u (odd exponents shown as k/2)."""
    if poly.is_zero():
        return "0"
    pieces = []
    for (a, b, c), coef in poly.terms():
        coef = int(coef)
        factors = []
        if a:
            factors.append(_half_power("q", a))
        if b:
            factors.append(_half_power("t", b))
        if c:
            factors.append("u" if c == 1 else f"u^{c}")
        mono = "*".join(factors)
        mag = abs(coef)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        pieces.append(("-" if coef < 0 else "+", body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


ZERO = Scalar(_P_ZERO, _P_ONE)
ONE = Scalar(_P_ONE, _P_ONE)
sqrt_q = Scalar(_Q, _P_ONE)
sqrt_t = Scalar(_T, _P_ONE)
q = Scalar(_Q * _Q, _P_ONE)
t = Scalar(_T * _T, _P_ONE)
u = Scalar(_U, _P_ONE)
