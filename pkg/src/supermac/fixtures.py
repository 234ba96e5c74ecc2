"""Reference super Macdonald polynomials through level 4.

The data file stores coefficients as rational-function strings in q and t;
sympy turns them into exact :class:`~supermac.scalars.Scalar` values.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import sympy

from .scalars import POLY_CTX, Scalar
from .superpartitions import SuperPartition, parse
from .superpoly import SuperPolynomial, basis_key

__all__ = ["scalar_from_text", "scalar_to_sympy", "pretty_scalar", "monomial_from_text", "reference_polynomials"]

_Q, _T, _U = sympy.symbols("q t u")
# q^(1/2), t^(1/2): parsing happens in these so half-integer powers stay polynomial
_RQ, _RT = sympy.symbols("Q T", positive=True)


def _poly_to_flint(expr) -> "object":
    poly = sympy.Poly(expr, _RQ, _RT, _U)
    terms = {}
    for (a, b, c), coeff in poly.terms():
        if coeff.q != 1:
            raise ValueError("expected integer coefficients")
        terms[(a, b, c)] = int(coeff)
    return POLY_CTX.from_dict(terms)


def scalar_from_text(text: str) -> Scalar:
    """Exact Scalar from an expression such as ``"q*(1-t)/(1-q*t)"`` or ``"q**(1/2)*u"``."""
    expr = sympy.sympify(text, locals={"q": _RQ**2, "t": _RT**2, "u": _U})
    num, den = sympy.fraction(sympy.together(sympy.powsimp(expr)))
    # clear rational content so both sides are integer polynomials
    num_c, num_p = sympy.Poly(num, _RQ, _RT, _U).primitive()
    den_c, den_p = sympy.Poly(den, _RQ, _RT, _U).primitive()
    ratio = sympy.Rational(num_c) / sympy.Rational(den_c)
    n = _poly_to_flint(num_p.as_expr()) * int(ratio.p)
    d = _poly_to_flint(den_p.as_expr()) * int(ratio.q)
    return Scalar.of(n) / Scalar.of(d)


def _poly_to_sympy(poly):
    out = sympy.Integer(0)
    for (a, b, c), coeff in poly.to_dict().items():
        out += int(coeff) * _Q ** sympy.Rational(a, 2) * _T ** sympy.Rational(b, 2) * _U**c
    return out


def scalar_to_sympy(s: Scalar):
    return _poly_to_sympy(s.num) / _poly_to_sympy(s.den)


def pretty_scalar(s: Scalar) -> str:
    """Factored display form, e.g. ``1-t`` or ``q*(t-1)/(q*t-1)``."""
    return sympy.sstr(sympy.factor(scalar_to_sympy(s))).replace(" ", "")


def monomial_from_text(text: str) -> tuple[int, SuperPartition]:
    """(sign, basis element) for a product like ``p_1*p_1*pi_3*pi_1``."""
    fermions: list[int] = []
    bosons: list[int] = []
    if text.strip() != "1":
        for factor in text.split("*"):
            name, _, idx = factor.strip().partition("_")
            base, _, power = idx.partition("^")
            k = int(base)
            reps = int(power) if power else 1
            if name == "p":
                bosons.extend([k] * reps)
            elif name == "pi":
                if reps != 1:
                    return 0, SuperPartition(())
                fermions.append(k)
            else:
                raise ValueError(f"unknown factor {factor!r}")
    if len(set(fermions)) != len(fermions):
        return 0, SuperPartition(())
    # sort the pi-word into decreasing order, tracking the permutation sign
    sign = 1
    word = list(fermions)
    for i in range(len(word)):
        for j in range(len(word) - 1 - i):
            if word[j] < word[j + 1]:
                word[j], word[j + 1] = word[j + 1], word[j]
                sign = -sign
    return sign, basis_key(word, bosons)


@lru_cache(maxsize=None)
def reference_polynomials() -> tuple[tuple[SuperPartition, SuperPolynomial], ...]:
    raw = json.loads(resources.files("supermac").joinpath("data/macdonald_level4.json").read_text())
    out = []
    for item in raw["polynomials"]:
        terms: dict[SuperPartition, Scalar] = {}
        for mono, coeff in item["terms"].items():
            sign, key = monomial_from_text(mono)
            val = scalar_from_text(coeff)
            terms[key] = terms.get(key, Scalar.of(0)) + (val if sign > 0 else -val)
        out.append((parse(item["partition"]), SuperPolynomial(terms)))
    return tuple(out)
