"""Words in auxiliary fermions and their vacuum expectation values.

Letters are pairs ``(kind, index)`` with kinds

* ``"psid"``  psi_m^dagger  (creates on the auxiliary vacuum)
* ``"psi"``   psi_m         (kills the auxiliary vacuum)
* ``"pi"``    pi_k          (multiplication)
* ``"dpi"``   d/dpi_k       (left derivative)

All four kinds are odd and mutually anticommuting except for the canonical
pairs {psi_m, psi_m^dagger} = 1 and {d/dpi_k, pi_k} = 1.  Each term of a
:class:`CliffordWord` also carries an integer power of the formal variable w.
"""

from __future__ import annotations

from math import factorial
from typing import Callable, Iterable, Mapping, Sequence

from .scalars import ONE, ZERO, Scalar, q, t

__all__ = [
    "Letter",
    "CliffordWord",
    "FermionOp",
    "exp_free",
    "clifford_vev",
    "normal_order",
    "galakhov_vev",
    "GalakhovError",
]

Letter = tuple[str, int]
Term = tuple[tuple[Letter, ...], int]

# global alphabet used when sorting words whose letters anticommute freely
_RANK = {"psid": 0, "psi": 1, "pi": 2, "dpi": 3}


def _sort_key(letter: Letter) -> tuple[int, int]:
    return _RANK[letter[0]], letter[1]


class CliffordWord:
    """Finite linear combination of letter words times powers of w."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Term, Scalar] | None = None):
        self.terms: dict[Term, Scalar] = {}
        if terms:
            for key, val in terms.items():
                val = Scalar.of(val)
                if val:
                    self.terms[key] = val

    @staticmethod
    def one() -> "CliffordWord":
        return CliffordWord({((), 0): ONE})

    @staticmethod
    def letter(kind: str, index: int, coeff=1, wpow: int = 0) -> "CliffordWord":
        if kind not in _RANK:
            raise ValueError(f"unknown letter kind {kind!r}")
        return CliffordWord({(((kind, index),), wpow): Scalar.of(coeff)})

    def grade(self) -> int | None:
        """Z2 grade, or None for an inhomogeneous combination."""
        grades = {len(w) % 2 for (w, _) in self.terms}
        if len(grades) > 1:
            return None
        return grades.pop() if grades else 0

    def __add__(self, other: "CliffordWord") -> "CliffordWord":
        out = dict(self.terms)
        for key, val in other.terms.items():
            new = out.get(key, ZERO) + val
            if new:
                out[key] = new
            else:
                out.pop(key, None)
        return CliffordWord(out)

    def scale(self, s) -> "CliffordWord":
        s = Scalar.of(s)
        return CliffordWord({k: v * s for k, v in self.terms.items()})

    def __mul__(self, other) -> "CliffordWord":
        if not isinstance(other, CliffordWord):
            return self.scale(other)
        out: dict[Term, Scalar] = {}
        for (wa, ea), va in self.terms.items():
            for (wb, eb), vb in other.terms.items():
                key = (wa + wb, ea + eb)
                out[key] = out.get(key, ZERO) + va * vb
        return CliffordWord(out)

    def canonical_free(self) -> "CliffordWord":
        """Sort letters assuming every pair anticommutes (no canonical pairs present)."""
        out: dict[Term, Scalar] = {}
        for (word, e), val in self.terms.items():
            sign, sorted_word = _sort_with_sign(word)
            if not sign:
                continue
            key = (sorted_word, e)
            out[key] = out.get(key, ZERO) + (val if sign > 0 else -val)
        return CliffordWord(out)

    def filter(self, keep: Callable[[tuple[Letter, ...], int], bool]) -> "CliffordWord":
        return CliffordWord({k: v for k, v in self.terms.items() if keep(*k)})

    def __repr__(self) -> str:
        return f"CliffordWord({len(self.terms)} terms)"


def _sort_with_sign(word: Sequence[Letter]) -> tuple[int, tuple[Letter, ...]]:
    letters = list(word)
    if len(set(letters)) != len(letters):
        return 0, ()
    _check_free(letters)
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(letters)):
        j = i
        while j > 0 and _sort_key(letters[j - 1]) > _sort_key(letters[j]):
            letters[j - 1], letters[j] = letters[j], letters[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(letters)


def _check_free(letters: Iterable[Letter]) -> None:
    seen = set(letters)
    for kind, idx in seen:
        partner = {"psi": "psid", "psid": "psi", "pi": "dpi", "dpi": "pi"}[kind]
        if (partner, idx) in seen:
            raise ValueError(f"canonical pair ({kind},{idx}) present; free sorting is not valid")


def exp_free(x: CliffordWord, max_order: int, keep=None) -> CliffordWord:
    """exp(x) for an even element built from freely anticommuting letters.

    Terms of order above ``max_order`` are dropped; ``keep`` may prune words
    (for example by the number of pi letters) after each multiplication.
    """
    if x.grade() not in (0, None) and x.terms:
        raise ValueError("exp_free needs an even element")
    total = CliffordWord.one()
    power = CliffordWord.one()
    for n in range(1, max_order + 1):
        power = (power * x).canonical_free()
        if keep is not None:
            power = power.filter(keep)
        if not power.terms:
            break
        total = total + power.scale(Scalar.of(1) / factorial(n))
    return total


# vacuum expectation values ---------------------------------------------------

# (creators, annihilators, w-power) -> Scalar, operator pi_c1 ... d_a1 ...
FermionOp = dict[tuple[tuple[int, ...], tuple[int, ...], int], Scalar]


def _wick(psis: tuple[Letter, ...]) -> int:
    """<0| psis |0> with psi|0> = 0, <0|psi^dagger = 0 and <psi_m psi_n^dagger> = delta."""
    if not psis:
        return 1
    if len(psis) % 2:
        return 0
    first = psis[0]
    if first[0] != "psi":
        return 0
    total = 0
    for j in range(1, len(psis)):
        other = psis[j]
        if other[0] == "psid" and other[1] == first[1]:
            rest = psis[1:j] + psis[j + 1 :]
            sign = -1 if (j - 1) % 2 else 1
            total += sign * _wick(rest)
    return total


def normal_order(letters: Sequence[Letter]) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    """Move pi letters left of d/dpi letters with transposition signs only."""
    sign = 1
    creators: list[int] = []
    annihilators: list[int] = []
    for kind, idx in letters:
        if kind == "pi":
            # crosses every d/dpi already collected
            if len(annihilators) % 2:
                sign = -sign
            creators.append(idx)
        elif kind == "dpi":
            annihilators.append(idx)
        else:
            raise ValueError(f"normal_order got auxiliary letter {kind}")
    return sign, tuple(creators), tuple(annihilators)


def clifford_vev(word: CliffordWord) -> FermionOp:
    """Auxiliary-vacuum expectation value; leaves a normal-ordered pi/d-pi operator."""
    out: FermionOp = {}
    for (letters, e), val in word.terms.items():
        psis: list[Letter] = []
        rest: list[Letter] = []
        sign = 1
        for letter in letters:
            if letter[0] in ("psi", "psid"):
                psis.append(letter)
            else:
                # the auxiliary letters already passed must move right across this one
                if len(psis) % 2:
                    sign = -sign
                rest.append(letter)
        contraction = _wick(tuple(psis))
        if not contraction:
            continue
        s2, cre, ann = normal_order(rest)
        key = (cre, ann, e)
        total = sign * s2 * contraction
        out[key] = out.get(key, ZERO) + (val if total > 0 else -val)
    return {k: v for k, v in out.items() if v}


# the s / nu rule ------------------------------------------------------------

class GalakhovError(ValueError):
    """Malformed word for the s / nu expectation value."""


def galakhov_vev(word: Sequence) -> Scalar:
    """Expectation value of a word in s^a (integers), ``"nu"`` and ``"nu+"``.

    <s^a> = 1 and <nu nu+ s^b> = (1 - (q t)^(b+1)) / (q^b (1 - q t)) for b >= 0,
    zero for b < 0.  The nu-letters must appear as one ordered pair.
    """
    s_power = 0
    nus: list[str] = []
    for token in word:
        if isinstance(token, int):
            s_power += token
        elif token in ("nu", "nu+"):
            nus.append(token)
        else:
            raise GalakhovError(f"unknown token {token!r}")
    if not nus:
        return ONE
    if nus != ["nu", "nu+"]:
        raise GalakhovError(f"expected one ordered pair nu nu+, got {nus}")
    b = s_power
    if b < 0:
        return ZERO
    return (1 - (q * t) ** (b + 1)) / (q**b * (1 - q * t))
