"""Super partitions stored as doubled integer parts.

A part ``Lambda_i`` is kept as ``2*Lambda_i``; odd doubled values are the
fermionic (half-integer) rows and may not repeat.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

__all__ = [
    "SuperPartition",
    "SuperPartitionError",
    "validate",
    "parse",
    "enumerate_level",
    "enumerate_up_to",
    "fermion_sign_prefix",
    "character_counts",
    "to_doubled_level",
]

HalfInt = Union[int, Fraction, str]


class SuperPartitionError(ValueError):
    """Raised for sequences that do not define a super partition."""


@dataclass(frozen=True, order=True)
class SuperPartition:
    doubled: tuple[int, ...]

    # derived data -----------------------------------------------------
    @property
    def parts(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(d, 2) for d in self.doubled)

    @property
    def sigma(self) -> tuple[int, ...]:
        return tuple(d % 2 for d in self.doubled)

    @property
    def doubled_level(self) -> int:
        return sum(self.doubled)

    @property
    def level(self) -> Fraction:
        return Fraction(self.doubled_level, 2)

    @property
    def length(self) -> int:
        return len(self.doubled)

    def __len__(self) -> int:
        return len(self.doubled)

    @property
    def fermions(self) -> tuple[int, ...]:
        """Indices k of the pi_k factors of p_Lambda, strictly decreasing."""
        return tuple((d + 1) // 2 for d in self.doubled if d % 2)

    @property
    def bosons(self) -> tuple[int, ...]:
        """Indices of the p_k factors, weakly decreasing."""
        return tuple(d // 2 for d in self.doubled if d % 2 == 0)

    @property
    def fermion_number(self) -> int:
        return sum(d % 2 for d in self.doubled)

    def star(self) -> tuple[int, ...]:
        """Lambda - sigma/2, zeros dropped."""
        return tuple(p for p in (d // 2 for d in self.doubled) if p > 0)

    def circledstar(self) -> tuple[int, ...]:
        """Lambda + sigma/2."""
        return tuple((d + 1) // 2 for d in self.doubled)

    def odd_box_count(self) -> int:
        """Sum of the integer parts of the fermionic rows."""
        return sum(d // 2 for d in self.doubled if d % 2)

    @staticmethod
    def from_parts(fermions: Iterable[int], bosons: Iterable[int]) -> "SuperPartition":
        """Build from pi indices and p indices (no sign bookkeeping)."""
        doubled = [2 * k - 1 for k in fermions] + [2 * b for b in bosons]
        return validate(sorted(doubled, reverse=True))

    def __str__(self) -> str:
        if not self.doubled:
            return "()"
        return "(" + ",".join(_fmt_half(d) for d in self.doubled) + ")"

    def text(self) -> str:
        """The comma form accepted by :func:`parse`."""
        if not self.doubled:
            return "0"
        return ",".join(_fmt_half(d) for d in self.doubled)


def _fmt_half(d: int) -> str:
    return str(d // 2) if d % 2 == 0 else f"{d}/2"


def validate(doubled_parts: Sequence[int]) -> SuperPartition:
    parts = tuple(int(d) for d in doubled_parts)
    for i, d in enumerate(parts):
        if d <= 0:
            raise SuperPartitionError(f"part {i + 1} is not positive: {Fraction(d, 2)}")
        if i and parts[i - 1] < d:
            raise SuperPartitionError(f"parts not weakly decreasing at index {i + 1}")
        if i and d % 2 == 1 and parts[i - 1] == d:
            raise SuperPartitionError(f"repeated odd part {Fraction(d, 2)} at index {i + 1}")
    return SuperPartition(parts)


def parse(text: str, doubled: bool = False) -> SuperPartition:
    """Parse ``"3/2,1/2"`` (or ``"3,1"`` with ``doubled=True``); ``"0"`` or ``""`` is empty."""
    text = text.strip().strip("()[]")
    if text in ("", "0"):
        return SuperPartition(())
    items = [s.strip() for s in text.split(",") if s.strip()]
    if doubled:
        return validate([int(s) for s in items])
    vals = []
    for s in items:
        val = Fraction(s) * 2
        if val.denominator != 1:
            raise SuperPartitionError(f"{s} is not a half-integer")
        vals.append(int(val))
    vals = [v for v in vals if v != 0]
    return validate(vals)


def to_doubled_level(level: HalfInt) -> int:
    val = Fraction(level) * 2
    if val.denominator != 1 or val < 0:
        raise SuperPartitionError(f"level {level} is not a non-negative half-integer")
    return int(val)


@lru_cache(maxsize=None)
def _enumerate_doubled(n: int) -> tuple[SuperPartition, ...]:
    out: list[tuple[int, ...]] = []

    def rec(remaining: int, max_part: int, last_odd: int | None, acc: list[int]) -> None:
        if remaining == 0:
            out.append(tuple(acc))
            return
        for d in range(min(remaining, max_part), 0, -1):
            if d % 2 == 1 and d == last_odd:
                continue
            acc.append(d)
            rec(remaining - d, d, d if d % 2 else None, acc)
            acc.pop()

    rec(n, n, None, [])
    out.sort(reverse=True)
    return tuple(SuperPartition(p) for p in out)


def enumerate_level(level: HalfInt) -> list[SuperPartition]:
    """All super partitions of the given level, descending lexicographic in doubled parts."""
    return list(_enumerate_doubled(to_doubled_level(level)))


def enumerate_up_to(level: HalfInt) -> list[SuperPartition]:
    n = to_doubled_level(level)
    result: list[SuperPartition] = []
    for m in range(n + 1):
        result.extend(_enumerate_doubled(m))
    return result


def fermion_sign_prefix(lam: SuperPartition, k: int) -> int:
    """(-1)^F(k) where F(k) counts fermionic rows strictly above row k."""
    if not 1 <= k <= lam.length + 1:
        raise IndexError(f"row {k} out of range 1..{lam.length + 1}")
    return -1 if sum(lam.sigma[: k - 1]) % 2 else 1


def character_counts(nmax: int) -> list[int]:
    """Coefficients of prod_k (1+x^(2k-1))/(1-x^(2k)) up to x^nmax."""
    coeffs = [1] + [0] * nmax
    for k in range(1, nmax + 1):
        if 2 * k - 1 <= nmax:
            odd = 2 * k - 1
            for n in range(nmax, odd - 1, -1):
                coeffs[n] += coeffs[n - odd]
        if 2 * k <= nmax:
            even = 2 * k
            for n in range(even, nmax + 1):
                coeffs[n] += coeffs[n - even]
    return coeffs
