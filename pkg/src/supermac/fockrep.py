"""The super Fock representation and the vector representation V(u).

A Fock basis state |lam, sigma> is labelled by a partition lam and a grading
vector sigma.  It corresponds to the super partition whose doubled parts are
2*lam_i - sigma_i, so lam = Lambda^circledstar; the state stands for M_Lambda.

E_{s,n} adds half a box to a row k (s = 1 grows lam_k and sets sigma_k = 1,
s = 2 only clears sigma_k), F_{s,n} undoes it.  Coefficients are the Pieri
coefficients psi_k^(s), psi~_k^(s) times the mode factor z_k^n, where z_k is
the point at which the current is supported.

Conventions: q1 q2^-1 = t^-1, q1 q2 = q, and the Cartan series are the
rational functions whose expansion at z = infinity is z^{r_i} K_i^+(z)
(r_1 = -1, r_2 = +1) and at z = 0 is K_i^-(z).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .scalars import ONE, ZERO, Scalar, qpow, sqrt_q, sqrt_t, t, tpow, u
from .superpartitions import SuperPartition, SuperPartitionError, enumerate_up_to, validate
from .superpoly import GradedOperator, SuperPolynomial, WindowError

__all__ = [
    "FockState",
    "VectorState",
    "CartanSeries",
    "SHIFTS",
    "pieri_E",
    "pieri_F",
    "pieri",
    "pieri_on_macdonald",
    "pieri_operator",
    "cartan_series",
    "cartan_function",
    "hamiltonian_from_cartan",
    "vector_action",
    "vector_cartan",
    "check_vector_relation",
    "check_shifted_EF",
]

SHIFTS = {1: -1, 2: 1}

Combination = dict  # FockState -> Scalar


@dataclass(frozen=True, order=True)
class FockState:
    lam: tuple[int, ...]
    sigma: tuple[int, ...]

    def __post_init__(self):
        if len(self.lam) != len(self.sigma):
            raise ValueError("lam and sigma must have equal length")

    @property
    def length(self) -> int:
        return len(self.lam)

    @staticmethod
    def vacuum() -> "FockState":
        return FockState((), ())

    @staticmethod
    def from_superpartition(lam: SuperPartition) -> "FockState":
        return FockState(lam.circledstar(), lam.sigma)

    def doubled(self) -> tuple[int, ...]:
        d = [2 * a - s for a, s in zip(self.lam, self.sigma)]
        # empty trailing rows carry no boxes and no fermion
        while d and d[-1] == 0:
            d.pop()
        return tuple(d)

    def is_valid(self) -> bool:
        try:
            self.to_superpartition()
        except SuperPartitionError:
            return False
        return True

    def to_superpartition(self) -> SuperPartition:
        d = self.doubled()
        if any(x <= 0 for x in d):
            raise SuperPartitionError(f"{self} has an empty row above a filled one")
        return validate(d)

    def canonical(self) -> "FockState":
        n = len(self.doubled())
        return FockState(self.lam[:n], self.sigma[:n])

    def fermion_prefix(self, k: int) -> int:
        """F(k): the number of fermionic rows strictly above row k."""
        return sum(self.sigma[: k - 1])

    def __str__(self) -> str:
        return f"|{self.lam},{self.sigma}>"


@dataclass(frozen=True)
class VectorState:
    """[u]_{k, sigma} of the vector representation V(u)."""

    k: int
    sigma: int

    def __post_init__(self):
        if self.sigma not in (0, 1):
            raise ValueError("sigma must be 0 or 1")


def _zbar(s: int) -> int:
    """s as an element of Z_2 (E_2 is identified with E_0)."""
    if s not in (1, 2):
        raise ValueError("s must be 1 or 2")
    return s % 2


def _one_minus(qe, te) -> Scalar:
    return 1 - qpow(qe) * tpow(te)


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


# Pieri coefficients ---------------------------------------------------------

def _psi(s: int, state: FockState, k: int) -> Scalar:
    lam = state.lam + (0,)
    sig = state.sigma + (0,)
    lk = lam[k - 1]
    val = Scalar.of(_sign(state.fermion_prefix(k)))
    if s == 1:
        for i in range(1, k):
            a = lam[i - 1] - lk - sig[i - 1]
            val = val * _one_minus(a, k - i - 1) / _one_minus(a, k - i)
    else:
        val = val * (1 - t)
        for i in range(1, k):
            a = lam[i - 1] - lk
            val = val * _one_minus(a, 1 + k - i) / _one_minus(a, k - i)
    return val


def _psi_tilde(s: int, state: FockState, k: int) -> Scalar:
    lam, sig, ell = state.lam, state.sigma, state.length
    lk = lam[k - 1]
    if s == 1:
        val = _sign(state.fermion_prefix(k)) * tpow(k - 1) * (1 - t) / (u * _one_minus(lk - 1, ell - k + 1))
        for i in range(k + 1, ell + 1):
            a = lk - lam[i - 1] - 1 + sig[i - 1]
            val = val * _one_minus(a, i - k + 1) / _one_minus(a, i - k)
    else:
        val = _sign(state.fermion_prefix(k) + 1) * u * sqrt_t / sqrt_q * tpow(-k) * _one_minus(lk, ell - k)
        for i in range(k + 1, ell + 1):
            a = lk - lam[i - 1]
            val = val * _one_minus(a, i - k - 1) / _one_minus(a, i - k)
    return val


def _e_point(s: int, lk: int, k: int) -> Scalar:
    """Support of E_s(z) when row k (current length lk) is acted on."""
    half = Fraction(1 - _zbar(s), 2)
    return u * tpow(1 - k - half) * qpow(lk - half)


def _f_point(s: int, lk: int, k: int) -> Scalar:
    half = Fraction(1 + _zbar(s), 2)
    return u * qpow(lk - half) * tpow(half - k)


def _accumulate(out: Combination, target: FockState, coeff: Scalar) -> None:
    if not coeff:
        return
    if not target.is_valid():
        raise ArithmeticError(f"nonzero Pieri coefficient {coeff} on the invalid state {target}")
    target = target.canonical()
    new = out.get(target, ZERO) + coeff
    if new:
        out[target] = new
    else:
        out.pop(target, None)


def pieri_E(s: int, n: int, state: FockState) -> Combination:
    """E_{s,n}|state> as {FockState: coefficient}."""
    sbar = _zbar(s)
    lam = state.lam + (0,)
    sig = state.sigma + (0,)
    out: Combination = {}
    for k in range(1, len(lam) + 1):
        if (sbar + sig[k - 1]) % 2 != 1:
            continue
        new_lam = list(lam)
        new_sig = list(sig)
        new_lam[k - 1] += sbar
        new_sig[k - 1] = 1 - sig[k - 1]
        coeff = _psi(s, state, k) * _e_point(s, lam[k - 1], k) ** n
        _accumulate(out, FockState(tuple(new_lam), tuple(new_sig)), coeff)
    return out


def pieri_F(s: int, n: int, state: FockState) -> Combination:
    """F_{s,n}|state> as {FockState: coefficient}."""
    sbar = _zbar(s)
    out: Combination = {}
    for k in range(1, state.length + 1):
        if (sbar + state.sigma[k - 1]) % 2 != 0:
            continue
        new_lam = list(state.lam)
        new_sig = list(state.sigma)
        new_lam[k - 1] -= sbar
        new_sig[k - 1] = 1 - state.sigma[k - 1]
        coeff = _psi_tilde(s, state, k) * _f_point(s, state.lam[k - 1], k) ** n
        _accumulate(out, FockState(tuple(new_lam), tuple(new_sig)), coeff)
    return out


def pieri(side: str, s: int, n: int, state: FockState) -> Combination:
    side = side.upper()
    if side == "E":
        return pieri_E(s, n, state)
    if side == "F":
        return pieri_F(s, n, state)
    raise ValueError("side must be 'E' or 'F'")


def pieri_on_macdonald(side: str, s: int, n: int, lam: SuperPartition) -> dict[SuperPartition, Scalar]:
    """The Pieri rule read as an expansion in super Macdonald polynomials."""
    image = pieri(side, s, n, FockState.from_superpartition(lam))
    return {st.to_superpartition(): v for st, v in image.items()}


def pieri_operator(side: str, s: int, n: int, level_cap) -> GradedOperator:
    """E_{s,n} or F_{s,n} on the p / pi space for inputs of level <= level_cap.

    Each basis element is expanded in super Macdonald polynomials, moved by the
    Pieri rule and expanded back.
    """
    from .hamiltonians import expand_in_macdonald, macdonald

    side = side.upper()
    degree = Fraction(1, 2) if side == "E" else Fraction(-1, 2)
    level_cap = Fraction(level_cap)
    label = f"{side}{s},{n} (Pieri)"

    def rule(key: SuperPartition) -> SuperPolynomial:
        if key.level > level_cap:
            raise WindowError(f"{label} built for level <= {level_cap}, got input {key}")
        total = SuperPolynomial()
        for lam, a in expand_in_macdonald(SuperPolynomial.basis(key)).items():
            for target, b in pieri_on_macdonald(side, s, n, lam).items():
                total = total.add_scaled(macdonald(target), a * b)
        return total

    return GradedOperator(degree, rule, label=label)


# Cartan series --------------------------------------------------------------

@dataclass(frozen=True)
class CartanSeries:
    """prefactor * prod (z - a) / prod (z - b), with all roots nonzero."""

    prefactor: Scalar
    zeros: tuple[Scalar, ...]
    poles: tuple[Scalar, ...]

    def numerator(self) -> list[Scalar]:
        """Coefficients of the numerator polynomial, constant term first."""
        return _poly_from_roots(self.zeros, self.prefactor)

    def denominator(self) -> list[Scalar]:
        return _poly_from_roots(self.poles, ONE)

    @property
    def degree(self) -> int:
        return len(self.zeros) - len(self.poles)

    def at_infinity(self, order: int) -> list[Scalar]:
        """Coefficients of z^degree, z^(degree-1), ..., z^(degree-order)."""
        series = [self.prefactor] + [ZERO] * order
        for a in self.zeros:
            series = _mul_series(series, [ONE, -a], order)
        for b in self.poles:
            series = _mul_series(series, _geometric(b, order), order)
        return series

    def at_zero(self, order: int) -> list[Scalar]:
        """Coefficients of z^0, ..., z^order."""
        series = [self.prefactor] + [ZERO] * order
        for a in self.zeros:
            series = _mul_series(series, [-a, ONE], order)
        for b in self.poles:
            # 1/(z - b) = -1/b * sum (z/b)^j
            inv = 1 / b
            series = _mul_series(series, [-(inv**(j + 1)) for j in range(order + 1)], order)
        return series

    def evaluate(self, z: Scalar) -> Scalar:
        val = self.prefactor
        for a in self.zeros:
            val = val * (z - a)
        for b in self.poles:
            val = val / (z - b)
        return val


def _poly_from_roots(roots: Sequence[Scalar], lead: Scalar) -> list[Scalar]:
    poly = [Scalar.of(lead)]
    for r in roots:
        poly = _mul_series(poly, [-r, ONE], len(poly))
    return poly


def _geometric(b: Scalar, order: int) -> list[Scalar]:
    return [b**j for j in range(order + 1)]


def _mul_series(a: list[Scalar], b: list[Scalar], order: int) -> list[Scalar]:
    out = [ZERO] * (order + 1)
    for i, x in enumerate(a):
        if not x or i > order:
            continue
        for j, y in enumerate(b):
            if i + j > order:
                break
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def cartan_function(i: int, state: FockState) -> CartanSeries:
    """K_1(z) or K_2(z) on the state, as a rational function of z."""
    ell = state.length
    if i == 1:
        zeros = [qpow(a - s) * tpow(-j) * u for j, (a, s) in enumerate(zip(state.lam, state.sigma), 1)]
        poles = [qpow(a - s) * tpow(1 - j) * u for j, (a, s) in enumerate(zip(state.lam, state.sigma), 1)]
        poles.append(tpow(-ell) * u)
    elif i == 2:
        half = Fraction(1, 2)
        zeros = [qpow(a - half) * tpow(Fraction(3, 2) - j) * u for j, a in enumerate(state.lam, 1)]
        poles = [qpow(a - half) * tpow(half - j) * u for j, a in enumerate(state.lam, 1)]
        zeros.append(sqrt_t / sqrt_q * tpow(-ell) * u)
    else:
        raise ValueError("i must be 1 or 2")
    return CartanSeries(ONE, tuple(zeros), tuple(poles))


def cartan_series(i: int, state: FockState, order: int, direction: str = "+") -> list[Scalar]:
    """K^+_{i,r} (direction '+') or K^-_{i,-r} (direction '-') for r = 0..order."""
    if order < 0:
        raise ValueError("order must be >= 0")
    f = cartan_function(i, state)
    if direction == "+":
        if f.degree != SHIFTS[i]:
            raise ArithmeticError("Cartan function has the wrong degree at infinity")
        return f.at_infinity(order)
    if direction == "-":
        return f.at_zero(order)
    raise ValueError("direction must be '+' or '-'")


def hamiltonian_from_cartan(i: int, sign: int, state: FockState) -> Scalar:
    """H_{i,+-1} from K^{+-}(z) = K_0 exp(+- H_{+-1} z^{-+1} + ...)."""
    series = cartan_series(i, state, 1, "+" if sign > 0 else "-")
    ratio = series[1] / series[0]
    return ratio if sign > 0 else -ratio


def _anticommutator_eigen(i: int, total_mode: int, state: FockState) -> Scalar:
    """Coefficient of z^{-total_mode} in z^{r_i} K_i^+(z) - K_i^-(z)."""
    r = SHIFTS[i]
    val = ZERO
    # z^{r_i} K^+ = sum_j K^+_j z^{r_i - j}
    j = total_mode + r
    if j >= 0:
        val = val + cartan_series(i, state, j, "+")[j]
    j = -total_mode
    if j >= 0:
        val = val - cartan_series(i, state, j, "-")[j]
    return val


def _apply(side: str, s: int, n: int, combo: Combination) -> Combination:
    out: Combination = {}
    for st, c in combo.items():
        for st2, v in pieri(side, s, n, st).items():
            new = out.get(st2, ZERO) + c * v
            if new:
                out[st2] = new
            else:
                out.pop(st2, None)
    return out


def check_shifted_EF(i: int, m: int, n: int, window) -> list[dict]:
    """[E_{i,m}, F_{i,n}]_+ on every Fock state up to the level window.

    Returns one record per state with the left side (a combination), the
    predicted diagonal eigenvalue, and whether they agree.
    """
    report = []
    for lam in enumerate_up_to(window):
        st = FockState.from_superpartition(lam)
        lhs = _apply("E", i, m, pieri_F(i, n, st))
        for k, v in _apply("F", i, n, pieri_E(i, m, st)).items():
            new = lhs.get(k, ZERO) + v
            if new:
                lhs[k] = new
            else:
                lhs.pop(k, None)
        rhs = _anticommutator_eigen(i, m + n, st)
        expected = {st: rhs} if rhs else {}
        report.append({"state": lam, "lhs": lhs, "rhs": rhs, "ok": lhs == expected})
    return report


# vector representation -----------------------------------------------------

_Q1 = sqrt_q / sqrt_t  # (q/t)^1/2
_Q2 = sqrt_q * sqrt_t  # (qt)^1/2

VECTOR_NORMALIZATION = {
    ("E", 1): ONE,
    ("F", 1): 1 - 1 / t,
    ("E", 2): 1 - t,
    ("F", 2): ONE,
}


def vector_action(current: str, s: int, state: VectorState) -> list[tuple[Scalar, Scalar, VectorState]]:
    """E_s(z) or F_s(z) on [u]_{k,sigma}: a list of (coefficient, z0, target),
    meaning coefficient * delta(z / z0) * target.  Empty when forbidden."""
    current = current.upper()
    sbar = _zbar(s)
    k, sig = state.k, state.sigma
    if current == "E":
        if (sbar + sig) % 2 != 1:
            return []
        z0 = u * _Q1 ** (k + 1) * _Q2 ** (k + 1 - sig)
        return [(VECTOR_NORMALIZATION[("E", s)], z0, VectorState(k + sbar, 1 - sig))]
    if current == "F":
        if (sbar + sig) % 2 != 0:
            return []
        z0 = u * _Q1 ** (k + 1 - sbar) * _Q2**k
        return [(VECTOR_NORMALIZATION[("F", s)], z0, VectorState(k - sbar, 1 - sig))]
    raise ValueError("current must be 'E' or 'F'")


def vector_cartan(s: int, state: VectorState) -> CartanSeries:
    """Psi^(s)(z) on [u]_{k,sigma}, using phi(p; z, w) = z - w / p."""
    k, sig = state.k, state.sigma
    if _zbar(s) == 1:
        zero = _Q1 ** (k + 2 - sig) * _Q2 ** (k - sig) * u
        pole = _Q1 ** (k + 1 - sig) * _Q2 ** (k + 1 - sig) * u
    else:
        zero = _Q1**k * _Q2 ** (k + 1) * u
        pole = _Q1 ** (k + 1) * _Q2**k * u
    return CartanSeries(ONE, (zero,), (pole,))


def check_vector_relation(s: int, state: VectorState) -> dict:
    """[E_s(z), F_s(w)]_+ on a vector state against the unshifted right side.

    Both sides are delta(w/z) times a multiple of delta(z/z0); the record
    compares the multiples and the support points.
    """
    lhs: dict = {}
    for cf, w0, mid in vector_action("F", s, state):
        for ce, z0, end in vector_action("E", s, mid):
            if end == state and z0 == w0:
                lhs[z0] = lhs.get(z0, ZERO) + cf * ce
    for ce, z0, mid in vector_action("E", s, state):
        for cf, w0, end in vector_action("F", s, mid):
            if end == state and z0 == w0:
                lhs[z0] = lhs.get(z0, ZERO) + cf * ce
    psi = vector_cartan(s, state)
    # [ (z - b)/(z - a) ]_+ - [ ... ]_- = (1 - b/a) delta(z/a)
    (b,), (a,) = psi.zeros, psi.poles
    rhs = {a: 1 - b / a}
    return {"state": state, "lhs": lhs, "rhs": rhs, "ok": lhs == rhs}
