import random

import pytest
import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from supermac.scalars import POLY_CTX, Scalar, normalize

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# sympy oracle variables: Q = q^(1/2), T = t^(1/2)
SQ, ST, SU = sympy.symbols("Q T u")


def int_polys(max_terms=4, max_exp=3, max_coeff=5):
    term = st.tuples(
        st.tuples(st.integers(0, max_exp), st.integers(0, max_exp), st.integers(0, max_exp)),
        st.integers(-max_coeff, max_coeff),
    )
    return st.lists(term, max_size=max_terms).map(lambda ts: POLY_CTX.from_dict(_merge(ts)))


def _merge(ts):
    out = {}
    for e, c in ts:
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def scalars():
    return st.tuples(int_polys(), int_polys().filter(lambda p: not p.is_zero())).map(
        lambda nd: normalize(*nd)
    )


def to_sympy(s: Scalar):
    def poly(p):
        return sum(
            (int(c) * SQ**a * ST**b * SU**e for (a, b, e), c in p.to_dict().items()),
            sympy.Integer(0),
        )

    return poly(s.num) / poly(s.den)


def sympy_equal(a, b) -> bool:
    return sympy.simplify(sympy.together(a - b)) == 0


@pytest.fixture
def rng():
    return random.Random(20261016)
