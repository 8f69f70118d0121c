import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from schurlab.exact import ExactComplex, i_power
from schurlab.multilinear import Form, conjugate, subsets

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("repo")

I = ExactComplex(0, 1)

small_int = st.integers(-3, 3)
gaussian = st.builds(ExactComplex, small_int, small_int)


@st.composite
def forms(draw, n=None, p=None, q=None, max_terms=4):
    """Sparse exact forms with small Gaussian-integer coefficients."""
    n = draw(st.integers(1, 4)) if n is None else n
    p = draw(st.integers(0, n)) if p is None else p
    q = draw(st.integers(0, n)) if q is None else q
    keys = [(I_, J) for I_ in subsets(n, p) for J in subsets(n, q)]
    chosen = draw(st.lists(st.sampled_from(keys), max_size=max_terms, unique=True))
    return Form(n, p, q, {k: draw(gaussian) for k in chosen})


def gram_form(n: int, k: int, G) -> Form:
    """u = i^{k^2} sum G_IJ e^I ^ conj(e^J) for an integer/Gaussian-integer matrix G."""
    idx = subsets(n, k)
    ik = i_power(k * k)
    coeffs = {}
    for a, I_ in enumerate(idx):
        for b, J in enumerate(idx):
            c = G[a][b]
            c = c if isinstance(c, ExactComplex) else ExactComplex(int(np.real(c)), int(np.imag(c)))
            if c:
                coeffs[(I_, J)] = c * ik
    return Form(n, k, k, coeffs)


def random_real_form(rng: np.random.Generator, n: int, k: int) -> Form:
    u = Form(
        n,
        k,
        k,
        {
            (I_, J): ExactComplex(int(rng.integers(-3, 4)), int(rng.integers(-3, 4))) * i_power(k * k)
            for I_, J in itertools.product(subsets(n, k), repeat=2)
        },
    )
    return u + conjugate(u)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
