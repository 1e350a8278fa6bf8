import random
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from belfl.belief import ModelClass, random_mass  # noqa: E402
from belfl.propcore import And, Iff, Implies, Not, Or, Var, Vocabulary  # noqa: E402

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

PQ = Vocabulary(["p", "q"])
PQR = Vocabulary(["p", "q", "r"])
VOCABS = [Vocabulary(["p"]), PQ, PQR]


@pytest.fixture
def pq():
    return PQ


@pytest.fixture
def pqr():
    return PQR


def prop_formulas(names=("p", "q")):
    leaves = st.sampled_from([Var(n) for n in names])
    return st.recursive(
        leaves,
        lambda inner: st.one_of(
            inner.map(Not),
            st.tuples(st.sampled_from([And, Or, Implies, Iff]), inner, inner).map(lambda t: t[0](t[1], t[2])),
        ),
        max_leaves=8,
    )


@st.composite
def masses(draw, vocab=PQ, model_class=ModelClass.GENERAL):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_mass(vocab, random.Random(seed), model_class=model_class)


@st.composite
def any_vocab_mass(draw):
    vocab = draw(st.sampled_from(VOCABS))
    return draw(masses(vocab))
