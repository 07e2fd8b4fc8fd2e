import random

import pytest
from hypothesis import strategies as st

from kleinfour.cupring import CupRing
from kleinfour.family import random_ring


def postnikov_tensor(draw, n):
    """Random symmetric form obeying u(i,i,j) = u(j,j,i); not necessarily realizable."""
    triples = []
    for i in range(n):
        if draw(st.booleans()):
            triples.append((i, i, i))
        for j in range(i + 1, n):
            if draw(st.booleans()):
                triples += [(i, i, j), (i, j, j)]
            for k in range(j + 1, n):
                if draw(st.booleans()):
                    triples.append((i, j, k))
    return CupRing.from_triples(n, sorted(triples))


@st.composite
def postnikov_rings(draw, max_dim=6):
    return postnikov_tensor(draw, draw(st.integers(0, max_dim)))


@st.composite
def family_rings(draw, max_dim=8):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_ring(random.Random(seed), max_dim)


@pytest.fixture
def rng():
    return random.Random(1234)
