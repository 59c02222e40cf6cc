"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from synclab import Dfa


@st.composite
def dfas(draw, max_n=6, max_k=3):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, max_k))
    rows = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=k, max_size=k), min_size=n, max_size=n))
    return Dfa(n, k, tuple(map(tuple, rows)))


@st.composite
def dfa_and_words(draw, count=2):
    dfa = draw(dfas())
    words = [tuple(draw(st.lists(st.integers(0, dfa.k - 1), max_size=12))) for _ in range(count)]
    return dfa, words
