"""Hypothesis strategies for small graphs."""
from hypothesis import strategies as st

from knotlink.graph import Graph


@st.composite
def graphs(draw, min_n=1, max_n=8, density=None):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if density is None:
        picks = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    else:
        picks = [draw(st.floats(0, 1)) < density for _ in pairs]
    return Graph.from_edges(n, [p for p, keep in zip(pairs, picks) if keep])


@st.composite
def permutations_of(draw, n):
    return draw(st.permutations(list(range(n))))
