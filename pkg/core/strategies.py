# core/strategies.py
"""Hypothesis strategies for random AllDiffPrec instances."""
from hypothesis import strategies as st

from .models import FiniteDomain, build_instance


@st.composite
def dag_edges(draw, n, edge_probability=0.3):
    # edges follow a random permutation, so index order is not a topological order
    order = draw(st.permutations(range(n)))
    edges = []
    for a in range(n):
        for b in range(a + 1, n):
            if draw(st.floats(min_value=0, max_value=1)) < edge_probability:
                edges.append((order[a], order[b]))
    return edges


@st.composite
def interval_instances(draw, max_n=6, max_d=8, min_n=1):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    d = draw(st.integers(min_value=1, max_value=max_d))
    domains = []
    for _ in range(n):
        lb = draw(st.integers(min_value=1, max_value=d))
        ub = draw(st.integers(min_value=lb, max_value=d))
        domains.append(FiniteDomain.from_range(lb, ub))
    return build_instance(domains, draw(dag_edges(n)))


@st.composite
def holey_instances(draw, max_n=5, max_d=7):
    """Instances whose domains may have interior holes."""
    n = draw(st.integers(min_value=1, max_value=max_n))
    d = draw(st.integers(min_value=1, max_value=max_d))
    domains = [
        FiniteDomain(tuple(draw(st.sets(st.integers(min_value=1, max_value=d), min_size=1))))
        for _ in range(n)
    ]
    return build_instance(domains, draw(dag_edges(n)))
