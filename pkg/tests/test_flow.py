from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tiletransport.flow import max_flow
from tiletransport.scalar import PHI, Scalar


def random_network(seed, n=8, p=0.35, phi=False):
    rng = np.random.default_rng(seed)
    tails, heads, caps = [], [], []
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < p and (v, u) not in zip(tails, heads):
                tails.append(u)
                heads.append(v)
                c = Fraction(int(rng.integers(1, 20)), int(rng.integers(1, 4)))
                caps.append(Scalar(c, int(rng.integers(0, 3))) if phi else c)
    return tails, heads, caps


def nx_value(n, tails, heads, caps, s, t):
    g = nx.DiGraph()
    g.add_nodes_from(range(n))
    for u, v, c in zip(tails, heads, caps):
        g.add_edge(u, v, capacity=float(c))
    return nx.maximum_flow_value(g, s, t)


def check_flow(n, tails, heads, res, s, t, caps):
    bal = [0] * n
    for k, (u, v) in enumerate(zip(tails, heads)):
        f = res.flow(k)
        assert 0 <= f
        if caps[k] is not None:
            assert f <= caps[k]
        bal[u] -= f
        bal[v] += f
    for x in range(n):
        if x not in (s, t):
            assert bal[x] == 0
    assert bal[t] == res.value


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_rational_flow_matches_networkx(seed):
    n = 8
    tails, heads, caps = random_network(seed, n)
    res = max_flow(n, tails, heads, caps, 0, n - 1)
    assert float(res.value) == pytest.approx(nx_value(n, tails, heads, caps, 0, n - 1))
    check_flow(n, tails, heads, res, 0, n - 1, caps)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_golden_flow_matches_networkx(seed):
    n = 7
    tails, heads, caps = random_network(seed, n, phi=True)
    res = max_flow(n, tails, heads, caps, 0, n - 1)
    assert float(res.value) == pytest.approx(nx_value(n, tails, heads, caps, 0, n - 1))
    check_flow(n, tails, heads, res, 0, n - 1, caps)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_residual_reachability_is_a_min_cut(seed):
    n = 8
    tails, heads, caps = random_network(seed, n)
    res = max_flow(n, tails, heads, caps, 0, n - 1)
    assert n - 1 not in res.reachable
    cut = sum((c for u, v, c in zip(tails, heads, caps) if u in res.reachable and v not in res.reachable), Fraction(0))
    assert cut == res.value


def test_unbounded_arcs():
    res = max_flow(3, [0, 1], [1, 2], [None, Fraction(5, 2)], 0, 2)
    assert res.value == Fraction(5, 2)
    res = max_flow(3, [0, 1], [1, 2], [PHI, None], 0, 2)
    assert res.value == PHI
