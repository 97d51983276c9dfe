"""Maximum flow with exact capacities.

Capacities may be ints, Fractions or :class:`~tiletransport.scalar.Scalar`;
``None`` means unbounded.  Networks whose capacities are all rational are
scaled to integers and handed to SciPy's Dinic implementation; anything
involving phi runs through the pure-Python Dinic below, which only needs
ordered-field arithmetic.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order
from scipy.sparse.csgraph import maximum_flow as _scipy_max_flow

from .scalar import Scalar


@dataclass
class FlowResult:
    value: object
    flows: Sequence    # per arc; divide by ``scale`` for the exact amount
    reachable: set     # nodes reachable from the source in the residual network
    scale: int = 1

    def flow(self, k: int):
        f = self.flows[k]
        if self.scale == 1 and not isinstance(f, (int, np.integer)):
            return f
        return Fraction(int(f), self.scale)


def _as_fraction(c):
    if isinstance(c, Scalar):
        return c.a if c.b == 0 else None
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    return None


def max_flow(n: int, tails, heads, caps: Sequence, s: int, t: int) -> FlowResult:
    """Max flow from ``s`` to ``t`` on ``n`` nodes over arcs ``tails[k] -> heads[k]``.

    Parallel and antiparallel arcs are not supported.
    """
    finite = [(k, c) for k, c in enumerate(caps) if c is not None]
    fracs = [_as_fraction(c) for _, c in finite]
    if all(f is not None for f in fracs):
        scale = 1
        for f in fracs:
            scale = lcm(scale, f.denominator)
        ints = [int(f * scale) for f in fracs]
        big = sum(ints) + 1
        if big < 2**31 - 1:
            data = np.full(len(caps), big, dtype=np.int64)
            if finite:
                data[[k for k, _ in finite]] = ints
            return _integer_max_flow(n, np.asarray(tails, dtype=np.int64),
                                     np.asarray(heads, dtype=np.int64), data, s, t, scale)
    return _dinic(n, list(zip(tails, heads, caps)), s, t)


def _integer_max_flow(n, rows, cols, data, s, t, scale) -> FlowResult:
    graph = csr_matrix((data.astype(np.int32), (rows, cols)), shape=(n, n))
    if graph.nnz != len(data):
        raise ValueError("parallel arcs are not supported")
    res = _scipy_max_flow(graph, s, t, method="dinic")
    flows = np.asarray(res.flow.tocsr()[rows, cols]).ravel().astype(np.int64)
    flows = np.maximum(flows, 0)
    fwd = flows < data
    back = flows > 0
    r_rows = np.concatenate([rows[fwd], cols[back]])
    r_cols = np.concatenate([cols[fwd], rows[back]])
    resid = csr_matrix((np.ones(len(r_rows), dtype=np.int8), (r_rows, r_cols)), shape=(n, n))
    reach = set(int(v) for v in breadth_first_order(resid, s, directed=True, return_predecessors=False))
    return FlowResult(Fraction(int(res.flow_value), scale), flows, reach, scale)


def _dinic(n, arcs, s, t) -> FlowResult:
    zero = Scalar(0)
    finite = zero
    for _, _, c in arcs:
        if c is not None:
            finite = finite + c
    big = finite + 1
    head = [[] for _ in range(n)]
    to, cap = [], []
    for u, v, c in arcs:
        head[u].append(len(to))
        to.append(v)
        cap.append(Scalar.coerce(big if c is None else c))
        head[v].append(len(to))
        to.append(u)
        cap.append(zero)
    orig = list(cap)
    total = zero
    while True:
        level = [-1] * n
        level[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for e in head[u]:
                if cap[e] and level[to[e]] < 0 and cap[e] > 0:
                    level[to[e]] = level[u] + 1
                    q.append(to[e])
        if level[t] < 0:
            break
        it = [0] * n

        def push(u, limit):
            if u == t:
                return limit
            while it[u] < len(head[u]):
                e = head[u][it[u]]
                v = to[e]
                if level[v] == level[u] + 1 and cap[e] and cap[e] > 0:
                    d = push(v, limit if limit < cap[e] else cap[e])
                    if d:
                        cap[e] = cap[e] - d
                        cap[e ^ 1] = cap[e ^ 1] + d
                        return d
                it[u] += 1
            return zero

        while True:
            f = push(s, big)
            if not f:
                break
            total = total + f
    flows = [orig[2 * k] - cap[2 * k] for k in range(len(arcs))]
    seen = {s}
    q = deque([s])
    while q:
        u = q.popleft()
        for e in head[u]:
            if cap[e] and cap[e] > 0 and to[e] not in seen:
                seen.add(to[e])
                q.append(to[e])
    return FlowResult(total, flows, seen)
