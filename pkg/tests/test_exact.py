from fractions import Fraction

import numpy as np
import sympy
from hypothesis import given, settings, strategies as st

from tiletransport.exact import residuals, solve_sparse
from tiletransport.scalar import Scalar

from oracles import to_sym


def random_system(seed, m, n, rank=None):
    rng = np.random.default_rng(seed)
    A = rng.integers(-2, 3, size=(m, n))
    if rank is not None:
        B = rng.integers(-2, 3, size=(m, rank)) @ rng.integers(-2, 3, size=(rank, n))
        A = B
    rows = [{j: int(A[i, j]) for j in range(n) if A[i, j]} for i in range(m)]
    return A, rows, rng


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 7), st.integers(1, 7))
def test_consistent_systems_are_solved(seed, m, n):
    A, rows, rng = random_system(seed, m, n)
    x0 = [Scalar(Fraction(int(rng.integers(-5, 5)), 3), int(rng.integers(-3, 3))) for _ in range(n)]
    rhs = [sum((x0[j] * int(A[i, j]) for j in range(n)), Scalar(0)) for i in range(m)]
    sol = solve_sparse(rows, rhs)
    assert sol.certificate is None
    assert not any(residuals(rows, rhs, sol.solution))
    assert sol.rank == sympy.Matrix(A).rank()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 7), st.integers(1, 6))
def test_inconsistent_systems_get_certificates(seed, m, n):
    A, rows, rng = random_system(seed, m, n, rank=min(n, m) - 1 if min(n, m) > 1 else None)
    rhs = [Scalar(int(rng.integers(-4, 4)), int(rng.integers(-2, 2))) for _ in range(m)]
    sol = solve_sparse(rows, rhs)
    # oracle: consistency iff rank A == rank [A | b] over Q(sqrt 5)
    aug = sympy.Matrix(A).row_join(sympy.Matrix([to_sym(b) for b in rhs]))
    consistent = sympy.Matrix(A).rank() == aug.rank(simplify=True)
    assert (sol.solution is not None) == consistent
    if sol.certificate is not None:
        y = sol.certificate
        for j in range(A.shape[1]):
            assert sum(w * int(A[i, j]) for i, w in y.items()) == 0
        assert sum((rhs[i] * w for i, w in y.items()), Scalar(0)) != 0
