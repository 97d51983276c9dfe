"""Sparse Gaussian elimination with rational coefficients and Q(phi) right-hand sides."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .scalar import ZERO, Scalar


@dataclass
class ExactSolve:
    solution: dict | None        # column -> Scalar, free columns set to zero
    certificate: dict | None     # row -> Fraction weights killing every column but not the rhs
    rank: int


def solve_sparse(rows: Sequence[Mapping[int, int | Fraction]], rhs: Sequence[Scalar]) -> ExactSolve:
    """Solve ``A x = b`` exactly, or return a left-kernel vector ``y`` with ``y A = 0``, ``y b != 0``.

    ``rows[k]`` maps column index to coefficient.  Elimination runs row by row
    against the pivots found so far, tracking each row as a combination of the
    original rows so an inconsistency comes with its certificate.
    """
    pivots: dict[int, tuple[dict, Scalar, dict]] = {}
    order: list[int] = []
    for k, (row, b) in enumerate(zip(rows, rhs)):
        r = {c: Fraction(v) for c, v in row.items() if v}
        b = Scalar.coerce(b)
        comb = {k: Fraction(1)}
        while r:
            hit = [c for c in r if c in pivots]
            if not hit:
                break
            for c in hit:
                f = r.get(c)
                if not f:
                    continue
                prow, pb, pcomb = pivots[c]
                for cc, v in prow.items():
                    nv = r.get(cc, 0) - f * v
                    if nv:
                        r[cc] = nv
                    else:
                        r.pop(cc, None)
                b = b - pb * f
                for rr, v in pcomb.items():
                    nv = comb.get(rr, 0) - f * v
                    if nv:
                        comb[rr] = nv
                    else:
                        comb.pop(rr, None)
        if not r:
            if b:
                return ExactSolve(None, comb, len(pivots))
            continue
        c0 = min(r)
        inv = 1 / r[c0]
        r = {c: v * inv for c, v in r.items()}
        pivots[c0] = (r, b * inv, {rr: v * inv for rr, v in comb.items()})
        order.append(c0)
    x: dict[int, Scalar] = {}
    for c0 in reversed(order):
        prow, pb, _ = pivots[c0]
        val = pb
        for c, v in prow.items():
            if c != c0:
                xc = x.get(c)
                if xc is not None:
                    val = val - xc * v
        x[c0] = val
    return ExactSolve(x, None, len(pivots))


def residuals(rows: Sequence[Mapping[int, int]], rhs: Sequence[Scalar], x: Mapping[int, Scalar]) -> list[Scalar]:
    out = []
    for row, b in zip(rows, rhs):
        acc = ZERO
        for c, v in row.items():
            xc = x.get(c)
            if xc is not None:
                acc = acc + xc * v
        out.append(acc - b)
    return out
