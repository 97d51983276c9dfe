"""Bounded and pattern-equivariant transport between tile mass distributions.

All transport is tile-granular: each tile's mass sits at its centroid.  Mass
balances are exact in Q(phi); distances are thresholds and are compared in
floating point with a fixed tolerance of ``DIST_TOL``.

Flux convention: ``beta[c]`` is the net mass carried across face ``c`` in its
positive direction, so the outward-signed coboundary of ``beta`` is
``source - target`` on every tile.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Union

import numpy as np
from scipy.spatial import cKDTree

from .cochain import TopCochain, coboundary_of_values, signature_classes
from .exact import residuals, solve_sparse
from .flow import max_flow
from .geometry import CollarError, GeometryError, Patch, collar_signature
from .scalar import ZERO, Scalar

DIST_TOL = 1e-9

Masses = Union[TopCochain, Sequence]


def tile_masses(m: Masses, patch: Patch) -> list[Scalar]:
    if isinstance(m, TopCochain):
        return m.values(patch)
    if isinstance(m, Mapping):
        return [Scalar.coerce(m[i]) for i in range(len(patch))]
    vals = [Scalar.coerce(v) for v in m]
    if len(vals) != len(patch):
        raise ValueError("one mass per tile is required")
    return vals


# ---------------------------------------------------------------------------
# plans


@dataclass(frozen=True)
class Move:
    src: int
    dst: int
    mass: Scalar
    disp: float
    step: int = 0


@dataclass
class TransportPlan:
    """Moves of mass between tiles; moves with equal ``step`` form one round."""

    moves: list[Move] = field(default_factory=list)
    rounds: int = 1
    meta: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(
            [{"src": m.src, "dst": m.dst, "mass": str(m.mass), "disp": round(m.disp, 12), "step": m.step}
             for m in self.moves],
            ensure_ascii=False,
        )

    @classmethod
    def from_json(cls, text: str) -> "TransportPlan":
        data = json.loads(text)
        moves = [Move(d["src"], d["dst"], Scalar.parse(d["mass"]), float(d["disp"]), int(d.get("step", 0)))
                 for d in data]
        return cls(moves, rounds=1 + max((m.step for m in moves), default=0))

    def net_change(self, n: int) -> list[Scalar]:
        out = [ZERO] * n
        for m in self.moves:
            out[m.src] = out[m.src] - m.mass
            out[m.dst] = out[m.dst] + m.mass
        return out


def _distance(patch: Patch, i: int, j: int) -> float:
    c = patch.centroids_float
    return float(np.linalg.norm(c[i] - c[j]))


@dataclass
class PlanReport:
    ok: bool
    message: str
    violation: dict | None = None
    min_mass: Scalar | None = None
    max_displacement: float = 0.0

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "message": self.message,
            "violation": self.violation,
            "min_mass": None if self.min_mass is None else str(self.min_mass),
            "max_displacement": round(self.max_displacement, 12),
        }


def verify_plan(plan: TransportPlan, source: Masses, target: Masses, patch: Patch, r) -> PlanReport:
    """Replay a plan round by round and check it converts ``source`` into ``target``.

    Checks positive move masses, displacements within ``r`` (and equal to the
    centroid distance), that no tile ever sends more than it holds, and exact
    final masses.  The first violation is reported.
    """
    mass = tile_masses(source, patch)
    goal = tile_masses(target, patch)
    r = float(r)
    min_mass = min(mass) if mass else None
    maxd = 0.0
    by_step: dict[int, list[Move]] = {}
    for k, m in enumerate(plan.moves):
        if not m.mass > 0:
            return PlanReport(False, f"move {k} has non-positive mass", {"move": k, "mass": str(m.mass)})
        if not (0 <= m.src < len(patch) and 0 <= m.dst < len(patch)):
            return PlanReport(False, f"move {k} leaves the patch", {"move": k})
        if m.disp > r + DIST_TOL:
            return PlanReport(False, f"move {k} travels {m.disp:.6g} > r = {r:.6g}",
                              {"move": k, "disp": m.disp, "r": r})
        if abs(m.disp - _distance(patch, m.src, m.dst)) > 1e-7:
            return PlanReport(False, f"move {k} misstates its displacement", {"move": k})
        maxd = max(maxd, m.disp)
        by_step.setdefault(m.step, []).append(m)
    for step in sorted(by_step):
        out = [ZERO] * len(patch)
        for m in by_step[step]:
            out[m.src] = out[m.src] + m.mass
        for i, o in enumerate(out):
            if o > mass[i]:
                return PlanReport(False, f"tile {i} sends {o} but holds {mass[i]} in round {step}",
                                  {"tile": i, "step": step})
        for m in by_step[step]:
            mass[m.src] = mass[m.src] - m.mass
            mass[m.dst] = mass[m.dst] + m.mass
        lo = min(mass)
        if lo < min_mass:
            min_mass = lo
        if lo < 0:
            return PlanReport(False, f"negative mass after round {step}", {"step": step})
    for i, (m, g) in enumerate(zip(mass, goal)):
        if m != g:
            return PlanReport(False, f"tile {i} ends with {m}, expected {g}", {"tile": i, "got": str(m), "want": str(g)},
                              min_mass, maxd)
    return PlanReport(True, "plan verified", None, min_mass, maxd)


# ---------------------------------------------------------------------------
# bounded transport: Hall condition through max flow


@dataclass
class TransportProblem:
    """Move ``source`` onto ``target`` with no parcel travelling farther than ``r``.

    Tiles within ``slack_band`` of the patch boundary may trade any amount
    with the outside; ``slack_band=None`` closes the patch.  ``zone`` lists
    the slack tiles explicitly and overrides the band.
    """

    patch: Patch
    source: Masses
    target: Masses
    r: float
    slack_band: float | None = 0.0
    zone: Sequence[int] | None = None

    def __post_init__(self):
        if self.r < 0 or (self.slack_band is not None and self.slack_band < 0):
            raise ValueError("r and slack_band must be non-negative")

    def slack_zone(self) -> np.ndarray:
        n = len(self.patch)
        if self.zone is not None:
            z = np.zeros(n, dtype=bool)
            z[list(self.zone)] = True
            return z
        if self.slack_band is None:
            return np.zeros(n, dtype=bool)
        return boundary_zone(self.patch, self.slack_band)

    def masses(self) -> tuple[list[Scalar], list[Scalar]]:
        s = tile_masses(self.source, self.patch)
        t = tile_masses(self.target, self.patch)
        if any(v < 0 for v in s) or any(v < 0 for v in t):
            raise ValueError("masses must be non-negative")
        return s, t


def boundary_distance(patch: Patch) -> np.ndarray:
    """Distance from each tile (as a closed set) to the boundary of the patch."""
    n = len(patch)
    if n == 0:
        return np.zeros(0)
    if patch.dimension == 1:
        left = float(patch.tiles[0].t)
        right = float(patch.extent(n - 1)[1])
        return np.array([min(float(a) - left, right - float(b)) for a, b in map(patch.extent, range(n))])
    # lattice unit segments are closest at lattice points
    bpts = set()
    for k, x, y in patch.boundary_faces:
        bpts.add((x, y))
        bpts.add((x + 1, y) if k == "h" else (x, y + 1))
    tree = cKDTree(np.array(sorted(bpts), dtype=float))
    corners, owner = [], []
    for i, fl in enumerate(patch.tile_faces):
        for (k, x, y), _ in fl:
            corners.append((x, y))
            corners.append((x + 1, y) if k == "h" else (x, y + 1))
            owner.extend((i, i))
    d, _ = tree.query(np.array(corners, dtype=float))
    out = np.full(n, np.inf)
    np.minimum.at(out, np.array(owner), d)
    return out


def boundary_zone(patch: Patch, band: float) -> np.ndarray:
    """Tiles within ``band`` of the patch boundary; band 0 keeps the tiles touching it."""
    return boundary_distance(patch) <= band + DIST_TOL


def neighbour_pairs(patch: Patch, sources: Sequence[int], targets: Sequence[int], r: float) -> list[list[int]]:
    """For each source tile, the target tiles whose centroids are within ``r``."""
    pts = patch.centroids_float
    if not len(targets) or not len(sources):
        return [[] for _ in sources]
    tree = cKDTree(pts[list(targets)])
    hits = tree.query_ball_point(pts[list(sources)], float(r) + DIST_TOL)
    return [[targets[k] for k in sorted(h)] for h in hits]


def _pair_arrays(patch: Patch, S: np.ndarray, D: np.ndarray, r: float) -> tuple[np.ndarray, np.ndarray]:
    pts = patch.centroids_float
    if not len(S) or not len(D):
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    hits = cKDTree(pts[D]).query_ball_point(pts[S], float(r) + DIST_TOL)
    lens = np.fromiter((len(h) for h in hits), dtype=np.int64, count=len(hits))
    si = np.repeat(np.arange(len(S)), lens)
    dj = np.fromiter((k for h in hits for k in h), dtype=np.int64, count=int(lens.sum()))
    return si, dj


@dataclass
class HallResult:
    feasible: bool
    certificate: dict
    plan: TransportPlan | None = None

    def certificate_json(self) -> str:
        return json.dumps(self.certificate, ensure_ascii=False)


def hall_feasible(problem: TransportProblem, with_plan: bool = True) -> HallResult:
    """Decide whether the source can be moved onto the target within distance r.

    Tiles in the boundary zone may exchange any amount with an outside node,
    so only the bulk obstruction is judged.  The certificate is either the
    flow (as moves between tiles) or a set of tiles violating the Hall
    inequality together with the two masses compared.
    """
    patch = problem.patch
    src, tgt = problem.masses()
    n = len(patch)
    zone = problem.slack_zone()
    S = np.array([i for i in range(n) if src[i]], dtype=np.int64)
    D = np.array([j for j in range(n) if tgt[j]], dtype=np.int64)
    si, dj = _pair_arrays(patch, S, D, problem.r)
    # nodes: 0 source, 1 sink, 2 outside-supply, 3 outside-absorb, supply tiles, demand tiles
    s, t, o_out, o_in = 0, 1, 2, 3
    base_s, base_d = 4, 4 + len(S)
    total_s = sum(src, ZERO)
    total_d = sum(tgt, ZERO)
    tails = [np.full(len(S), s), base_d + np.arange(len(D)), base_s + si]
    heads = [base_s + np.arange(len(S)), np.full(len(D), t), base_d + dj]
    caps: list = [src[i] for i in S] + [tgt[j] for j in D] + [None] * len(si)
    n_pair0 = len(S) + len(D)
    slack = bool(zone.any())
    if slack:
        zs = np.flatnonzero(zone[S]) if len(S) else np.zeros(0, dtype=np.int64)
        zd = np.flatnonzero(zone[D]) if len(D) else np.zeros(0, dtype=np.int64)
        extra_t = [s, o_in, o_out]
        extra_h = [o_out, t, o_in]
        extra_c = [total_d, total_s, None]
        keep = [c is None or c for c in extra_c]
        tails.append(np.array([x for x, k in zip(extra_t, keep) if k], dtype=np.int64))
        heads.append(np.array([x for x, k in zip(extra_h, keep) if k], dtype=np.int64))
        caps += [c for c, k in zip(extra_c, keep) if k]
        tails += [base_s + zs, np.full(len(zd), o_out)]
        heads += [np.full(len(zs), o_in), base_d + zd]
        caps += [None] * (len(zs) + len(zd))
    res = max_flow(4 + len(S) + len(D), np.concatenate(tails), np.concatenate(heads), caps, s, t)
    value = Scalar.coerce(res.value)
    if slack:
        feasible = value == total_s + total_d
    else:
        feasible = total_s == total_d and value == total_s
    if feasible:
        plan = None
        data = []
        if with_plan:
            moves = []
            for k in range(len(si)):
                f = res.flows[n_pair0 + k]
                if not f:
                    continue
                i, j = int(S[si[k]]), int(D[dj[k]])
                if i != j:
                    moves.append(Move(i, j, Scalar.coerce(res.flow(n_pair0 + k)), _distance(patch, i, j)))
            plan = TransportPlan(moves)
            data = [{"src": m.src, "dst": m.dst, "mass": str(m.mass)} for m in moves]
        return HallResult(True, {"type": "flow", "data": data}, plan)
    if not slack and total_s != total_d:
        cert = {"type": "cut", "data": {"direction": "total", "tiles": list(range(n)),
                                        "mass": str(total_s), "neighbourhood_mass": str(total_d)}}
        return HallResult(False, cert)
    return HallResult(False, {"type": "cut", "data": _hall_cut(problem, src, tgt, S, D, base_s, base_d,
                                                               res.reachable, o_out)})


def _hall_cut(problem, src, tgt, S, D, base_s, base_d, reach, o_out) -> dict:
    patch = problem.patch
    if o_out not in reach:
        U = [int(i) for k, i in enumerate(S) if base_s + k in reach]
        direction, mass_of, other, others = "source", src, tgt, D
    else:
        U = [int(j) for k, j in enumerate(D) if base_d + k not in reach]
        direction, mass_of, other, others = "target", tgt, src, S
    near = set()
    for js in neighbour_pairs(patch, U, [int(x) for x in others], problem.r):
        near.update(js)
    mass = sum((mass_of[i] for i in U), ZERO)
    nb = sum((other[j] for j in near), ZERO)
    return {"direction": direction, "tiles": sorted(U), "mass": str(mass), "neighbourhood_mass": str(nb)}


def half_diameter_grid(patch: Patch) -> tuple[float, int]:
    """Grid step (half the largest tile diameter) and number of steps to cover the patch."""
    h = patch.system.max_tile_diameter / 2
    pts = patch.centroids_float
    span = float(np.linalg.norm(pts.max(axis=0) - pts.min(axis=0))) if len(pts) else 0.0
    return h, int(math.ceil(span / h)) + 1


def min_transport_radius(source: Masses, target: Masses, family: Sequence[Patch],
                         slack_band: float | None = 0.0) -> list[float]:
    """Least grid radius with a feasible transport, per patch (``inf`` if none up to the patch diameter).

    Feasibility is monotone in r, so the grid is searched by doubling and then
    bisection.
    """
    if not family:
        raise ValueError("family must be non-empty")
    out = []
    for patch in family:
        h, kmax = half_diameter_grid(patch)

        def ok(k):
            prob = TransportProblem(patch, source, target, k * h, slack_band)
            return hall_feasible(prob, with_plan=False).feasible

        if ok(0):
            out.append(0.0)
            continue
        lo, hi = 0, 1
        while hi < kmax and not ok(hi):
            lo, hi = hi, min(2 * hi, kmax)
        if hi >= kmax and not ok(kmax):
            out.append(math.inf)
            continue
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if ok(mid):
                hi = mid
            else:
                lo = mid
        out.append(hi * h)
    return out


# ---------------------------------------------------------------------------
# strongly PE coboundaries


@dataclass
class PESolveResult:
    radius: object
    classes: list
    values: list[Scalar]
    residual: float
    exact: bool
    interior: list[int]
    beta: dict = field(default_factory=dict)
    witness: dict | None = None

    def to_dict(self) -> dict:
        return {
            "radius": str(self.radius),
            "n_classes": len(self.classes),
            "values": [str(v) for v in self.values],
            "residual": self.residual,
            "exact": self.exact,
            "n_interior": len(self.interior),
            "witness": self.witness,
        }


def solve_pe_coboundary(alpha: Masses, patch: Patch, R) -> PESolveResult:
    """Look for a radius-R strongly PE flux with coboundary ``alpha`` on the patch interior.

    Faces are grouped by their radius-R signature, one unknown per class, and
    ``delta beta = alpha`` is imposed on every tile whose faces all have a
    signature.  Solved exactly; when inconsistent a least-squares fit gives the
    reported residual and an exact left-kernel combination of tiles certifies it.
    """
    classes = signature_classes(patch, R, "face")
    if not classes:
        raise CollarError(f"no face of the patch has a radius-{R} collar")
    sigs = sorted(classes, key=lambda s: min(map(str, classes[s])))
    col = {}
    for c, sig in enumerate(sigs):
        for key in classes[sig]:
            col[key] = c
    interior = [i for i in range(len(patch)) if all(k in col for k, _ in patch.tile_faces[i])]
    if not interior:
        raise CollarError("the patch has no tile whose faces all have a collar")
    a = tile_masses(alpha, patch)
    rows = []
    for i in interior:
        row: dict[int, int] = {}
        for k, s in patch.tile_faces[i]:
            c = col[k]
            row[c] = row.get(c, 0) + s
        rows.append({c: v for c, v in row.items() if v})
    rhs = [a[i] for i in interior]
    sol = solve_sparse(rows, rhs)
    if sol.solution is not None:
        x = [sol.solution.get(c, ZERO) for c in range(len(sigs))]
        res = residuals(rows, rhs, dict(enumerate(x)))
        if any(res):
            raise ArithmeticError("exact solve returned an inconsistent solution")
        beta = {k: x[c] for k, c in col.items()}
        return PESolveResult(R, sigs, x, 0.0, True, interior, beta)
    A = np.zeros((len(rows), len(sigs)))
    for r_i, row in enumerate(rows):
        for c, v in row.items():
            A[r_i, c] = v
    b = np.array([float(v) for v in rhs])
    xf, *_ = np.linalg.lstsq(A, b, rcond=None)
    resid = A @ xf - b
    worst = int(np.argmax(np.abs(resid)))
    cert = sol.certificate
    combo = {interior[k]: str(w) for k, w in sorted(cert.items())}
    total = sum((rhs[k] * w for k, w in cert.items()), ZERO)
    witness = {"tile": interior[worst], "combination": combo, "alpha_on_combination": str(total)}
    values = [Scalar(Fraction(v).limit_denominator(10**6)) for v in xf]
    return PESolveResult(R, sigs, values, float(np.max(np.abs(resid))), False, interior, {}, witness)


# ---------------------------------------------------------------------------
# flux <-> plans


def _segment_faces_1d(patch: Patch, a: Scalar, b: Scalar):
    lo, hi, sgn = (a, b, 1) if a < b else (b, a, -1)
    for v in patch.vertices:
        if lo < v < hi:
            if len(patch.faces[v]) != 2:
                raise GeometryError("move leaves the patch")
            yield v, sgn


def _segment_faces_2d(patch: Patch, A, B):
    ax, ay = A
    bx, by = B
    dx, dy = bx - ax, by - ay
    events = []
    if dx:
        for X in range(math.floor(min(ax, bx)) + 1, math.ceil(max(ax, bx))):
            events.append(((X - ax) / dx, "x", X))
    if dy:
        for Y in range(math.floor(min(ay, by)) + 1, math.ceil(max(ay, by))):
            events.append(((Y - ay) / dy, "y", Y))
    events = sorted(set(events))
    times = [e[0] for e in events]
    if len(times) != len(set(times)):
        raise _Degenerate()
    owner = patch._owner
    out = []
    for s, axis, val in events:
        if axis == "x":
            y = ay + s * dy
            if y.denominator == 1:
                raise _Degenerate()
            j = math.floor(y)
            before, after = ((val - 1, j), (val, j)) if dx > 0 else ((val, j), (val - 1, j))
            key, sgn = ("v", val, j), (1 if dx > 0 else -1)
        else:
            x = ax + s * dx
            if x.denominator == 1:
                raise _Degenerate()
            i = math.floor(x)
            before, after = ((i, val - 1), (i, val)) if dy > 0 else ((i, val), (i, val - 1))
            key, sgn = ("h", i, val), (1 if dy > 0 else -1)
        ob, oa = owner.get(before), owner.get(after)
        if ob is None or oa is None:
            raise GeometryError("move leaves the patch")
        if ob != oa:
            out.append((key, sgn))
    return out


class _Degenerate(Exception):
    pass


# fixed direction for nudging a segment off lattice vertices
_NUDGE = (Fraction(1, 1000), Fraction(1, 1777))


def flux_from_plan(plan: TransportPlan, patch: Patch) -> dict:
    """Net mass carried across each face when every move follows the straight centroid segment."""
    flux: dict = {}
    for m in plan.moves:
        if m.src == m.dst:
            continue
        if patch.dimension == 1:
            crossings = _segment_faces_1d(patch, patch.centroid(m.src), patch.centroid(m.dst))
        else:
            A, B = patch.centroid(m.src), patch.centroid(m.dst)
            try:
                crossings = _segment_faces_2d(patch, A, B)
            except _Degenerate:
                d = patch.system.max_tile_diameter
                nx_, ny_ = (Fraction(_NUDGE[0]) * Fraction(d).limit_denominator(1000),
                            Fraction(_NUDGE[1]) * Fraction(d).limit_denominator(1000))
                crossings = _segment_faces_2d(patch, (A[0] + nx_, A[1] + ny_), (B[0] + nx_, B[1] + ny_))
        for key, sgn in crossings:
            flux[key] = flux.get(key, ZERO) + (m.mass if sgn > 0 else -m.mass)
    return {k: v for k, v in flux.items() if v}


def _ceil(x: Scalar) -> int:
    n = math.ceil(float(x))
    while Scalar(n - 1) >= x:
        n -= 1
    while Scalar(n) < x:
        n += 1
    return n


def stepwise_plan_from_flux(beta: Mapping, source: Masses, patch: Patch) -> TransportPlan:
    """Spread the flux over N3 equal rounds so no tile ever runs dry.

    The end state is ``source - delta(beta)`` (faces without a value carry
    nothing).  With eps the least start or end tile mass, N1 the most faces on
    a tile and N2 the largest ``|beta|``, ``N3 = ceil(N1 * N2 / eps)``; after
    round i every tile holds exactly ``start + (i / N3) * (end - start)``.
    """
    start = tile_masses(source, patch)
    beta = {k: Scalar.coerce(v) for k, v in beta.items() if v}
    for k in beta:
        if len(patch.faces.get(k, ())) != 2:
            raise GeometryError(f"flux on {k!r}, which is not an interior face")
    full = {k: beta.get(k, ZERO) for k in patch.faces}
    delta = coboundary_of_values(full, patch)
    end = [start[i] - delta[i] for i in range(len(patch))]
    if not beta:
        return TransportPlan([], 0, {"N3": 0, "eps": str(min(start + end, default=ZERO)),
                                     "min_intermediate": str(min(start, default=ZERO))})
    eps = min(min(start), min(end))
    if not eps > 0:
        raise ValueError("start and end masses must be strictly positive on every tile")
    n1 = max(len(f) for f in patch.tile_faces)
    n2 = max(abs(v) for v in beta.values())
    n3 = _ceil(n2 * n1 / eps)
    pair_flow: dict = {}
    for k, v in beta.items():
        (i, si), (j, _) = patch.faces[k]
        # positive direction points out of the tile with sign +1
        a, b = (i, j) if si > 0 else (j, i)
        pair_flow[(a, b)] = pair_flow.get((a, b), ZERO) + v
    per_round = []
    for (a, b), v in sorted(pair_flow.items()):
        if not v:
            continue
        if v < 0:
            a, b, v = b, a, -v
        per_round.append((a, b, v / n3, _distance(patch, a, b)))
    moves = []
    mass = list(start)
    lowest = min(start)
    for step in range(n3):
        for a, b, v, d in per_round:
            moves.append(Move(a, b, v, d, step))
            mass[a] = mass[a] - v
            mass[b] = mass[b] + v
        frac = Fraction(step + 1, n3)
        for i in range(len(mass)):
            if mass[i] != start[i] + (end[i] - start[i]) * frac:
                raise ArithmeticError(f"tile {i} left the interpolation path in round {step}")
            if mass[i] < eps:
                raise ValueError(f"tile {i} fell below eps in round {step}")
            if mass[i] < lowest:
                lowest = mass[i]
    maxd = max((d for *_, d in per_round), default=0.0)
    meta = {"N1": n1, "N2": str(n2), "N3": n3, "eps": str(eps), "min_intermediate": str(lowest),
            "max_step_displacement": round(maxd, 12),
            "parcel_bound": round(n3 * 2 * patch.system.max_tile_diameter, 12)}
    return TransportPlan(moves, n3, meta)


# ---------------------------------------------------------------------------
# point patterns


@dataclass(frozen=True)
class SquareDiscrepancy:
    square: tuple
    count: int
    discrepancy: Fraction
    perimeter: Fraction
    ratio: float


def point_discrepancy_series(points, rho, squares: Sequence[tuple]) -> list[SquareDiscrepancy]:
    """Count points in half-open squares ``[x, x+s) x [y, y+s)`` against density ``rho``."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    rho = Fraction(rho)
    out = []
    for sq in squares:
        x0, y0, side = sq
        inside = (pts[:, 0] >= x0) & (pts[:, 0] < x0 + side) & (pts[:, 1] >= y0) & (pts[:, 1] < y0 + side)
        count = int(inside.sum())
        side = Fraction(side)
        disc = count - rho * side * side
        per = 4 * side
        out.append(SquareDiscrepancy(tuple(sq), count, disc, per, abs(float(disc)) / float(per)))
    return out
