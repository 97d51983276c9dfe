"""Finite patches of the Fibonacci and chair substitution tilings.

Fibonacci tiles live on the real line with endpoints in Q(phi); chair tiles
are L-triominoes on the unit integer lattice.  A chair tile is stored by the
lower-left corner of its 2x2 block and labelled by the quadrant that is
missing.  Codimension-one faces are vertices in 1-D and unit lattice edges in
2-D, so two chair tiles may share one or two faces.

Face orientation is global: a 1-D vertex points to +x, a horizontal unit edge
``("h", x, y)`` to +y and a vertical one ``("v", x, y)`` to +x.  The sign a
tile attaches to a face is +1 when that direction is outward from the tile.
"""
from __future__ import annotations

import bisect
import json
import math
from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

import networkx as nx
import numpy as np

from .scalar import ONE, PHI, ZERO, Scalar

Cell2 = tuple[int, int]
Translation = Union[Scalar, Cell2]


class GeometryError(ValueError):
    """Raised for malformed patches, rules or prototile references."""


class CollarError(ValueError):
    """The R-ball around a cell leaves the patch, so its neighbourhood is unknown."""


# ---------------------------------------------------------------------------
# prototiles and substitution rules


@dataclass(frozen=True)
class Prototile:
    id: int
    label: str
    dimension: int
    shape: Union[Scalar, frozenset]

    def __post_init__(self):
        if self.dimension == 1:
            if not isinstance(self.shape, Scalar) or self.shape <= 0:
                raise GeometryError(f"1-D prototile {self.label} needs a positive length")
        elif self.dimension == 2:
            if len(self.shape) == 0 or not _cells_connected(self.shape):
                raise GeometryError(f"2-D prototile {self.label} must be a connected cell set")
        else:
            raise GeometryError("only dimensions 1 and 2 are supported")

    @property
    def size(self):
        """Length (1-D) or number of unit cells (2-D)."""
        return self.shape if self.dimension == 1 else len(self.shape)


@dataclass(frozen=True)
class SubstitutionRule:
    inflation: Union[int, Scalar]
    images: Mapping[str, tuple]


@dataclass(frozen=True)
class TilingSystem:
    name: str
    dimension: int
    prototiles: tuple[Prototile, ...]
    rule: SubstitutionRule

    @cached_property
    def labels(self) -> tuple[str, ...]:
        return tuple(p.label for p in self.prototiles)

    def prototile(self, key: Union[str, int]) -> Prototile:
        for p in self.prototiles:
            if p.label == key or p.id == key:
                return p
        raise GeometryError(f"unknown prototile {key!r} for the {self.name} system")

    @cached_property
    def substitution_matrix(self) -> np.ndarray:
        """``M[i, j]`` = number of tiles of type i in the image of type j."""
        idx = {lab: i for i, lab in enumerate(self.labels)}
        m = np.zeros((len(idx), len(idx)), dtype=object)
        for lab, image in self.rule.images.items():
            for child, _ in image:
                m[idx[child], idx[lab]] += 1
        return m

    @cached_property
    def max_tile_diameter(self) -> float:
        if self.dimension == 1:
            return max(float(p.shape) for p in self.prototiles)
        best = 0.0
        for p in self.prototiles:
            pts = [(x + dx, y + dy) for x, y in p.shape for dx in (0, 1) for dy in (0, 1)]
            for u in pts:
                for v in pts:
                    best = max(best, math.dist(u, v))
        return best

    def check_rule(self) -> None:
        """Verify that each inflated prototile is exactly tiled by its image."""
        lam = self.rule.inflation
        for p in self.prototiles:
            image = self.rule.images[p.label]
            if self.dimension == 1:
                pos = ZERO
                for child, off in sorted(image, key=lambda c: c[1]):
                    if off != pos:
                        raise GeometryError(f"gap or overlap in image of {p.label}")
                    pos = pos + self.prototile(child).shape
                if pos != p.shape * lam:
                    raise GeometryError(f"image of {p.label} has wrong length")
            else:
                target = {(lam * x + i, lam * y + j) for x, y in p.shape
                          for i in range(lam) for j in range(lam)}
                covered: list[Cell2] = []
                for child, (ox, oy) in image:
                    covered.extend((ox + x, oy + y) for x, y in self.prototile(child).shape)
                if len(covered) != len(set(covered)) or set(covered) != target:
                    raise GeometryError(f"image of {p.label} does not tile its inflation")


def _cells_connected(cells) -> bool:
    cells = set(cells)
    start = next(iter(cells))
    seen = {start}
    todo = [start]
    while todo:
        x, y = todo.pop()
        for n in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if n in cells and n not in seen:
                seen.add(n)
                todo.append(n)
    return len(seen) == len(cells)


def _make_fibonacci() -> TilingSystem:
    protos = (Prototile(0, "a", 1, PHI), Prototile(1, "b", 1, ONE))
    rule = SubstitutionRule(PHI, {"a": (("a", ZERO), ("b", PHI)), "b": (("a", ZERO),)})
    return TilingSystem("fibonacci", 1, protos, rule)


_BLOCK = frozenset({(0, 0), (1, 0), (0, 1), (1, 1)})
_MISSING = {"NE": (1, 1), "SE": (1, 0), "SW": (0, 0), "NW": (0, 1)}
_ROTATE_CCW = {"NE": "NW", "NW": "SW", "SW": "SE", "SE": "NE"}


def _make_chair() -> TilingSystem:
    order = ("NE", "SE", "SW", "NW")
    protos = tuple(Prototile(i, lab, 2, _BLOCK - {_MISSING[lab]}) for i, lab in enumerate(order))
    # NE image: corner and centre copies keep the orientation, arm tips turn
    images = {"NE": (("NE", (0, 0)), ("NE", (1, 1)), ("NW", (2, 0)), ("SE", (0, 2)))}
    lab = "NE"
    for _ in range(3):
        nxt = _ROTATE_CCW[lab]
        # quarter turn of the 4x4 parent box maps block corner (bx, by) to (2 - by, bx)
        images[nxt] = tuple((_ROTATE_CCW[c], (2 - by, bx)) for c, (bx, by) in images[lab])
        lab = nxt
    return TilingSystem("chair", 2, protos, SubstitutionRule(2, images))


FIBONACCI = _make_fibonacci()
CHAIR = _make_chair()
SYSTEMS = {"fibonacci": FIBONACCI, "chair": CHAIR}


def get_system(name: Union[str, TilingSystem]) -> TilingSystem:
    if isinstance(name, TilingSystem):
        return name
    try:
        return SYSTEMS[name]
    except KeyError:
        raise GeometryError(f"unknown tiling system {name!r}") from None


# ---------------------------------------------------------------------------
# tiles, signatures and patches


@dataclass(frozen=True)
class Tile:
    label: str
    t: Translation


@dataclass(frozen=True)
class Signature:
    """Translation-invariant encoding of a cell's R-neighbourhood.

    ``items`` is the sorted tuple of ``(label, offset)`` pairs of every tile
    meeting the closed R-ball, with offsets measured from the cell's anchor.
    """

    kind: str
    radius: object
    items: tuple


def _ball_items_key(item):
    label, off = item
    if isinstance(off, Scalar):
        return (label, float(off))
    return (label, off)


@dataclass(frozen=True, eq=False)
class Patch:
    """A finite set of tiles from one tiling system.

    Construction is cheap; call :meth:`validate` to check the patch
    invariants (disjoint interiors, connectedness, full-face contacts).
    """

    system: TilingSystem
    tiles: tuple[Tile, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.system.dimension == 1:
            object.__setattr__(self, "tiles", tuple(sorted(self.tiles, key=lambda t: t.t)))
        else:
            object.__setattr__(self, "tiles", tuple(self.tiles))

    def __len__(self):
        return len(self.tiles)

    @property
    def dimension(self) -> int:
        return self.system.dimension

    def labels(self) -> list[str]:
        return [t.label for t in self.tiles]

    # -- per-tile geometry ---------------------------------------------
    def cells(self, i: int) -> list[Cell2]:
        tile = self.tiles[i]
        x0, y0 = tile.t
        return [(x0 + x, y0 + y) for x, y in self.system.prototile(tile.label).shape]

    def extent(self, i: int) -> tuple[Scalar, Scalar]:
        tile = self.tiles[i]
        return tile.t, tile.t + self.system.prototile(tile.label).shape

    def centroid(self, i: int):
        """Reference point of tile ``i`` (exact)."""
        tile = self.tiles[i]
        if self.dimension == 1:
            return tile.t + self.system.prototile(tile.label).shape / 2
        cx, cy = _CENTROIDS[self.system.name][tile.label]
        return (tile.t[0] + cx, tile.t[1] + cy)

    @cached_property
    def centroids_float(self) -> np.ndarray:
        if self.dimension == 1:
            return np.array([[float(self.centroid(i))] for i in range(len(self))], dtype=float)
        out = np.empty((len(self), 2))
        offs = _CENTROIDS[self.system.name]
        for i, tile in enumerate(self.tiles):
            cx, cy = offs[tile.label]
            out[i, 0] = tile.t[0] + float(cx)
            out[i, 1] = tile.t[1] + float(cy)
        return out

    @cached_property
    def _owner(self) -> dict:
        owner = {}
        for i in range(len(self)):
            for c in self.cells(i):
                owner[c] = i
        return owner

    @cached_property
    def _starts(self) -> list[float]:
        return [float(t.t) for t in self.tiles]

    # -- cell complex ---------------------------------------------------
    @cached_property
    def tile_faces(self) -> list[list[tuple]]:
        """Per tile: list of ``(face_key, sign)`` with sign +1 when outward."""
        out = []
        if self.dimension == 1:
            for i in range(len(self)):
                left, right = self.extent(i)
                out.append([(left, -1), (right, +1)])
            return out
        table = _CHAIR_EDGES
        for tile in self.tiles:
            x0, y0 = tile.t
            out.append([((k, x0 + dx, y0 + dy), s) for k, dx, dy, s in table[tile.label]])
        return out

    @cached_property
    def faces(self) -> dict:
        """Face key -> tuple of ``(tile_index, sign)`` for the tiles containing it."""
        acc = defaultdict(list)
        for i, fl in enumerate(self.tile_faces):
            for key, s in fl:
                acc[key].append((i, s))
        return {k: tuple(v) for k, v in acc.items()}

    @cached_property
    def interior_faces(self) -> list:
        return [k for k, v in self.faces.items() if len(v) == 2]

    @cached_property
    def boundary_faces(self) -> list:
        return [k for k, v in self.faces.items() if len(v) == 1]

    @cached_property
    def vertices(self) -> list:
        if self.dimension == 1:
            return sorted(self.faces, key=float)
        pts = set()
        for k, x, y in self.faces:
            pts.add((x, y))
            pts.add((x + 1, y) if k == "h" else (x, y + 1))
        return sorted(pts)

    def face_anchor(self, key):
        if self.dimension == 1:
            return key
        k, x, y = key
        if k == "h":
            return (Fraction(2 * x + 1, 2), Fraction(y))
        return (Fraction(x), Fraction(2 * y + 1, 2))

    def face_measure(self, key) -> int:
        return 1

    def boundary_measure(self) -> Scalar:
        """Number of boundary vertices (1-D) or unit boundary edges (2-D)."""
        return Scalar(len(self.boundary_faces))

    # -- neighbourhoods -------------------------------------------------
    def tiles_meeting_ball(self, anchor, R) -> list[int]:
        """Indices of tiles meeting the closed R-ball around ``anchor``.

        Raises :class:`CollarError` when the ball is not inside the interior of
        the patch.
        """
        if self.dimension == 1:
            R = Scalar.coerce(_exact(R))
            lo, hi = anchor - R, anchor + R
            if len(self) == 0 or not (self.tiles[0].t < lo and hi < self.extent(len(self) - 1)[1]):
                raise CollarError("ball reaches the patch boundary")
            flo, fhi = float(lo), float(hi)
            j = max(bisect.bisect_left(self._starts, flo - 2.0) - 1, 0)
            out = []
            while j < len(self) and self._starts[j] <= fhi + 1e-9:
                a, b = self.extent(j)
                if a <= hi and b >= lo:
                    out.append(j)
                j += 1
            return out
        R = _exact(R)
        if isinstance(R, Scalar):
            if not R.is_rational():
                raise GeometryError("2-D radii must be rational")
            R = R.a
        R2 = R * R
        px, py = anchor
        owner = self._owner
        found = set()
        for i in range(math.floor(px - R) - 1, math.ceil(px + R) + 1):
            dx = max(i - px, 0, px - (i + 1))
            if dx * dx > R2:
                continue
            for j in range(math.floor(py - R) - 1, math.ceil(py + R) + 1):
                dy = max(j - py, 0, py - (j + 1))
                if dx * dx + dy * dy <= R2:
                    o = owner.get((i, j))
                    if o is None:
                        raise CollarError("ball reaches the patch boundary")
                    found.add(o)
        return sorted(found)

    # -- derived patches ------------------------------------------------
    def subpatch(self, indices: Iterable[int]) -> "Patch":
        return Patch(self.system, tuple(self.tiles[i] for i in sorted(set(indices))))

    def translate(self, v) -> "Patch":
        if self.dimension == 1:
            v = Scalar.coerce(v)
            return Patch(self.system, tuple(Tile(t.label, t.t + v) for t in self.tiles))
        vx, vy = v
        return Patch(self.system, tuple(Tile(t.label, (t.t[0] + vx, t.t[1] + vy)) for t in self.tiles))

    def union(self, other: "Patch") -> "Patch":
        if other.system is not self.system:
            raise GeometryError("cannot glue patches from different systems")
        return Patch(self.system, self.tiles + other.tiles)

    def index_of(self, tile: Tile) -> int:
        return self._index[tile]

    @cached_property
    def _index(self) -> dict:
        return {t: i for i, t in enumerate(self.tiles)}

    def validate(self) -> None:
        """Check disjoint interiors, connectedness and full-face contacts."""
        for t in self.tiles:
            self.system.prototile(t.label)
        if len(self) == 0:
            return
        if self.dimension == 1:
            for i in range(len(self) - 1):
                if self.extent(i)[1] != self.tiles[i + 1].t:
                    raise GeometryError("1-D patch has a gap or an overlap")
            return
        owner: dict = {}
        for i in range(len(self)):
            for c in self.cells(i):
                if c in owner:
                    raise GeometryError(f"tiles {owner[c]} and {i} overlap at cell {c}")
                owner[c] = i
        for k, v in self.faces.items():
            if len(v) > 2:
                raise GeometryError(f"face {k} belongs to more than two tiles")
        g = nx.Graph()
        g.add_nodes_from(range(len(self)))
        g.add_edges_from((v[0][0], v[1][0]) for v in self.faces.values() if len(v) == 2)
        if not nx.is_connected(g):
            raise GeometryError("patch is not connected")

    # -- serialization --------------------------------------------------
    def to_dict(self) -> dict:
        if self.dimension == 1:
            tiles = [{"proto": t.label, "t": [str(t.t)]} for t in self.tiles]
        else:
            tiles = [{"proto": t.label, "t": [int(t.t[0]), int(t.t[1])]} for t in self.tiles]
        return {"system": self.system.name, "tiles": tiles}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)

    @classmethod
    def from_dict(cls, data: Mapping) -> "Patch":
        system = get_system(data["system"])
        tiles = []
        for entry in data["tiles"]:
            system.prototile(entry["proto"])
            coords = entry["t"]
            if system.dimension == 1:
                tiles.append(Tile(entry["proto"], Scalar.coerce(coords[0])))
            else:
                tiles.append(Tile(entry["proto"], (int(coords[0]), int(coords[1]))))
        patch = cls(system, tuple(tiles))
        patch.validate()
        return patch

    @classmethod
    def from_json(cls, text: str) -> "Patch":
        return cls.from_dict(json.loads(text))


def _exact(R):
    if isinstance(R, (Scalar, Fraction, int)):
        return R
    if isinstance(R, float):
        return Fraction(R)
    if isinstance(R, str):
        return Scalar.parse(R)
    raise TypeError(f"unsupported radius type {type(R).__name__}")


def _chair_edges(cells) -> list:
    count = Counter()
    for x, y in cells:
        for e in ((("h", x, y), -1), (("h", x, y + 1), 1), (("v", x, y), -1), (("v", x + 1, y), 1)):
            count[e] += 1
    # internal edges show up once with each sign
    out = []
    for (key, s), n in count.items():
        if count.get((key, -s), 0) == 0:
            out.append((key[0], key[1], key[2], s))
    return sorted(out)


_CHAIR_EDGES = {p.label: _chair_edges(p.shape) for p in CHAIR.prototiles}
_CENTROIDS = {
    "chair": {
        p.label: (
            sum(Fraction(2 * x + 1, 2) for x, _ in p.shape) / len(p.shape),
            sum(Fraction(2 * y + 1, 2) for _, y in p.shape) / len(p.shape),
        )
        for p in CHAIR.prototiles
    },
}


_OUTLINES = {
    "NE": [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)],
    "NW": [(0, 0), (2, 0), (2, 2), (1, 2), (1, 1), (0, 1)],
    "SW": [(1, 0), (2, 0), (2, 2), (0, 2), (0, 1), (1, 1)],
    "SE": [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)],
}


def chair_outline(label: str) -> list[Cell2]:
    """Counterclockwise vertex list of a chair prototile anchored at the origin."""
    return list(_OUTLINES[label])


# ---------------------------------------------------------------------------
# operations


def supertile(system: Union[str, TilingSystem], proto: Union[str, int], level: int) -> Patch:
    """Level-fold substitution of one prototile, anchored at the origin."""
    system = get_system(system)
    if level < 0:
        raise GeometryError("level must be non-negative")
    label = system.prototile(proto).label
    lam = system.rule.inflation
    images = system.rule.images
    origin = ZERO if system.dimension == 1 else (0, 0)
    tiles = [(label, origin)]
    for _ in range(level):
        nxt = []
        if system.dimension == 1:
            for lab, t in tiles:
                base = t * lam
                nxt.extend((c, base + off) for c, off in images[lab])
        else:
            for lab, (x, y) in tiles:
                bx, by = lam * x, lam * y
                nxt.extend((c, (bx + ox, by + oy)) for c, (ox, oy) in images[lab])
        tiles = nxt
    return Patch(system, tuple(Tile(lab, t) for lab, t in tiles))


def supertile_counts(system: Union[str, TilingSystem], proto: Union[str, int], level: int) -> dict[str, int]:
    """Label counts of a supertile, from powers of the substitution matrix."""
    system = get_system(system)
    if level < 0:
        raise GeometryError("level must be non-negative")
    labels = system.labels
    vec = np.zeros(len(labels), dtype=object)
    vec[labels.index(system.prototile(proto).label)] = 1
    m = system.substitution_matrix
    for _ in range(level):
        vec = m.dot(vec)
    return {lab: int(vec[i]) for i, lab in enumerate(labels)}


def boundary_measure(patch: Patch) -> Scalar:
    return patch.boundary_measure()


@dataclass(frozen=True)
class RegionSpec:
    """A region described only by its supertile decomposition.

    ``parts`` holds ``(prototile label, level, count)`` triples; the boundary
    measure is declared rather than measured.
    """

    system: TilingSystem
    parts: tuple[tuple[str, int, int], ...]
    declared_boundary: Scalar
    name: str = ""

    def __post_init__(self):
        for lab, level, count in self.parts:
            self.system.prototile(lab)
            if count <= 0 or level < 0:
                raise GeometryError("region parts need positive counts and non-negative levels")
        if not Scalar.coerce(self.declared_boundary) > 0:
            raise GeometryError("declared boundary must be positive")

    def boundary_measure(self) -> Scalar:
        return Scalar.coerce(self.declared_boundary)


def chair_partial_region(n: int) -> RegionSpec:
    """The truncated NE n-supertile: (2**k - 1) NE supertiles of level n - k, k = 1..n."""
    if n < 1:
        raise GeometryError("n must be at least 1")
    parts = tuple(("NE", n - k, 2**k - 1) for k in range(1, n + 1))
    return RegionSpec(CHAIR, parts, Scalar(4 * 2**n), name=f"R{n}")


def collar_signature(patch: Patch, cell, R) -> Signature:
    """Signature of ``cell`` (``("tile", i)`` or ``("face", key)``) at radius R."""
    kind, ref = cell
    if kind == "tile":
        if R == 0:
            return Signature("tile", 0, (patch.tiles[ref].label,))
        anchor = patch.centroid(ref)
    elif kind == "face":
        if ref not in patch.faces:
            raise GeometryError(f"{ref!r} is not a face of the patch")
        anchor = patch.face_anchor(ref)
        if patch.dimension == 2:
            kind = "face-" + ref[0]
    else:
        raise GeometryError(f"unknown cell kind {kind!r}")
    idx = patch.tiles_meeting_ball(anchor, R)
    items = []
    for i in idx:
        tile = patch.tiles[i]
        if patch.dimension == 1:
            off = tile.t - anchor
        else:
            off = (tile.t[0] - anchor[0], tile.t[1] - anchor[1])
        items.append((tile.label, off))
    items.sort(key=_ball_items_key)
    return Signature(kind, R, tuple(items))


def adjacency(patch: Patch) -> nx.Graph:
    """Face graph: tiles as nodes, shared faces grouped per tile pair."""
    g = nx.Graph()
    cent = patch.centroids_float
    for i, t in enumerate(patch.tiles):
        g.add_node(i, label=t.label)
    for key in patch.interior_faces:
        (i, _), (j, _) = patch.faces[key]
        if g.has_edge(i, j):
            g[i][j]["measure"] += patch.face_measure(key)
            g[i][j]["faces"].append(key)
        else:
            g.add_edge(i, j, measure=patch.face_measure(key), faces=[key],
                       distance=float(np.linalg.norm(cent[i] - cent[j])))
    return g


def connected_growth(patch: Patch, seed: int, size: int, rng, allowed: Sequence[int] | None = None) -> list[int]:
    """Random connected set of tiles grown from ``seed`` (used for subpatch sampling)."""
    allowed_set = set(range(len(patch))) if allowed is None else set(allowed)
    nbrs = defaultdict(list)
    for key in patch.interior_faces:
        (i, _), (j, _) = patch.faces[key]
        nbrs[i].append(j)
        nbrs[j].append(i)
    chosen = [seed]
    seen = {seed}
    frontier = [n for n in nbrs[seed] if n in allowed_set]
    while frontier and len(chosen) < size:
        k = frontier.pop(int(rng.integers(len(frontier))))
        if k in seen:
            continue
        seen.add(k)
        chosen.append(k)
        frontier.extend(n for n in nbrs[k] if n in allowed_set and n not in seen)
    return chosen


def bfs_order(patch: Patch, start: int = 0) -> list[int]:
    nbrs = defaultdict(list)
    for key in patch.interior_faces:
        (i, _), (j, _) = patch.faces[key]
        nbrs[i].append(j)
        nbrs[j].append(i)
    order, seen, q = [], {start}, deque([start])
    while q:
        i = q.popleft()
        order.append(i)
        for j in sorted(nbrs[i]):
            if j not in seen:
                seen.add(j)
                q.append(j)
    return order


# ---------------------------------------------------------------------------
# rendering

_FILLS = {"NE": "#e4572e", "SE": "#29335c", "SW": "#f3a712", "NW": "#669bbc", "a": "#e4572e", "b": "#669bbc"}


def render_svg(patch: Patch, scale: float = 10.0) -> str:
    """SVG with one polygon per tile, filled by prototile label."""
    polys = []
    if patch.dimension == 2:
        if len(patch):
            xs = [t.t[0] for t in patch.tiles]
            ys = [t.t[1] for t in patch.tiles]
            x0, x1, y0, y1 = min(xs), max(xs) + 2, min(ys), max(ys) + 2
        else:
            x0 = x1 = y0 = y1 = 0
        for t in patch.tiles:
            pts = " ".join(
                f"{(t.t[0] + px - x0) * scale:g},{(y1 - t.t[1] - py) * scale:g}"
                for px, py in chair_outline(t.label)
            )
            polys.append(f'<polygon points="{pts}" fill="{_FILLS.get(t.label, "#999")}" '
                         f'stroke="black" stroke-width="0.5"><title>{t.label}</title></polygon>')
        w, h = (x1 - x0) * scale, (y1 - y0) * scale
    else:
        height = scale
        end = float(patch.extent(len(patch) - 1)[1]) if len(patch) else 0.0
        for i, t in enumerate(patch.tiles):
            a, b = (float(v) for v in patch.extent(i))
            pts = f"{a * scale:.6g},0 {b * scale:.6g},0 {b * scale:.6g},{height:g} {a * scale:.6g},{height:g}"
            polys.append(f'<polygon points="{pts}" fill="{_FILLS.get(t.label, "#999")}" '
                         f'stroke="black" stroke-width="0.5"><title>{t.label}</title></polygon>')
        w, h = end * scale, height
    body = "\n".join(polys)
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.6g}" height="{h:.6g}" '
            f'viewBox="0 0 {w:.6g} {h:.6g}">\n{body}\n</svg>\n')
