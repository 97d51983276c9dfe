"""Pattern-equivariant cochains on patches: integration, coboundary, discrepancy.

A cochain is a rule on collar signatures, so its value on a cell depends only
on the pattern within a fixed radius.  Rules are total maps on the signature
classes they were built from; evaluating on an unseen class raises instead of
defaulting to zero.
"""
from __future__ import annotations

import csv
import io
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

from .geometry import (
    CollarError,
    GeometryError,
    Patch,
    RegionSpec,
    Signature,
    TilingSystem,
    collar_signature,
    get_system,
    supertile_counts,
)
from .scalar import ZERO, Scalar


class UnseenSignature(KeyError):
    """A cochain rule was asked about a neighbourhood it does not define."""


def _combine(r1: Mapping, r2: Mapping, op) -> dict:
    return {k: op(r1[k], r2[k]) for k in r1.keys() & r2.keys()}


@dataclass(frozen=True)
class TopCochain:
    """Top-dimensional cochain given by a rule on tile signatures of radius ``radius``."""

    radius: object
    rule: Mapping[Signature, Scalar] = field(default_factory=dict)

    def signature(self, patch: Patch, i: int) -> Signature:
        return collar_signature(patch, ("tile", i), self.radius)

    def value(self, patch: Patch, i: int) -> Scalar:
        sig = self.signature(patch, i)
        try:
            return self.rule[sig]
        except KeyError:
            raise UnseenSignature(f"no value for tile {i} with signature {sig}") from None

    def label_value(self, label: str) -> Scalar:
        """Value on a tile of this label (radius-0 cochains only)."""
        if self.radius != 0:
            raise GeometryError("label lookup needs a radius-0 cochain")
        try:
            return self.rule[Signature("tile", 0, (label,))]
        except KeyError:
            raise UnseenSignature(f"no value for label {label!r}") from None

    def values(self, patch: Patch) -> list[Scalar]:
        if self.radius == 0:
            table = {}
            out = []
            for t in patch.tiles:
                if t.label not in table:
                    table[t.label] = self.label_value(t.label)
                out.append(table[t.label])
            return out
        return [self.value(patch, i) for i in range(len(patch))]

    def _check(self, other):
        if not isinstance(other, TopCochain):
            return NotImplemented
        if other.radius != self.radius:
            raise GeometryError("cochains of different radii cannot be combined directly")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return TopCochain(self.radius, _combine(self.rule, other.rule, lambda a, b: a + b))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return TopCochain(self.radius, _combine(self.rule, other.rule, lambda a, b: a - b))

    def __neg__(self):
        return TopCochain(self.radius, {k: -v for k, v in self.rule.items()})

    def __mul__(self, c):
        c = Scalar.coerce(c)
        return TopCochain(self.radius, {k: v * c for k, v in self.rule.items()})

    __rmul__ = __mul__

    def shifted(self, c) -> "TopCochain":
        """Same cochain with a constant ``c`` added on every tile."""
        c = Scalar.coerce(c)
        return TopCochain(self.radius, {k: v + c for k, v in self.rule.items()})


@dataclass(frozen=True)
class FluxCochain:
    """Codimension-one cochain: rule on face signatures, for the globally positive orientation.

    Reversing a face's orientation negates the value.
    """

    radius: object
    rule: Mapping[Signature, Scalar] = field(default_factory=dict)

    def value(self, patch: Patch, key, reversed: bool = False) -> Scalar:
        sig = collar_signature(patch, ("face", key), self.radius)
        try:
            v = self.rule[sig]
        except KeyError:
            raise UnseenSignature(f"no value for face {key!r}") from None
        return -v if reversed else v


@dataclass(frozen=True)
class DiscrepancyPoint:
    descriptor: str
    integral: Scalar
    boundary: Scalar
    ratio: float


def mass_cochain(rule: Mapping[str, object], system: Union[str, TilingSystem, None] = None) -> TopCochain:
    """Radius-0 cochain assigning a value to each prototile label."""
    values = {lab: Scalar.coerce(v) for lab, v in rule.items()}
    if system is not None:
        missing = set(get_system(system).labels) - set(values)
        if missing:
            raise GeometryError(f"mass rule is missing labels {sorted(missing)}")
    return TopCochain(0, {Signature("tile", 0, (lab,)): v for lab, v in values.items()})


def indicator(label: str, system: Union[str, TilingSystem]) -> TopCochain:
    system = get_system(system)
    return mass_cochain({lab: int(lab == label) for lab in system.labels})


def signature_classes(patch: Patch, R, kind: str = "face") -> dict[Signature, list]:
    """Group the cells of one kind by their radius-R signature, skipping cells without collar."""
    classes: dict[Signature, list] = defaultdict(list)
    refs: Iterable = patch.faces if kind == "face" else range(len(patch))
    for ref in refs:
        try:
            sig = collar_signature(patch, (kind, ref), R)
        except CollarError:
            continue
        classes[sig].append(ref)
    return dict(classes)


def top_cochain_from_values(patch: Patch, R, values: Mapping[int, object]) -> TopCochain:
    """Build a radius-R top cochain from per-tile values, checking pattern equivariance."""
    rule: dict = {}
    for i, v in values.items():
        sig = collar_signature(patch, ("tile", i), R)
        v = Scalar.coerce(v)
        if rule.setdefault(sig, v) != v:
            raise GeometryError(f"values are not pattern equivariant at radius {R}")
    return TopCochain(R, rule)


def integrate(alpha: TopCochain, target: Union[Patch, RegionSpec]) -> Scalar:
    """Sum of the cochain over the tiles of a patch or the parts of a region."""
    if isinstance(target, RegionSpec):
        if alpha.radius != 0:
            raise CollarError("a region given only by its decomposition has no collar")
        total = ZERO
        for lab, level, count in target.parts:
            counts = supertile_counts(target.system, lab, level)
            part = ZERO
            for child, n in counts.items():
                if n:
                    part = part + alpha.label_value(child) * n
            total = total + part * count
        return total
    if alpha.radius == 0:
        total = ZERO
        for lab, n in Counter(t.label for t in target.tiles).items():
            total = total + alpha.label_value(lab) * n
        return total
    total = ZERO
    for v in alpha.values(target):
        total = total + v
    return total


def flux_values(beta: FluxCochain, patch: Patch) -> dict:
    """Values of ``beta`` on every face of the patch that has a full collar."""
    out = {}
    for key in patch.faces:
        try:
            out[key] = beta.value(patch, key)
        except CollarError:
            continue
    return out


def coboundary_of_values(values: Mapping, patch: Patch, tiles: Iterable[int] | None = None) -> dict[int, Scalar]:
    """Outward-signed face sums on the tiles whose faces all carry a value."""
    out = {}
    idx = range(len(patch)) if tiles is None else tiles
    for i in idx:
        total = ZERO
        for key, s in patch.tile_faces[i]:
            v = values.get(key)
            if v is None:
                break
            total = total + v if s > 0 else total - v
        else:
            out[i] = total
    return out


def coboundary(beta: FluxCochain, patch: Patch) -> dict[int, Scalar]:
    """(delta beta)(t) on each interior tile, outward orientation positive."""
    out = coboundary_of_values(flux_values(beta, patch), patch)
    if len(patch) and not out:
        raise CollarError("no tile of the patch has every face inside the collar")
    return out


def boundary_flux(values: Mapping, patch: Patch, tiles: Iterable[int]) -> Scalar:
    """Outward flux of face values through the boundary of a set of tiles."""
    chosen = set(tiles)
    total = ZERO
    for i in chosen:
        for key, s in patch.tile_faces[i]:
            others = [j for j, _ in patch.faces[key] if j != i]
            if others and others[0] in chosen:
                continue
            v = values[key]
            total = total + v if s > 0 else total - v
    return total


def tile_set_boundary(patch: Patch, tiles: Iterable[int]) -> Scalar:
    """Number of faces with exactly one side in the tile set."""
    chosen = set(tiles)
    n = 0
    for i in chosen:
        for key, _ in patch.tile_faces[i]:
            others = [j for j, _ in patch.faces[key] if j != i]
            if not (others and others[0] in chosen):
                n += 1
    return Scalar(n)


def _describe(target) -> str:
    if isinstance(target, RegionSpec):
        return target.name or "region"
    return f"patch[{len(target)}]"


def discrepancy_series(alpha: TopCochain, family: Sequence) -> list[DiscrepancyPoint]:
    """Integral against boundary measure over a family of patches or regions.

    Family members may be bare targets or ``(descriptor, target)`` pairs.
    """
    if not family:
        raise ValueError("family must be non-empty")
    out = []
    for item in family:
        name, target = item if isinstance(item, tuple) else (_describe(item), item)
        integral = integrate(alpha, target)
        bnd = target.boundary_measure()
        out.append(DiscrepancyPoint(name, integral, bnd, abs(float(integral)) / float(bnd)))
    return out


def discrepancy_csv(points: Sequence[DiscrepancyPoint]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["descriptor", "integral_exact", "boundary_exact", "ratio_float"])
    for p in points:
        w.writerow([p.descriptor, str(p.integral), str(p.boundary), f"{p.ratio:.12g}"])
    return buf.getvalue()


@dataclass(frozen=True)
class Primitive:
    """Vertex values of a 1-D primitive, left to right, starting at zero."""

    vertices: tuple
    values: tuple
    sup: Scalar


def primitive_1d(alpha: TopCochain, patch: Patch) -> Primitive:
    """beta(v) = integral of alpha from the left end to v, so that delta beta = alpha."""
    if patch.dimension != 1:
        raise GeometryError("primitive_1d needs a 1-D patch")
    vals = alpha.values(patch)
    verts = [patch.tiles[0].t] if len(patch) else []
    prims = [ZERO] if len(patch) else []
    acc = ZERO
    sup = ZERO
    for i, v in enumerate(vals):
        acc = acc + v
        verts.append(patch.extent(i)[1])
        prims.append(acc)
        a = abs(acc)
        if a > sup:
            sup = a
    return Primitive(tuple(verts), tuple(prims), sup)
