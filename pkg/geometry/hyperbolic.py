#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Geodesic polygons in the upper half-plane.

Polygons are clipped in the Klein disk, where geodesics are chords and geodesic convexity is
Euclidean convexity, so Sutherland-Hodgman applies unchanged. Areas come from Gauss-Bonnet with
angles measured on the hyperboloid.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

import config
from hecke import exact_core, utils
from hecke.errors import CapExceededError, NumericDegeneracyError, PreconditionError
from hecke.exact_core import ProjectiveMatrix

logger = utils.setup_logger()

# Klein points this close to the unit circle are ideal
IDEAL_TOL = 1e-12
# polygons with smaller Euclidean area in the Klein disk are boundary pieces
DEGENERATE_KLEIN_AREA = 1e-12


class PointKind(str, Enum):
    INTERIOR = "interior"
    IDEAL_REAL = "ideal-real"
    IDEAL_INFINITY = "ideal-infinity"


@dataclass(frozen=True)
class HPoint:
    kind: PointKind
    x: float = 0.0
    y: float = 0.0

    def __post_init__(self):
        if self.kind == PointKind.INTERIOR and not self.y > 0:
            raise PreconditionError(f"interior points need y > 0, got {self.y}")

    @classmethod
    def interior(cls, x: float, y: float) -> "HPoint":
        return cls(PointKind.INTERIOR, float(x), float(y))

    @classmethod
    def from_complex(cls, z: complex) -> "HPoint":
        return cls.interior(z.real, z.imag)

    @classmethod
    def ideal(cls, x: float) -> "HPoint":
        return cls(PointKind.IDEAL_REAL, float(x), 0.0)

    @property
    def is_ideal(self) -> bool:
        return self.kind != PointKind.INTERIOR

    @property
    def z(self) -> complex:
        if self.kind == PointKind.IDEAL_INFINITY:
            raise PreconditionError("infinity has no complex coordinate")
        return complex(self.x, self.y)

    def to_json(self) -> dict:
        if self.kind == PointKind.IDEAL_INFINITY:
            return {"kind": self.kind.value}
        return {"kind": self.kind.value, "x": self.x, "y": self.y}

    def __str__(self) -> str:
        if self.kind == PointKind.IDEAL_INFINITY:
            return "oo"
        if self.kind == PointKind.IDEAL_REAL:
            return f"{self.x:.6g}"
        return f"{self.x:.6g}+{self.y:.6g}i"


INFINITY = HPoint(PointKind.IDEAL_INFINITY)


def to_klein(p: HPoint) -> complex:
    if p.kind == PointKind.IDEAL_INFINITY:
        return complex(1.0, 0.0)
    z = complex(p.x, p.y)
    w = (z - 1j) / (z + 1j)
    if p.kind == PointKind.IDEAL_REAL:
        return w
    return 2 * w / (1 + abs(w) ** 2)


def from_klein(k: complex) -> HPoint:
    r2 = abs(k) ** 2
    if 1 - r2 <= IDEAL_TOL:
        w = k / abs(k)
        if abs(w - 1) <= IDEAL_TOL:
            return INFINITY
        return HPoint.ideal((1j * (1 + w) / (1 - w)).real)
    w = k / (1 + math.sqrt(1 - r2))
    return HPoint.from_complex(1j * (1 + w) / (1 - w))


def mobius_apply(g: ProjectiveMatrix, p: HPoint) -> HPoint:
    """(az+b)/(cz+d), acting on conj(z) when det g < 0."""
    a, b, c, d = (float(v) for v in g.entries())
    if p.kind == PointKind.IDEAL_INFINITY:
        return INFINITY if c == 0 else HPoint.ideal(a / c)
    if p.kind == PointKind.IDEAL_REAL:
        den = c * p.x + d
        return INFINITY if den == 0 else HPoint.ideal((a * p.x + b) / den)
    z = p.z if g.det > 0 else p.z.conjugate()
    w = (a * z + b) / (c * z + d)
    # rounding can leave a tiny negative imaginary part only for degenerate input
    return HPoint.interior(w.real, abs(w.imag))


@dataclass(frozen=True)
class Geodesic:
    """Vertical line Re z = x, or the semicircle |z - center| = radius."""

    vertical: bool
    x: float = 0.0
    center: float = 0.0
    radius: float = 0.0

    def __post_init__(self):
        if not self.vertical and not self.radius > 0:
            raise PreconditionError(f"semicircle radius must be positive, got {self.radius}")

    @classmethod
    def line(cls, x: float) -> "Geodesic":
        return cls(True, x=float(x))

    @classmethod
    def semicircle(cls, center: float, radius: float) -> "Geodesic":
        return cls(False, center=float(center), radius=float(radius))

    def endpoints(self) -> Tuple[HPoint, HPoint]:
        if self.vertical:
            return HPoint.ideal(self.x), INFINITY
        return HPoint.ideal(self.center - self.radius), HPoint.ideal(self.center + self.radius)


@dataclass(frozen=True)
class HalfPlane:
    """Closed side of a geodesic: Klein points k with Re(conj(normal) k) <= offset."""

    normal: complex
    offset: float

    @classmethod
    def through(cls, p: complex, q: complex, inside: complex) -> "HalfPlane":
        """Side of the chord through Klein points p, q containing the Klein point `inside`."""
        normal = 1j * (q - p)
        norm = abs(normal)
        if norm == 0:
            raise PreconditionError("a half-plane needs two distinct boundary points")
        normal /= norm
        offset = (normal.conjugate() * p).real
        if (normal.conjugate() * inside).real > offset:
            normal, offset = -normal, -offset
        return cls(normal, offset)

    @classmethod
    def of_geodesic(cls, geodesic: Geodesic, inside: HPoint) -> "HalfPlane":
        u, v = geodesic.endpoints()
        return cls.through(to_klein(u), to_klein(v), to_klein(inside))

    @classmethod
    def re_le(cls, a: float) -> "HalfPlane":
        return cls.of_geodesic(Geodesic.line(a), HPoint.interior(a - 1, 1))

    @classmethod
    def re_ge(cls, a: float) -> "HalfPlane":
        return cls.of_geodesic(Geodesic.line(a), HPoint.interior(a + 1, 1))

    @classmethod
    def disk_le(cls, center: float, radius: float) -> "HalfPlane":
        return cls.of_geodesic(Geodesic.semicircle(center, radius), HPoint.interior(center, radius / 2))

    @classmethod
    def disk_ge(cls, center: float, radius: float) -> "HalfPlane":
        return cls.of_geodesic(Geodesic.semicircle(center, radius), HPoint.interior(center, 2 * radius))

    def value(self, k: complex) -> float:
        return (self.normal.conjugate() * k).real - self.offset

    def contains(self, k: complex, tol: float = IDEAL_TOL) -> bool:
        return self.value(k) <= tol

    def complement(self) -> "HalfPlane":
        return HalfPlane(-self.normal, -self.offset)


@dataclass
class HyperbolicPolygon:
    """Geodesically convex polygon given by its cyclic vertex list."""

    vertices: List[HPoint]
    klein: List[complex] = field(default_factory=list, repr=False)

    def __post_init__(self):
        if not self.klein:
            self.klein = [to_klein(v) for v in self.vertices]

    @classmethod
    def from_klein(cls, points: Sequence[complex]) -> "HyperbolicPolygon":
        points = _dedupe(list(points))
        return cls([from_klein(k) for k in points], points)

    @property
    def is_empty(self) -> bool:
        return len(self.vertices) < 3

    def transform(self, g: ProjectiveMatrix) -> "HyperbolicPolygon":
        return HyperbolicPolygon([mobius_apply(g, v) for v in self.vertices])

    def halfplanes(self) -> List[HalfPlane]:
        centroid = sum(self.klein) / len(self.klein)
        n = len(self.klein)
        return [HalfPlane.through(self.klein[i], self.klein[(i + 1) % n], centroid) for i in range(n)]

    def sample_points(self) -> List[HPoint]:
        """Deterministic interior points between the Klein centroid and each vertex."""
        centroid = sum(self.klein) / len(self.klein)
        points = [centroid]
        for k in self.klein:
            points.extend(centroid + t * (k - centroid) for t in (0.25, 0.5, 0.75, 0.95))
        return [from_klein(k) for k in points]

    def to_json(self) -> dict:
        return {"vertices": [v.to_json() for v in self.vertices]}


def _dedupe(points: List[complex]) -> List[complex]:
    out: List[complex] = []
    for k in points:
        if not out or abs(k - out[-1]) > IDEAL_TOL:
            out.append(k)
    while len(out) > 1 and abs(out[0] - out[-1]) <= IDEAL_TOL:
        out.pop()
    return out


def clip(poly: HyperbolicPolygon, half: HalfPlane) -> HyperbolicPolygon:
    """Sutherland-Hodgman against one half-plane; an empty result has no vertices."""
    if poly.is_empty:
        return HyperbolicPolygon([])
    out: List[complex] = []
    pts = poly.klein
    s = pts[-1]
    for e in pts:
        if half.contains(e):
            if not half.contains(s):
                out.append(_intersection(s, e, half))
            out.append(e)
        elif half.contains(s):
            out.append(_intersection(s, e, half))
        s = e
    if len(out) < 3:
        return HyperbolicPolygon([])
    return HyperbolicPolygon.from_klein(out)


def _intersection(s: complex, e: complex, half: HalfPlane) -> complex:
    fs, fe = half.value(s), half.value(e)
    return s + (fs / (fs - fe)) * (e - s)


def intersect(subject: HyperbolicPolygon, region: HyperbolicPolygon) -> HyperbolicPolygon:
    out = subject
    for half in region.halfplanes():
        out = clip(out, half)
        if out.is_empty:
            break
    return out


def _klein_area(points: Sequence[complex]) -> float:
    n = len(points)
    return abs(sum((points[i].conjugate() * points[(i + 1) % n]).imag for i in range(n))) / 2


def _hyperboloid(k: complex) -> np.ndarray:
    vec = np.array([k.real, k.imag, 1.0])
    r2 = abs(k) ** 2
    return vec if 1 - r2 <= IDEAL_TOL else vec / math.sqrt(1 - r2)


def _minkowski(u: np.ndarray, v: np.ndarray) -> float:
    return float(u[0] * v[0] + u[1] * v[1] - u[2] * v[2])


def _angle(prev: complex, here: complex, nxt: complex) -> float:
    if 1 - abs(here) ** 2 <= IDEAL_TOL:
        return 0.0
    v = _hyperboloid(here)
    tangents = []
    for other in (prev, nxt):
        w = _hyperboloid(other)
        tangents.append(w + _minkowski(v, w) * v)
    t1, t2 = tangents
    cos = _minkowski(t1, t2) / math.sqrt(_minkowski(t1, t1) * _minkowski(t2, t2))
    return math.acos(max(-1.0, min(1.0, cos)))


def area(poly: HyperbolicPolygon) -> float:
    """Gauss-Bonnet: (n - 2) pi minus the interior angles; ideal vertices have angle 0."""
    pts = _dedupe(list(poly.klein))
    n = len(pts)
    if n < 3 or _klein_area(pts) < DEGENERATE_KLEIN_AREA:
        return 0.0
    angles = sum(_angle(pts[i - 1], pts[i], pts[(i + 1) % n]) for i in range(n))
    return max(0.0, (n - 2) * math.pi - angles)


# ---------------------------------------------------------------------------
# Standard fundamental domain of PSL2(Z)
# ---------------------------------------------------------------------------

RHO_LEFT = HPoint.interior(-0.5, math.sqrt(3) / 2)
RHO_RIGHT = HPoint.interior(0.5, math.sqrt(3) / 2)
FUNDAMENTAL_DOMAIN = HyperbolicPolygon([RHO_LEFT, RHO_RIGHT, INFINITY])
F_HALFPLANES = (HalfPlane.disk_ge(0.0, 1.0), HalfPlane.re_le(0.5), HalfPlane.re_ge(-0.5))


def area_F() -> float:
    return area(FUNDAMENTAL_DOMAIN)


def in_F(z: complex, tol: Optional[float] = None) -> bool:
    tol = config.settings.MEMBERSHIP_TOL if tol is None else tol
    return abs(z.real) <= 0.5 + tol and abs(z) >= 1 - tol


def reduce_to_F(p: HPoint, cap: Optional[int] = None) -> Tuple[HPoint, ProjectiveMatrix]:
    """(z', gamma) with z' = gamma z in the closed fundamental domain."""
    if p.is_ideal:
        raise PreconditionError("only interior points can be reduced")
    cap = config.settings.REDUCE_ITERATION_CAP if cap is None else cap
    z = p.z
    gamma = exact_core.IDENTITY
    for _ in range(cap):
        n = round(z.real)
        if n:
            z -= n
            gamma = exact_core.multiply(exact_core.canonicalize((1, -n, 0, 1)), gamma)
        if abs(z) < 1 - config.settings.MEMBERSHIP_TOL:
            z = -1 / z
            gamma = exact_core.multiply(exact_core.S, gamma)
            continue
        if in_F(z):
            return HPoint.from_complex(z), gamma
    raise NumericDegeneracyError(f"reduction of {p} did not stabilize within {cap} steps")


def tile(gamma: ProjectiveMatrix) -> HyperbolicPolygon:
    return FUNDAMENTAL_DOMAIN.transform(gamma)


@dataclass
class TileCover:
    tiles: List[ProjectiveMatrix]
    overlaps: List[float]

    @property
    def total(self) -> float:
        return float(sum(self.overlaps))


def tile_cover(region: HyperbolicPolygon, cap: Optional[int] = None) -> TileCover:
    """
    Every gamma with area(gamma F intersected with region) > 0, with the overlap areas.

    Seeds come from reducing sample points of the region; the search then walks tile adjacency
    (gamma T, gamma T^-1, gamma S) through tiles of positive overlap.
    """
    if region.is_empty:
        return TileCover([], [])
    cap = config.settings.TILE_CAP if cap is None else cap
    queue: deque = deque()
    seen = set()
    for point in region.sample_points():
        if point.is_ideal:
            continue
        _, gamma = reduce_to_F(point)
        seed = exact_core.inverse(gamma)
        if seed not in seen:
            seen.add(seed)
            queue.append(seed)
    found: Dict[ProjectiveMatrix, float] = {}
    while queue:
        gamma = queue.popleft()
        overlap = area(intersect(tile(gamma), region))
        if overlap <= 0:
            continue
        found[gamma] = overlap
        for step in exact_core.GAMMA_GENERATORS:
            nxt = exact_core.multiply(gamma, step)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
                if len(seen) > cap:
                    raise CapExceededError("tile search", cap, [len(found)])
    tiles = sorted(found)
    logger.debug(f"tile search visited {len(seen)} tiles, {len(tiles)} meet the region")
    return TileCover(tiles, [found[t] for t in tiles])


def tiles_meeting(region: HyperbolicPolygon, cap: Optional[int] = None) -> List[ProjectiveMatrix]:
    return tile_cover(region, cap).tiles


def gamma_ball(radius: int) -> Iterator[ProjectiveMatrix]:
    """Distinct elements of PSL2(Z) of word length at most `radius` in S, T, T^-1."""
    seen = {exact_core.IDENTITY}
    frontier = [exact_core.IDENTITY]
    yield exact_core.IDENTITY
    for _ in range(radius):
        nxt = []
        for g in frontier:
            for step in exact_core.GAMMA_GENERATORS:
                h = exact_core.multiply(g, step)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    yield h
        frontier = nxt
