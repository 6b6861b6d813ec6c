"""Exact-formula geometry of the upper half-plane.

Points are (x, y) with y > 0; boundary points are reals or the point at
infinity. The disk model is reached only through the Cayley map
z -> i(1+z)/(1-z), which sends the disk origin to i = (0, 1).

Busemann sign: busemann(xi, p, q) > 0 when q is deeper toward xi than p, so
horoballs are super-level sets.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from .config import TOL
from .errors import NoIntersection

logger = logging.getLogger(__name__)


# ------------------------------
# Types
# ------------------------------
@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)) or self.y <= 0:
            raise ValueError(f"not a point of the half-plane: ({self.x}, {self.y})")

    @classmethod
    def from_complex(cls, z: complex) -> "Point":
        return cls(float(z.real), float(z.imag))

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)


@dataclass(frozen=True)
class BoundaryPoint:
    """A real number, or the point at infinity when ``value`` is None."""

    value: Optional[float] = None

    def __post_init__(self):
        if self.value is not None and not math.isfinite(self.value):
            raise ValueError("use INFINITY for the point at infinity")

    @classmethod
    def real(cls, x: float) -> "BoundaryPoint":
        return cls(float(x))

    @classmethod
    def of(cls, x: float) -> "BoundaryPoint":
        """Like ``real`` but maps +-inf to the point at infinity."""
        return cls(None) if math.isinf(x) else cls(float(x))

    @property
    def is_infinity(self) -> bool:
        return self.value is None

    @property
    def x(self) -> float:
        if self.value is None:
            raise ValueError("the point at infinity has no abscissa")
        return self.value

    def as_float(self) -> float:
        return math.inf if self.value is None else self.value

    def isclose(self, other: "BoundaryPoint", tol: float = TOL) -> bool:
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return math.isclose(self.value, other.value, rel_tol=tol, abs_tol=tol)

    def __repr__(self) -> str:
        return "Infinity" if self.value is None else f"Real({self.value!r})"


INFINITY = BoundaryPoint()
ORIGIN = Point(0.0, 1.0)


@dataclass(frozen=True)
class Geodesic:
    """Geodesic with endpoints (start, end); equality of sets is ``same_as``."""

    start: BoundaryPoint
    end: BoundaryPoint

    def __post_init__(self):
        if self.start == self.end:
            raise ValueError("geodesic endpoints must differ")

    @property
    def is_vertical(self) -> bool:
        return self.start.is_infinity or self.end.is_infinity

    @property
    def foot(self) -> float:
        """Abscissa of a vertical geodesic."""
        return self.end.x if self.start.is_infinity else self.start.x

    @property
    def center(self) -> float:
        return (self.start.x + self.end.x) / 2

    @property
    def radius(self) -> float:
        return abs(self.start.x - self.end.x) / 2

    def reversed(self) -> "Geodesic":
        return Geodesic(self.end, self.start)

    def same_as(self, other: "Geodesic", tol: float = TOL) -> bool:
        return (self.start.isclose(other.start, tol) and self.end.isclose(other.end, tol)) or (
            self.start.isclose(other.end, tol) and self.end.isclose(other.start, tol)
        )


@dataclass(frozen=True)
class Horoball:
    base: BoundaryPoint
    anchor: Point


# ------------------------------
# Metric
# ------------------------------
def dist(p: Point, q: Point) -> float:
    # sinh(d/2) = |p - q| / (2 sqrt(y_p y_q)), same as cosh d = 1 + |p-q|^2 / (2 y_p y_q)
    return 2 * math.asinh(math.hypot(p.x - q.x, p.y - q.y) / (2 * math.sqrt(p.y * q.y)))


def distance_array(z, w) -> np.ndarray:
    """Vectorised ``dist`` on complex arrays."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return 2 * np.arcsinh(np.abs(z - w) / (2 * np.sqrt(z.imag * w.imag)))


def busemann(xi: BoundaryPoint, p: Point, q: Point) -> float:
    if xi.is_infinity:
        return math.log(q.y / p.y)
    # conjugate xi to infinity by z -> -1/(z - xi)
    return math.log(q.y / p.y) + 2 * math.log(
        math.hypot(p.x - xi.x, p.y) / math.hypot(q.x - xi.x, q.y)
    )


def in_horoball(h: Horoball, p: Point, tol: float = TOL) -> bool:
    return busemann(h.base, h.anchor, p) >= -tol


def horocycle_euclidean(h: Horoball) -> Tuple[float, float, float]:
    """(cx, cy, r) of the Euclidean circle bounding a horoball at a real base."""
    if h.base.is_infinity:
        raise ValueError("a horoball at infinity is bounded by a horizontal line")
    r = ((h.anchor.x - h.base.x) ** 2 + h.anchor.y**2) / (2 * h.anchor.y)
    return h.base.x, r, r


# ------------------------------
# Models
# ------------------------------
def disk_to_halfplane(z: complex, tol: float = TOL) -> Union[Point, BoundaryPoint]:
    z = complex(z)
    r = abs(z)
    if r > 1 + tol:
        raise ValueError(f"{z} lies outside the closed unit disk")
    if abs(r - 1) <= tol:
        if abs(z - 1) <= tol:
            return INFINITY
        return BoundaryPoint.real((1j * (1 + z) / (1 - z)).real)
    den = abs(1 - z) ** 2
    return Point(-2 * z.imag / den, (1 - r * r) / den)


def halfplane_to_disk(p: Union[Point, BoundaryPoint]) -> complex:
    if isinstance(p, BoundaryPoint):
        if p.is_infinity:
            return 1 + 0j
        return (p.x - 1j) / (p.x + 1j)
    return (p.z - 1j) / (p.z + 1j)


# ------------------------------
# Geodesics
# ------------------------------
def dist_to_geodesic(p: Point, g: Geodesic) -> float:
    if g.is_vertical:
        return math.asinh(abs(p.x - g.foot) / p.y)
    h = math.hypot(p.x - g.center, p.y)
    r = g.radius
    return math.asinh(abs((h - r) * (h + r)) / (2 * r * p.y))


def reflect(p: Point, g: Geodesic) -> Point:
    if g.is_vertical:
        return Point(2 * g.foot - p.x, p.y)
    v = p.z - g.center
    return Point.from_complex(g.center + g.radius**2 / v.conjugate())


def intersection(g1: Geodesic, g2: Geodesic, tol: float = TOL) -> Point:
    """The crossing point of two geodesics in the open half-plane."""
    if g1.is_vertical and g2.is_vertical:
        raise NoIntersection("vertical geodesics only meet at infinity")
    if g2.is_vertical:
        g1, g2 = g2, g1
    if g1.is_vertical:
        a, c, r = g1.foot, g2.center, g2.radius
        off = abs(a - c)
        y2 = (r - off) * (r + off)
        if y2 <= (tol * r) ** 2:
            raise NoIntersection(f"{g1} and {g2} do not cross")
        return Point(a, math.sqrt(y2))
    (c1, r1), (c2, r2) = sorted([(g1.center, g1.radius), (g2.center, g2.radius)], key=lambda cr: cr[1])
    d = c2 - c1
    if d == 0:
        raise NoIntersection("concentric geodesics do not cross")
    # factored so a small circle against a huge one keeps its precision
    u = (r1 * r1 + (abs(d) - r2) * (abs(d) + r2)) / (2 * d)
    y2 = (r1 - u) * (r1 + u)
    if y2 <= (tol * r1) ** 2:
        raise NoIntersection(f"{g1} and {g2} do not cross")
    return Point(c1 + u, math.sqrt(y2))


def angle_between(g1: Geodesic, g2: Geodesic, tol: float = TOL) -> float:
    """Acute-or-right angle in (0, pi/2] at the crossing point."""
    intersection(g1, g2, tol)
    if g2.is_vertical:
        g1, g2 = g2, g1
    if g1.is_vertical:
        cos = abs(g1.foot - g2.center) / g2.radius
    else:
        d = g2.center - g1.center
        r1, r2 = g1.radius, g2.radius
        cos = abs((r1 * r1 + r2 * r2 - d * d) / (2 * r1 * r2))
    return math.acos(min(1.0, cos))


def common_perpendicular(g1: Geodesic, g2: Geodesic, tol: float = TOL) -> Geodesic:
    """The geodesic orthogonal to two disjoint semicircles, from g1's disk to g2's.

    Its endpoints are inverse to each other in both circles. With g1 centred
    at 0 they solve pq = r1^2 and p + q = (d^2 + r1^2 - r2^2) / d.
    """
    if g1.is_vertical or g2.is_vertical:
        raise ValueError("common_perpendicular takes two semicircles")
    r1, r2 = g1.radius, g2.radius
    d = g2.center - g1.center
    if d == 0:
        raise ValueError("concentric semicircles have no common perpendicular")
    s = (r1 * r1 + (d - r2) * (d + r2)) / d
    disc = s * s - 4 * r1 * r1
    if disc <= (tol * s) ** 2:
        raise ValueError(f"{g1} and {g2} cross or touch")
    far = (s + math.copysign(math.sqrt(disc), s)) / 2
    return Geodesic(BoundaryPoint.real(g1.center + r1 * r1 / far), BoundaryPoint.real(g1.center + far))


# ------------------------------
# Charts along a segment
# ------------------------------
Chart = Tuple[float, float, float, float]


def _chart(a: Point, b: Point) -> Chart:
    """Isometry sending a to i and b onto the imaginary axis above i.

    Stored as (x_a, y_a, cos t, sin t): first z -> (z - x_a) / y_a, then the
    rotation about i by 2t.
    """
    u = complex(b.x - a.x, b.y) / a.y
    phi = cmath.phase(u - 1j) - cmath.phase(u + 1j)
    return a.x, a.y, math.cos(-phi / 2), math.sin(-phi / 2)


def _to_chart(chart: Chart, z: complex) -> complex:
    xa, ya, c, s = chart
    w = (z - xa) / ya
    return (c * w + s) / (-s * w + c)


def _from_chart(chart: Chart, w: complex) -> complex:
    xa, ya, c, s = chart
    return xa + ya * (c * w - s) / (s * w + c)


def geodesic_through(p: Point, q: Point) -> Geodesic:
    """Geodesic through p and q, oriented from p toward q."""
    if p == q:
        raise ValueError("a geodesic needs two distinct points")
    xa, ya, c, s = _chart(p, q)
    start = INFINITY if abs(c) <= 1e-15 * abs(s) else BoundaryPoint.real(xa - ya * s / c)
    end = INFINITY if abs(s) <= 1e-15 * abs(c) else BoundaryPoint.real(xa + ya * c / s)
    return Geodesic(start, end)


def point_along(p: Point, q: Point, t: float) -> Point:
    """Point at distance t from p on the ray from p through q."""
    if p == q:
        raise ValueError("direction undefined for coincident points")
    z = _from_chart(_chart(p, q), 1j * math.exp(t))
    return Point(z.real, z.imag)


def point_toward(p: Point, xi: BoundaryPoint, t: float) -> Point:
    """Point at distance t from p on the ray toward the boundary point xi."""
    if xi.is_infinity:
        return Point(p.x, p.y * math.exp(t))
    w = -1 / (p.z - xi.x)
    w = complex(w.real, w.imag * math.exp(t))
    return Point.from_complex(xi.x - 1 / w)


def segment_distance_array(p, a, b) -> np.ndarray:
    """Vectorised distance from p to the geodesic segment [a, b] (complex arrays)."""
    p = np.asarray(p, dtype=complex)
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    u = (b - a.real) / a.imag
    phi = np.angle(u - 1j) - np.angle(u + 1j)
    c, s = np.cos(-phi / 2), np.sin(-phi / 2)
    w = (p - a.real) / a.imag
    w = (c * w + s) / (-s * w + c)
    top = np.exp(distance_array(a, b))
    rho = np.abs(w)
    beside = np.arcsinh(np.abs(w.real) / w.imag)
    below = distance_array(w, 1j)
    above = distance_array(w, 1j * top)
    return np.where(rho < 1, below, np.where(rho > top, above, beside))


def dist_to_segment(p: Point, a: Point, b: Point) -> float:
    if a == b:
        return dist(p, a)
    return float(segment_distance_array(p.z, a.z, b.z))
