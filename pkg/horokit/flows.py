"""Unit tangent vectors as PSL(2,R) frames.

A frame m stands for the vector m_*(i, up). Its basepoint is m(i), its
backward endpoint v- is m(0) and its forward endpoint v+ is m(inf). Both flows
act by right multiplication: geodesic by a_t, unstable horocyclic by n_s.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .config import TOL
from .errors import OffGeodesic
from .hyperbolic_core import INFINITY, ORIGIN, BoundaryPoint, Geodesic, Point, dist, dist_to_geodesic
from .isometry import (
    IDENTITY,
    Mobius,
    apply,
    compose,
    diagonal,
    frame_matrix,
    inverse,
    lower_unipotent,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Frame:
    m: Mobius


@dataclass(frozen=True)
class NormalizedCoords:
    """Coordinates (u, w) of f^-1 p."""

    u: float
    w: float


IDENTITY_FRAME = Frame(IDENTITY)
# v- = inf, v+ = 0, based at i
J_FRAME = Frame(Mobius.from_entries(0.0, -1.0, 1.0, 0.0))


def basepoint(f: Frame) -> Point:
    return apply(f.m, ORIGIN)


def endpoints(f: Frame) -> Tuple[BoundaryPoint, BoundaryPoint]:
    return apply(f.m, BoundaryPoint.real(0.0)), apply(f.m, INFINITY)


def geodesic_flow(f: Frame, t: float) -> Frame:
    return Frame(compose(f.m, diagonal(t)))


def horocycle_flow(f: Frame, s: float) -> Frame:
    return Frame(compose(f.m, lower_unipotent(s)))


def translate(g: Mobius, f: Frame) -> Frame:
    """Left action g . f."""
    return Frame(compose(g, f.m))


def frame_from_endpoints(
    minus: BoundaryPoint, plus: BoundaryPoint, base: Point, tol: float = TOL
) -> Frame:
    g = frame_matrix(minus, plus)
    if dist_to_geodesic(base, Geodesic(minus, plus)) > tol:
        raise OffGeodesic(f"{base} is not on the geodesic ({minus}, {plus})")
    # g^-1 base sits on the imaginary axis at height e^t
    local = apply(inverse(g), base)
    return Frame(compose(g, diagonal(math.log(math.hypot(local.x, local.y)))))


def direction_angle(f: Frame) -> float:
    """Euclidean angle of the vector at its basepoint, pi/2 meaning straight up."""
    m = f.m
    return math.pi / 2 - 2 * math.atan2(m.c, m.d)


def frame_dist(f: Frame, g: Frame) -> float:
    """Basepoint distance plus the rotation gap, computed on h = f^-1 g.

    h.i is reached from i along a geodesic; the remaining rotation of h about
    its basepoint is 2*theta with theta = atan2(c - b, a + d), taken modulo
    2*pi into [-pi, pi]. Left-invariant and symmetric.
    """
    h = compose(inverse(f.m), g.m)
    theta = math.atan2(h.c - h.b, h.a + h.d)
    return dist(ORIGIN, apply(h, ORIGIN)) + abs(math.remainder(2 * theta, 2 * math.pi))


def normalize(f: Frame, p: Point) -> NormalizedCoords:
    q = apply(inverse(f.m), p)
    return NormalizedCoords(q.x, q.y)


def ray_distance(f: Frame, p: Point) -> float:
    """Distance from p to the backward ray {basepoint(g^-t f) : t >= 0}."""
    q = normalize(f, p)
    # the ray is {(0, y) : 0 < y <= 1}; feet of perpendiculars sit at height |q|
    if math.hypot(q.u, q.w) <= 1:
        return math.asinh(abs(q.u) / q.w)
    return dist(Point(q.u, q.w), ORIGIN)


def random_frame(rng: np.random.Generator, spread: float = 1.0) -> Frame:
    """Basepoint x + i e^t with x, t uniform in [-spread, spread] and a uniform direction."""
    x, t = rng.uniform(-spread, spread, size=2)
    theta = rng.uniform(0.0, math.pi)
    rotation = Mobius.from_entries(math.cos(theta), math.sin(theta), -math.sin(theta), math.cos(theta))
    return Frame(compose(compose(Mobius(1.0, float(x), 0.0, 1.0), diagonal(float(t))), rotation))


def relation_residuals(samples: int, seed: int, t_max: float = 5.0, s_max: float = 5.0) -> List[Tuple[float, float, float]]:
    """(t, s, frame_dist(g^t h^s f, h^(s e^t) g^t f)) for random f, t, s."""
    rng = np.random.default_rng(seed)
    rows = []
    for _ in range(samples):
        f = random_frame(rng)
        t = float(rng.uniform(-t_max, t_max))
        s = float(rng.uniform(-s_max, s_max))
        left = geodesic_flow(horocycle_flow(f, s), t)
        right = horocycle_flow(geodesic_flow(f, t), s * math.exp(t))
        rows.append((t, s, frame_dist(left, right)))
    logger.debug("computed %d relation residuals", samples)
    return rows
