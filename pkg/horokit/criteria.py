"""Horoball halves, cones and finite density censuses around a frame."""

import itertools
import logging
import math
from enum import Enum
from typing import List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel

from .config import TOL
from .errors import EmptyTargets
from .flows import (
    Frame,
    NormalizedCoords,
    basepoint,
    endpoints,
    frame_dist,
    geodesic_flow,
    horocycle_flow,
    normalize,
    ray_distance,
    translate,
)
from .hyperbolic_core import Horoball, Point, busemann, distance_array, in_horoball
from .isometry import Mobius, frame_matrix
from .schottky import SchottkySpec, enumerate_orbit, reduced_words, require_ping_pong, sample_limit_set

logger = logging.getLogger(__name__)


class Side(str, Enum):
    PLUS = "plus"
    MINUS = "minus"


class Census(BaseModel):
    D: float
    R: float
    max_len: int
    plus_count: int
    minus_count: int
    horoball_count: int
    tie_count: int
    n_points: int


# ------------------------------
# Predicates
# ------------------------------
def horoball_of(v: Frame) -> Horoball:
    minus, _ = endpoints(v)
    return Horoball(base=minus, anchor=basepoint(v))


def side_coordinates(v: Frame, D: float, p: Point) -> NormalizedCoords:
    return normalize(geodesic_flow(v, -D), p)


def in_horoball_half(v: Frame, D: float, p: Point, side: Side, tol: float = TOL) -> bool:
    """Membership in Hor+/-(g^-D v), closed on both sides of the dividing ray.

    In coordinates q = (v a_-D)^-1 p the horoball is the disk |q - i/2| <= 1/2
    tangent at 0, and the basepoints of a_-t n_s i (t, s >= 0) fill its Re >= 0 half.
    """
    q = side_coordinates(v, D, p)
    if math.hypot(q.u, q.w - 0.5) > 0.5 + tol:
        return False
    return q.u >= -tol if side is Side.PLUS else q.u <= tol


def in_cone(v: Frame, alpha: float, p: Point, tol: float = TOL) -> bool:
    return in_horoball(horoball_of(v), p, tol) and ray_distance(v, p) <= alpha + tol


# ------------------------------
# Censuses
# ------------------------------
def census_points(
    points: Sequence[Point], v: Frame, D: float, R: float, max_len: int = 0, tol: float = TOL
) -> Census:
    deep = Horoball(base=endpoints(v)[0], anchor=basepoint(geodesic_flow(v, -D)))
    plus = minus = full = ties = 0
    for p in points:
        if in_cone(v, R, p, tol):
            continue
        is_plus = in_horoball_half(v, D, p, Side.PLUS, tol)
        is_minus = in_horoball_half(v, D, p, Side.MINUS, tol)
        plus += is_plus
        minus += is_minus
        ties += is_plus and is_minus
        full += in_horoball(deep, p, tol)
    return Census(
        D=D,
        R=R,
        max_len=max_len,
        plus_count=plus,
        minus_count=minus,
        horoball_count=full,
        tie_count=ties,
        n_points=len(points),
    )


def census(
    spec: SchottkySpec, v: Frame, D: float, R: float, max_len: int, tol: float = TOL
) -> Census:
    orbit = enumerate_orbit(spec, max_len, tol)
    result = census_points([o.point for o in orbit], v, D, R, max_len, tol)
    logger.info(
        "census D=%g R=%g L=%d: plus=%d minus=%d (of %d)",
        D, R, max_len, result.plus_count, result.minus_count, result.n_points,
    )
    return result


def attained_depth(spec: SchottkySpec, v: Frame, max_len: int, tol: float = TOL) -> float:
    """Largest Busemann depth toward v- reached by an enumerated orbit point."""
    minus, _ = endpoints(v)
    base = basepoint(v)
    return max(busemann(minus, base, o.point) for o in enumerate_orbit(spec, max_len, tol))


def radial_witnesses(
    spec: SchottkySpec,
    v: Frame,
    R0: float,
    t_max: float,
    max_len: int,
    t_steps: int = 50,
    tol: float = TOL,
) -> List[float]:
    """Grid times t in [0, t_max] where g^-t v passes within R0 of the orbit."""
    orbit = np.array([o.point.z for o in enumerate_orbit(spec, max_len, tol)])
    witnesses = []
    for t in np.linspace(0.0, t_max, t_steps + 1):
        z = basepoint(geodesic_flow(v, -float(t))).z
        if distance_array(orbit, z).min() <= R0 + tol:
            witnesses.append(float(t))
    return witnesses


def density_gap(
    spec: SchottkySpec,
    v: Frame,
    targets: Sequence[Frame],
    s_range: Tuple[float, float],
    s_steps: int,
    max_len: int,
    tol: float = TOL,
) -> float:
    """max over targets of min over (s, gamma) of frame_dist(h^s v, gamma w)."""
    if not targets:
        raise EmptyTargets("density_gap needs at least one target frame")
    require_ping_pong(spec, tol)
    lo, hi = s_range
    grid = list(np.linspace(lo, hi, s_steps))
    if lo <= 0 <= hi and 0.0 not in grid:
        grid.append(0.0)
    path = [horocycle_flow(v, float(s)) for s in grid]
    elements: List[Mobius] = [m for _, m in reduced_words(spec, max_len)]
    gap = 0.0
    for w in targets:
        best = min(frame_dist(u, translate(g, w)) for g in elements for u in path)
        gap = max(gap, best)
    return gap


def limit_set_targets(spec: SchottkySpec, max_len: int, count: int, tol: float = TOL) -> List[Frame]:
    """Frames whose two endpoints are sampled limit points."""
    samples = sorted(set(sample_limit_set(spec, max_len, tol)), key=lambda p: p.as_float())
    frames = []
    for minus, plus in itertools.combinations(samples, 2):
        if len(frames) >= count:
            break
        if minus.isclose(plus, tol):
            continue
        frames.append(Frame(frame_matrix(minus, plus)))
    return frames
