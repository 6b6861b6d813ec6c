"""Seeded numerical checks of the triangle and flow comparison lemmas.

None of the constants involved has a closed form, so each one is estimated
as a running extremum over seeded samples and the inequalities are checked
against those estimates. Triangles are drawn with apex a = i, two side lengths
log-uniform in [0.1, 20] (occasionally replaced by an ideal-vertex surrogate
at distance 30) and an apex angle uniform in (0, pi]; a run keeps the draws
whose angle is at least the requested minimum. All draws come from a single
``rng.random((count, k))`` matrix, so a longer run extends a shorter one.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel
from scipy.optimize import brentq

from .config import DEFAULT_SEED, TOL
from .criteria import side_coordinates
from .errors import BisectionFailure, RootSearchFailure
from .flows import J_FRAME, Frame, basepoint, horocycle_flow, ray_distance
from .hyperbolic_core import (
    INFINITY,
    BoundaryPoint,
    Geodesic,
    Point,
    busemann,
    dist,
    dist_to_segment,
    distance_array,
    intersection,
    point_along,
    point_toward,
    reflect,
    segment_distance_array,
)
from .isometry import apply, frame_matrix, from_axis_length, inverse

logger = logging.getLogger(__name__)

SIDE_MIN, SIDE_MAX = 0.1, 20.0
IDEAL_SURROGATE = 30.0
IDEAL_PROBABILITY = 0.1
SEARCH_WINDOW = 50.0
FLOW_HORIZON = 12.0


# ------------------------------
# Schemas
# ------------------------------
@dataclass(frozen=True)
class TriangleSample:
    a: Point
    b: Point
    c: Point
    angle: float
    ideal: bool = False


class ConstantEstimate(BaseModel):
    parameter: float
    estimate: float
    samples: int
    seed: int
    accepted: int = 0
    defect_estimate: float = 0.0
    distance_estimate: float = 0.0


class InnerTriangleEstimate(ConstantEstimate):
    chain_error: float = 0.0


class ReciprocalReport(BaseModel):
    k: float
    d_hat: float
    samples: int
    seed: int
    accepted: int
    excluded: int
    alpha_hat: Optional[float]
    c_hat: float
    violations: List[int]
    printed_reading_failures: int


class FlowLemmaReport(BaseModel):
    alpha0: float
    samples: int
    seed: int
    accepted: int
    skipped_root: int
    skipped_outside: int
    c_hat: float
    max_iv_iw: float
    iv_iw_violations: int
    upper_violations: int
    worst_upper_slack: float
    c2_by_threshold: Dict[float, float]


class SideSwitchReport(BaseModel):
    alpha0: float
    D: float
    R: float
    samples: int
    seed: int
    accepted: int
    skipped: int
    depth_loss_max: float
    cone_loss_max: float
    switched_fraction: float
    mean_iterations: float


# ------------------------------
# Triangles
# ------------------------------
def _points_at(r: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Points at distance r from i, direction phi from straight up."""
    w = 1j * np.exp(r)
    cos, sin = np.cos(phi / 2), np.sin(phi / 2)
    return (cos * w + sin) / (-sin * w + cos)


def _draw(count: int, seed: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    rng = np.random.default_rng(seed)
    u = rng.random((count, 4))
    span = math.log(SIDE_MAX / SIDE_MIN)
    rb = SIDE_MIN * np.exp(u[:, 0] * span)
    rc = SIDE_MIN * np.exp(u[:, 1] * span)
    rb = np.where(u[:, 3] < IDEAL_PROBABILITY / 2, IDEAL_SURROGATE, rb)
    rc = np.where((u[:, 3] >= IDEAL_PROBABILITY / 2) & (u[:, 3] < IDEAL_PROBABILITY), IDEAL_SURROGATE, rc)
    angle = math.pi * (1 - u[:, 2])
    ideal = u[:, 3] < IDEAL_PROBABILITY
    return _points_at(rb, -angle / 2), _points_at(rc, angle / 2), angle, ideal


def make_triangle(side_b: float, side_c: float, angle: float) -> TriangleSample:
    b, c = _points_at(np.array([side_b, side_c]), np.array([-angle / 2, angle / 2]))
    return TriangleSample(Point(0.0, 1.0), Point.from_complex(b), Point.from_complex(c), angle)


def sample_triangles(count: int, seed: int = DEFAULT_SEED, angle_min: float = 0.0) -> List[TriangleSample]:
    b, c, angle, ideal = _draw(count, seed)
    a = Point(0.0, 1.0)
    return [
        TriangleSample(a, Point.from_complex(b[i]), Point.from_complex(c[i]), float(angle[i]), bool(ideal[i]))
        for i in np.flatnonzero(angle >= angle_min)
    ]


def triangle_defect(t: TriangleSample) -> float:
    return dist(t.a, t.b) + dist(t.a, t.c) - dist(t.b, t.c)


def vertex_distance(t: TriangleSample) -> float:
    return dist_to_segment(t.a, t.b, t.c)


def _measures(count: int, seed: int):
    b, c, angle, _ = _draw(count, seed)
    dab = distance_array(1j, b)
    dac = distance_array(1j, c)
    dbc = distance_array(b, c)
    vdist = segment_distance_array(np.full(b.shape, 1j), b, c)
    return angle, dab, dac, dbc, vdist


def estimate_thin_constant(alpha0: float, samples: int, seed: int = DEFAULT_SEED) -> ConstantEstimate:
    if not 0 < alpha0 <= math.pi or samples < 1:
        raise ValueError("need 0 < alpha0 <= pi and samples >= 1")
    angle, dab, dac, dbc, vdist = _measures(samples, seed)
    keep = angle >= alpha0
    defect = float((dab + dac - dbc)[keep].max(initial=0.0))
    reach = float(vdist[keep].max(initial=0.0))
    logger.debug("thin constant at %.4f: %d of %d samples", alpha0, keep.sum(), samples)
    return ConstantEstimate(
        parameter=alpha0,
        estimate=max(defect, reach),
        samples=samples,
        seed=seed,
        accepted=int(keep.sum()),
        defect_estimate=defect,
        distance_estimate=reach,
    )


def verify_reciprocal(k: float, samples: int, seed: int = DEFAULT_SEED, d_min: float = 5.0) -> ReciprocalReport:
    """Triangles whose apex is k-close to the far side have a bounded-below apex angle.

    Two readings of the sandwich are reported: d(a,b) + d(a,c) - C <= d(b,c)
    is checked against the fitted C; the printed one, d(a,b) + d(b,c) - C <=
    d(b,c), only says d(a,b) <= C and its failures are counted.
    """
    if k <= 0 or samples < 1:
        raise ValueError("need k > 0 and samples >= 1")
    angle, dab, dac, dbc, vdist = _measures(samples, seed)
    close = vdist <= k
    keep = close & (dbc >= d_min)
    defect = dab + dac - dbc
    c_hat = float(defect[keep].max(initial=0.0))
    alpha_hat = float(angle[keep].min()) if keep.any() else None
    violations = [
        int(i)
        for i in np.flatnonzero(keep)
        if defect[i] > c_hat + TOL or (alpha_hat is not None and angle[i] < alpha_hat - TOL)
    ]
    return ReciprocalReport(
        k=k,
        d_hat=d_min,
        samples=samples,
        seed=seed,
        accepted=int(keep.sum()),
        excluded=int((close & ~keep).sum()),
        alpha_hat=alpha_hat,
        c_hat=c_hat,
        violations=violations,
        printed_reading_failures=int((dab[keep] > c_hat + TOL).sum()),
    )


# ------------------------------
# Inner triangles
# ------------------------------
def inner_triangle(xi: BoundaryPoint, p: Point, q: Point) -> Tuple[Point, Point, Point]:
    """(alpha, beta, gamma) on (xi, q], (xi, p], [p, q] for p, q on one horocycle at xi."""
    if p == q:
        return p, p, p
    d = dist(p, q)

    def alpha(t: float) -> Point:
        return point_toward(q, xi, d - t)

    def beta(t: float) -> Point:
        return point_toward(p, xi, t)

    try:
        t = brentq(lambda t: busemann(xi, alpha(t), beta(t)), 0.0, d, xtol=1e-13)
    except ValueError as exc:
        raise BisectionFailure(f"no sign change on [0, {d}] for {p}, {q}") from exc
    return alpha(t), beta(t), point_along(p, q, t)


def verify_inner_triangle(samples: int, seed: int = DEFAULT_SEED) -> InnerTriangleEstimate:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    u = rng.random((samples, 5))
    delta = chain = 0.0
    for row in u:
        height = 0.05 * math.exp(row[4] * math.log(100))
        p, q = complex(-5 + 10 * row[2], height), complex(-5 + 10 * row[3], height)
        if row[0] < 0.2:
            xi = INFINITY
        else:
            # z -> xi - 1/z carries horocycles at infinity to horocycles at xi
            xi = BoundaryPoint.real(-3 + 6 * row[1])
            p, q = xi.x - 1 / p, xi.x - 1 / q
        P, Q = Point.from_complex(p), Point.from_complex(q)
        a, b, g = inner_triangle(xi, P, Q)
        d = dist(P, Q)
        delta = max(delta, dist(a, b), dist(b, g), dist(a, g))
        chain = max(
            chain,
            abs(d - 2 * dist(P, g)),
            abs(d - 2 * dist(P, b)),
            abs(d - 2 * dist(Q, g)),
            abs(d - 2 * dist(Q, a)),
        )
    logger.info("inner triangle: delta=%.6f chain error=%.2e over %d samples", delta, chain, samples)
    return InnerTriangleEstimate(
        parameter=0.0, estimate=delta, samples=samples, seed=seed, accepted=samples, chain_error=chain
    )


# ------------------------------
# Flow lemmas
# ------------------------------
def orthogonal_horocycle_time(v: Frame, axis: Geodesic, window: float = SEARCH_WINDOW) -> float:
    """s such that the ray of h^s v meets the axis orthogonally (v- = infinity)."""
    center, radius = axis.center, axis.radius

    def cosine(s: float) -> float:
        return (basepoint(horocycle_flow(v, s)).x - center) / radius

    try:
        return brentq(cosine, -window, window, xtol=1e-13)
    except ValueError as exc:
        raise RootSearchFailure(f"no orthogonal ray within |s| <= {window}") from exc


def _axis_through_ray(height: float, phi: float, sign: float) -> Geodesic:
    """Semicircle crossing x = 0 at (0, height) with acute angle phi."""
    radius = height / math.sin(phi)
    center = sign * radius * math.cos(phi)
    return Geodesic(BoundaryPoint.real(center - radius), BoundaryPoint.real(center + radius))


def verify_flow_lemmas(
    samples: int,
    seed: int = DEFAULT_SEED,
    alpha0: float = math.pi / 3,
    thresholds: Sequence[float] = (0.0, 1.0, 2.0, 3.0),
    thin_samples: Optional[int] = None,
) -> FlowLemmaReport:
    """Crossing-point distance and iterate sandwiches, in coordinates where v is J.

    v has v- = inf and v+ = 0, so its backward ray is {(0, y) : y >= 1} and its
    horocycle is y = 1. Lower bounds are fitted per threshold R on both
    d(x_n, I_w) and d(x_n, I_v).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    c_hat = estimate_thin_constant(alpha0, thin_samples or max(samples, 10_000), seed).estimate
    v = J_FRAME
    rng = np.random.default_rng(seed)
    u = rng.random((samples, 7))
    acute = min(alpha0, math.pi / 2)
    accepted = skipped_root = skipped_outside = iv_violations = upper_violations = 0
    max_iv_iw, worst_slack = 0.0, math.inf
    c2 = {float(r): -math.inf for r in thresholds}

    for row in u:
        phi = acute + row[0] * (math.pi / 2 - acute)
        height = math.exp(3 * row[1])
        axis = _axis_through_ray(height, phi, 1.0 if row[2] < 0.5 else -1.0)
        if row[3] < 0.5:
            axis = axis.reversed()
        try:
            s = orthogonal_horocycle_time(v, axis)
        except RootSearchFailure:
            skipped_root += 1
            continue
        w = horocycle_flow(v, s)
        I_v = Point(0.0, height)
        I_w = intersection(Geodesic(INFINITY, BoundaryPoint.real(basepoint(w).x)), axis)
        gap = dist(I_v, I_w)
        max_iv_iw = max(max_iv_iw, gap)
        iv_violations += gap > c_hat + TOL

        # x_0 on the axis, y_0 off it inside the bounded part of Hor(v)
        g = frame_matrix(axis.start, axis.end)
        level = math.log(abs(apply(inverse(g), I_v).z)) + (-3 + 6 * row[5])
        r = 0.2 + 4 * row[6]
        x0 = apply(g, Point(0.0, math.exp(level)))
        y0 = None
        for side in (1.0, -1.0):
            cand = apply(g, Point.from_complex(math.exp(level) * complex(side * math.tanh(r), 1 / math.cosh(r))))
            if math.hypot(cand.x - axis.center, cand.y) < axis.radius:
                y0 = cand
                break
        if y0 is None or y0.y < 1:
            skipped_outside += 1
            continue
        accepted += 1

        ell = 0.2 + 1.8 * row[4]
        gamma = from_axis_length(axis.start, axis.end, ell)
        base = dist(y0, x0)
        xn, yn = x0, y0
        for _ in range(int(FLOW_HORIZON / ell)):
            xn, yn = apply(gamma, xn), apply(gamma, yn)
            for frame, anchor in ((w, I_w), (v, I_v)):
                bound = base + dist(xn, anchor)
                reach = ray_distance(frame, yn)
                slack = bound - reach
                worst_slack = min(worst_slack, slack)
                upper_violations += slack < -TOL * (1 + bound)
            lower_w = base + dist(xn, I_w) - ray_distance(w, yn)
            lower_v = base + dist(xn, I_v) - ray_distance(v, yn)
            for R in c2:
                if dist(xn, I_w) >= R and dist(xn, I_v) >= R:
                    c2[R] = max(c2[R], lower_w, lower_v)

    logger.info(
        "flow lemmas at alpha0=%.4f: %d accepted, %d root skips, %d outside",
        alpha0, accepted, skipped_root, skipped_outside,
    )
    return FlowLemmaReport(
        alpha0=alpha0,
        samples=samples,
        seed=seed,
        accepted=accepted,
        skipped_root=skipped_root,
        skipped_outside=skipped_outside,
        c_hat=c_hat,
        max_iv_iw=max_iv_iw,
        iv_iw_violations=iv_violations,
        upper_violations=upper_violations,
        worst_upper_slack=worst_slack if accepted else 0.0,
        c2_by_threshold={R: (val if math.isfinite(val) else 0.0) for R, val in c2.items()},
    )


# ------------------------------
# Side switch
# ------------------------------
def verify_side_switch(
    samples: int,
    seed: int = DEFAULT_SEED,
    alpha0: float = math.pi / 3,
    D: float = 1.0,
    R: float = 1.0,
    max_iterations: int = 10_000,
) -> SideSwitchReport:
    """Push y_0 in Hor+(g^-D v) outside the cone across the ray of w and measure the losses.

    gamma translates left to right along an axis whose disk contains y_0; the
    iterate stops at the first n with gamma^n x_0 within the translation length
    of the mirror image of x_0 across (v- w+).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    v = J_FRAME
    rng = np.random.default_rng(seed)
    u = rng.random((samples, 5))
    cos_min = math.cos(min(alpha0, math.pi / 2))
    accepted = skipped = switched = iterations = 0
    depth_loss = cone_loss = 0.0

    for row in u:
        Y = math.exp(D + 2 * row[0])
        X = -Y * math.sinh(R + 0.1 + 2 * row[1])
        y0 = Point(X, Y)
        center = 0.0 if cos_min < TOL else X / 4 * row[2]
        reach = math.hypot(X - center, Y) * 1.1
        radius = max(reach, abs(center) / max(cos_min, TOL), math.hypot(center, 1.0)) * (1 + row[3])
        axis = Geodesic(BoundaryPoint.real(center - radius), BoundaryPoint.real(center + radius))
        ell = 0.1 + 0.4 * row[4]

        # in the chart of g the axis is the imaginary axis and gamma is z -> e^ell z
        g = frame_matrix(axis.start, axis.end)
        x0 = apply(g, Point(0.0, abs(apply(inverse(g), y0).z)))
        mirror = reflect(x0, Geodesic(INFINITY, BoundaryPoint.real(center)))
        gap = math.log(abs(apply(inverse(g), mirror).z) / abs(apply(inverse(g), x0).z))
        n = max(1, math.ceil(gap / ell - 1))
        if gap <= 0 or n > max_iterations:
            skipped += 1
            continue
        gamma_n = from_axis_length(axis.start, axis.end, n * ell)
        xn, yn = apply(gamma_n, x0), apply(gamma_n, y0)
        if dist(xn, mirror) > ell * (1 + TOL):
            skipped += 1
            continue
        accepted += 1
        iterations += n
        depth_loss = max(depth_loss, abs(busemann(INFINITY, yn, y0)))
        cone_loss = max(cone_loss, ray_distance(v, y0) - ray_distance(v, yn))
        switched += side_coordinates(v, 0.0, yn).u <= TOL

    logger.info("side switch: %d accepted, %d switched", accepted, switched)
    return SideSwitchReport(
        alpha0=alpha0,
        D=D,
        R=R,
        samples=samples,
        seed=seed,
        accepted=accepted,
        skipped=skipped,
        depth_loss_max=depth_loss,
        cone_loss_max=cone_loss,
        switched_fraction=switched / accepted if accepted else 0.0,
        mean_iterations=iterations / accepted if accepted else 0.0,
    )
