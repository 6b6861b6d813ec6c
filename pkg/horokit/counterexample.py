"""The explicit one-sided horocycle construction, both variants.

Plus circles sit on the positive axis with radius 1: centred at 2n+1
(tangent variant) or at x_n (opposite variant). Minus circles are centred at
-x_n with radius r_n, and x_n comes from the tangency identity
x_n + r_n = 2 * sum_{k<=n} r_k. The printed coordinates of P_n and N_n live on
the geodesic through the two centres, but no translation along that geodesic
carries one circle onto the other (it crosses them at mirror angles).
gamma_n therefore translates along the common perpendicular of the pair,
whose endpoints sit within O(1/L) of the centres.
"""

import logging
import math
from typing import List, Optional, Tuple

from pydantic import BaseModel

from .config import TOL, CounterexampleConfig, Schedule
from .criteria import Census, attained_depth, census
from .errors import IndexOutOfRange, PairingMismatch, PingPongFailed
from .flows import Frame, frame_from_endpoints
from .hyperbolic_core import INFINITY, ORIGIN, BoundaryPoint, Geodesic, Point, angle_between, dist, intersection
from .isometry import apply, fixed_points, pair_circles, translation_length
from .schottky import PairedCircle, SchottkyPair, SchottkySpec, verify_ping_pong

logger = logging.getLogger(__name__)

HOLE_SHRINK = 0.9
IMAGINARY_AXIS = Geodesic(INFINITY, BoundaryPoint.real(0.0))


# ------------------------------
# Schemas
# ------------------------------
class RowReport(BaseModel):
    n: int
    x_n: float
    r_n: float
    P_n: Tuple[float, float]
    N_n: Tuple[float, float]
    z_n: Tuple[float, float]
    # ell_n is 0 and theta_axis_n None when gamma_n is parabolic (tangent circles)
    ell_n: float
    im_gamma_o: float
    im_lower: float
    im_upper: float
    d_o_zn: float
    d_Pn_zn: float
    d_o_Pn: float
    d_gammaP_Nn: float
    theta_n: float
    theta_axis_n: Optional[float] = None
    y_n_ratio: Optional[float] = None


class Thresholds(BaseModel):
    """Smallest n0 after which each inequality held on every computed row."""

    pz_n0: Optional[int] = None
    po_n0: Optional[int] = None


class OneSidednessCertificate(BaseModel):
    census: Census
    attained_depth: float
    status: str


# ------------------------------
# Sequences and geometry
# ------------------------------
def x_sequence(schedule: Schedule, n: int) -> float:
    if n < 1:
        raise IndexOutOfRange(f"x_n is defined for n >= 1, got {n}")
    if schedule.kind == "linear":
        # 2 * (1 + ... + n) - n, exactly n^2
        return float(n * (n + 1) - n)
    radii = [schedule.radius(k) for k in range(1, n + 1)]
    return 2 * math.fsum(radii) - radii[-1]


def geometric_closed_form(alpha: float, n: int) -> float:
    """x_n for r_k = alpha^k, summed in closed form."""
    return alpha**n * (alpha + 1) / (alpha - 1) - 2 * alpha / (alpha - 1)


def _check_index(config: CounterexampleConfig, n: int) -> None:
    if not 1 <= n <= config.n_max:
        raise IndexOutOfRange(f"n={n} outside 1..{config.n_max}")


def circles(config: CounterexampleConfig, n: int) -> Tuple[PairedCircle, PairedCircle]:
    x = x_sequence(config.schedule, n)
    plus_center = 2 * n + 1 if config.variant == "tangent" else x
    return PairedCircle(float(plus_center), 1.0), PairedCircle(-x, config.schedule.radius(n))


def axis(config: CounterexampleConfig, n: int) -> Geodesic:
    """Geodesic through the two centres of pair n."""
    plus, minus = circles(config, n)
    return Geodesic(BoundaryPoint.real(plus.center), BoundaryPoint.real(minus.center))


def _hole_pairs(config: CounterexampleConfig, tol: float) -> List[SchottkyPair]:
    """Equal small disks tiling the gaps between consecutive plus circles, paired off."""
    pairs = []
    for n in range(1, config.n_max):
        left = circles(config, n)[0]
        right = circles(config, n + 1)[0]
        lo, hi = left.center + left.radius, right.center - right.radius
        if hi - lo <= tol:
            continue
        count = 2 * math.ceil((hi - lo) / 4)
        slot = (hi - lo) / (2 * count)
        for j in range(0, count, 2):
            # shrunk so neighbours stay disjoint and the pairing stays hyperbolic
            a = PairedCircle(lo + (2 * j + 1) * slot, HOLE_SHRINK * slot)
            b = PairedCircle(lo + (2 * j + 3) * slot, HOLE_SHRINK * slot)
            gamma = pair_circles(a.geodesic, b.geodesic, tol)
            pairs.append(SchottkyPair(a, b, gamma))
    return pairs


def build(config: CounterexampleConfig, tol: float = TOL) -> SchottkySpec:
    pairs = []
    for n in range(1, config.n_max + 1):
        plus, minus = circles(config, n)
        try:
            gamma = pair_circles(plus.geodesic, minus.geodesic, tol)
        except PairingMismatch as exc:
            raise PingPongFailed(n, str(exc)) from exc
        pairs.append(SchottkyPair(plus, minus, gamma))
    if config.fill_holes and config.variant == "opposite":
        extra = _hole_pairs(config, tol)
        logger.info("filled holes with %d extra pairs", len(extra))
        pairs.extend(extra)
    spec = SchottkySpec(tuple(pairs))
    cert = verify_ping_pong(spec, tol)
    if not cert.ok:
        first = cert.violations[0]
        raise PingPongFailed(first.pair + 1, first.detail)
    logger.info("built %s/%s construction with %d pairs", config.variant, config.schedule.kind, len(pairs))
    return spec


def special_points(config: CounterexampleConfig, n: int, tol: float = TOL) -> Tuple[Point, Point, Point]:
    """(P_n, N_n, z_n) by intersecting the axis with both circles."""
    _check_index(config, n)
    plus, minus = circles(config, n)
    g = axis(config, n)
    P = intersection(g, plus.geodesic, tol)
    N = intersection(g, minus.geodesic, tol)
    return P, N, Point(plus.center, 1.0)


def closed_form_points(config: CounterexampleConfig, n: int) -> Tuple[Point, Point]:
    """(P_n, N_n) from the printed coordinate formulas."""
    _check_index(config, n)
    x = x_sequence(config.schedule, n)
    r = config.schedule.radius(n)
    if config.variant == "tangent":
        c, L = 2 * n + 1, 2 * n + 1 + x
    else:
        c, L = x, 2 * x
    P = Point(c - 1 / L, math.sqrt(1 - 1 / L**2))
    N = Point(-x + r * r / L, r * math.sqrt(1 - r * r / L**2))
    return P, N


def crossing_angle(config: CounterexampleConfig, n: int, tol: float = TOL) -> float:
    """Angle between the imaginary axis (v- = inf, v+ = 0) and the axis of gamma_n."""
    _check_index(config, n)
    return angle_between(IMAGINARY_AXIS, axis(config, n), tol)


def printed_cos_theta(config: CounterexampleConfig, n: int) -> float:
    x = x_sequence(config.schedule, n)
    return (x - (2 * n + 1)) / (x + 2 * n + 1)


# ------------------------------
# Reports
# ------------------------------
def report(config: CounterexampleConfig, spec: Optional[SchottkySpec] = None, tol: float = TOL) -> List[RowReport]:
    spec = spec or build(config, tol)
    rows = []
    for n in range(1, config.n_max + 1):
        gamma = spec.pairs[n - 1].gamma
        P, N, z = special_points(config, n, tol)
        image = apply(gamma, ORIGIN)
        delta = dist(ORIGIN, P)
        # gamma_n P_n lands near N_n, not on it
        slack = dist(apply(gamma, P), N)
        fixed = fixed_points(gamma, tol)
        ratio = None
        if config.schedule.kind == "geometric" and config.variant == "tangent":
            a = config.schedule.alpha
            ratio = N.y**2 / (a ** (2 * n) * 4 * a / (a + 1) ** 2)
        rows.append(
            RowReport(
                n=n,
                x_n=x_sequence(config.schedule, n),
                r_n=config.schedule.radius(n),
                P_n=(P.x, P.y),
                N_n=(N.x, N.y),
                z_n=(z.x, z.y),
                ell_n=translation_length(gamma, tol) if len(fixed) == 2 else 0.0,
                im_gamma_o=image.y,
                im_lower=N.y * math.exp(-delta - slack),
                im_upper=N.y * math.exp(delta + slack),
                d_o_zn=dist(ORIGIN, z),
                d_Pn_zn=dist(P, z),
                d_o_Pn=delta,
                d_gammaP_Nn=slack,
                theta_n=crossing_angle(config, n, tol),
                theta_axis_n=angle_between(IMAGINARY_AXIS, Geodesic(*fixed), tol) if len(fixed) == 2 else None,
                y_n_ratio=ratio,
            )
        )
    return rows


def _first_stable(rows: List[RowReport], holds) -> Optional[int]:
    n0 = None
    for row in rows:
        if holds(row):
            n0 = row.n if n0 is None else n0
        else:
            n0 = None
    return n0


def thresholds(rows: List[RowReport]) -> Thresholds:
    return Thresholds(
        pz_n0=_first_stable(rows, lambda r: r.d_Pn_zn <= 1),
        po_n0=_first_stable(rows, lambda r: r.d_o_Pn <= 3 * math.log(r.n)),
    )


def one_sidedness_certificate(
    config: CounterexampleConfig,
    D: float,
    R: float,
    max_len: int,
    spec: Optional[SchottkySpec] = None,
    tol: float = TOL,
) -> OneSidednessCertificate:
    spec = spec or build(config, tol)
    v: Frame = frame_from_endpoints(INFINITY, BoundaryPoint.real(0.0), ORIGIN, tol)
    counts = census(spec, v, D, R, max_len, tol)
    depth = attained_depth(spec, v, max_len, tol)
    if counts.minus_count > 0:
        status = "refuted"
    elif counts.plus_count >= 1:
        status = "certified"
    elif D > depth:
        status = "withheld-depth"
    else:
        status = "withheld-no-plus"
    logger.info("one-sidedness at D=%g: %s (attained depth %.4g)", D, status, depth)
    return OneSidednessCertificate(census=counts, attained_depth=depth, status=status)
