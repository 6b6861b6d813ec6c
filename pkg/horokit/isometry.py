"""PSL(2,R) elements acting on the upper half-plane by homographies."""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple, Union

from .config import TOL
from .errors import (
    AxisMiss,
    DegenerateAxis,
    DegenerateLength,
    InvalidMatrix,
    IsIdentity,
    NoIntersection,
    NotHyperbolic,
    PairingMismatch,
)
from .hyperbolic_core import INFINITY, BoundaryPoint, Geodesic, Point, common_perpendicular, dist, intersection

logger = logging.getLogger(__name__)


class Classification(str, Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


# ------------------------------
# Mobius
# ------------------------------
@dataclass(frozen=True)
class Mobius:
    """Normalised [[a, b], [c, d]] with ad - bc = 1; build through ``from_entries``."""

    a: float
    b: float
    c: float
    d: float

    @classmethod
    def from_entries(cls, a: float, b: float, c: float, d: float) -> "Mobius":
        det = a * d - b * c
        if not det > 0 or not math.isfinite(det):
            raise InvalidMatrix(f"determinant must be positive, got {det}")
        s = math.sqrt(det)
        entries = [a / s, b / s, c / s, d / s]
        first = next(e for e in entries if e != 0)
        if first < 0:
            entries = [-e for e in entries]
        # -0.0 would leak into repr and CSV output
        return cls(*(e + 0.0 for e in entries))

    @property
    def trace(self) -> float:
        return self.a + self.d


IDENTITY = Mobius(1.0, 0.0, 0.0, 1.0)


def diagonal(t: float) -> Mobius:
    """a_t = diag(e^{t/2}, e^{-t/2}): translation by t along (0, inf)."""
    return Mobius(math.exp(t / 2), 0.0, 0.0, math.exp(-t / 2))


def lower_unipotent(s: float) -> Mobius:
    """n_s = [[1, 0], [s, 1]], fixing 0."""
    return Mobius(1.0, 0.0, float(s), 1.0)


def compose(m: Mobius, n: Mobius) -> Mobius:
    return Mobius.from_entries(
        m.a * n.a + m.b * n.c,
        m.a * n.b + m.b * n.d,
        m.c * n.a + m.d * n.c,
        m.c * n.b + m.d * n.d,
    )


def inverse(m: Mobius) -> Mobius:
    return Mobius.from_entries(m.d, -m.b, -m.c, m.a)


def conjugate(m: Mobius, g: Mobius) -> Mobius:
    """g m g^-1."""
    return compose(compose(g, m), inverse(g))


def approx_equal(m: Mobius, n: Mobius, tol: float = TOL) -> bool:
    """Equality modulo sign."""
    diff = max(abs(m.a - n.a), abs(m.b - n.b), abs(m.c - n.c), abs(m.d - n.d))
    flip = max(abs(m.a + n.a), abs(m.b + n.b), abs(m.c + n.c), abs(m.d + n.d))
    return min(diff, flip) <= tol


# ------------------------------
# Action
# ------------------------------
def apply(m: Mobius, z: Union[Point, BoundaryPoint]):
    if isinstance(z, BoundaryPoint):
        if z.is_infinity:
            return INFINITY if m.c == 0 else BoundaryPoint.real(m.a / m.c)
        den = m.c * z.x + m.d
        if den == 0:
            return INFINITY
        return BoundaryPoint.real((m.a * z.x + m.b) / den)
    w = z.z
    den = m.c * w + m.d
    image = (m.a * w + m.b) / den
    # Im((az+b)/(cz+d)) = y / |cz+d|^2 stays positive in floating point
    return Point(image.real, z.y / abs(den) ** 2)


def image_geodesic(m: Mobius, g: Geodesic) -> Geodesic:
    return Geodesic(apply(m, g.start), apply(m, g.end))


# ------------------------------
# Classification and fixed points
# ------------------------------
def classify(m: Mobius, tol: float = TOL) -> Classification:
    if approx_equal(m, IDENTITY, tol):
        return Classification.IDENTITY
    t = abs(m.trace)
    if t < 2 - tol:
        return Classification.ELLIPTIC
    if t > 2 + tol:
        return Classification.HYPERBOLIC
    return Classification.PARABOLIC


def fixed_points(m: Mobius, tol: float = TOL) -> Tuple[BoundaryPoint, ...]:
    """Boundary fixed points: (repelling, attracting) when hyperbolic."""
    kind = classify(m, tol)
    if kind is Classification.IDENTITY:
        raise IsIdentity("every point is fixed by the identity")
    if kind is Classification.ELLIPTIC:
        return ()
    if m.c == 0:
        if kind is Classification.PARABOLIC:
            return (INFINITY,)
        finite = BoundaryPoint.real(m.b / (m.d - m.a))
        # derivative at the finite point is a/d = a^2
        return (finite, INFINITY) if abs(m.a) > abs(m.d) else (INFINITY, finite)
    if kind is Classification.PARABOLIC:
        return (BoundaryPoint.real((m.a - m.d) / (2 * m.c)),)
    root = math.sqrt((m.a + m.d) ** 2 - 4)
    z1 = ((m.a - m.d) - root) / (2 * m.c)
    z2 = ((m.a - m.d) + root) / (2 * m.c)
    # the attracting point has |cz + d| > 1
    if abs(m.c * z1 + m.d) > abs(m.c * z2 + m.d):
        z1, z2 = z2, z1
    return BoundaryPoint.real(z1), BoundaryPoint.real(z2)


def attracting_fixed_point(m: Mobius, tol: float = TOL) -> BoundaryPoint:
    if classify(m, tol) is not Classification.HYPERBOLIC:
        raise NotHyperbolic(f"{m} has no attracting fixed point")
    return fixed_points(m, tol)[1]


def translation_length(m: Mobius, tol: float = TOL) -> float:
    if classify(m, tol) is not Classification.HYPERBOLIC:
        raise NotHyperbolic(f"{m} is not hyperbolic")
    return 2 * math.acosh(abs(m.trace) / 2)


# ------------------------------
# Construction
# ------------------------------
def frame_matrix(minus: BoundaryPoint, plus: BoundaryPoint) -> Mobius:
    """An element sending 0 to ``minus`` and infinity to ``plus``."""
    if minus == plus:
        raise DegenerateAxis("axis endpoints coincide")
    if plus.is_infinity:
        return Mobius(1.0, minus.x, 0.0, 1.0)
    if minus.is_infinity:
        return Mobius.from_entries(plus.x, -1.0, 1.0, 0.0)
    p, q = minus.x, plus.x
    if q > p:
        return Mobius.from_entries(q, p, 1.0, 1.0)
    return Mobius.from_entries(q, -p, 1.0, -1.0)


def from_axis_length(p: BoundaryPoint, q: BoundaryPoint, length: float) -> Mobius:
    """Hyperbolic element repelling at p, attracting at q, translating by ``length``."""
    return conjugate(diagonal(length), frame_matrix(p, q))


def pairing_isometry(
    p: BoundaryPoint, q: BoundaryPoint, A: Geodesic, B: Geodesic, tol: float = TOL
) -> Mobius:
    """Translation along (p, q) carrying A onto B, A's exterior into B's disk."""
    axis = Geodesic(p, q)
    try:
        start = intersection(axis, A, tol)
        end = intersection(axis, B, tol)
    except NoIntersection as exc:
        raise AxisMiss(f"axis {axis} misses {A} or {B}") from exc
    length = dist(start, end)
    if length <= tol:
        raise DegenerateLength(f"{A} and {B} cross the axis at the same point")
    gamma = from_axis_length(p, q, length)
    image = image_geodesic(gamma, A)
    if not image.same_as(B, tol):
        raise PairingMismatch(f"translation along {axis} sends {A} to {image}, not {B}")
    logger.debug("pairing along %s with length %.6g", axis, length)
    return gamma


def _tangent_pairing(A: Geodesic, B: Geodesic) -> Mobius:
    """Parabolic element fixing the tangency point t of A and B.

    Under w = -1/(z - t) both circles become vertical lines and the pairing is
    the translation between them.
    """
    side = math.copysign(1.0, B.center - A.center)
    t = A.center + side * A.radius
    shift = side * (1 / (2 * A.radius) + 1 / (2 * B.radius))
    return conjugate(Mobius(1.0, 0.0, shift, 1.0), Mobius(1.0, t, 0.0, 1.0))


def pair_circles(A: Geodesic, B: Geodesic, tol: float = TOL) -> Mobius:
    """Element carrying A onto B, the exterior of A into the disk of B.

    Disjoint circles are paired by the translation along their common
    perpendicular; externally tangent ones by a parabolic at the tangency point.
    """
    gap = abs(B.center - A.center) - (A.radius + B.radius)
    if abs(gap) <= tol * max(1.0, abs(B.center - A.center)):
        return _tangent_pairing(A, B)
    try:
        axis = common_perpendicular(A, B, tol)
    except ValueError as exc:
        raise PairingMismatch(str(exc)) from exc
    return pairing_isometry(axis.start, axis.end, A, B, tol)
